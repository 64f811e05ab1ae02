// Generated by scripts/gen_watson_grid.py -- do not edit by hand.
//
// 321-point antipodally symmetric spherical quadrature rule (one point per
// antipodal pair of a level-3 icosphere), weights exact for even spherical
// harmonics up to degree 20. Weights sum to 2*pi (half sphere).
#pragma once

namespace dmri::detail {

inline constexpr int kWatsonGridSize = 321;

inline constexpr double kWatsonGridDirs[321][3] = {
    {0, 0, 1},
    {0, 0.13795224212763368, 0.99043888195686192},
    {0, -0.13795224212763368, 0.99043888195686192},
    {0.13307110414059131, 0.082242465279362284, 0.98768834059513777},
    {-0.13307110414059131, 0.082242465279362284, 0.98768834059513777},
    {0.13307110414059131, -0.082242465279362284, 0.98768834059513777},
    {-0.13307110414059131, -0.082242465279362284, 0.98768834059513777},
    {0.13279247682790243, 0.22011702747329237, 0.9663925974024391},
    {-0.13279247682790243, 0.22011702747329237, 0.9663925974024391},
    {0.13279247682790243, -0.22011702747329237, 0.9663925974024391},
    {-0.13279247682790243, -0.22011702747329237, 0.9663925974024391},
    {0.26640470113456738, 0, 0.96386126346762258},
    {-0.26640470113456738, 0, 0.96386126346762258},
    {0, 0.27326652891267167, 0.96193835778391745},
    {0, -0.27326652891267167, 0.96193835778391745},
    {0.2628655560595668, 0.16245984811645314, 0.95105651629515364},
    {-0.2628655560595668, 0.16245984811645314, 0.95105651629515364},
    {0.2628655560595668, -0.16245984811645314, 0.95105651629515364},
    {-0.2628655560595668, -0.16245984811645314, 0.95105651629515364},
    {0.13165537135206459, 0.35822879348657888, 0.92430460061134601},
    {-0.13165537135206459, 0.35822879348657888, 0.92430460061134601},
    {0.13165537135206459, -0.35822879348657888, 0.92430460061134601},
    {-0.13165537135206459, -0.35822879348657888, 0.92430460061134601},
    {0.2640827506590655, 0.30125887909323201, 0.9162441751912157},
    {-0.2640827506590655, 0.30125887909323201, 0.9162441751912157},
    {0.2640827506590655, -0.30125887909323201, 0.9162441751912157},
    {-0.2640827506590655, -0.30125887909323201, 0.9162441751912157},
    {0, 0.40335534861736433, 0.9150434212329841},
    {0, -0.40335534861736433, 0.9150434212329841},
    {0.39960705170185112, 0.08232358003196015, 0.91298249293229905},
    {-0.39960705170185112, 0.08232358003196015, 0.91298249293229905},
    {0.39960705170185112, -0.08232358003196015, 0.91298249293229905},
    {-0.39960705170185112, -0.08232358003196015, 0.91298249293229905},
    {0.38618738558759202, 0.23867693031959314, 0.8910065241883679},
    {-0.38618738558759202, 0.23867693031959314, 0.8910065241883679},
    {0.38618738558759202, -0.23867693031959314, 0.8910065241883679},
    {-0.38618738558759202, -0.23867693031959314, 0.8910065241883679},
    {0.13120037881301283, 0.48444164206066787, 0.86492933586327481},
    {-0.13120037881301283, 0.48444164206066787, 0.86492933586327481},
    {0.13120037881301283, -0.48444164206066787, 0.86492933586327481},
    {-0.13120037881301283, -0.48444164206066787, 0.86492933586327481},
    {0.25989191300775438, 0.43388856455269476, 0.86266848041618616},
    {-0.25989191300775438, 0.43388856455269476, 0.86266848041618616},
    {0.25989191300775438, -0.43388856455269476, 0.86266848041618616},
    {-0.25989191300775438, -0.43388856455269476, 0.86266848041618616},
    {0, 0.52573111211913359, 0.85065080835203999},
    {0, -0.52573111211913359, 0.85065080835203999},
    {0.52573111211913359, 0, 0.85065080835203988},
    {-0.52573111211913359, 0, 0.85065080835203988},
    {0.38361373268504773, 0.37503856747820963, 0.84391147462239025},
    {-0.38361373268504773, 0.37503856747820963, 0.84391147462239025},
    {0.38361373268504773, -0.37503856747820963, 0.84391147462239025},
    {-0.38361373268504773, -0.37503856747820963, 0.84391147462239025},
    {0.51925848972818334, 0.15643446504023087, 0.84017788532713888},
    {-0.51925848972818334, 0.15643446504023087, 0.84017788532713888},
    {0.51925848972818334, -0.15643446504023087, 0.84017788532713888},
    {-0.51925848972818334, -0.15643446504023087, 0.84017788532713888},
    {0.5, 0.3090169943749474, 0.80901699437494734},
    {-0.5, 0.3090169943749474, 0.80901699437494734},
    {0.5, -0.3090169943749474, 0.80901699437494734},
    {-0.5, -0.3090169943749474, 0.80901699437494734},
    {0.21302286564912973, 0.57125165913570874, 0.7926492292592815},
    {-0.21302286564912973, 0.57125165913570874, 0.7926492292592815},
    {0.21302286564912973, -0.57125165913570874, 0.7926492292592815},
    {-0.21302286564912973, -0.57125165913570874, 0.7926492292592815},
    {0.081086293443303523, 0.61564202087368058, 0.78384304241997127},
    {-0.081086293443303523, 0.61564202087368058, 0.78384304241997127},
    {0.081086293443303523, -0.61564202087368058, 0.78384304241997127},
    {-0.081086293443303523, -0.61564202087368058, 0.78384304241997127},
    {0.34615301478899207, 0.51612162005106099, 0.7834516983633133},
    {-0.34615301478899207, 0.51612162005106099, 0.7834516983633133},
    {0.34615301478899207, -0.51612162005106099, 0.7834516983633133},
    {-0.34615301478899207, -0.51612162005106099, 0.7834516983633133},
    {0.62023958261344703, 0.081141851619939642, 0.7802043707101266},
    {-0.62023958261344703, 0.081141851619939642, 0.7802043707101266},
    {0.62023958261344703, -0.081141851619939642, 0.7802043707101266},
    {-0.62023958261344703, -0.081141851619939642, 0.7802043707101266},
    {0.60682514927181419, 0.23708632535057594, 0.75865230016325735},
    {-0.60682514927181419, 0.23708632535057594, 0.75865230016325735},
    {0.60682514927181419, -0.23708632535057594, 0.75865230016325735},
    {-0.60682514927181419, -0.23708632535057594, 0.75865230016325735},
    {0.46842985086695438, 0.45399049973954675, 0.75793542004777659},
    {-0.46842985086695438, 0.45399049973954675, 0.75793542004777659},
    {0.46842985086695438, -0.45399049973954675, 0.75793542004777659},
    {-0.46842985086695438, -0.45399049973954675, 0.75793542004777659},
    {0, 0.70290703048777325, 0.71128173496221625},
    {0, -0.70290703048777325, 0.71128173496221625},
    {0.60150095500754563, 0.37174803446018451, 0.70710678118654746},
    {-0.60150095500754563, 0.37174803446018451, 0.70710678118654746},
    {0.60150095500754563, -0.37174803446018451, 0.70710678118654746},
    {-0.60150095500754563, -0.37174803446018451, 0.70710678118654746},
    {0.71128173496221625, 0, 0.70290703048777325},
    {-0.71128173496221625, 0, 0.70290703048777325},
    {0.29600459257776868, 0.64741189388222409, 0.70230984674337371},
    {-0.29600459257776868, 0.64741189388222409, 0.70230984674337371},
    {0.29600459257776868, -0.64741189388222409, 0.70230984674337371},
    {-0.29600459257776868, -0.64741189388222409, 0.70230984674337371},
    {0.16062203564002314, 0.69378047756044925, 0.70204644477616307},
    {-0.16062203564002314, 0.69378047756044925, 0.70204644477616307},
    {0.16062203564002314, -0.69378047756044925, 0.70204644477616307},
    {-0.16062203564002314, -0.69378047756044925, 0.70204644477616307},
    {0.70204644477616307, 0.16062203564002314, 0.69378047756044925},
    {-0.70204644477616307, 0.16062203564002314, 0.69378047756044925},
    {0.70204644477616307, -0.16062203564002314, 0.69378047756044925},
    {-0.70204644477616307, -0.16062203564002314, 0.69378047756044925},
    {0.42532540417601999, 0.58778525229247303, 0.68819096023558679},
    {-0.42532540417601999, 0.58778525229247303, 0.68819096023558679},
    {0.42532540417601999, -0.58778525229247303, 0.68819096023558679},
    {-0.42532540417601999, -0.58778525229247303, 0.68819096023558679},
    {0.7023098467433736, 0.29600459257776868, 0.64741189388222409},
    {-0.7023098467433736, 0.29600459257776868, 0.64741189388222409},
    {0.7023098467433736, -0.29600459257776868, 0.64741189388222409},
    {-0.7023098467433736, -0.29600459257776868, 0.64741189388222409},
    {0.56425421176577151, 0.51337544123044787, 0.64657779179773167},
    {-0.56425421176577151, 0.51337544123044787, 0.64657779179773167},
    {0.56425421176577151, -0.51337544123044787, 0.64657779179773167},
    {-0.56425421176577151, -0.51337544123044787, 0.64657779179773167},
    {0.081141851619939642, 0.7802043707101266, 0.62023958261344703},
    {-0.081141851619939642, 0.7802043707101266, 0.62023958261344703},
    {0.081141851619939642, -0.7802043707101266, 0.62023958261344703},
    {-0.081141851619939642, -0.7802043707101266, 0.62023958261344703},
    {0.78384304241997127, 0.081086293443303523, 0.61564202087368058},
    {-0.78384304241997127, 0.081086293443303523, 0.61564202087368058},
    {0.78384304241997127, -0.081086293443303523, 0.61564202087368058},
    {-0.78384304241997127, -0.081086293443303523, 0.61564202087368058},
    {0.23708632535057594, 0.75865230016325735, 0.60682514927181419},
    {-0.23708632535057594, 0.75865230016325735, 0.60682514927181419},
    {0.23708632535057594, -0.75865230016325735, 0.60682514927181419},
    {-0.23708632535057594, -0.75865230016325735, 0.60682514927181419},
    {0.37174803446018451, 0.70710678118654746, 0.60150095500754563},
    {-0.37174803446018451, 0.70710678118654746, 0.60150095500754563},
    {0.37174803446018451, -0.70710678118654746, 0.60150095500754563},
    {-0.37174803446018451, -0.70710678118654746, 0.60150095500754563},
    {0.68819096023558679, 0.42532540417601999, 0.58778525229247314},
    {-0.68819096023558679, 0.42532540417601999, 0.58778525229247314},
    {0.68819096023558679, -0.42532540417601999, 0.58778525229247314},
    {-0.68819096023558679, -0.42532540417601999, 0.58778525229247314},
    {0.7926492292592815, 0.21302286564912976, 0.57125165913570874},
    {-0.7926492292592815, 0.21302286564912976, 0.57125165913570874},
    {0.7926492292592815, -0.21302286564912976, 0.57125165913570874},
    {-0.7926492292592815, -0.21302286564912976, 0.57125165913570874},
    {0.51337544123044798, 0.64657779179773156, 0.56425421176577151},
    {-0.51337544123044798, 0.64657779179773156, 0.56425421176577151},
    {0.51337544123044798, -0.64657779179773156, 0.56425421176577151},
    {-0.51337544123044798, -0.64657779179773156, 0.56425421176577151},
    {0, 0.85065080835203988, 0.52573111211913359},
    {0.85065080835203999, 0, 0.52573111211913359},
    {-0.85065080835203999, 0, 0.52573111211913359},
    {0, -0.85065080835203988, 0.52573111211913359},
    {0.15643446504023087, 0.84017788532713888, 0.51925848972818334},
    {-0.15643446504023087, 0.84017788532713888, 0.51925848972818334},
    {0.15643446504023087, -0.84017788532713888, 0.51925848972818334},
    {-0.15643446504023087, -0.84017788532713888, 0.51925848972818334},
    {0.78345169836331319, 0.34615301478899207, 0.5161216200510611},
    {-0.78345169836331319, 0.34615301478899207, 0.5161216200510611},
    {0.78345169836331319, -0.34615301478899207, 0.5161216200510611},
    {-0.78345169836331319, -0.34615301478899207, 0.5161216200510611},
    {0.64657779179773178, 0.5642542117657714, 0.51337544123044798},
    {-0.64657779179773178, 0.5642542117657714, 0.51337544123044798},
    {0.64657779179773178, -0.5642542117657714, 0.51337544123044798},
    {-0.64657779179773178, -0.5642542117657714, 0.51337544123044798},
    {0.3090169943749474, 0.80901699437494734, 0.5},
    {-0.3090169943749474, 0.80901699437494734, 0.5},
    {0.3090169943749474, -0.80901699437494734, 0.5},
    {-0.3090169943749474, -0.80901699437494734, 0.5},
    {0.86492933586327481, 0.13120037881301286, 0.48444164206066787},
    {-0.86492933586327481, 0.13120037881301286, 0.48444164206066787},
    {0.86492933586327481, -0.13120037881301286, 0.48444164206066787},
    {-0.86492933586327481, -0.13120037881301286, 0.48444164206066787},
    {0.45399049973954686, 0.75793542004777659, 0.46842985086695438},
    {-0.45399049973954686, 0.75793542004777659, 0.46842985086695438},
    {0.45399049973954686, -0.75793542004777659, 0.46842985086695438},
    {-0.45399049973954686, -0.75793542004777659, 0.46842985086695438},
    {0.75793542004777648, 0.46842985086695443, 0.4539904997395468},
    {-0.75793542004777648, 0.46842985086695443, 0.4539904997395468},
    {0.75793542004777648, -0.46842985086695443, 0.4539904997395468},
    {-0.75793542004777648, -0.46842985086695443, 0.4539904997395468},
    {0.86266848041618616, 0.25989191300775444, 0.43388856455269481},
    {-0.86266848041618616, 0.25989191300775444, 0.43388856455269481},
    {0.86266848041618616, -0.25989191300775444, 0.43388856455269481},
    {-0.86266848041618616, -0.25989191300775444, 0.43388856455269481},
    {0.58778525229247314, 0.68819096023558668, 0.42532540417601994},
    {-0.58778525229247314, 0.68819096023558668, 0.42532540417601994},
    {0.58778525229247314, -0.68819096023558668, 0.42532540417601994},
    {-0.58778525229247314, -0.68819096023558668, 0.42532540417601994},
    {0.9150434212329841, 0, 0.40335534861736438},
    {-0.9150434212329841, 0, 0.40335534861736438},
    {0.08232358003196015, 0.91298249293229905, 0.39960705170185112},
    {-0.08232358003196015, 0.91298249293229905, 0.39960705170185112},
    {0.08232358003196015, -0.91298249293229905, 0.39960705170185112},
    {-0.08232358003196015, -0.91298249293229905, 0.39960705170185112},
    {0.23867693031959314, 0.8910065241883679, 0.38618738558759202},
    {-0.23867693031959314, 0.8910065241883679, 0.38618738558759202},
    {0.23867693031959314, -0.8910065241883679, 0.38618738558759202},
    {-0.23867693031959314, -0.8910065241883679, 0.38618738558759202},
    {0.37503856747820963, 0.84391147462239025, 0.38361373268504773},
    {-0.37503856747820963, 0.84391147462239025, 0.38361373268504773},
    {0.37503856747820963, -0.84391147462239025, 0.38361373268504773},
    {-0.37503856747820963, -0.84391147462239025, 0.38361373268504773},
    {0.84391147462239013, 0.38361373268504784, 0.37503856747820968},
    {-0.84391147462239013, 0.38361373268504784, 0.37503856747820968},
    {0.84391147462239013, -0.38361373268504784, 0.37503856747820968},
    {-0.84391147462239013, -0.38361373268504784, 0.37503856747820968},
    {0.70710678118654757, 0.60150095500754563, 0.37174803446018451},
    {-0.70710678118654757, 0.60150095500754563, 0.37174803446018451},
    {0.70710678118654757, -0.60150095500754563, 0.37174803446018451},
    {-0.70710678118654757, -0.60150095500754563, 0.37174803446018451},
    {0.92430460061134601, 0.13165537135206462, 0.35822879348657893},
    {-0.92430460061134601, 0.13165537135206462, 0.35822879348657893},
    {0.92430460061134601, -0.13165537135206462, 0.35822879348657893},
    {-0.92430460061134601, -0.13165537135206462, 0.35822879348657893},
    {0.51612162005106099, 0.7834516983633133, 0.34615301478899207},
    {-0.51612162005106099, 0.7834516983633133, 0.34615301478899207},
    {0.51612162005106099, -0.7834516983633133, 0.34615301478899207},
    {-0.51612162005106099, -0.7834516983633133, 0.34615301478899207},
    {0.80901699437494745, 0.50000000000000011, 0.30901699437494745},
    {-0.80901699437494745, 0.50000000000000011, 0.30901699437494745},
    {0.80901699437494745, -0.50000000000000011, 0.30901699437494745},
    {-0.80901699437494745, -0.50000000000000011, 0.30901699437494745},
    {0.9162441751912157, 0.26408275065906561, 0.30125887909323207},
    {-0.9162441751912157, 0.26408275065906561, 0.30125887909323207},
    {0.9162441751912157, -0.26408275065906561, 0.30125887909323207},
    {-0.9162441751912157, -0.26408275065906561, 0.30125887909323207},
    {0.64741189388222409, 0.70230984674337371, 0.29600459257776868},
    {-0.64741189388222409, 0.70230984674337371, 0.29600459257776868},
    {0.64741189388222409, -0.70230984674337371, 0.29600459257776868},
    {-0.64741189388222409, -0.70230984674337371, 0.29600459257776868},
    {0.96193835778391756, 0, 0.27326652891267172},
    {-0.96193835778391756, 0, 0.27326652891267172},
    {0, 0.96386126346762258, 0.26640470113456738},
    {0, -0.96386126346762258, 0.26640470113456738},
    {0.30125887909323201, 0.9162441751912157, 0.2640827506590655},
    {-0.30125887909323201, 0.9162441751912157, 0.2640827506590655},
    {0.30125887909323201, -0.9162441751912157, 0.2640827506590655},
    {-0.30125887909323201, -0.9162441751912157, 0.2640827506590655},
    {0.16245984811645314, 0.95105651629515364, 0.2628655560595668},
    {-0.16245984811645314, 0.95105651629515364, 0.2628655560595668},
    {0.16245984811645314, -0.95105651629515364, 0.2628655560595668},
    {-0.16245984811645314, -0.95105651629515364, 0.2628655560595668},
    {0.43388856455269476, 0.86266848041618616, 0.25989191300775438},
    {-0.43388856455269476, 0.86266848041618616, 0.25989191300775438},
    {0.43388856455269476, -0.86266848041618616, 0.25989191300775438},
    {-0.43388856455269476, -0.86266848041618616, 0.25989191300775438},
    {0.8910065241883679, 0.38618738558759214, 0.23867693031959319},
    {-0.8910065241883679, 0.38618738558759214, 0.23867693031959319},
    {0.8910065241883679, -0.38618738558759214, 0.23867693031959319},
    {-0.8910065241883679, -0.38618738558759214, 0.23867693031959319},
    {0.75865230016325735, 0.60682514927181419, 0.23708632535057597},
    {-0.75865230016325735, 0.60682514927181419, 0.23708632535057597},
    {0.75865230016325735, -0.60682514927181419, 0.23708632535057597},
    {-0.75865230016325735, -0.60682514927181419, 0.23708632535057597},
    {0.9663925974024391, 0.13279247682790246, 0.2201170274732924},
    {-0.9663925974024391, 0.13279247682790246, 0.2201170274732924},
    {0.9663925974024391, -0.13279247682790246, 0.2201170274732924},
    {-0.9663925974024391, -0.13279247682790246, 0.2201170274732924},
    {0.57125165913570863, 0.7926492292592815, 0.21302286564912976},
    {-0.57125165913570863, 0.7926492292592815, 0.21302286564912976},
    {0.57125165913570863, -0.7926492292592815, 0.21302286564912976},
    {-0.57125165913570863, -0.7926492292592815, 0.21302286564912976},
    {0.95105651629515364, 0.26286555605956685, 0.16245984811645317},
    {-0.95105651629515364, 0.26286555605956685, 0.16245984811645317},
    {0.95105651629515364, -0.26286555605956685, 0.16245984811645317},
    {-0.95105651629515364, -0.26286555605956685, 0.16245984811645317},
    {0.69378047756044914, 0.70204644477616307, 0.16062203564002314},
    {-0.69378047756044914, 0.70204644477616307, 0.16062203564002314},
    {0.69378047756044914, -0.70204644477616307, 0.16062203564002314},
    {-0.69378047756044914, -0.70204644477616307, 0.16062203564002314},
    {0.84017788532713877, 0.51925848972818356, 0.15643446504023087},
    {-0.84017788532713877, 0.51925848972818356, 0.15643446504023087},
    {0.84017788532713877, -0.51925848972818356, 0.15643446504023087},
    {-0.84017788532713877, -0.51925848972818356, 0.15643446504023087},
    {0.99043888195686192, 0, 0.13795224212763371},
    {-0.99043888195686192, 0, 0.13795224212763371},
    {0.082242465279362284, 0.98768834059513777, 0.13307110414059131},
    {-0.082242465279362284, 0.98768834059513777, 0.13307110414059131},
    {0.082242465279362284, -0.98768834059513777, 0.13307110414059131},
    {-0.082242465279362284, -0.98768834059513777, 0.13307110414059131},
    {0.22011702747329237, 0.9663925974024391, 0.13279247682790243},
    {-0.22011702747329237, 0.9663925974024391, 0.13279247682790243},
    {0.22011702747329237, -0.9663925974024391, 0.13279247682790243},
    {-0.22011702747329237, -0.9663925974024391, 0.13279247682790243},
    {0.35822879348657888, 0.92430460061134601, 0.13165537135206459},
    {-0.35822879348657888, 0.92430460061134601, 0.13165537135206459},
    {0.35822879348657888, -0.92430460061134601, 0.13165537135206459},
    {-0.35822879348657888, -0.92430460061134601, 0.13165537135206459},
    {0.48444164206066787, 0.86492933586327481, 0.13120037881301283},
    {-0.48444164206066787, 0.86492933586327481, 0.13120037881301283},
    {0.48444164206066787, -0.86492933586327481, 0.13120037881301283},
    {-0.48444164206066787, -0.86492933586327481, 0.13120037881301283},
    {0.91298249293229905, 0.39960705170185118, 0.082323580031960164},
    {-0.91298249293229905, 0.39960705170185118, 0.082323580031960164},
    {0.91298249293229905, -0.39960705170185118, 0.082323580031960164},
    {-0.91298249293229905, -0.39960705170185118, 0.082323580031960164},
    {0.98768834059513777, 0.13307110414059134, 0.082242465279362298},
    {-0.98768834059513777, 0.13307110414059134, 0.082242465279362298},
    {0.98768834059513777, -0.13307110414059134, 0.082242465279362298},
    {-0.98768834059513777, -0.13307110414059134, 0.082242465279362298},
    {0.7802043707101266, 0.62023958261344703, 0.081141851619939642},
    {-0.7802043707101266, 0.62023958261344703, 0.081141851619939642},
    {0.7802043707101266, -0.62023958261344703, 0.081141851619939642},
    {-0.7802043707101266, -0.62023958261344703, 0.081141851619939642},
    {0.61564202087368058, 0.78384304241997127, 0.081086293443303523},
    {-0.61564202087368058, 0.78384304241997127, 0.081086293443303523},
    {0.61564202087368058, -0.78384304241997127, 0.081086293443303523},
    {-0.61564202087368058, -0.78384304241997127, 0.081086293443303523},
    {0, 1, 0},
    {0.13795224212763368, 0.99043888195686192, 0},
    {-0.13795224212763368, 0.99043888195686192, 0},
    {0.27326652891267167, 0.96193835778391745, 0},
    {-0.27326652891267167, 0.96193835778391745, 0},
    {0.40335534861736433, 0.9150434212329841, 0},
    {-0.40335534861736433, 0.9150434212329841, 0},
    {0.52573111211913359, 0.85065080835203999, 0},
    {-0.52573111211913359, 0.85065080835203999, 0},
    {0.70290703048777325, 0.71128173496221636, 0},
    {-0.70290703048777325, 0.71128173496221636, 0},
    {0.85065080835203988, 0.5257311121191337, 0},
    {-0.85065080835203988, 0.5257311121191337, 0},
    {0.96386126346762258, 0.26640470113456743, 0},
    {-0.96386126346762258, 0.26640470113456743, 0},
    {1, 0, 0},
};

inline constexpr double kWatsonGridWeights[321] = {
    0.019730427830175829, 0.017833549339676891, 0.017833549339676891, 0.020606847963837622,
    0.020606847963837625, 0.020606847963837618, 0.020606847963837622, 0.018248193291409753,
    0.018248193291409753, 0.01824819329140976, 0.018248193291409746, 0.023763961795703763,
    0.023763961795703767, 0.018460634714625643, 0.018460634714625654, 0.020598547088045902,
    0.020598547088045892, 0.020598547088045895, 0.020598547088045892, 0.019142345343617508,
    0.019142345343617521, 0.019142345343617518, 0.019142345343617511, 0.018248193291409701,
    0.018248193291409694, 0.018248193291409698, 0.018248193291409684, 0.018984321767125639,
    0.018984321767125639, 0.023763961795703656, 0.023763961795703656, 0.023763961795703656,
    0.023763961795703663, 0.020606847963837622, 0.020606847963837632, 0.020606847963837618,
    0.020606847963837625, 0.018984321767125587, 0.018984321767125605, 0.018984321767125594,
    0.018984321767125605, 0.01846063471462564, 0.018460634714625643, 0.01846063471462564,
    0.01846063471462564, 0.015404268824707888, 0.015404268824707882, 0.020598547088045836,
    0.020598547088045833, 0.01783354933967693, 0.017833549339676902, 0.01783354933967693,
    0.017833549339676898, 0.020606847963837674, 0.020606847963837684, 0.020606847963837667,
    0.020606847963837684, 0.019730427830176023, 0.019730427830176062, 0.019730427830176017,
    0.019730427830176044, 0.019142345343617462, 0.019142345343617473, 0.019142345343617469,
    0.019142345343617466, 0.018984321767125653, 0.018984321767125653, 0.018984321767125646,
    0.018984321767125646, 0.018248193291409729, 0.018248193291409739, 0.018248193291409719,
    0.018248193291409729, 0.018248193291409694, 0.018248193291409684, 0.018248193291409698,
    0.018248193291409701, 0.017833549339676933, 0.01783354933967694, 0.017833549339676923,
    0.01783354933967693, 0.020606847963837598, 0.020606847963837573, 0.020606847963837598,
    0.02060684796383758, 0.019142345343617514, 0.019142345343617508, 0.020606847963837605,
    0.020606847963837601, 0.020606847963837601, 0.020606847963837608, 0.019142345343617542,
    0.019142345343617525, 0.018248193291409746, 0.018248193291409736, 0.018248193291409733,
    0.018248193291409736, 0.01846063471462565, 0.018460634714625633, 0.018460634714625661,
    0.018460634714625647, 0.018460634714625598, 0.018460634714625619, 0.018460634714625605,
    0.018460634714625626, 0.020598547088045868, 0.020598547088045899, 0.020598547088045861,
    0.020598547088045902, 0.018248193291409739, 0.018248193291409715, 0.018248193291409743,
    0.018248193291409712, 0.023763961795703694, 0.023763961795703684, 0.023763961795703684,
    0.023763961795703691, 0.01824819329140966, 0.018248193291409701, 0.018248193291409656,
    0.018248193291409708, 0.018984321767125667, 0.01898432176712566, 0.01898432176712566,
    0.018984321767125667, 0.017833549339676961, 0.017833549339676923, 0.017833549339676961,
    0.017833549339676923, 0.020606847963837625, 0.020606847963837632, 0.020606847963837601,
    0.020606847963837618, 0.02059854708804585, 0.020598547088045861, 0.020598547088045847,
    0.020598547088045857, 0.019142345343617494, 0.019142345343617535, 0.01914234534361748,
    0.019142345343617518, 0.023763961795703725, 0.02376396179570368, 0.023763961795703722,
    0.023763961795703673, 0.02059854708804593, 0.015404268824707837, 0.015404268824707806,
    0.020598547088045899, 0.020606847963837594, 0.020606847963837584, 0.020606847963837608,
    0.020606847963837594, 0.018248193291409767, 0.018248193291409715, 0.018248193291409757,
    0.018248193291409705, 0.023763961795703632, 0.023763961795703642, 0.023763961795703625,
    0.023763961795703628, 0.019730427830175999, 0.019730427830176017, 0.019730427830175985,
    0.019730427830176003, 0.018984321767125605, 0.018984321767125643, 0.018984321767125605,
    0.018984321767125667, 0.020606847963837584, 0.020606847963837566, 0.02060684796383758,
    0.020606847963837549, 0.020606847963837566, 0.020606847963837587, 0.020606847963837573,
    0.020606847963837577, 0.018460634714625609, 0.018460634714625588, 0.018460634714625616,
    0.018460634714625578, 0.020598547088045888, 0.020598547088045899, 0.020598547088045895,
    0.020598547088045899, 0.018984321767125629, 0.018984321767125625, 0.023763961795703697,
    0.023763961795703691, 0.023763961795703697, 0.023763961795703687, 0.020606847963837594,
    0.020606847963837608, 0.020606847963837622, 0.020606847963837632, 0.017833549339676905,
    0.017833549339676926, 0.017833549339676898, 0.017833549339676916, 0.017833549339676943,
    0.017833549339676933, 0.01783354933967694, 0.01783354933967694, 0.020606847963837625,
    0.020606847963837598, 0.020606847963837639, 0.020606847963837601, 0.019142345343617525,
    0.019142345343617553, 0.019142345343617528, 0.019142345343617591, 0.018248193291409757,
    0.018248193291409698, 0.018248193291409757, 0.018248193291409701, 0.019730427830176023,
    0.019730427830176041, 0.019730427830176013, 0.019730427830176027, 0.018248193291409715,
    0.018248193291409722, 0.018248193291409719, 0.018248193291409701, 0.018248193291409712,
    0.018248193291409774, 0.018248193291409708, 0.018248193291409771, 0.018460634714625637,
    0.018460634714625522, 0.023763961795703687, 0.023763961795703645, 0.018248193291409729,
    0.018248193291409771, 0.018248193291409722, 0.01824819329140976, 0.020598547088045829,
    0.020598547088045833, 0.020598547088045843, 0.020598547088045861, 0.018460634714625647,
    0.01846063471462563, 0.01846063471462564, 0.018460634714625623, 0.020606847963837667,
    0.020606847963837625, 0.020606847963837667, 0.020606847963837629, 0.017833549339676954,
    0.01783354933967693, 0.01783354933967695, 0.01783354933967693, 0.018248193291409701,
    0.018248193291409743, 0.018248193291409694, 0.018248193291409785, 0.019142345343617535,
    0.019142345343617469, 0.019142345343617528, 0.019142345343617462, 0.020598547088045833,
    0.020598547088045878, 0.02059854708804584, 0.020598547088045878, 0.018460634714625637,
    0.018460634714625633, 0.018460634714625637, 0.018460634714625643, 0.020606847963837598,
    0.020606847963837643, 0.020606847963837598, 0.020606847963837629, 0.017833549339676989,
    0.017833549339676871, 0.020606847963837643, 0.020606847963837629, 0.020606847963837643,
    0.020606847963837615, 0.018248193291409764, 0.018248193291409691, 0.018248193291409785,
    0.018248193291409733, 0.019142345343617487, 0.01914234534361757, 0.019142345343617494,
    0.01914234534361757, 0.018984321767125587, 0.018984321767125594, 0.018984321767125587,
    0.018984321767125615, 0.023763961795703746, 0.023763961795703652, 0.023763961795703746,
    0.023763961795703673, 0.02060684796383758, 0.020606847963837653, 0.020606847963837611,
    0.020606847963837667, 0.018248193291409708, 0.018248193291409726, 0.018248193291409708,
    0.01824819329140975, 0.018984321767125646, 0.018984321767125594, 0.018984321767125653,
    0.018984321767125591, 0.019730427830176003, 0.017833549339676923, 0.01783354933967694,
    0.018460634714625612, 0.018460634714625602, 0.018984321767125622, 0.018984321767125622,
    0.015404268824707858, 0.015404268824707846, 0.019142345343617501, 0.019142345343617497,
    0.020598547088045868, 0.020598547088045878, 0.02376396179570367, 0.023763961795703677,
    0.019730427830175968,
};

} // namespace dmri::detail
