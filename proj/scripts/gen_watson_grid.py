#!/usr/bin/env python3
"""Regenerates include/dmri/watson_grid.hpp.

Builds a 321-point antipodally symmetric spherical quadrature rule: the
vertices of a three-times-subdivided icosahedron (642 points), reduced to one
representative per antipodal pair, with weights corrected so the rule
integrates all even spherical harmonics up to degree 20 exactly. The
correction is the minimum-norm adjustment of the per-vertex Voronoi-style
area weights.

Requires numpy + scipy. Output is deterministic.
"""

import numpy as np
from scipy.special import sph_harm_y

HEADER = "include/dmri/watson_grid.hpp"
DEGREE = 20


def icosphere(level):
    phi = (1 + 5 ** 0.5) / 2
    verts = [(-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
             (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
             (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1)]
    verts = [np.array(v, dtype=float) / np.linalg.norm(v) for v in verts]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
             (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
             (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
             (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    for _ in range(level):
        cache = {}
        out = []

        def mid(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                m = verts[a] + verts[b]
                verts.append(m / np.linalg.norm(m))
                cache[key] = len(verts) - 1
            return cache[key]

        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            out += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = out
    return np.array(verts), faces


def area_weights(verts, faces):
    w = np.zeros(len(verts))
    for a, b, c in faces:
        va, vb, vc = verts[a], verts[b], verts[c]
        ab = np.arccos(np.clip(va @ vb, -1, 1))
        bc = np.arccos(np.clip(vb @ vc, -1, 1))
        ca = np.arccos(np.clip(vc @ va, -1, 1))
        s = (ab + bc + ca) / 2
        t = np.tan(s / 2) * np.tan((s - ab) / 2) * np.tan((s - bc) / 2) * np.tan((s - ca) / 2)
        area = 4 * np.arctan(np.sqrt(max(t, 0)))
        for v in (a, b, c):
            w[v] += area / 3
    return w


def real_sh_matrix(points, degree):
    theta = np.arccos(np.clip(points[:, 2], -1, 1))
    phi = np.arctan2(points[:, 1], points[:, 0])
    rows = []
    for l in range(0, degree + 1, 2):
        for m in range(-l, l + 1):
            if m < 0:
                y = np.sqrt(2) * (-1) ** m * np.imag(sph_harm_y(l, -m, theta, phi))
            elif m == 0:
                y = np.real(sph_harm_y(l, 0, theta, phi))
            else:
                y = np.sqrt(2) * (-1) ** m * np.real(sph_harm_y(l, m, theta, phi))
            rows.append(y)
    return np.array(rows)


def main():
    verts, faces = icosphere(3)
    w = area_weights(verts, faces)

    keep = []
    for i, (x, y, z) in enumerate(verts):
        if z > 1e-12 or (abs(z) <= 1e-12 and (y > 1e-12 or (abs(y) <= 1e-12 and x > 0))):
            keep.append(i)
    pts, w = verts[keep], w[keep]
    assert len(pts) == 321

    order = np.lexsort((pts[:, 0], pts[:, 1], pts[:, 2]))[::-1]
    pts, w = pts[order], w[order]

    # hemisphere representatives carry half the full-sphere integral
    Y = real_sh_matrix(pts, DEGREE)
    b = np.zeros(Y.shape[0])
    b[0] = np.sqrt(4 * np.pi) / 2
    w = w + Y.T @ np.linalg.solve(Y @ Y.T, b - Y @ w)
    assert w.min() > 0
    assert abs(np.linalg.norm(b - Y @ w)) < 1e-12

    lines = []
    lines.append("// Generated by scripts/gen_watson_grid.py -- do not edit by hand.")
    lines.append("//")
    lines.append("// 321-point antipodally symmetric spherical quadrature rule (one point per")
    lines.append("// antipodal pair of a level-3 icosphere), weights exact for even spherical")
    lines.append(f"// harmonics up to degree {DEGREE}. Weights sum to 2*pi (half sphere).")
    lines.append("#pragma once")
    lines.append("")
    lines.append("namespace dmri::detail {")
    lines.append("")
    lines.append(f"inline constexpr int kWatsonGridSize = {len(pts)};")
    lines.append("")
    lines.append(f"inline constexpr double kWatsonGridDirs[{len(pts)}][3] = {{")
    for p in pts:
        lines.append("    {%.17g, %.17g, %.17g}," % (p[0], p[1], p[2]))
    lines.append("};")
    lines.append("")
    lines.append(f"inline constexpr double kWatsonGridWeights[{len(pts)}] = {{")
    for i in range(0, len(w), 4):
        lines.append("    " + " ".join("%.17g," % v for v in w[i:i + 4]))
    lines.append("};")
    lines.append("")
    lines.append("} // namespace dmri::detail")
    lines.append("")
    with open(HEADER, "w") as f:
        f.write("\n".join(lines))
    print(f"wrote {HEADER}: {len(pts)} points, weight sum {w.sum():.15f}")


if __name__ == "__main__":
    main()
