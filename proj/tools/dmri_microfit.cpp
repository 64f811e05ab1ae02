// dmri-microfit: config-driven pipeline for microstructure estimation from
// sparsely sampled diffusion MRI. Runs individual stages or the whole chain:
//   phantom -> subsample -> fit-dti -> fit-noddi -> segment -> train
//           -> predict -> evaluate

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "dmri/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDependency = 2;
constexpr int kExitNumerical = 3;

int classify(const dmri::Error& e) {
    switch (e.code()) {
        case dmri::Errc::dependency_missing:
            return kExitDependency;
        case dmri::Errc::numeric_failure:
        case dmri::Errc::iteration_limit:
        case dmri::Errc::degenerate_input:
        case dmri::Errc::rank_deficient:
        case dmri::Errc::nonpositive_signal:
            return kExitNumerical;
        default:
            return kExitValidation;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"microstructure estimation from sparse diffusion MRI"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 1;
    std::int64_t seed = -1;
    bool force = false;
    bool quiet = false;

    const char* stages[] = {"phantom", "subsample", "fit-dti", "fit-noddi", "segment",
                            "train",   "predict",   "evaluate", "all"};
    for (const char* name : stages) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (default from config)");
        sub->add_option("--workers", workers, "worker threads for voxel loops")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "override the training seed");
        sub->add_flag("--force", force, "recompute even when manifests match");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    const std::string stage_str = app.get_subcommands().front()->get_name();

    try {
        dmri::PipelineConfig config = dmri::load_pipeline_config(config_path);
        dmri::RunOptions options;
        options.out_dir = out_dir;
        options.workers = workers;
        options.seed_override = seed;
        options.force = force;
        options.verbose = !quiet;
        dmri::Pipeline pipeline(std::move(config), std::move(options));
        pipeline.run(dmri::stage_from_name(stage_str));
        return kExitOk;
    } catch (const dmri::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}
