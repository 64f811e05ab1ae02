#pragma once

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dmri/config.hpp"
#include "dmri/digest.hpp"
#include "dmri/dti.hpp"
#include "dmri/estimator.hpp"
#include "dmri/gradients.hpp"
#include "dmri/hmrf.hpp"
#include "dmri/metrics.hpp"
#include "dmri/nifti.hpp"
#include "dmri/noddi.hpp"
#include "dmri/phantom.hpp"
#include "dmri/sampling.hpp"

namespace dmri {

enum class Stage { phantom, subsample, fit_dti, fit_noddi, segment, train, predict, evaluate, all };

inline const char* stage_name(Stage s) {
    switch (s) {
        case Stage::phantom: return "phantom";
        case Stage::subsample: return "subsample";
        case Stage::fit_dti: return "fit-dti";
        case Stage::fit_noddi: return "fit-noddi";
        case Stage::segment: return "segment";
        case Stage::train: return "train";
        case Stage::predict: return "predict";
        case Stage::evaluate: return "evaluate";
        case Stage::all: return "all";
    }
    return "?";
}

inline Stage stage_from_name(const std::string& name) {
    for (Stage s : {Stage::phantom, Stage::subsample, Stage::fit_dti, Stage::fit_noddi,
                    Stage::segment, Stage::train, Stage::predict, Stage::evaluate, Stage::all})
        if (name == stage_name(s)) return s;
    fail(Errc::config_invalid, "unknown stage \"" + name + "\"");
}

struct PipelineConfig {
    // phantom
    PhantomSpec phantom;
    std::uint64_t test_noise_seed = 1;
    std::array<double, 3> t1_means{0.2, 0.5, 0.8};
    double t1_noise_sigma = 0.0;
    // protocol (synthesised unless bvals/bvecs files are given)
    std::vector<double> bvalues{1000, 2000, 3000};
    int dirs_per_shell = 90;
    int n_b0 = 18;
    std::string bvals_file, bvecs_file;
    // subsample
    int k_per_shell = 6;
    // fit
    double ridge_rel = 1e-5;
    std::vector<double> vic_levels = default_vic_levels();
    std::vector<double> od_levels{0.04, 0.08, 0.16, 0.32, 0.5, 0.7, 0.9};
    // segment
    HmrfOptions segment;
    // train
    TrainConfig train;
    bool prior_channels = true;
    int train_stride = 1;
    // predict
    int predict_stride = 2;
    // evaluate
    int ssim_window = 7;
    std::vector<std::string> parameters{"fa", "md", "ad", "vic", "viso", "od"};
    // output
    std::string out_dir = "out";

    GradientTable protocol() const {
        if (!bvals_file.empty())
            return read_gradient_table(bvals_file, bvecs_file);
        return make_protocol(bvalues, dirs_per_shell, n_b0);
    }

    std::vector<double> kappa_levels() const {
        std::vector<double> k;
        for (double od : od_levels) k.push_back(od_to_kappa(od));
        return k;
    }

    // Deterministic textual echo of the options relevant to one stage; its
    // digest keys the stage manifest.
    std::string stage_options_echo(Stage stage) const {
        std::ostringstream ss;
        ss.precision(17);
        switch (stage) {
            case Stage::phantom: {
                ss << "dims=" << phantom.w << "," << phantom.h << "," << phantom.s
                   << ";spacing=" << phantom.spacing[0] << "," << phantom.spacing[1] << ","
                   << phantom.spacing[2] << ";sigma=" << phantom.noise_sigma
                   << ";seed=" << phantom.seed << ";test_noise_seed=" << test_noise_seed
                   << ";t1=" << t1_means[0] << "," << t1_means[1] << "," << t1_means[2] << ","
                   << t1_noise_sigma << ";protocol=";
                for (double b : bvalues) ss << b << ",";
                ss << dirs_per_shell << "," << n_b0 << "," << bvals_file << "," << bvecs_file;
                ss << ";regions=";
                for (const PhantomRegion& r : phantom.regions) {
                    ss << (r.shape == PhantomRegion::Shape::box ? "box" : "sphere") << ","
                       << (r.model == PhantomRegion::Model::dti ? "dti" : "noddi") << ","
                       << r.a[0] << "," << r.a[1] << "," << r.a[2] << "," << r.b[0] << ","
                       << r.b[1] << "," << r.b[2] << "," << r.radius << "," << r.tissue << ","
                       << r.micro.vic << "," << r.micro.viso << "," << r.micro.kappa << ","
                       << r.micro.mu.x() << "," << r.micro.mu.y() << "," << r.micro.mu.z() << ","
                       << r.micro.s0 << ",";
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) ss << r.micro.tensor(i, j) << ",";
                    ss << ";";
                }
                break;
            }
            case Stage::subsample:
                ss << "k_per_shell=" << k_per_shell;
                break;
            case Stage::fit_dti:
                ss << "";
                break;
            case Stage::fit_noddi: {
                ss << "ridge_rel=" << ridge_rel << ";vic=";
                for (double v : vic_levels) ss << v << ",";
                ss << ";od=";
                for (double v : od_levels) ss << v << ",";
                break;
            }
            case Stage::segment:
                ss << "beta=" << segment.beta << ";max_iters=" << segment.max_iters
                   << ";tol=" << segment.tol << ";seed=" << segment.seed
                   << ";restarts=" << segment.kmeans_restarts;
                break;
            case Stage::train: {
                ss << "widths=";
                for (int w : train.hidden_widths) ss << w << ",";
                ss << ";epochs=" << train.epochs << ";batch=" << train.batch_size
                   << ";lr=" << train.learning_rate << ";seed=" << train.seed
                   << ";val=" << train.val_fraction << ";priors=" << prior_channels
                   << ";stride=" << train_stride << ";params=";
                for (const std::string& p : parameters) ss << p << ",";
                break;
            }
            case Stage::predict:
                ss << "stride=" << predict_stride << ";params=";
                for (const std::string& p : parameters) ss << p << ",";
                break;
            case Stage::evaluate:
                ss << "window=" << ssim_window << ";params=";
                for (const std::string& p : parameters) ss << p << ",";
                break;
            case Stage::all:
                break;
        }
        return ss.str();
    }
};

namespace detail {

inline PhantomRegion parse_region_line(const std::string& line, const Config& cfg) {
    std::istringstream ss(line);
    std::string shape;
    ss >> shape;
    PhantomRegion region;
    const std::string where = "phantom.region";
    if (shape == "box") {
        region.shape = PhantomRegion::Shape::box;
        require(static_cast<bool>(ss >> region.a[0] >> region.a[1] >> region.a[2] >>
                                  region.b[0] >> region.b[1] >> region.b[2]),
                Errc::config_invalid, where + ": box needs 6 numbers (corner + size)");
    } else if (shape == "sphere") {
        region.shape = PhantomRegion::Shape::sphere;
        require(static_cast<bool>(ss >> region.a[0] >> region.a[1] >> region.a[2] >>
                                  region.radius),
                Errc::config_invalid, where + ": sphere needs 4 numbers (center + radius)");
    } else {
        fail(Errc::config_invalid, where + ": unknown shape \"" + shape + "\"");
    }

    bool have_tensor = false;
    std::string kv;
    while (ss >> kv) {
        std::size_t eq = kv.find('=');
        require(eq != std::string::npos, Errc::config_invalid,
                where + ": expected key=value, got \"" + kv + "\"");
        std::string key = kv.substr(0, eq);
        std::string val = kv.substr(eq + 1);
        if (key == "tissue") {
            if (val == "csf") region.tissue = 0;
            else if (val == "gm") region.tissue = 1;
            else if (val == "wm") region.tissue = 2;
            else fail(Errc::config_invalid, where + ": tissue must be csf, gm or wm");
        } else if (key == "vic") {
            region.micro.vic = cfg.to_double(val, where + ".vic");
        } else if (key == "viso") {
            region.micro.viso = cfg.to_double(val, where + ".viso");
        } else if (key == "kappa") {
            region.micro.kappa = cfg.to_double(val, where + ".kappa");
        } else if (key == "s0") {
            region.micro.s0 = cfg.to_double(val, where + ".s0");
        } else if (key == "model") {
            if (val == "dti") region.model = PhantomRegion::Model::dti;
            else if (val == "noddi") region.model = PhantomRegion::Model::noddi;
            else fail(Errc::config_invalid, where + ": model must be dti or noddi");
        } else if (key == "mu" || key == "dti") {
            std::vector<double> nums;
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ','))
                nums.push_back(cfg.to_double(tok, where + "." + key));
            require(nums.size() == 3, Errc::config_invalid,
                    where + "." + key + ": expected 3 comma-separated numbers");
            if (key == "mu") {
                Eigen::Vector3d mu(nums[0], nums[1], nums[2]);
                require(mu.norm() > 0, Errc::config_invalid, where + ".mu: zero vector");
                region.micro.mu = mu.normalized();
            } else {
                Eigen::Vector3d ev(nums[0], nums[1], nums[2]);
                region.micro.tensor = frame_from_axis(region.micro.mu) *
                                      Eigen::Vector3d(ev[1], ev[2], ev[0]).asDiagonal() *
                                      frame_from_axis(region.micro.mu).transpose();
                have_tensor = true;
            }
        } else {
            fail(Errc::config_invalid, where + ": unknown key \"" + key + "\"");
        }
    }
    if (!have_tensor)
        region.micro.tensor = tensor_from_noddi(region.micro.vic, region.micro.viso,
                                                region.micro.kappa, region.micro.mu);
    return region;
}

} // namespace detail

inline PipelineConfig load_pipeline_config(const std::string& path) {
    Config cfg = Config::parse_file(path);
    PipelineConfig pc;

    std::vector<int> dims = cfg.get_ints("phantom", "dims", {16, 16, 16});
    require(dims.size() == 3, Errc::config_invalid, "phantom.dims: expected 3 integers");
    pc.phantom.w = dims[0];
    pc.phantom.h = dims[1];
    pc.phantom.s = dims[2];
    std::vector<double> sp = cfg.get_doubles("phantom", "spacing", {1.25, 1.25, 1.25});
    require(sp.size() == 3, Errc::config_invalid, "phantom.spacing: expected 3 numbers");
    pc.phantom.spacing = {sp[0], sp[1], sp[2]};
    pc.phantom.noise_sigma = cfg.get_double("phantom", "noise_sigma", 0.0);
    pc.phantom.seed = static_cast<std::uint64_t>(cfg.get_int("phantom", "seed", 0));
    pc.test_noise_seed = static_cast<std::uint64_t>(
        cfg.get_int("phantom", "test_noise_seed", static_cast<long>(pc.phantom.seed) + 1));
    std::vector<double> t1m = cfg.get_doubles("phantom", "t1_means", {0.2, 0.5, 0.8});
    require(t1m.size() == 3, Errc::config_invalid, "phantom.t1_means: expected 3 numbers");
    pc.t1_means = {t1m[0], t1m[1], t1m[2]};
    pc.t1_noise_sigma = cfg.get_double("phantom", "t1_noise_sigma", 0.0);
    for (const std::string& line : cfg.get_all("phantom", "region"))
        pc.phantom.regions.push_back(detail::parse_region_line(line, cfg));
    if (!pc.phantom.regions.empty()) pc.phantom.validate();

    pc.bvalues = cfg.get_doubles("protocol", "bvalues", pc.bvalues);
    pc.dirs_per_shell = static_cast<int>(cfg.get_int("protocol", "directions_per_shell", 90));
    pc.n_b0 = static_cast<int>(cfg.get_int("protocol", "b0_count", 18));
    pc.bvals_file = cfg.get_string("protocol", "bvals_file", "");
    pc.bvecs_file = cfg.get_string("protocol", "bvecs_file", "");
    require(pc.bvals_file.empty() == pc.bvecs_file.empty(), Errc::config_invalid,
            "protocol.bvals_file and protocol.bvecs_file must be given together");

    pc.k_per_shell = static_cast<int>(cfg.get_int("subsample", "k_per_shell", 6));
    require(pc.k_per_shell >= 1, Errc::config_invalid, "subsample.k_per_shell must be positive");

    pc.ridge_rel = cfg.get_double("fit", "ridge_rel", 1e-5);
    require(pc.ridge_rel >= 0.0, Errc::config_invalid, "fit.ridge_rel must be non-negative");
    pc.vic_levels = cfg.get_doubles("fit", "vic_levels", pc.vic_levels);
    pc.od_levels = cfg.get_doubles("fit", "od_levels", pc.od_levels);

    pc.segment.beta = cfg.get_double("segment", "beta", 1.0);
    pc.segment.max_iters = static_cast<int>(cfg.get_int("segment", "max_iters", 100));
    pc.segment.tol = cfg.get_double("segment", "tol", 1e-4);
    pc.segment.seed = static_cast<std::uint64_t>(cfg.get_int("segment", "seed", 0));
    require(pc.segment.beta >= 0.0, Errc::config_invalid, "segment.beta must be non-negative");
    require(pc.segment.max_iters > 0, Errc::config_invalid,
            "segment.max_iters must be positive");

    std::vector<int> widths = cfg.get_ints("train", "widths", {512, 512});
    pc.train.hidden_widths = widths;
    pc.train.epochs = static_cast<int>(cfg.get_int("train", "epochs", 100));
    pc.train.batch_size = static_cast<int>(cfg.get_int("train", "batch_size", 128));
    pc.train.learning_rate = cfg.get_double("train", "learning_rate", 1e-3);
    pc.train.seed = static_cast<std::uint64_t>(cfg.get_int("train", "seed", 0));
    pc.train.val_fraction = cfg.get_double("train", "val_fraction", 0.1);
    pc.prior_channels = cfg.get_bool("train", "prior_channels", true);
    pc.train_stride = static_cast<int>(cfg.get_int("train", "stride", 1));
    require(pc.train.epochs > 0, Errc::config_invalid, "train.epochs must be positive");
    require(pc.train.batch_size > 0, Errc::config_invalid, "train.batch_size must be positive");
    require(pc.train.learning_rate > 0, Errc::config_invalid,
            "train.learning_rate must be positive");
    require(pc.train_stride >= 1 && pc.train_stride <= 4, Errc::config_invalid,
            "train.stride must be in 1..4");

    pc.predict_stride = static_cast<int>(cfg.get_int("predict", "stride", 2));
    require(pc.predict_stride >= 1 && pc.predict_stride <= 4, Errc::config_invalid,
            "predict.stride must be in 1..4");

    pc.ssim_window = static_cast<int>(cfg.get_int("evaluate", "ssim_window", 7));
    require(pc.ssim_window >= 3 && pc.ssim_window % 2 == 1, Errc::config_invalid,
            "evaluate.ssim_window must be odd and >= 3");
    pc.parameters = cfg.get_strings("evaluate", "parameters", pc.parameters);
    require(!pc.parameters.empty(), Errc::config_invalid, "evaluate.parameters is empty");

    pc.out_dir = cfg.get_string("output", "dir", "out");
    return pc;
}

struct RunOptions {
    std::string out_dir; // overrides config when non-empty
    int workers = 1;
    bool force = false;          // ignore manifests, always recompute
    std::int64_t seed_override = -1; // overrides train seed when >= 0
    bool verbose = true;
};

class Pipeline {
public:
    Pipeline(PipelineConfig config, RunOptions options)
        : cfg_(std::move(config)), opt_(std::move(options)) {
        if (!opt_.out_dir.empty()) cfg_.out_dir = opt_.out_dir;
        if (opt_.seed_override >= 0)
            cfg_.train.seed = static_cast<std::uint64_t>(opt_.seed_override);
    }

    const PipelineConfig& config() const { return cfg_; }

    void run(Stage stage) {
        if (stage == Stage::all) {
            for (Stage s : {Stage::phantom, Stage::subsample, Stage::fit_dti, Stage::fit_noddi,
                            Stage::segment, Stage::train, Stage::predict, Stage::evaluate})
                run(s);
            return;
        }
        namespace fs = std::filesystem;
        fs::create_directories(out());
        fs::create_directories(out() + "/manifests");

        std::vector<std::string> inputs = stage_inputs(stage);
        std::vector<std::string> outputs = stage_outputs(stage);
        for (const std::string& in : inputs) check_dependency(in);

        if (!opt_.force && manifest_matches(stage, inputs, outputs)) {
            note("[" + std::string(stage_name(stage)) + "] up to date, skipping");
            return;
        }

        note("[" + std::string(stage_name(stage)) + "] running");
        switch (stage) {
            case Stage::phantom: run_phantom(); break;
            case Stage::subsample: run_subsample(); break;
            case Stage::fit_dti: run_fit_dti(); break;
            case Stage::fit_noddi: run_fit_noddi(); break;
            case Stage::segment: run_segment(); break;
            case Stage::train: run_train(); break;
            case Stage::predict: run_predict(); break;
            case Stage::evaluate: run_evaluate(); break;
            case Stage::all: break;
        }
        write_manifest(stage, inputs, outputs);
    }

private:
    PipelineConfig cfg_;
    RunOptions opt_;

    std::string out() const { return cfg_.out_dir; }

    void note(const std::string& msg) const {
        if (opt_.verbose) std::printf("%s\n", msg.c_str());
    }

    static const char* dataset_name(int ds) { return ds == 0 ? "train" : "test"; }
    std::string ds_dir(int ds) const { return out() + "/" + dataset_name(ds); }

    // ---- artifact bookkeeping ----

    std::vector<std::string> stage_inputs(Stage stage) const {
        std::vector<std::string> in;
        auto both = [&](const std::string& rel) {
            in.push_back(ds_dir(0) + "/" + rel);
            in.push_back(ds_dir(1) + "/" + rel);
        };
        switch (stage) {
            case Stage::phantom:
                break;
            case Stage::subsample:
                both("dwi.nii");
                both("bvals.txt");
                both("bvecs.txt");
                break;
            case Stage::fit_dti:
                both("dwi.nii");
                both("bvals.txt");
                both("bvecs.txt");
                both("mask.nii");
                both("sparse/dwi.nii");
                both("sparse/bvals.txt");
                both("sparse/bvecs.txt");
                break;
            case Stage::fit_noddi:
                both("dwi.nii");
                both("mask.nii");
                both("sparse/dwi.nii");
                both("fit_full/dirs.nii");
                both("fit_sparse/dirs.nii");
                break;
            case Stage::segment:
                both("t1.nii");
                both("mask.nii");
                break;
            case Stage::train: {
                std::string d = ds_dir(0) + "/";
                in.push_back(d + "sparse/dwi.nii");
                in.push_back(d + "sparse/bvals.txt");
                in.push_back(d + "sparse/bvecs.txt");
                in.push_back(d + "mask.nii");
                if (cfg_.prior_channels)
                    for (const char* p : {"pve_csf.nii", "pve_gm.nii", "pve_wm.nii"})
                        in.push_back(d + "priors/" + std::string(p));
                for (const std::string& p : cfg_.parameters)
                    in.push_back(d + "fit_full/" + p + ".nii");
                break;
            }
            case Stage::predict: {
                std::string d = ds_dir(1) + "/";
                in.push_back(out() + "/weights.bin");
                in.push_back(d + "sparse/dwi.nii");
                in.push_back(d + "sparse/bvals.txt");
                in.push_back(d + "sparse/bvecs.txt");
                in.push_back(d + "mask.nii");
                if (cfg_.prior_channels)
                    for (const char* p : {"pve_csf.nii", "pve_gm.nii", "pve_wm.nii"})
                        in.push_back(d + "priors/" + std::string(p));
                break;
            }
            case Stage::evaluate: {
                std::string d = ds_dir(1) + "/";
                in.push_back(d + "mask.nii");
                in.push_back(d + "sparse/bvals.txt");
                in.push_back(d + "sparse/bvecs.txt");
                for (const std::string& p : cfg_.parameters) {
                    in.push_back(d + "fit_full/" + p + ".nii");
                    in.push_back(d + "fit_sparse/" + p + ".nii");
                    in.push_back(out() + "/pred/" + p + ".nii");
                }
                break;
            }
            case Stage::all:
                break;
        }
        return in;
    }

    std::vector<std::string> stage_outputs(Stage stage) const {
        std::vector<std::string> o;
        auto both = [&](const std::string& rel) {
            o.push_back(ds_dir(0) + "/" + rel);
            o.push_back(ds_dir(1) + "/" + rel);
        };
        switch (stage) {
            case Stage::phantom: {
                for (const char* f : {"dwi.nii", "bvals.txt", "bvecs.txt", "t1.nii", "mask.nii",
                                      "labels.nii"})
                    both(f);
                for (const char* p : {"fa", "md", "ad", "rd", "vic", "viso", "od"})
                    both("truth/" + std::string(p) + ".nii");
                break;
            }
            case Stage::subsample:
                for (const char* f : {"sparse/plan.txt", "sparse/dwi.nii", "sparse/bvals.txt",
                                      "sparse/bvecs.txt"})
                    both(f);
                break;
            case Stage::fit_dti:
                for (const char* f : {"fit_full/fa.nii", "fit_full/md.nii", "fit_full/ad.nii",
                                      "fit_full/rd.nii", "fit_full/tensor.nii",
                                      "fit_full/dirs.nii", "fit_sparse/fa.nii",
                                      "fit_sparse/md.nii", "fit_sparse/ad.nii",
                                      "fit_sparse/rd.nii", "fit_sparse/tensor.nii",
                                      "fit_sparse/dirs.nii"})
                    both(f);
                break;
            case Stage::fit_noddi:
                for (const char* f : {"fit_full/vic.nii", "fit_full/viso.nii", "fit_full/od.nii",
                                      "fit_sparse/vic.nii", "fit_sparse/viso.nii",
                                      "fit_sparse/od.nii"})
                    both(f);
                break;
            case Stage::segment:
                for (const char* f : {"priors/pve_csf.nii", "priors/pve_gm.nii",
                                      "priors/pve_wm.nii"})
                    both(f);
                break;
            case Stage::train:
                o.push_back(out() + "/weights.bin");
                o.push_back(out() + "/history.csv");
                break;
            case Stage::predict:
                for (const std::string& p : cfg_.parameters)
                    o.push_back(out() + "/pred/" + p + ".nii");
                break;
            case Stage::evaluate:
                o.push_back(out() + "/metrics.csv");
                o.push_back(out() + "/metrics.txt");
                break;
            case Stage::all:
                break;
        }
        return o;
    }

    // Which stage produces a given artifact (for dependency errors).
    std::string producer_of(const std::string& path) const {
        auto has = [&](const std::string& sub) { return path.find(sub) != std::string::npos; };
        if (has("/sparse/")) return "subsample";
        if (has("/fit_full/dirs") || has("/fit_sparse/dirs") || has("/fit_full/tensor") ||
            has("/fit_sparse/tensor"))
            return "fit-dti";
        if (has("vic.nii") || has("viso.nii") || has("od.nii")) return "fit-noddi";
        if (has("/fit_full/") || has("/fit_sparse/")) return "fit-dti";
        if (has("/priors/")) return "segment";
        if (has("weights.bin") || has("history.csv")) return "train";
        if (has("/pred/")) return "predict";
        return "phantom";
    }

    void check_dependency(const std::string& path) const {
        if (!std::filesystem::exists(path))
            fail(Errc::dependency_missing, "missing input artifact " + path + "; run stage '" +
                                               producer_of(path) + "' first");
    }

    std::string manifest_path(Stage stage) const {
        return out() + "/manifests/" + stage_name(stage) + ".json";
    }

    bool manifest_matches(Stage stage, const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs) const {
        namespace fs = std::filesystem;
        std::string mpath = manifest_path(stage);
        if (!fs::exists(mpath)) return false;
        nlohmann::json manifest;
        try {
            std::ifstream in(mpath);
            in >> manifest;
        } catch (const std::exception&) {
            return false;
        }
        if (manifest.value("options_digest", "") != sha256_hex(cfg_.stage_options_echo(stage)))
            return false;
        auto check = [&](const char* key, const std::vector<std::string>& paths) {
            if (!manifest.contains(key)) return paths.empty();
            const nlohmann::json& rec = manifest[key];
            if (rec.size() != paths.size()) return false;
            for (const std::string& p : paths) {
                if (!fs::exists(p)) return false;
                if (!rec.contains(p) || rec[p] != sha256_file(p)) return false;
            }
            return true;
        };
        return check("inputs", inputs) && check("outputs", outputs);
    }

    void write_manifest(Stage stage, const std::vector<std::string>& inputs,
                        const std::vector<std::string>& outputs) const {
        nlohmann::json manifest;
        manifest["stage"] = stage_name(stage);
        manifest["options"] = cfg_.stage_options_echo(stage);
        manifest["options_digest"] = sha256_hex(cfg_.stage_options_echo(stage));
        nlohmann::json jin = nlohmann::json::object();
        for (const std::string& p : inputs) jin[p] = sha256_file(p);
        manifest["inputs"] = jin;
        nlohmann::json jout = nlohmann::json::object();
        for (const std::string& p : outputs) jout[p] = sha256_file(p);
        manifest["outputs"] = jout;
        std::ofstream outf(manifest_path(stage), std::ios::trunc);
        require(static_cast<bool>(outf), Errc::io_failure,
                "cannot write manifest " + manifest_path(stage));
        outf << manifest.dump(2) << "\n";
    }

    // ---- stages ----

    void run_phantom() {
        require(!cfg_.phantom.regions.empty(), Errc::config_invalid,
                "phantom.region: at least one region is required");
        GradientTable protocol = cfg_.protocol();
        for (int ds = 0; ds < 2; ++ds) {
            PhantomSpec spec = cfg_.phantom;
            if (ds == 1) spec.seed = cfg_.test_noise_seed;
            PhantomData data = build_phantom(spec, protocol);
            Volume4D t1 = synth_t1(data.labels, cfg_.t1_means, cfg_.t1_noise_sigma,
                                   spec.seed ^ 0x71f1u);

            std::string d = ds_dir(ds);
            std::filesystem::create_directories(d + "/truth");
            write_nifti(data.signals, d + "/dwi.nii");
            write_gradient_table(protocol, d + "/bvals.txt", d + "/bvecs.txt");
            write_nifti(t1, d + "/t1.nii");
            write_nifti(data.mask, d + "/mask.nii");
            write_nifti(data.labels, d + "/labels.nii");
            for (const auto& [name, vol] : data.truth.maps)
                write_nifti(vol, d + "/truth/" + name + ".nii");
        }
    }

    void run_subsample() {
        for (int ds = 0; ds < 2; ++ds) {
            std::string d = ds_dir(ds);
            Volume4D dwi = read_nifti(d + "/dwi.nii");
            GradientTable table = read_gradient_table(d + "/bvals.txt", d + "/bvecs.txt");
            SubsamplingPlan plan = make_plan(table, cfg_.k_per_shell);
            auto [sparse_dwi, sparse_table] = apply_plan(dwi, table, plan);
            std::filesystem::create_directories(d + "/sparse");
            write_plan(plan, d + "/sparse/plan.txt");
            write_nifti(sparse_dwi, d + "/sparse/dwi.nii");
            write_gradient_table(sparse_table, d + "/sparse/bvals.txt", d + "/sparse/bvecs.txt");
        }
    }

    void fit_dti_one(const std::string& dir, const std::string& dwi_path,
                     const std::string& bvals, const std::string& bvecs,
                     const Volume4D& mask) {
        Volume4D dwi = read_nifti(dwi_path);
        GradientTable table = read_gradient_table(bvals, bvecs);
        DtiVolumeFit fit = fit_dti_volume(dwi, table, mask, opt_.workers);
        std::filesystem::create_directories(dir);
        for (const auto& [name, vol] : fit.scalars.maps)
            write_nifti(vol, dir + "/" + name + ".nii");
        write_nifti(fit.tensor, dir + "/tensor.nii");
        write_nifti(fit.principal_dir, dir + "/dirs.nii");
    }

    void run_fit_dti() {
        for (int ds = 0; ds < 2; ++ds) {
            std::string d = ds_dir(ds);
            Volume4D mask = read_nifti(d + "/mask.nii");
            fit_dti_one(d + "/fit_full", d + "/dwi.nii", d + "/bvals.txt", d + "/bvecs.txt",
                        mask);
            fit_dti_one(d + "/fit_sparse", d + "/sparse/dwi.nii", d + "/sparse/bvals.txt",
                        d + "/sparse/bvecs.txt", mask);
        }
    }

    void fit_noddi_one(const std::string& dir, const std::string& dwi_path,
                       const std::string& bvals, const std::string& bvecs,
                       const Volume4D& mask) {
        Volume4D dwi = read_nifti(dwi_path);
        GradientTable table = read_gradient_table(bvals, bvecs);
        Volume4D dirs = read_nifti(dir + "/dirs.nii");
        NoddiDictionary dict = build_dictionary(table, cfg_.vic_levels, cfg_.kappa_levels());
        NoddiFitOptions opts;
        opts.ridge_rel = cfg_.ridge_rel;
        opts.workers = opt_.workers;
        ParamMaps maps = fit_noddi_volume(dwi, table, mask, dirs, dict, opts);
        for (const auto& [name, vol] : maps.maps) write_nifti(vol, dir + "/" + name + ".nii");
    }

    void run_fit_noddi() {
        for (int ds = 0; ds < 2; ++ds) {
            std::string d = ds_dir(ds);
            Volume4D mask = read_nifti(d + "/mask.nii");
            fit_noddi_one(d + "/fit_full", d + "/dwi.nii", d + "/bvals.txt", d + "/bvecs.txt",
                          mask);
            fit_noddi_one(d + "/fit_sparse", d + "/sparse/dwi.nii", d + "/sparse/bvals.txt",
                          d + "/sparse/bvecs.txt", mask);
        }
    }

    void run_segment() {
        for (int ds = 0; ds < 2; ++ds) {
            std::string d = ds_dir(ds);
            Volume4D t1 = read_nifti(d + "/t1.nii");
            Volume4D mask = read_nifti(d + "/mask.nii");
            HmrfResult res = segment_hmrf(t1, mask, cfg_.segment);
            if (!res.converged)
                note("[segment] warning: " + std::string(dataset_name(ds)) +
                     " did not converge in " + std::to_string(cfg_.segment.max_iters) +
                     " iterations");
            std::filesystem::create_directories(d + "/priors");
            write_nifti(res.maps.p_csf, d + "/priors/pve_csf.nii");
            write_nifti(res.maps.p_gm, d + "/priors/pve_gm.nii");
            write_nifti(res.maps.p_wm, d + "/priors/pve_wm.nii");
        }
    }

    // Split a sparse acquisition into DWI-only channels plus the mean-b0
    // volume the estimator expects.
    struct EstimatorInputs {
        Volume4D dwi;     // non-b0 channels only
        Volume4D b0_mean; // D = 1
    };

    EstimatorInputs estimator_inputs(const Volume4D& sparse, const GradientTable& table) const {
        std::vector<int> b0s = table.b0_indices();
        require(!b0s.empty(), Errc::invalid_argument, "sparse data has no b0 volume");
        EstimatorInputs out;
        out.b0_mean = Volume4D(sparse.w, sparse.h, sparse.s, 1, Intent::signal);
        out.b0_mean.spacing = sparse.spacing;
        const std::size_t nvox = sparse.voxels();
        for (int i : b0s)
            for (std::size_t v = 0; v < nvox; ++v)
                out.b0_mean.data[v] += sparse.data[v + static_cast<std::size_t>(i) * nvox];
        for (std::size_t v = 0; v < nvox; ++v)
            out.b0_mean.data[v] /= static_cast<double>(b0s.size());

        int n_dwi = sparse.d - static_cast<int>(b0s.size());
        require(n_dwi > 0, Errc::invalid_argument, "sparse data has no diffusion-weighted volume");
        out.dwi = Volume4D(sparse.w, sparse.h, sparse.s, n_dwi, Intent::signal);
        out.dwi.spacing = sparse.spacing;
        int t = 0;
        for (int i = 0; i < sparse.d; ++i) {
            if (table.is_b0(i)) continue;
            std::copy(sparse.data.begin() + static_cast<std::ptrdiff_t>(i * nvox),
                      sparse.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * nvox),
                      out.dwi.data.begin() + static_cast<std::ptrdiff_t>(t * nvox));
            ++t;
        }
        return out;
    }

    TissueProbMaps load_priors(const std::string& d) const {
        TissueProbMaps priors;
        priors.p_csf = read_nifti(d + "/priors/pve_csf.nii");
        priors.p_gm = read_nifti(d + "/priors/pve_gm.nii");
        priors.p_wm = read_nifti(d + "/priors/pve_wm.nii");
        return priors;
    }

    void run_train() {
        std::string d = ds_dir(0);
        Volume4D sparse = read_nifti(d + "/sparse/dwi.nii");
        GradientTable table =
            read_gradient_table(d + "/sparse/bvals.txt", d + "/sparse/bvecs.txt");
        Volume4D mask = read_nifti(d + "/mask.nii");
        EstimatorInputs in = estimator_inputs(sparse, table);

        TissueProbMaps priors;
        if (cfg_.prior_channels) priors = load_priors(d);

        ParamMaps targets;
        for (const std::string& p : cfg_.parameters)
            targets.set(p, read_nifti(d + "/fit_full/" + p + ".nii"));

        PatchDataset patches = extract_patches(in.dwi, in.b0_mean,
                                               cfg_.prior_channels ? &priors : nullptr, &targets,
                                               cfg_.parameters, mask, cfg_.train_stride);
        TrainResult result = train(patches, cfg_.train);

        std::ostringstream echo;
        echo << cfg_.stage_options_echo(Stage::train);
        result.weights.config_echo = echo.str();
        save_weights(result.weights, out() + "/weights.bin");

        std::ofstream hist(out() + "/history.csv", std::ios::trunc);
        require(static_cast<bool>(hist), Errc::io_failure, "cannot write history.csv");
        hist << "epoch,train_loss,val_loss\n";
        char buf[96];
        for (std::size_t e = 0; e < result.history.train_loss.size(); ++e) {
            std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g\n", e + 1,
                          result.history.train_loss[e], result.history.val_loss[e]);
            hist << buf;
        }
    }

    void run_predict() {
        std::string d = ds_dir(1);
        EstimatorWeights net = load_weights(out() + "/weights.bin");
        Volume4D sparse = read_nifti(d + "/sparse/dwi.nii");
        GradientTable table =
            read_gradient_table(d + "/sparse/bvals.txt", d + "/sparse/bvecs.txt");
        Volume4D mask = read_nifti(d + "/mask.nii");
        EstimatorInputs in = estimator_inputs(sparse, table);
        TissueProbMaps priors;
        if (cfg_.prior_channels) priors = load_priors(d);

        ParamMaps pred = predict_volume(net, in.dwi, in.b0_mean,
                                        cfg_.prior_channels ? &priors : nullptr, mask,
                                        cfg_.parameters, cfg_.predict_stride, opt_.workers);
        std::filesystem::create_directories(out() + "/pred");
        for (const auto& [name, vol] : pred.maps)
            write_nifti(vol, out() + "/pred/" + name + ".nii");
    }

    void run_evaluate() {
        std::string d = ds_dir(1);
        Volume4D mask = read_nifti(d + "/mask.nii");
        ParamMaps gt, mf, ours;
        for (const std::string& p : cfg_.parameters) {
            gt.set(p, read_nifti(d + "/fit_full/" + p + ".nii"));
            mf.set(p, read_nifti(d + "/fit_sparse/" + p + ".nii"));
            ours.set(p, read_nifti(out() + "/pred/" + p + ".nii"));
        }
        int n_dwi = 0;
        {
            GradientTable table =
                read_gradient_table(d + "/sparse/bvals.txt", d + "/sparse/bvecs.txt");
            n_dwi = table.size() - static_cast<int>(table.b0_indices().size());
        }
        std::string protocol = std::to_string(n_dwi) + " DWIs";

        MetricsReport mf_rep = evaluate(gt, mf, mask, cfg_.parameters, cfg_.ssim_window);
        mf_rep.method = "MF";
        mf_rep.protocol = protocol;
        MetricsReport ours_rep = evaluate(gt, ours, mask, cfg_.parameters, cfg_.ssim_window);
        ours_rep.method = "Ours";
        ours_rep.protocol = protocol;

        std::vector<MetricsReport> reports{mf_rep, ours_rep};
        write_metrics_csv(reports, out() + "/metrics.csv");
        write_metrics_table(reports, out() + "/metrics.txt");

        char buf[128];
        std::snprintf(buf, sizeof(buf), "[evaluate] avg PSNR: MF %.4f dB, Ours %.4f dB",
                      mf_rep.psnr_average, ours_rep.psnr_average);
        note(buf);
    }
};

} // namespace dmri
