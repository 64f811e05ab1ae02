#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "dmri/core.hpp"
#include "dmri/hmrf.hpp"
#include "dmri/parallel.hpp"
#include "dmri/phantom.hpp"

namespace dmri {

inline constexpr int kPatchEdge = 4;
inline constexpr int kPatchVoxels = kPatchEdge * kPatchEdge * kPatchEdge;
inline constexpr double kDwiClip = 1.5;
inline constexpr double kLeakySlope = 0.01;

// Per-parameter scale applied to targets during training and inverted at
// prediction, so diffusivity-valued maps contribute to the loss at O(1).
struct TargetScaling {
    std::vector<std::string> names;
    std::vector<double> scale;

    static TargetScaling for_params(const std::vector<std::string>& params) {
        TargetScaling t;
        t.names = params;
        for (const std::string& p : params)
            t.scale.push_back((p == "md" || p == "ad" || p == "rd") ? 1e3 : 1.0);
        return t;
    }
};

struct PatchDataset {
    int c_in = 0;
    int p_out = 0;
    Eigen::MatrixXd inputs;  // N x (c_in * 64), channel-major within a row
    Eigen::MatrixXd targets; // N x (p_out * 64); empty when extracting for prediction
    std::vector<std::array<int, 3>> origins;
    TargetScaling scaling;
};

// Cuts 4^3 windows anchored on the stride lattice, keeping windows that lie
// fully inside the volume and intersect the mask. Channel order is fixed:
// DWI channels (divided by the voxel's mean b0, clipped), the mean-b0
// channel (rescaled to unit mean over the mask), then the three tissue
// priors.
inline PatchDataset extract_patches(const Volume4D& sparse_dwi, const Volume4D& b0_mean,
                                    const TissueProbMaps* priors, const ParamMaps* targets,
                                    const std::vector<std::string>& target_names,
                                    const Volume4D& mask, int stride) {
    require(stride >= 1 && stride <= kPatchEdge, Errc::invalid_argument,
            "stride must be in 1..4");
    require(sparse_dwi.same_grid(mask) && sparse_dwi.same_grid(b0_mean), Errc::bad_dimension,
            "input grids differ");
    if (priors)
        require(sparse_dwi.same_grid(priors->p_csf), Errc::bad_dimension,
                "prior grid differs from data grid");
    bool any_mask = false;
    for (double v : mask.data)
        if (v != 0.0) any_mask = true;
    require(any_mask, Errc::degenerate_input, "mask is empty");

    const std::size_t nvox = sparse_dwi.voxels();
    double b0_mask_mean = 0.0;
    std::size_t mask_count = 0;
    for (std::size_t v = 0; v < nvox; ++v)
        if (mask.data[v] != 0.0) {
            b0_mask_mean += b0_mean.data[v];
            ++mask_count;
        }
    b0_mask_mean /= static_cast<double>(mask_count);
    require(b0_mask_mean > 0.0, Errc::degenerate_input, "mean b0 over mask is not positive");

    PatchDataset ds;
    ds.c_in = sparse_dwi.d + 1 + (priors ? 3 : 0);
    ds.p_out = targets ? static_cast<int>(target_names.size()) : 0;
    ds.scaling = TargetScaling::for_params(target_names);

    std::vector<const Volume4D*> target_vols;
    if (targets)
        for (const std::string& name : target_names) target_vols.push_back(&targets->get(name));

    std::vector<std::array<int, 3>> origins;
    for (int z = 0; z + kPatchEdge <= sparse_dwi.s; z += stride)
        for (int y = 0; y + kPatchEdge <= sparse_dwi.h; y += stride)
            for (int x = 0; x + kPatchEdge <= sparse_dwi.w; x += stride) {
                bool hit = false;
                for (int dz = 0; dz < kPatchEdge && !hit; ++dz)
                    for (int dy = 0; dy < kPatchEdge && !hit; ++dy)
                        for (int dx = 0; dx < kPatchEdge && !hit; ++dx)
                            if (mask.at(x + dx, y + dy, z + dz) != 0.0) hit = true;
                if (hit) origins.push_back({x, y, z});
            }

    ds.origins = origins;
    ds.inputs.resize(static_cast<Eigen::Index>(origins.size()), ds.c_in * kPatchVoxels);
    if (targets)
        ds.targets.resize(static_cast<Eigen::Index>(origins.size()), ds.p_out * kPatchVoxels);

    for (std::size_t p = 0; p < origins.size(); ++p) {
        auto [ox, oy, oz] = origins[p];
        int col = 0;
        // DWI channels
        for (int c = 0; c < sparse_dwi.d; ++c)
            for (int dz = 0; dz < kPatchEdge; ++dz)
                for (int dy = 0; dy < kPatchEdge; ++dy)
                    for (int dx = 0; dx < kPatchEdge; ++dx) {
                        std::size_t v = sparse_dwi.index(ox + dx, oy + dy, oz + dz);
                        double b0 = b0_mean.data[v];
                        double val = b0 > 0.0 ? sparse_dwi.data[v + static_cast<std::size_t>(c) * nvox] / b0
                                              : 0.0;
                        ds.inputs(p, col++) = std::clamp(val, 0.0, kDwiClip);
                    }
        // mean-b0 channel
        for (int dz = 0; dz < kPatchEdge; ++dz)
            for (int dy = 0; dy < kPatchEdge; ++dy)
                for (int dx = 0; dx < kPatchEdge; ++dx)
                    ds.inputs(p, col++) =
                        b0_mean.at(ox + dx, oy + dy, oz + dz) / b0_mask_mean;
        // tissue priors
        if (priors)
            for (int k = 0; k < 3; ++k)
                for (int dz = 0; dz < kPatchEdge; ++dz)
                    for (int dy = 0; dy < kPatchEdge; ++dy)
                        for (int dx = 0; dx < kPatchEdge; ++dx)
                            ds.inputs(p, col++) = priors->prob(k).at(ox + dx, oy + dy, oz + dz);

        if (targets) {
            int tcol = 0;
            for (int t = 0; t < ds.p_out; ++t)
                for (int dz = 0; dz < kPatchEdge; ++dz)
                    for (int dy = 0; dy < kPatchEdge; ++dy)
                        for (int dx = 0; dx < kPatchEdge; ++dx)
                            ds.targets(p, tcol++) =
                                target_vols[t]->at(ox + dx, oy + dy, oz + dz) * ds.scaling.scale[t];
        }
    }
    require(ds.inputs.allFinite() && (!targets || ds.targets.allFinite()), Errc::numeric_failure,
            "non-finite values in extracted patches");
    return ds;
}

enum class Activation : std::uint32_t { linear = 0, leaky_relu = 1 };

struct EstimatorWeights {
    struct Layer {
        Eigen::MatrixXd w; // rows = outputs, cols = inputs
        Eigen::VectorXd b;
    };
    std::vector<Layer> layers;
    Activation hidden_activation = Activation::leaky_relu;
    std::uint64_t seed = 0;
    std::string config_echo;

    int input_size() const { return layers.empty() ? 0 : static_cast<int>(layers.front().w.cols()); }
    int output_size() const { return layers.empty() ? 0 : static_cast<int>(layers.back().w.rows()); }

    void validate() const {
        require(!layers.empty(), Errc::invalid_argument, "no layers");
        for (std::size_t i = 0; i < layers.size(); ++i) {
            require(layers[i].w.allFinite() && layers[i].b.allFinite(), Errc::numeric_failure,
                    "non-finite weights in layer " + std::to_string(i));
            require(layers[i].w.rows() == layers[i].b.size(), Errc::bad_dimension,
                    "bias length mismatch in layer " + std::to_string(i));
            if (i > 0)
                require(layers[i].w.cols() == layers[i - 1].w.rows(), Errc::bad_dimension,
                        "layer " + std::to_string(i) + " input size mismatch");
        }
    }
};

// Fully connected network on flattened patches; hidden layers use the leaky
// rectifier, the head is linear.
inline EstimatorWeights init_weights(int input, const std::vector<int>& hidden, int output,
                                     std::uint64_t seed) {
    require(input > 0 && output > 0, Errc::invalid_argument, "layer sizes must be positive");
    EstimatorWeights net;
    net.seed = seed;
    std::vector<int> sizes;
    sizes.push_back(input);
    for (int h : hidden) {
        require(h > 0, Errc::invalid_argument, "layer sizes must be positive");
        sizes.push_back(h);
    }
    sizes.push_back(output);

    detail::SplitMix64 rng(detail::mix_seed(seed, 0xe57));
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        EstimatorWeights::Layer layer;
        int fan_in = sizes[l], fan_out = sizes[l + 1];
        double bound = std::sqrt(6.0 / (fan_in + fan_out));
        layer.w.resize(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c)
                layer.w(r, c) = bound * (2.0 * rng.uniform() - 1.0);
        layer.b = Eigen::VectorXd::Zero(fan_out);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

namespace detail {

struct ForwardTrace {
    std::vector<Eigen::MatrixXd> pre;  // pre-activation per layer, N x width
    std::vector<Eigen::MatrixXd> post; // post-activation (post[0] is the input)
};

inline Eigen::MatrixXd forward_trace(const EstimatorWeights& net, const Eigen::MatrixXd& batch,
                                     ForwardTrace* trace) {
    Eigen::MatrixXd act = batch;
    if (trace) trace->post.push_back(act);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        Eigen::MatrixXd z =
            (act * net.layers[l].w.transpose()).rowwise() + net.layers[l].b.transpose();
        if (trace) trace->pre.push_back(z);
        bool last = l + 1 == net.layers.size();
        if (!last && net.hidden_activation == Activation::leaky_relu)
            act = z.unaryExpr([](double v) { return v > 0.0 ? v : kLeakySlope * v; });
        else
            act = z;
        if (trace) trace->post.push_back(act);
    }
    return act;
}

} // namespace detail

inline Eigen::MatrixXd forward(const EstimatorWeights& net, const Eigen::MatrixXd& batch) {
    net.validate();
    require(batch.cols() == net.input_size(), Errc::bad_dimension,
            "batch has " + std::to_string(batch.cols()) + " columns, network expects " +
                std::to_string(net.input_size()));
    return detail::forward_trace(net, batch, nullptr);
}

// Squared L2 data-fidelity loss, averaged over the batch.
inline double loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& gt) {
    require(pred.rows() == gt.rows() && pred.cols() == gt.cols(), Errc::bad_dimension,
            "prediction and target shapes differ");
    require(pred.allFinite() && gt.allFinite(), Errc::numeric_failure, "non-finite loss inputs");
    return (pred - gt).squaredNorm() / static_cast<double>(pred.rows());
}

struct WeightGradients {
    std::vector<Eigen::MatrixXd> dw;
    std::vector<Eigen::VectorXd> db;
    double loss_value = 0.0;
};

// Reverse-mode gradient of loss(forward(batch)) with respect to every weight
// and bias.
inline WeightGradients loss_gradient(const EstimatorWeights& net, const Eigen::MatrixXd& batch,
                                     const Eigen::MatrixXd& targets) {
    net.validate();
    require(batch.cols() == net.input_size(), Errc::bad_dimension, "batch width mismatch");
    require(targets.rows() == batch.rows() && targets.cols() == net.output_size(),
            Errc::bad_dimension, "target shape mismatch");

    detail::ForwardTrace trace;
    Eigen::MatrixXd pred = detail::forward_trace(net, batch, &trace);

    WeightGradients g;
    g.loss_value = loss(pred, targets);
    g.dw.resize(net.layers.size());
    g.db.resize(net.layers.size());

    const double inv_n = 1.0 / static_cast<double>(batch.rows());
    Eigen::MatrixXd delta = 2.0 * inv_n * (pred - targets); // d loss / d pre[last]
    for (int l = static_cast<int>(net.layers.size()) - 1; l >= 0; --l) {
        g.dw[l] = delta.transpose() * trace.post[l];
        g.db[l] = delta.colwise().sum();
        if (l > 0) {
            delta = delta * net.layers[l].w;
            if (net.hidden_activation == Activation::leaky_relu)
                delta.array() *=
                    trace.pre[l - 1].unaryExpr([](double v) { return v > 0.0 ? 1.0 : kLeakySlope; })
                        .array();
        }
    }
    return g;
}

struct TrainConfig {
    std::vector<int> hidden_widths{512, 512};
    int epochs = 100;
    int batch_size = 128;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    double val_fraction = 0.1;
};

struct TrainHistory {
    std::vector<double> train_loss; // per epoch
    std::vector<double> val_loss;
};

struct TrainResult {
    EstimatorWeights weights;
    TrainHistory history;
};

// Mini-batch optimisation with adaptive moment estimates. Fully seeded:
// identical config + data reproduce identical weights bit for bit in
// single-threaded mode.
inline TrainResult train(const PatchDataset& dataset, const TrainConfig& cfg) {
    require(dataset.inputs.rows() > 0, Errc::degenerate_input, "empty dataset");
    require(dataset.targets.rows() == dataset.inputs.rows(), Errc::bad_dimension,
            "dataset has no targets");
    require(cfg.epochs > 0 && cfg.batch_size > 0 && cfg.learning_rate > 0.0,
            Errc::invalid_argument, "invalid training config");
    require(cfg.val_fraction >= 0.0 && cfg.val_fraction < 1.0, Errc::invalid_argument,
            "val_fraction must be in [0,1)");

    const int n = static_cast<int>(dataset.inputs.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    detail::SplitMix64 rng(detail::mix_seed(cfg.seed, 0x7ea1));
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
    }
    int n_val = static_cast<int>(std::floor(cfg.val_fraction * n));
    if (n_val >= n) n_val = n - 1;
    std::vector<int> val_idx(order.begin(), order.begin() + n_val);
    std::vector<int> train_idx(order.begin() + n_val, order.end());

    auto gather = [&](const Eigen::MatrixXd& m, const std::vector<int>& idx) {
        Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
        return out;
    };
    Eigen::MatrixXd val_x, val_y;
    if (n_val > 0) {
        val_x = gather(dataset.inputs, val_idx);
        val_y = gather(dataset.targets, val_idx);
    }

    TrainResult result;
    result.weights = init_weights(static_cast<int>(dataset.inputs.cols()), cfg.hidden_widths,
                                  static_cast<int>(dataset.targets.cols()), cfg.seed);
    EstimatorWeights& net = result.weights;

    // adaptive moment state
    std::vector<Eigen::MatrixXd> mw, vw;
    std::vector<Eigen::VectorXd> mb, vb;
    for (const auto& layer : net.layers) {
        mw.push_back(Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()));
        vw.push_back(Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()));
        mb.push_back(Eigen::VectorXd::Zero(layer.b.size()));
        vb.push_back(Eigen::VectorXd::Zero(layer.b.size()));
    }
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    long step = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        detail::SplitMix64 shuffle_rng(detail::mix_seed(cfg.seed, 0x100 + epoch));
        for (int i = static_cast<int>(train_idx.size()) - 1; i > 0; --i) {
            int j = static_cast<int>(shuffle_rng.next() % static_cast<std::uint64_t>(i + 1));
            std::swap(train_idx[i], train_idx[j]);
        }

        double epoch_loss = 0.0;
        int n_batches = 0;
        for (std::size_t start = 0; start < train_idx.size(); start += cfg.batch_size) {
            std::size_t stop = std::min(train_idx.size(), start + cfg.batch_size);
            std::vector<int> bidx(train_idx.begin() + start, train_idx.begin() + stop);
            Eigen::MatrixXd bx = gather(dataset.inputs, bidx);
            Eigen::MatrixXd by = gather(dataset.targets, bidx);
            WeightGradients g;
            try {
                g = loss_gradient(net, bx, by);
            } catch (const Error& e) {
                if (e.code() == Errc::numeric_failure)
                    fail(Errc::numeric_failure, "training diverged (non-finite loss) at epoch " +
                                                    std::to_string(epoch));
                throw;
            }
            require(std::isfinite(g.loss_value), Errc::numeric_failure,
                    "training diverged (non-finite loss) at epoch " + std::to_string(epoch));
            epoch_loss += g.loss_value;
            ++n_batches;

            ++step;
            double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
            double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
            for (std::size_t l = 0; l < net.layers.size(); ++l) {
                mw[l] = beta1 * mw[l] + (1.0 - beta1) * g.dw[l];
                vw[l] = beta2 * vw[l] + (1.0 - beta2) * g.dw[l].cwiseProduct(g.dw[l]);
                net.layers[l].w.array() -=
                    cfg.learning_rate * (mw[l].array() / bc1) /
                    ((vw[l].array() / bc2).sqrt() + eps);
                mb[l] = beta1 * mb[l] + (1.0 - beta1) * g.db[l];
                vb[l] = beta2 * vb[l] + (1.0 - beta2) * g.db[l].cwiseProduct(g.db[l]);
                net.layers[l].b.array() -=
                    cfg.learning_rate * (mb[l].array() / bc1) /
                    ((vb[l].array() / bc2).sqrt() + eps);
            }
        }
        result.history.train_loss.push_back(epoch_loss / std::max(n_batches, 1));
        if (n_val > 0)
            result.history.val_loss.push_back(loss(forward(net, val_x), val_y));
        else
            result.history.val_loss.push_back(result.history.train_loss.back());
    }
    return result;
}

// Overlap-averaged whole-volume inference: each voxel gets the mean of every
// covering patch prediction; uncovered voxels stay 0.
inline ParamMaps predict_volume(const EstimatorWeights& net, const Volume4D& sparse_dwi,
                                const Volume4D& b0_mean, const TissueProbMaps* priors,
                                const Volume4D& mask,
                                const std::vector<std::string>& param_names, int stride,
                                int workers = 1) {
    PatchDataset ds = extract_patches(sparse_dwi, b0_mean, priors, nullptr, param_names, mask,
                                      stride);
    require(net.input_size() == ds.c_in * kPatchVoxels, Errc::bad_dimension,
            "network input size does not match patch layout");
    const int p_out = net.output_size() / kPatchVoxels;
    require(net.output_size() == p_out * kPatchVoxels &&
                p_out == static_cast<int>(param_names.size()),
            Errc::bad_dimension, "network output size does not match parameter list");

    Eigen::MatrixXd pred(ds.inputs.rows(), net.output_size());
    const int chunk = 256;
    std::size_t n_chunks = (ds.inputs.rows() + chunk - 1) / chunk;
    parallel_for(n_chunks, workers, [&](std::size_t c) {
        Eigen::Index lo = static_cast<Eigen::Index>(c) * chunk;
        Eigen::Index hi = std::min<Eigen::Index>(lo + chunk, ds.inputs.rows());
        pred.middleRows(lo, hi - lo) = forward(net, ds.inputs.middleRows(lo, hi - lo));
    });

    TargetScaling scaling = TargetScaling::for_params(param_names);
    ParamMaps out;
    Volume4D counts(sparse_dwi.w, sparse_dwi.h, sparse_dwi.s, 1, Intent::parameter);
    for (std::size_t p = 0; p < ds.origins.size(); ++p) {
        auto [ox, oy, oz] = ds.origins[p];
        for (int dz = 0; dz < kPatchEdge; ++dz)
            for (int dy = 0; dy < kPatchEdge; ++dy)
                for (int dx = 0; dx < kPatchEdge; ++dx)
                    counts.at(ox + dx, oy + dy, oz + dz) += 1.0;
    }

    for (int t = 0; t < p_out; ++t) {
        Volume4D acc(sparse_dwi.w, sparse_dwi.h, sparse_dwi.s, 1, Intent::parameter);
        acc.spacing = sparse_dwi.spacing;
        for (std::size_t p = 0; p < ds.origins.size(); ++p) {
            auto [ox, oy, oz] = ds.origins[p];
            int col = t * kPatchVoxels;
            for (int dz = 0; dz < kPatchEdge; ++dz)
                for (int dy = 0; dy < kPatchEdge; ++dy)
                    for (int dx = 0; dx < kPatchEdge; ++dx)
                        acc.at(ox + dx, oy + dy, oz + dz) += pred(p, col++);
        }
        for (std::size_t v = 0; v < acc.data.size(); ++v)
            if (counts.data[v] > 0.0) acc.data[v] /= counts.data[v] * scaling.scale[t];
        out.set(param_names[t], std::move(acc));
    }
    return out;
}

// On-disk weights: magic "DMFW", format version, layer count, per-layer
// (rows, cols, row-major f64 weights, f64 biases), activation tag, seed,
// config echo string. Little-endian throughout.
inline void save_weights(const EstimatorWeights& net, const std::string& path) {
    net.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_failure, "cannot open " + path);
    auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put_u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    out.write("DMFW", 4);
    put_u32(1); // format version
    put_u32(static_cast<std::uint32_t>(net.layers.size()));
    for (const auto& layer : net.layers) {
        put_u32(static_cast<std::uint32_t>(layer.w.rows()));
        put_u32(static_cast<std::uint32_t>(layer.w.cols()));
        for (Eigen::Index r = 0; r < layer.w.rows(); ++r)
            for (Eigen::Index c = 0; c < layer.w.cols(); ++c) {
                double v = layer.w(r, c);
                out.write(reinterpret_cast<const char*>(&v), 8);
            }
        for (Eigen::Index r = 0; r < layer.b.size(); ++r) {
            double v = layer.b(r);
            out.write(reinterpret_cast<const char*>(&v), 8);
        }
    }
    put_u32(static_cast<std::uint32_t>(net.hidden_activation));
    put_u64(net.seed);
    put_u32(static_cast<std::uint32_t>(net.config_echo.size()));
    out.write(net.config_echo.data(), static_cast<std::streamsize>(net.config_echo.size()));
    require(static_cast<bool>(out), Errc::io_failure, "short write to " + path);
}

inline EstimatorWeights load_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), Errc::missing_file, "cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    require(in.gcount() == 4 && std::string(magic, 4) == "DMFW", Errc::bad_magic,
            path + ": not a weights file");
    auto get_u32 = [&]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get_u64 = [&]() {
        std::uint64_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    std::uint32_t version = get_u32();
    require(version == 1, Errc::unsupported_variant,
            path + ": weights format version " + std::to_string(version) + " unsupported");
    std::uint32_t n_layers = get_u32();
    EstimatorWeights net;
    for (std::uint32_t l = 0; l < n_layers; ++l) {
        std::uint32_t rows = get_u32(), cols = get_u32();
        EstimatorWeights::Layer layer;
        layer.w.resize(rows, cols);
        for (std::uint32_t r = 0; r < rows; ++r)
            for (std::uint32_t c = 0; c < cols; ++c) {
                double v;
                in.read(reinterpret_cast<char*>(&v), 8);
                layer.w(r, c) = v;
            }
        layer.b.resize(rows);
        for (std::uint32_t r = 0; r < rows; ++r) {
            double v;
            in.read(reinterpret_cast<char*>(&v), 8);
            layer.b(r) = v;
        }
        net.layers.push_back(std::move(layer));
    }
    net.hidden_activation = static_cast<Activation>(get_u32());
    net.seed = get_u64();
    std::uint32_t echo_len = get_u32();
    net.config_echo.resize(echo_len);
    in.read(net.config_echo.data(), echo_len);
    require(static_cast<bool>(in), Errc::truncated_data, path + ": truncated weights file");
    net.validate();
    return net;
}

} // namespace dmri
