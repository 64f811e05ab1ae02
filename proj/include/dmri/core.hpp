#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmri {

// Error codes carried by every exception thrown from this library. Each
// failure names the offending field or input in the message; the code keeps
// failures distinguishable programmatically.
enum class Errc {
    missing_file,
    io_failure,
    bad_magic,
    unsupported_variant,
    unsupported_datatype,
    truncated_data,
    bad_dimension,
    dimension_overflow,
    parse_error,
    length_mismatch,
    zero_norm_direction,
    antipodal_pair,
    out_of_range,
    invalid_argument,
    rank_deficient,
    nonpositive_signal,
    degenerate_input,
    iteration_limit,
    numeric_failure,
    config_invalid,
    dependency_missing,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

enum class Intent : std::uint8_t { signal, parameter, probability, label };

// Dense 4D scalar grid, x-fastest layout. Values are always held as doubles;
// the on-disk form is float32 (see nifti.hpp).
struct Volume4D {
    int w = 0, h = 0, s = 0, d = 0;
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    Intent intent = Intent::signal;
    std::vector<double> data;
    // Header bytes 252..327 (qform/sform block), kept verbatim across a
    // read/write cycle but never interpreted.
    std::array<unsigned char, 76> orient_raw{};

    Volume4D() = default;
    Volume4D(int w_, int h_, int s_, int d_, Intent intent_ = Intent::signal)
        : w(w_), h(h_), s(s_), d(d_), intent(intent_) {
        require(w_ > 0 && h_ > 0 && s_ > 0 && d_ > 0, Errc::bad_dimension,
                "Volume4D dims must be positive");
        data.assign(static_cast<std::size_t>(w) * h * s * d, 0.0);
    }

    std::size_t voxels() const { return static_cast<std::size_t>(w) * h * s; }
    std::size_t size() const { return voxels() * static_cast<std::size_t>(d); }

    std::size_t index(int x, int y, int z, int t = 0) const {
        return ((static_cast<std::size_t>(t) * s + z) * h + y) * w + x;
    }
    double& at(int x, int y, int z, int t = 0) { return data[index(x, y, z, t)]; }
    double at(int x, int y, int z, int t = 0) const { return data[index(x, y, z, t)]; }

    bool same_grid(const Volume4D& o) const { return w == o.w && h == o.h && s == o.s; }

    void validate() const {
        require(w > 0 && h > 0 && s > 0 && d > 0, Errc::bad_dimension, "dims must be positive");
        require(data.size() == size(), Errc::bad_dimension,
                "data length does not equal W*H*S*D");
        require(spacing[0] > 0 && spacing[1] > 0 && spacing[2] > 0, Errc::bad_dimension,
                "spacing must be strictly positive");
        if (intent == Intent::probability) {
            for (double v : data)
                require(v >= 0.0 && v <= 1.0, Errc::invalid_argument,
                        "probability volume has a value outside [0,1]");
        }
    }
};

// Named scalar maps with a stable order (the order controls report columns
// and file emission order).
struct ParamMaps {
    std::vector<std::pair<std::string, Volume4D>> maps;

    bool has(const std::string& name) const { return find(name) != nullptr; }

    const Volume4D* find(const std::string& name) const {
        for (const auto& [n, v] : maps)
            if (n == name) return &v;
        return nullptr;
    }
    Volume4D* find(const std::string& name) {
        for (auto& [n, v] : maps)
            if (n == name) return &v;
        return nullptr;
    }
    const Volume4D& get(const std::string& name) const {
        const Volume4D* v = find(name);
        if (!v) fail(Errc::invalid_argument, "missing parameter map: " + name);
        return *v;
    }
    void set(const std::string& name, Volume4D vol) {
        if (Volume4D* v = find(name)) {
            *v = std::move(vol);
        } else {
            maps.emplace_back(name, std::move(vol));
        }
    }
};

} // namespace dmri
