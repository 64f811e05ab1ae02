#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "dmri/core.hpp"

// Single-file uncompressed NIfTI-1: 348-byte header, 4-byte extender, raw
// data at byte offset 352. Reading accepts float32/float64 and 8/16-bit
// integer payloads in either byte order; writing always emits little-endian
// float32.

namespace dmri {

namespace detail {

inline constexpr int kHeaderSize = 348;
inline constexpr int kVoxOffset = 352;

template <typename T>
T byte_swapped(T v) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
}

template <typename T>
T read_field(const unsigned char* hdr, int offset, bool swap) {
    T v;
    std::memcpy(&v, hdr + offset, sizeof(T));
    return swap ? byte_swapped(v) : v;
}

template <typename T>
void write_field(unsigned char* hdr, int offset, T v) {
    static_assert(std::endian::native == std::endian::little,
                  "writer assumes a little-endian host");
    std::memcpy(hdr + offset, &v, sizeof(T));
}

template <typename T>
std::vector<double> decode_payload(const std::vector<unsigned char>& raw, std::size_t n,
                                   bool swap) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        T v;
        std::memcpy(&v, raw.data() + i * sizeof(T), sizeof(T));
        if (swap) v = byte_swapped(v);
        out[i] = static_cast<double>(v);
    }
    return out;
}

} // namespace detail

inline Volume4D read_nifti(const std::string& path) {
    namespace fs = std::filesystem;
    require(fs::exists(path), Errc::missing_file, "no such file: " + path);

    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), Errc::io_failure, "cannot open " + path);

    unsigned char hdr[detail::kHeaderSize];
    in.read(reinterpret_cast<char*>(hdr), detail::kHeaderSize);
    require(in.gcount() == detail::kHeaderSize, Errc::truncated_data,
            path + ": file shorter than the 348-byte header");

    // sizeof_hdr doubles as the byte-order probe
    std::int32_t sizeof_hdr = detail::read_field<std::int32_t>(hdr, 0, false);
    bool swap = false;
    if (sizeof_hdr != detail::kHeaderSize) {
        swap = true;
        sizeof_hdr = detail::byte_swapped(sizeof_hdr);
    }
    require(sizeof_hdr == detail::kHeaderSize, Errc::bad_magic,
            path + ": sizeof_hdr is not 348 in either byte order");

    if (std::memcmp(hdr + 344, "ni1\0", 4) == 0)
        fail(Errc::unsupported_variant, path + ": magic \"ni1\" (detached header) unsupported");
    require(std::memcmp(hdr + 344, "n+1\0", 4) == 0, Errc::bad_magic,
            path + ": magic is not \"n+1\"");

    std::int16_t dim[8];
    for (int i = 0; i < 8; ++i) dim[i] = detail::read_field<std::int16_t>(hdr, 40 + 2 * i, swap);
    require(dim[0] == 3 || dim[0] == 4, Errc::bad_dimension,
            path + ": dim[0] = " + std::to_string(dim[0]) + ", expected 3 or 4");
    int nd = dim[0];
    int w = dim[1], h = dim[2], s = dim[3];
    int d = nd == 4 ? dim[4] : 1;
    require(w > 0 && h > 0 && s > 0 && d > 0, Errc::bad_dimension,
            path + ": non-positive entry in dim[]");

    std::int16_t datatype = detail::read_field<std::int16_t>(hdr, 70, swap);

    Volume4D vol(w, h, s, d);
    for (int i = 0; i < 3; ++i) {
        float p = detail::read_field<float>(hdr, 76 + 4 * (i + 1), swap);
        require(p > 0.0f, Errc::bad_dimension, path + ": pixdim must be positive");
        vol.spacing[i] = p;
    }
    std::memcpy(vol.orient_raw.data(), hdr + 252, vol.orient_raw.size());

    float vox_offset = detail::read_field<float>(hdr, 108, swap);
    if (vox_offset < detail::kVoxOffset) vox_offset = detail::kVoxOffset;

    in.seekg(static_cast<std::streamoff>(vox_offset), std::ios::beg);
    std::size_t n = vol.size();
    std::size_t elem = 0;
    switch (datatype) {
        case 2: case 256: elem = 1; break;            // uint8 / int8
        case 4: case 512: elem = 2; break;            // int16 / uint16
        case 16: elem = 4; break;                     // float32
        case 64: elem = 8; break;                     // float64
        default:
            fail(Errc::unsupported_datatype,
                 path + ": datatype code " + std::to_string(datatype) + " unsupported");
    }
    std::vector<unsigned char> raw(n * elem);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    require(static_cast<std::size_t>(in.gcount()) == raw.size(), Errc::truncated_data,
            path + ": data section shorter than dim[] implies");

    switch (datatype) {
        case 2: vol.data = detail::decode_payload<std::uint8_t>(raw, n, false); break;
        case 256: vol.data = detail::decode_payload<std::int8_t>(raw, n, false); break;
        case 4: vol.data = detail::decode_payload<std::int16_t>(raw, n, swap); break;
        case 512: vol.data = detail::decode_payload<std::uint16_t>(raw, n, swap); break;
        case 16: vol.data = detail::decode_payload<float>(raw, n, swap); break;
        case 64: vol.data = detail::decode_payload<double>(raw, n, swap); break;
    }

    // scl_slope convention: slope of 0 means no scaling
    float slope = detail::read_field<float>(hdr, 112, swap);
    float inter = detail::read_field<float>(hdr, 116, swap);
    if (std::isfinite(slope) && slope != 0.0f && !(slope == 1.0f && inter == 0.0f)) {
        for (double& v : vol.data) v = slope * v + inter;
    }
    return vol;
}

inline void write_nifti(const Volume4D& vol, const std::string& path) {
    vol.validate();
    const int kDimMax = std::numeric_limits<std::int16_t>::max();
    for (int v : {vol.w, vol.h, vol.s, vol.d})
        require(v <= kDimMax, Errc::dimension_overflow,
                "dimension " + std::to_string(v) + " exceeds the 16-bit dim[] field");

    unsigned char hdr[detail::kHeaderSize] = {};
    detail::write_field<std::int32_t>(hdr, 0, detail::kHeaderSize);
    std::int16_t dim[8] = {4, static_cast<std::int16_t>(vol.w), static_cast<std::int16_t>(vol.h),
                           static_cast<std::int16_t>(vol.s), static_cast<std::int16_t>(vol.d),
                           1, 1, 1};
    for (int i = 0; i < 8; ++i) detail::write_field<std::int16_t>(hdr, 40 + 2 * i, dim[i]);
    detail::write_field<std::int16_t>(hdr, 70, 16); // float32
    detail::write_field<std::int16_t>(hdr, 72, 32);
    float pixdim[8] = {1.0f, static_cast<float>(vol.spacing[0]),
                       static_cast<float>(vol.spacing[1]), static_cast<float>(vol.spacing[2]),
                       0, 0, 0, 0};
    for (int i = 0; i < 8; ++i) detail::write_field<float>(hdr, 76 + 4 * i, pixdim[i]);
    detail::write_field<float>(hdr, 108, static_cast<float>(detail::kVoxOffset));
    detail::write_field<float>(hdr, 112, 0.0f); // scl_slope: no scaling
    detail::write_field<float>(hdr, 116, 0.0f);
    std::memcpy(hdr + 252, vol.orient_raw.data(), vol.orient_raw.size());
    std::memcpy(hdr + 344, "n+1\0", 4);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_failure, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(hdr), detail::kHeaderSize);
    const char extender[4] = {0, 0, 0, 0};
    out.write(extender, 4);
    std::vector<float> payload(vol.data.size());
    for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = static_cast<float>(vol.data[i]);
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    require(static_cast<bool>(out), Errc::io_failure, "short write to " + path);
}

} // namespace dmri
