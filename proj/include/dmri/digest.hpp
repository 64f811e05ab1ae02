#pragma once

#include <openssl/evp.h>

#include <fstream>
#include <string>
#include <vector>

#include "dmri/core.hpp"

namespace dmri {

inline std::string sha256_hex(const void* data, std::size_t len) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    require(EVP_Digest(data, len, md, &md_len, EVP_sha256(), nullptr) == 1, Errc::numeric_failure,
            "sha256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(md_len * 2);
    for (unsigned int i = 0; i < md_len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

inline std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), Errc::missing_file, "cannot open " + path);
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(buf.data(), buf.size());
}

} // namespace dmri
