#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dmri/core.hpp"

namespace dmri {

// Minimal sectioned key-value configuration:
//   [section]
//   key = value            # repeated keys accumulate (used for regions)
// '#' starts a comment; blank lines are ignored.
class Config {
public:
    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        require(static_cast<bool>(in), Errc::missing_file, "cannot open config " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_string(ss.str(), path);
    }

    static Config parse_string(const std::string& text, const std::string& origin = "<string>") {
        Config cfg;
        cfg.origin_ = origin;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::string t = trim(line);
            if (t.empty()) continue;
            if (t.front() == '[') {
                require(t.back() == ']', Errc::config_invalid,
                        origin + ":" + std::to_string(lineno) + ": unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                require(!section.empty(), Errc::config_invalid,
                        origin + ":" + std::to_string(lineno) + ": empty section name");
                continue;
            }
            std::size_t eq = t.find('=');
            require(eq != std::string::npos, Errc::config_invalid,
                    origin + ":" + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(t.substr(0, eq));
            std::string value = trim(t.substr(eq + 1));
            require(!key.empty(), Errc::config_invalid,
                    origin + ":" + std::to_string(lineno) + ": empty key");
            cfg.items_.emplace_back(section + "." + key, value);
        }
        return cfg;
    }

    bool has(const std::string& section, const std::string& key) const {
        return !get_all(section, key).empty();
    }

    std::vector<std::string> get_all(const std::string& section, const std::string& key) const {
        std::vector<std::string> out;
        std::string full = section + "." + key;
        for (const auto& [k, v] : items_)
            if (k == full) out.push_back(v);
        return out;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
        auto all = get_all(section, key);
        return all.empty() ? fallback : all.back();
    }

    std::string get_string_required(const std::string& section, const std::string& key) const {
        auto all = get_all(section, key);
        require(!all.empty(), Errc::config_invalid,
                origin_ + ": missing required option " + section + "." + key);
        return all.back();
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        auto all = get_all(section, key);
        if (all.empty()) return fallback;
        return to_double(all.back(), section + "." + key);
    }

    long get_int(const std::string& section, const std::string& key, long fallback) const {
        auto all = get_all(section, key);
        if (all.empty()) return fallback;
        return to_int(all.back(), section + "." + key);
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        auto all = get_all(section, key);
        if (all.empty()) return fallback;
        const std::string& v = all.back();
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        fail(Errc::config_invalid, origin_ + ": " + section + "." + key +
                                       ": expected a boolean, got \"" + v + "\"");
    }

    std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                    std::vector<double> fallback) const {
        auto all = get_all(section, key);
        if (all.empty()) return fallback;
        std::vector<double> out;
        std::istringstream ss(all.back());
        std::string tok;
        while (ss >> tok) out.push_back(to_double(tok, section + "." + key));
        return out;
    }

    std::vector<int> get_ints(const std::string& section, const std::string& key,
                              std::vector<int> fallback) const {
        auto all = get_all(section, key);
        if (all.empty()) return fallback;
        std::vector<int> out;
        std::istringstream ss(all.back());
        std::string tok;
        while (ss >> tok) out.push_back(static_cast<int>(to_int(tok, section + "." + key)));
        return out;
    }

    std::vector<std::string> get_strings(const std::string& section, const std::string& key,
                                         std::vector<std::string> fallback) const {
        auto all = get_all(section, key);
        if (all.empty()) return fallback;
        std::vector<std::string> out;
        std::istringstream ss(all.back());
        std::string tok;
        while (ss >> tok) out.push_back(tok);
        return out;
    }

    const std::string& origin() const { return origin_; }

    double to_double(const std::string& v, const std::string& where) const {
        try {
            std::size_t pos = 0;
            double d = std::stod(v, &pos);
            require(pos == v.size(), Errc::config_invalid, "");
            return d;
        } catch (const std::exception&) {
            fail(Errc::config_invalid,
                 origin_ + ": " + where + ": expected a number, got \"" + v + "\"");
        }
    }

    long to_int(const std::string& v, const std::string& where) const {
        try {
            std::size_t pos = 0;
            long d = std::stol(v, &pos);
            require(pos == v.size(), Errc::config_invalid, "");
            return d;
        } catch (const std::exception&) {
            fail(Errc::config_invalid,
                 origin_ + ": " + where + ": expected an integer, got \"" + v + "\"");
        }
    }

private:
    static std::string trim(const std::string& s) {
        std::size_t a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        std::size_t b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    std::string origin_;
    std::vector<std::pair<std::string, std::string>> items_;
};

} // namespace dmri
