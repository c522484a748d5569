#include "eubo/util/kv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eubo/errors.hpp"

namespace eubo {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) {
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split_list(s)) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(tok, &pos);
            if (pos != tok.size()) {
                throw std::invalid_argument(tok);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("parse_double_list: bad number '" + tok + "'");
        }
    }
    return out;
}

std::map<std::string, double> parse_label_map(const std::string& s) {
    std::map<std::string, double> out;
    for (const std::string& tok : split_list(s)) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("parse_label_map: expected 'label:value', got '" + tok + "'");
        }
        const std::string label = trim(tok.substr(0, colon));
        const std::string value = trim(tok.substr(colon + 1));
        if (label.empty() || out.count(label)) {
            throw ConfigError("parse_label_map: empty or duplicate label in '" + tok + "'");
        }
        try {
            out[label] = std::stod(value);
        } catch (const std::exception&) {
            throw ConfigError("parse_label_map: bad value in '" + tok + "'");
        }
    }
    return out;
}

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open key-value file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

KvFile KvFile::parse_string(const std::string& text, const std::string& origin) {
    KvFile kv;
    kv.origin_ = origin;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        if (kv.values_.count(key)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        }
        kv.values_[key] = value;
        kv.order_.push_back(key);
    }
    return kv;
}

bool KvFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KvFile::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    }
    return it->second;
}

std::string KvFile::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KvFile::get_double(const std::string& key) const {
    const std::string raw = get_string(key);
    try {
        return std::stod(raw);
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key '" + key + "' is not a number: '" + raw + "'");
    }
}

double KvFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KvFile::get_int(const std::string& key) const {
    const std::string raw = get_string(key);
    try {
        std::size_t pos = 0;
        const long v = std::stol(raw, &pos);
        if (pos != raw.size()) {
            throw std::invalid_argument(raw);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key '" + key + "' is not an integer: '" + raw + "'");
    }
}

long KvFile::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool KvFile::get_bool(const std::string& key) const {
    std::string raw = get_string(key);
    std::transform(raw.begin(), raw.end(), raw.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (raw == "true" || raw == "1" || raw == "yes") {
        return true;
    }
    if (raw == "false" || raw == "0" || raw == "no") {
        return false;
    }
    throw ConfigError(origin_ + ": key '" + key + "' is not a boolean: '" + raw + "'");
}

bool KvFile::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

void KvFile::require_known_keys(const std::vector<std::string>& allowed) const {
    for (const std::string& key : order_) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(origin_ + ": unknown key '" + key + "'");
        }
    }
}

} // namespace eubo
