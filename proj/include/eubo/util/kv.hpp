#pragma once

#include <map>
#include <string>
#include <vector>

namespace eubo {

// Flat `key = value` text file: one pair per line, '#' starts a comment,
// blank lines ignored, duplicate keys rejected. Used for run configs,
// dataset schemas, and oracle grid files.
class KvFile {
public:
    static KvFile parse_file(const std::string& path);
    static KvFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    const std::vector<std::string>& keys() const { return order_; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Errors (naming `origin` and the offending key) when a key outside
    // `allowed` is present.
    void require_known_keys(const std::vector<std::string>& allowed) const;

private:
    std::string origin_;
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

std::string trim(const std::string& s);

// "a, b, c" -> {a, b, c}; empty string -> empty vector.
std::vector<std::string> split_list(const std::string& s, char sep = ',');
std::vector<double> parse_double_list(const std::string& s);

// "setosa:1, versicolor:0" -> {{"setosa",1.0}, {"versicolor",0.0}}
std::map<std::string, double> parse_label_map(const std::string& s);

} // namespace eubo
