#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace logeq {

// Declarative "key = value" configuration with dotted keys, '#' comments and
// comma-separated lists. Getters record which keys were consumed so callers
// can reject unknown keys.
class ConfigMap {
public:
    static ConfigMap parse_text(std::string_view text, std::string source = "<config>");
    static ConfigMap parse_file(const std::filesystem::path& file);

    bool contains(const std::string& key) const;
    void set(const std::string& key, std::string value);

    std::string get_string(const std::string& key) const;                    // required
    std::string get_string(const std::string& key, std::string fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        std::vector<double> fallback) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             std::vector<std::string> fallback) const;

    // Keys never touched by a getter (for strict schema validation).
    std::vector<std::string> unconsumed() const;

    std::string serialize() const;  // keys in insertion order

    static std::string format_double(double v);  // shortest exact round-trip
    static std::string format_double_list(const std::vector<double>& values);

private:
    const std::string& raw(const std::string& key) const;

    std::string source_{"<config>"};
    std::vector<std::string> order_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
};

}  // namespace logeq
