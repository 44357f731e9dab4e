#include "logeq/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace logeq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool valid_key(std::string_view key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') return false;
    }
    return true;
}

double parse_double(const std::string& text, const std::string& key) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty()) {
        throw std::runtime_error("config: bad number '" + text + "' for key '" + key + "'");
    }
    return v;
}

}  // namespace

ConfigMap ConfigMap::parse_text(std::string_view text, std::string source) {
    ConfigMap map;
    map.source_ = std::move(source);
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::runtime_error(map.source_ + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!valid_key(key)) {
            throw std::runtime_error(map.source_ + ":" + std::to_string(lineno) + ": bad key '" +
                                     key + "'");
        }
        if (value.empty()) {
            throw std::runtime_error(map.source_ + ":" + std::to_string(lineno) +
                                     ": empty value for key '" + key + "'");
        }
        if (map.values_.count(key)) {
            throw std::runtime_error(map.source_ + ":" + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
        }
        map.order_.push_back(key);
        map.values_[key] = value;
    }
    return map;
}

ConfigMap ConfigMap::parse_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), file.string());
}

bool ConfigMap::contains(const std::string& key) const { return values_.count(key) != 0; }

void ConfigMap::set(const std::string& key, std::string value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = std::move(value);
}

const std::string& ConfigMap::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw std::runtime_error("config: missing required key '" + key + "' in " + source_);
    }
    consumed_.insert(key);
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key) const { return raw(key); }

std::string ConfigMap::get_string(const std::string& key, std::string fallback) const {
    if (!contains(key)) return fallback;
    return raw(key);
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    if (!contains(key)) return fallback;
    return parse_double(raw(key), key);
}

std::int64_t ConfigMap::get_int(const std::string& key, std::int64_t fallback) const {
    if (!contains(key)) return fallback;
    const std::string& text = raw(key);
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer '" + text + "' for key '" + key + "'");
    }
}

std::uint64_t ConfigMap::get_uint64(const std::string& key, std::uint64_t fallback) const {
    if (!contains(key)) return fallback;
    const std::string& text = raw(key);
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer '" + text + "' for key '" + key + "'");
    }
}

std::vector<double> ConfigMap::get_double_list(const std::string& key,
                                               std::vector<double> fallback) const {
    if (!contains(key)) return fallback;
    const std::string& text = raw(key);
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string item(trim(std::string_view(text).substr(start, comma - start)));
        if (item.empty()) {
            throw std::runtime_error("config: empty list element for key '" + key + "'");
        }
        out.push_back(parse_double(item, key));
        start = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

std::vector<std::string> ConfigMap::get_string_list(const std::string& key,
                                                    std::vector<std::string> fallback) const {
    if (!contains(key)) return fallback;
    const std::string& text = raw(key);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string item(trim(std::string_view(text).substr(start, comma - start)));
        if (item.empty()) {
            throw std::runtime_error("config: empty list element for key '" + key + "'");
        }
        out.push_back(item);
        start = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

std::vector<std::string> ConfigMap::unconsumed() const {
    std::vector<std::string> unknown;
    for (const auto& key : order_) {
        if (!consumed_.count(key)) unknown.push_back(key);
    }
    return unknown;
}

std::string ConfigMap::serialize() const {
    std::string out;
    for (const auto& key : order_) {
        out += key;
        out += " = ";
        out += values_.at(key);
        out += '\n';
    }
    return out;
}

std::string ConfigMap::format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        char* end = nullptr;
        if (std::strtod(buf, &end) == v && end != buf) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string ConfigMap::format_double_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

}  // namespace logeq
