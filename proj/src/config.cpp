#include "cmze/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cmze {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool bare_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

double parse_number(const std::string& text, const std::string& where) {
    std::string s;
    for (char c : text)
        if (c != '_') s += c;
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError(where + ": expected a number, got '" + text + "'");
    return v;
}

} // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!bare_key(section)) throw ConfigError(where + ": invalid section name '" + section + "'");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!bare_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
        if (!section.empty()) key = section + "." + key;
        if (cfg.values_.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
        if (val.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
        Value v;
        if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"' || val.find('"', 1) != val.size() - 1)
                throw ConfigError(where + ": malformed string");
            v = val.substr(1, val.size() - 2);
        } else if (val == "true" || val == "false") {
            v = val == "true";
        } else if (val.front() == '[') {
            if (val.back() != ']') throw ConfigError(where + ": arrays must close on the same line");
            std::vector<double> xs;
            std::string body = trim(val.substr(1, val.size() - 2));
            std::istringstream items(body);
            std::string item;
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (item.empty()) continue; // trailing comma
                xs.push_back(parse_number(item, where));
            }
            v = xs;
        } else {
            v = parse_number(val, where);
        }
        cfg.values_[key] = v;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

void Config::restrict_to(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : values_)
        if (!allowed.count(k)) throw ConfigError(origin_ + ": unknown key '" + k + "'");
}

const Config::Value& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(origin_ + ": missing key '" + key + "'");
    return it->second;
}

double Config::number(const std::string& key) const {
    const auto& v = get(key);
    if (!std::holds_alternative<double>(v)) throw ConfigError(origin_ + ": key '" + key + "' must be a number");
    return std::get<double>(v);
}

double Config::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

int Config::integer(const std::string& key) const {
    double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(origin_ + ": key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

int Config::integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

bool Config::boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = get(key);
    if (!std::holds_alternative<bool>(v)) throw ConfigError(origin_ + ": key '" + key + "' must be true or false");
    return std::get<bool>(v);
}

std::string Config::string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = get(key);
    if (!std::holds_alternative<std::string>(v)) throw ConfigError(origin_ + ": key '" + key + "' must be a string");
    return std::get<std::string>(v);
}

std::vector<double> Config::array(const std::string& key) const {
    const auto& v = get(key);
    if (std::holds_alternative<double>(v)) return {std::get<double>(v)};
    if (!std::holds_alternative<std::vector<double>>(v))
        throw ConfigError(origin_ + ": key '" + key + "' must be an array of numbers");
    return std::get<std::vector<double>>(v);
}

std::vector<double> Config::array(const std::string& key, const std::vector<double>& fallback) const {
    return has(key) ? array(key) : fallback;
}

} // namespace cmze
