#pragma once
// Strict reader for the flat TOML subset used by the simulation configs:
// key = number | "string" | true/false | [numbers], optional [section] headers,
// '#' comments. Keys under a section are addressed as "section.key".

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cmze {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
  public:
    using Value = std::variant<double, bool, std::string, std::vector<double>>;

    static Config parse(const std::string& text, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    // every key must be listed
    void restrict_to(const std::set<std::string>& allowed) const;
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer(const std::string& key, int fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::string string(const std::string& key, const std::string& fallback) const;
    std::vector<double> array(const std::string& key) const;
    std::vector<double> array(const std::string& key, const std::vector<double>& fallback) const;

  private:
    std::string origin_;
    std::map<std::string, Value> values_;
    const Value& get(const std::string& key) const;
};

} // namespace cmze
