#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cubicwave/errors.hpp"

namespace cubicwave {

/// Strict subset of TOML: [tables], key = value with string / bool / integer /
/// float / flat array values, and # comments.  Keys flatten to "table.key".
class Config {
  public:
    using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_list(const std::string& key, std::vector<double> fallback) const;

    /// Throws ConfigError naming the first key never consumed by a getter.
    void reject_unknown() const;

    std::string echo() const; ///< canonical "key = value" dump, sorted

  private:
    std::map<std::string, Value> values_;
    mutable std::set<std::string> consumed_;
};

} // namespace cubicwave
