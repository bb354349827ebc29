#include "cubicwave/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace cubicwave {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// drop a trailing comment that is not inside a quoted string
std::string drop_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

bool parse_number(const std::string& tok, Config::Value& out) {
    const bool is_float = tok.find_first_of(".eE") != std::string::npos &&
                          tok.find_first_not_of("+-0123456789.eE") == std::string::npos;
    if (!is_float) {
        std::int64_t iv = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (ec == std::errc() && p == tok.data() + tok.size()) {
            out = iv;
            return true;
        }
    }
    try {
        size_t used = 0;
        const double dv = std::stod(tok, &used);
        if (used == tok.size()) {
            out = dv;
            return true;
        }
    } catch (...) {
    }
    return false;
}

Config::Value parse_scalar(const std::string& tok, int lineno) {
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
        return tok.substr(1, tok.size() - 2);
    if (tok == "true") return true;
    if (tok == "false") return false;
    Config::Value v;
    if (parse_number(tok, v)) return v;
    throw ConfigError("line " + std::to_string(lineno) + ": cannot parse value '" + tok + "'");
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, table;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(drop_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed table header");
            table = strip(line.substr(1, line.size() - 2));
            if (table.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty table name");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string val = strip(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        const std::string full = table.empty() ? key : table + "." + key;
        if (cfg.values_.count(full))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + full + "'");
        if (val.front() == '[') {
            if (val.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated array");
            std::vector<double> items;
            std::string body = val.substr(1, val.size() - 2);
            std::istringstream bs(body);
            std::string tok;
            while (std::getline(bs, tok, ',')) {
                tok = strip(tok);
                if (tok.empty()) continue;
                Value v = parse_scalar(tok, lineno);
                if (std::holds_alternative<double>(v))
                    items.push_back(std::get<double>(v));
                else if (std::holds_alternative<std::int64_t>(v))
                    items.push_back(static_cast<double>(std::get<std::int64_t>(v)));
                else
                    throw ConfigError("line " + std::to_string(lineno) +
                                      ": arrays hold numbers only");
            }
            cfg.values_[full] = items;
        } else {
            cfg.values_[full] = parse_scalar(val, lineno);
        }
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_.insert(key);
    if (const auto* d = std::get_if<double>(&it->second)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
    throw ConfigError("key '" + key + "' is not a number");
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_.insert(key);
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
    throw ConfigError("key '" + key + "' is not an integer");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_.insert(key);
    if (const auto* b = std::get_if<bool>(&it->second)) return *b;
    throw ConfigError("key '" + key + "' is not a boolean");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_.insert(key);
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw ConfigError("key '" + key + "' is not a string");
}

std::vector<double> Config::get_list(const std::string& key, std::vector<double> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_.insert(key);
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    throw ConfigError("key '" + key + "' is not an array");
}

void Config::reject_unknown() const {
    for (const auto& [k, v] : values_)
        if (!consumed_.count(k)) throw ConfigError("unknown config key '" + k + "'");
}

std::string Config::echo() const {
    std::ostringstream out;
    for (const auto& [k, v] : values_) {
        out << k << " = ";
        std::visit(
            [&out](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, bool>) {
                    out << (x ? "true" : "false");
                } else if constexpr (std::is_same_v<T, std::string>) {
                    out << '"' << x << '"';
                } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                    out << '[';
                    for (size_t i = 0; i < x.size(); ++i)
                        out << (i ? ", " : "") << x[i];
                    out << ']';
                } else {
                    out << x;
                }
            },
            v);
        out << '\n';
    }
    return out.str();
}

} // namespace cubicwave
