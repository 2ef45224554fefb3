#pragma once

// Run configuration of the command line front end. A config is a flat set of
// key=value pairs; it serializes to sorted "key=value" lines and parses back
// to an identical config. Numbers are written in shortest round-trip form.

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace mathieu::cli {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class output_format { json, csv };

struct t_range {
  double start = 0, stop = 0;
  int count = 0;
  bool log = false;
};

struct run_config {
  std::string command;
  double gamma = 1, alpha = 2, mu = 1, u = 0;
  std::optional<double> t;
  std::optional<t_range> range;
  std::optional<double> tol;
  int order = 8;
  output_format format = output_format::json;
  std::string output;  // empty: standard output
  // command-specific
  std::string suite = "all";
  std::string identity = "series";
  double b = 1.0 / 6;
  double p = 0.5;
  bool inf = false;

  static const std::vector<std::string>& keys() {
    static const std::vector<std::string> k{"alpha", "b",      "command", "format",  "gamma",   "identity", "inf",
                                            "mu",    "order",  "output",  "p",       "suite",   "t",        "t_count",
                                            "t_log", "t_start", "t_stop", "tol",     "u"};
    return k;
  }

  // inclusive of both endpoints
  std::vector<double> t_points() const {
    if (range) {
      const auto& r = *range;
      std::vector<double> v;
      for (int i = 0; i < r.count; ++i) {
        const double f = r.count == 1 ? 0.0 : double(i) / (r.count - 1);
        v.push_back(r.log ? r.start * std::pow(r.stop / r.start, f) : r.start + (r.stop - r.start) * f);
      }
      if (r.count > 1) v.back() = r.stop;
      return v;
    }
    if (t) return {*t};
    throw config_error("a t value or a t range (t_start, t_stop, t_count) is required");
  }

  std::map<std::string, std::string> to_map() const;
  static run_config from_map(const std::map<std::string, std::string>& m);

  std::string serialize() const {
    std::string s;
    for (const auto& [k, v] : to_map()) s += k + "=" + v + "\n";
    return s;
  }
  static run_config parse(const std::string& text) { return from_map(parse_kv(text)); }

  // "key=value" lines; blank lines and lines starting with '#' are skipped
  static std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      auto trim = [](std::string x) {
        const auto a = x.find_first_not_of(" \t\r"), b = x.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
      };
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw config_error("config line " + std::to_string(n) + " is not key=value");
      m[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return m;
  }

  bool operator==(const run_config& o) const { return serialize() == o.serialize(); }
};

namespace detail {

inline std::string fmt(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline double to_double(const std::string& key, const std::string& v) {
  double x = 0;
  auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x))
    throw config_error("invalid number for " + key + ": '" + v + "'");
  return x;
}

inline int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw config_error("invalid integer for " + key + ": '" + v + "'");
  return x;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw config_error("invalid boolean for " + key + ": '" + v + "'");
}

}  // namespace detail

inline std::map<std::string, std::string> run_config::to_map() const {
  using detail::fmt;
  std::map<std::string, std::string> m;
  m["command"] = command;
  m["gamma"] = fmt(gamma);
  m["alpha"] = fmt(alpha);
  m["mu"] = fmt(mu);
  m["u"] = fmt(u);
  if (t) m["t"] = fmt(*t);
  if (range) {
    m["t_start"] = fmt(range->start);
    m["t_stop"] = fmt(range->stop);
    m["t_count"] = std::to_string(range->count);
    m["t_log"] = range->log ? "true" : "false";
  }
  if (tol) m["tol"] = fmt(*tol);
  m["order"] = std::to_string(order);
  m["format"] = format == output_format::json ? "json" : "csv";
  if (!output.empty()) m["output"] = output;
  m["suite"] = suite;
  m["identity"] = identity;
  m["b"] = fmt(b);
  m["p"] = fmt(p);
  m["inf"] = inf ? "true" : "false";
  return m;
}

inline run_config run_config::from_map(const std::map<std::string, std::string>& m) {
  using namespace detail;
  for (const auto& [k, v] : m) {
    bool known = false;
    for (const auto& key : keys()) known |= key == k;
    if (!known) throw config_error("unknown config key: " + k);
  }
  run_config c;
  auto get = [&](const char* k) -> const std::string* {
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
  };
  if (auto v = get("command")) c.command = *v;
  if (auto v = get("gamma")) c.gamma = to_double("gamma", *v);
  if (auto v = get("alpha")) c.alpha = to_double("alpha", *v);
  if (auto v = get("mu")) c.mu = to_double("mu", *v);
  if (auto v = get("u")) c.u = to_double("u", *v);
  if (auto v = get("t")) c.t = to_double("t", *v);
  const bool any_range = get("t_start") || get("t_stop") || get("t_count");
  if (any_range) {
    if (!get("t_start") || !get("t_stop") || !get("t_count")) throw config_error("a t range needs t_start, t_stop and t_count");
    t_range r;
    r.start = to_double("t_start", *get("t_start"));
    r.stop = to_double("t_stop", *get("t_stop"));
    r.count = to_int("t_count", *get("t_count"));
    if (auto v = get("t_log")) r.log = to_bool("t_log", *v);
    if (r.count < 1) throw config_error("t_count must be at least 1");
    if (!(r.stop >= r.start)) throw config_error("t_stop must not be below t_start");
    if (r.log && !(r.start > 0)) throw config_error("a log-spaced range needs t_start > 0");
    c.range = r;
  }
  if (auto v = get("tol")) {
    c.tol = to_double("tol", *v);
    if (!(*c.tol > 0)) throw config_error("tol must be positive");
  }
  if (auto v = get("order")) c.order = to_int("order", *v);
  if (auto v = get("format")) {
    if (*v == "json")
      c.format = output_format::json;
    else if (*v == "csv")
      c.format = output_format::csv;
    else
      throw config_error("format must be json or csv");
  }
  if (auto v = get("output")) c.output = *v;
  if (auto v = get("suite")) c.suite = *v;
  if (auto v = get("identity")) c.identity = *v;
  if (auto v = get("b")) c.b = to_double("b", *v);
  if (auto v = get("p")) c.p = to_double("p", *v);
  if (auto v = get("inf")) c.inf = to_bool("inf", *v);
  return c;
}

}  // namespace mathieu::cli
