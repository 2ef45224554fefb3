// mathieu: evaluate Mathieu-type series, dump asymptotic coefficients, compute
// sharp constants, run verification suites and Bessel-integral identities.
// Exit codes: 0 success, 1 verification failure, 2 configuration or parameter error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mathieu/checks.hpp"
#include "mathieu/series.hpp"
#include "mathieu/sharp.hpp"
#include "mathieu/suites.hpp"
#include "run_config.hpp"

using namespace mathieu;
using mathieu::cli::config_error;
using mathieu::cli::output_format;
using mathieu::cli::run_config;
using json = nlohmann::ordered_json;

namespace {

// JSON lines (shortest round-trip numbers, at most 17 significant digits) or
// CSV with a header row and 12 significant digits
class record_writer {
 public:
  record_writer(std::ostream& out, output_format f) : out_(out), format_(f) {}

  void write(const json& rec) {
    if (format_ == output_format::json) {
      out_ << rec.dump() << "\n";
      return;
    }
    if (!header_done_) {
      bool first = true;
      for (auto it = rec.begin(); it != rec.end(); ++it) {
        out_ << (first ? "" : ",") << it.key();
        first = false;
      }
      out_ << "\n";
      header_done_ = true;
    }
    bool first = true;
    for (const auto& v : rec) {
      out_ << (first ? "" : ",") << csv_cell(v);
      first = false;
    }
    out_ << "\n";
  }

 private:
  static std::string csv_cell(const json& v) {
    if (v.is_null()) return "inf";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }

  std::ostream& out_;
  output_format format_;
  bool header_done_ = false;
};

// infinite values (limits) are written as null
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct output_target {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit output_target(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw config_error("cannot open output file: " + path);
    os = &file;
  }
};

int cmd_eval(const run_config& c, series_kind kind) {
  auto p = mathieu_params::make(c.gamma, c.alpha, c.mu, c.u, kind);
  const double tol = c.tol.value_or(1e-13);
  const auto ts = c.t_points();
  output_target out(c.output);
  record_writer w(*out.os, c.format);
  for (double t : ts) {
    auto r = eval_auto<double>(p, t, tol, kind);
    json rec;
    rec["t"] = t;
    rec["value"] = r.value;
    rec["err_lo"] = r.err_lo;
    rec["err_hi"] = r.err_hi;
    rec["method"] = to_string(r.method);
    rec["terms"] = r.terms_used;
    w.write(rec);
  }
  return 0;
}

// rows k, exponent, coefficient; k = -1 is the leading Beta term. With t given,
// a "term" column holds coefficient * t^exponent.
int cmd_asym(const run_config& c) {
  auto p = mathieu_params::make(c.gamma, c.alpha, c.mu, c.u);
  if (!p.smooth_regime()) throw regime_error("asymptotic expansion needs integer gamma >= 0 and natural alpha");
  const int n = std::min(c.order, asym_max_terms(p, series_kind::plain));
  if (n < 0) throw domain_error("order must be nonnegative");
  auto s = asym_S(p, n);
  output_target out(c.output);
  record_writer w(*out.os, c.format);
  auto row = [&](int k, const asymptotic_series::term& tm) {
    json rec;
    rec["k"] = k;
    rec["exponent"] = double(tm.exponent);
    rec["coefficient"] = double(tm.coeff);
    if (c.t) rec["term"] = double(asymptotic_series::term_value<long double>(tm, *c.t));
    w.write(rec);
  };
  if (s.leading) row(-1, *s.leading);
  for (int k = 0; k < int(s.stream.size()); ++k) row(k, s.stream[std::size_t(k)]);
  return 0;
}

int cmd_constants(const run_config& c) {
  if (!(c.u >= 0)) throw domain_error("u must be nonnegative");
  output_target out(c.output);
  record_writer w(*out.os, c.format);
  const double a = c.u * c.u + c.u;
  json rec;
  if (c.inf) {
    auto th = m_infinity_search(c.u);
    rec["u"] = c.u;
    rec["m_inf"] = th.value;
    rec["M_inf"] = M_infinity(c.u);
    rec["x_at_m_inf"] = th.x_at;
    rec["lower"] = a;
    rec["upper"] = a + 1.0 / 6;
    w.write(rec);
    return 0;
  }
  if (!(c.mu > 0)) throw domain_error("mu must be positive");
  auto k = compute_mM(s_mu_framework(c.mu, c.u));
  rec["mu"] = c.mu;
  rec["u"] = c.u;
  rec["m"] = k.m;
  rec["M"] = k.M;
  rec["f_inf"] = k.f_inf;
  rec["t_at_m"] = num(k.t_at_m);
  rec["t_at_M"] = num(k.t_at_M);
  // u^2+u < m <= u^2+u+1/6 < u^2+u+1/4 < M < (1+u)^2
  rec["bound_low"] = a;
  rec["bound_m"] = a + 1.0 / 6;
  rec["bound_M_low"] = a + 0.25;
  rec["bound_M_high"] = (1 + c.u) * (1 + c.u);
  rec["chain_holds"] = a < k.m && k.m <= a + 1.0 / 6 + 2 * k.tolerance() && a + 0.25 < k.M && k.M < (1 + c.u) * (1 + c.u);
  w.write(rec);
  return 0;
}

int cmd_verify(const run_config& c) {
  suite_options opt;
  if (c.tol) opt.tolerance = *c.tol;
  opt.b = c.b;
  auto reports = run_suite(c.suite, opt);
  bool ok = true;
  json doc;
  doc["suite"] = c.suite;
  doc["reports"] = json::array();
  for (const auto& r : reports) {
    ok &= r.passed();
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.check_name << " (" << r.total << " points";
    if (!r.passed()) {
      const auto& v = r.violations.front();
      std::cerr << ", " << r.violations.size() << " violations, " << r.inconclusive_count() << " inconclusive; witness at "
                << v.point << ": lhs=" << v.lhs << " rhs=" << v.rhs;
    }
    std::cerr << ")\n";
    doc["reports"].push_back(json::parse(to_json(r).dump()));
  }
  doc["passed"] = ok;
  output_target out(c.output);
  *out.os << doc.dump(2) << "\n";
  return ok ? 0 : 1;
}

// lhs and rhs of a Bessel-integral identity; t plays the transform variable
int cmd_hankel(const run_config& c) {
  output_target out(c.output);
  record_writer w(*out.os, c.format);
  for (double t : c.t_points()) {
    identity_value v;
    if (c.identity == "laplace")
      v = identity_laplace_bessel(c.p, t, c.mu);
    else if (c.identity == "series")
      v = identity_series_transform(c.mu, c.u, t);
    else if (c.identity == "difference")
      v = identity_difference_transform(c.p, c.u, c.mu, t);
    else if (c.identity == "parts")
      v = identity_parts_transform(c.p, c.u, c.mu, t);
    else if (c.identity == "derivative")
      v = identity_derivative(c.mu, c.u, t);
    else
      throw config_error("unknown identity: " + c.identity + " (laplace, series, difference, parts, derivative)");
    json rec;
    rec["identity"] = c.identity;
    rec["t"] = t;
    rec["lhs"] = v.lhs;
    rec["rhs"] = v.rhs;
    rec["difference"] = v.difference();
    w.write(rec);
  }
  return 0;
}

// raw option strings per config key, filled only for flags given on the command line
struct raw_options {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  std::map<std::string, bool> flags;
  std::string config_path;

  void option(CLI::App* app, const std::string& key, const std::string& desc) {
    std::string flag = "--" + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    opts[key] = app->add_option(flag, values[key], desc);
  }
  void flag(CLI::App* app, const std::string& key, const std::string& desc) {
    std::string name = "--" + key;
    for (auto& ch : name)
      if (ch == '_') ch = '-';
    opts[key] = app->add_flag(name, flags[key], desc);
  }

  // config file first, then every flag actually given
  run_config merge(const std::string& command) const {
    std::map<std::string, std::string> m;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw config_error("cannot read config file: " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      m = run_config::parse_kv(ss.str());
    }
    for (const auto& [key, opt] : opts) {
      if (opt->count() == 0) continue;
      auto f = flags.find(key);
      m[key] = f != flags.end() ? (f->second ? "true" : "false") : values.at(key);
    }
    m["command"] = command;
    return run_config::from_map(m);
  }
};

void common_options(CLI::App* sub, raw_options& r) {
  sub->add_option("--config", r.config_path, "key=value config file; flags given here win");
  r.option(sub, "format", "output format: json (JSON lines) or csv");
  r.option(sub, "output", "output file (default: standard output)");
}

void param_options(CLI::App* sub, raw_options& r) {
  r.option(sub, "gamma", "exponent gamma (default 1)");
  r.option(sub, "alpha", "exponent alpha (default 2)");
  r.option(sub, "mu", "exponent mu (default 1)");
  r.option(sub, "u", "offset u (default 0)");
}

void t_options(CLI::App* sub, raw_options& r) {
  r.option(sub, "t", "evaluation point");
  r.option(sub, "t_start", "range start (inclusive)");
  r.option(sub, "t_stop", "range stop (inclusive)");
  r.option(sub, "t_count", "number of range points");
  r.flag(sub, "t_log", "log-spaced range");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mathieu-type series: evaluation, asymptotics, sharp constants and verification"};
  app.require_subcommand(1);

  std::map<std::string, raw_options> raw;
  auto sub = [&](const std::string& name, const std::string& desc) {
    auto* s = app.add_subcommand(name, desc);
    common_options(s, raw[name]);
    return s;
  };

  auto* eval = sub("eval", "evaluate S(t,u,gamma,alpha,mu) with an error bracket");
  param_options(eval, raw["eval"]);
  t_options(eval, raw["eval"]);
  raw["eval"].option(eval, "tol", "absolute tolerance (default 1e-13)");

  auto* eval_alt = sub("eval-alt", "evaluate the alternating series with an error bracket");
  param_options(eval_alt, raw["eval-alt"]);
  t_options(eval_alt, raw["eval-alt"]);
  raw["eval-alt"].option(eval_alt, "tol", "absolute tolerance (default 1e-13)");

  auto* asym = sub("asym", "asymptotic coefficients in t (k = -1 is the leading term)");
  param_options(asym, raw["asym"]);
  raw["asym"].option(asym, "order", "number of stream terms (default 8)");
  raw["asym"].option(asym, "t", "optional point for a term-value column");

  auto* constants = sub("constants", "sharp constants m, M of S_mu(t,u), or m_inf, M_inf with --inf");
  raw["constants"].option(constants, "mu", "exponent mu > 0");
  raw["constants"].option(constants, "u", "offset u >= 0");
  raw["constants"].flag(constants, "inf", "the mu -> infinity constants");

  auto* verify = sub("verify", "run a verification suite; exit 1 on any violation");
  verify->add_option("suite", raw["verify"].values["suite"], "classical, em, asymptotic, hermite, hankel, cm, monotone or all");
  raw["verify"].opts["suite"] = verify->get_option("suite");
  raw["verify"].option(verify, "tol", "identity tolerance for the hankel suite (default 1e-6)");
  raw["verify"].option(verify, "b", "shift b of H_{1,b} in the monotone suite (default 1/6)");

  auto* hankel = sub("hankel", "both sides of a Bessel-integral identity");
  raw["hankel"].option(hankel, "identity", "laplace, series, difference, parts or derivative");
  raw["hankel"].option(hankel, "mu", "exponent mu");
  raw["hankel"].option(hankel, "u", "offset u");
  raw["hankel"].option(hankel, "p", "exponent p");
  t_options(hankel, raw["hankel"]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto* s : app.get_subcommands()) {
      const std::string name = s->get_name();
      run_config c = raw.at(name).merge(name);
      if (name == "eval") return cmd_eval(c, series_kind::plain);
      if (name == "eval-alt") return cmd_eval(c, series_kind::alternating);
      if (name == "asym") return cmd_asym(c);
      if (name == "constants") return cmd_constants(c);
      if (name == "verify") return cmd_verify(c);
      if (name == "hankel") return cmd_hankel(c);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
