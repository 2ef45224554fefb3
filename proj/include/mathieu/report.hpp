#pragma once

// Verification reports: every check records its points, and a point counts
// as verified only when the margin beats the combined error brackets.
// Near ties are kept as "inconclusive" violations, never as passes.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "error.hpp"

namespace mathieu {

struct violation {
  std::map<std::string, double> params;
  double point = 0;
  double lhs = 0, rhs = 0;
  double margin = 0;  // rhs - lhs for "lhs < rhs"
  bool inconclusive = false;
};

struct verification_report {
  std::string check_name;
  long total = 0;
  std::vector<violation> violations;

  bool passed() const { return violations.empty(); }

  long inconclusive_count() const {
    long n = 0;
    for (const auto& v : violations) n += v.inconclusive;
    return n;
  }

  // lhs < rhs (strict) or lhs <= rhs, with error brackets on both sides. A strict
  // inequality needs margin > err; a non-strict one fails only beyond err.
  bool expect_less(const std::map<std::string, double>& params, double point, double lhs, double lhs_err, double rhs,
                   double rhs_err, bool strict = true) {
    ++total;
    const double margin = rhs - lhs, err = lhs_err + rhs_err;
    const bool ok = strict ? margin > err : margin >= -err;
    if (ok && std::isfinite(margin)) return true;
    violation v{params, point, lhs, rhs, margin, std::abs(margin) <= err};
    violations.push_back(std::move(v));
    return false;
  }

  void merge(const verification_report& other) {
    total += other.total;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

inline nlohmann::json to_json(const violation& v) {
  nlohmann::json j;
  j["params"] = v.params;
  j["point"] = v.point;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["margin"] = v.margin;
  j["inconclusive"] = v.inconclusive;
  return j;
}

inline nlohmann::json to_json(const verification_report& r) {
  nlohmann::json j;
  j["check_name"] = r.check_name;
  j["total"] = r.total;
  j["passed"] = r.passed();
  j["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) j["violations"].push_back(to_json(v));
  return j;
}

// sorted, strictly increasing evaluation points
struct grid_spec {
  std::vector<double> points;
  double tolerance = 0;

  void validate() const {
    if (points.empty()) throw domain_error("grid must be nonempty");
    for (std::size_t i = 1; i < points.size(); ++i)
      if (!(points[i] > points[i - 1])) throw domain_error("grid points must be strictly increasing");
  }

  static grid_spec linear(double a, double b, int n) {
    grid_spec g;
    for (int i = 0; i < n; ++i) g.points.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return g;
  }
  static grid_spec log_spaced(double a, double b, int n) {
    grid_spec g;
    for (int i = 0; i < n; ++i) g.points.push_back(n == 1 ? a : a * std::pow(b / a, double(i) / (n - 1)));
    return g;
  }
};

}  // namespace mathieu
