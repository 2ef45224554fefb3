#pragma once

#include <stdexcept>
#include <string>

namespace mathieu {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// argument outside the mathematical domain (delta constraint, negative beta args, ...)
struct domain_error : error {
  using error::error;
};

// requested polynomial / derivative order beyond what is cached or defined
struct order_error : error {
  using error::error;
};

struct precondition_error : error {
  using error::error;
};

struct divergence_error : error {
  using error::error;
};

// the requested tolerance would need more terms than the configured cap
struct tolerance_error : error {
  using error::error;
};

// asymptotic expansion requested outside (gamma, alpha) in Z+ x N
struct regime_error : error {
  using error::error;
};

struct search_error : error {
  using error::error;
};

}  // namespace mathieu
