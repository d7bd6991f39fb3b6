#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmshare::quad {

// Base for all numerical failures so callers can map them to one exit path.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when adaptive bisection exhausts max_depth with the error estimate
// still above tolerance.
class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

// Raised by find_root when f(lo) and f(hi) do not straddle zero.
class NoBracket : public NumericError {
 public:
  using NumericError::NumericError;
};

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 40;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Adaptive Gauss-Kronrod (G7,K15) over [a,b]. b may be +inf, in which case
// the tail is mapped to [0,1) via y = a + t/(1-t); Kronrod nodes are interior
// so the endpoint itself is never evaluated.
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadSpec& spec = {});

// Lower incomplete gamma, non-regularized: integral of u^{s-1} e^{-u} over
// [0, x]. Series for x < s+1, continued fraction otherwise. Requires s > 0
// and x >= 0.
double lower_incomplete_gamma(double s, double x);

// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs. tol is an
// absolute width on the final bracket.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-10);

}  // namespace mmshare::quad
