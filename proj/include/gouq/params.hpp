#pragma once

#include <optional>
#include <string>

#include "gouq/errors.hpp"
#include "gouq/rational.hpp"

namespace gouq {

// How the scale constant c is known. Exact forms (integer, rational)
// enable exact lattice aggregation downstream; the algebraic tag marks a
// c that came with a defining polynomial.
enum class Exactness { Integer, Rational, Float, Algebraic };

constexpr const char* to_string(Exactness e) noexcept {
  switch (e) {
    case Exactness::Integer: return "integer";
    case Exactness::Rational: return "rational";
    case Exactness::Float: return "float";
    case Exactness::Algebraic: return "algebraic";
  }
  return "?";
}

struct ScaleC {
  double value = 2.0;
  Exactness tag = Exactness::Float;
  std::optional<Rational> exact;  // set for Integer and Rational tags

  static ScaleC integer(long long n);
  static ScaleC rational(long long num, long long den);
  static ScaleC floating(double c);
  static ScaleC algebraic(double c);
};

// Jump-rate triple of the driving bivariate Poisson process:
// u for (1,0) jumps, v for (0,1) jumps, w for joint (1,1) jumps.
struct RawRates {
  double u = 0;
  double v = 0;
  double w = 0;
};

// Normalised model parameters. p+q+r = 1, each in [0,1], with
// p+r > 0, q+r > 0 and p+q > 0 (r = 1 collapses the law to a point).
// When the inputs were exact decimals the rational forms are kept so
// classification inequalities can be decided exactly.
struct ModelParams {
  ScaleC c;
  double p = 0;
  double q = 0;
  double r = 0;
  std::optional<Rational> p_exact, q_exact, r_exact;

  bool has_exact_pqr() const { return p_exact.has_value(); }
};

ModelParams make_params(ScaleC c, double p, double q, double r);
ModelParams make_params_exact(ScaleC c, const Rational& p, const Rational& q,
                              const Rational& r);

// (u,v,w) -> (p,q,r) by dividing through u+v+w. Scale invariant.
ModelParams normalize(const RawRates& raw, ScaleC c);

// Dirac point c/(c-1) of the r = 1 degenerate case.
double degenerate_value(double c);

}  // namespace gouq
