#include "gouq/params.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace gouq {

std::optional<Rational> parse_decimal(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool any_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_dot) ++frac_digits;
      any_digit = true;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((ch == 'e' || ch == 'E') && any_digit) {
      break;
    } else {
      return std::nullopt;
    }
  }
  long exponent = 0;
  if (i < s.size()) {  // exponent part
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = (s[i] == '-');
      ++i;
    }
    if (i >= s.size()) return std::nullopt;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      exponent = exponent * 10 + (s[i] - '0');
      if (exponent > 10000) return std::nullopt;
    }
    if (eneg) exponent = -exponent;
  }
  if (!any_digit) return std::nullopt;
  long shift = exponent - frac_digits;
  BigInt num = neg ? BigInt(-mantissa) : mantissa;
  BigInt den = 1;
  if (shift >= 0) {
    for (long k = 0; k < shift; ++k) num *= 10;
  } else {
    for (long k = 0; k < -shift; ++k) den *= 10;
  }
  return Rational(num, den);
}

ScaleC ScaleC::integer(long long n) {
  ScaleC c;
  c.value = static_cast<double>(n);
  c.tag = Exactness::Integer;
  c.exact = Rational(n);
  return c;
}

ScaleC ScaleC::rational(long long num, long long den) {
  if (den == 0) throw Error(Errc::InvalidC, "zero denominator");
  ScaleC c;
  c.exact = Rational(num, den);
  c.value = to_double(*c.exact);
  c.tag = (denominator(*c.exact) == 1) ? Exactness::Integer : Exactness::Rational;
  return c;
}

ScaleC ScaleC::floating(double v) {
  ScaleC c;
  c.value = v;
  c.tag = Exactness::Float;
  return c;
}

ScaleC ScaleC::algebraic(double v) {
  ScaleC c;
  c.value = v;
  c.tag = Exactness::Algebraic;
  return c;
}

namespace {

void check_c(const ScaleC& c) {
  if (!(c.value > 1.0)) {
    std::ostringstream os;
    os << "c = " << c.value << " must exceed 1";
    throw Error(Errc::InvalidC, os.str());
  }
}

void check_triple(const ModelParams& mp) {
  if (mp.p < 0 || mp.q < 0 || mp.r < 0 || mp.p > 1 || mp.q > 1 || mp.r > 1)
    throw Error(Errc::InvalidRate, "p, q, r must lie in [0,1]");
  if (mp.p + mp.r <= 0)
    throw Error(Errc::InvalidRate, "p + r = 0 (the N component never jumps)");
  if (mp.q + mp.r <= 0)
    throw Error(Errc::InvalidRate, "q + r = 0 (the Y component never jumps)");
  if (mp.p + mp.q <= 0)
    throw Error(Errc::DegenerateModel,
                "r = 1 degenerates the law to the point c/(c-1)");
}

}  // namespace

ModelParams make_params(ScaleC c, double p, double q, double r) {
  check_c(c);
  const double sum = p + q + r;
  if (!(std::abs(sum - 1.0) <= 1e-12))
    throw Error(Errc::InvalidRate, "p + q + r must equal 1 (tolerance 1e-12)");
  ModelParams mp;
  mp.c = std::move(c);
  mp.p = p / sum;
  mp.q = q / sum;
  mp.r = r / sum;
  check_triple(mp);
  return mp;
}

ModelParams make_params_exact(ScaleC c, const Rational& p, const Rational& q,
                              const Rational& r) {
  check_c(c);
  if (p + q + r != 1)
    throw Error(Errc::InvalidRate, "exact p + q + r must equal 1");
  ModelParams mp;
  mp.c = std::move(c);
  mp.p = to_double(p);
  mp.q = to_double(q);
  mp.r = to_double(r);
  mp.p_exact = p;
  mp.q_exact = q;
  mp.r_exact = r;
  check_triple(mp);
  return mp;
}

ModelParams normalize(const RawRates& raw, ScaleC c) {
  if (raw.u < 0 || raw.v < 0 || raw.w < 0)
    throw Error(Errc::InvalidRate, "rates must be nonnegative");
  if (raw.u + raw.w <= 0)
    throw Error(Errc::InvalidRate, "u + w = 0 (the N component never jumps)");
  if (raw.v + raw.w <= 0)
    throw Error(Errc::InvalidRate, "v + w = 0 (the Y component never jumps)");
  check_c(c);
  const double total = raw.u + raw.v + raw.w;
  ModelParams mp;
  mp.c = std::move(c);
  mp.p = raw.u / total;
  mp.q = raw.v / total;
  mp.r = raw.w / total;
  check_triple(mp);
  return mp;
}

double degenerate_value(double c) {
  if (!(c > 1.0)) throw Error(Errc::InvalidC, "c must exceed 1");
  return c / (c - 1.0);
}

}  // namespace gouq
