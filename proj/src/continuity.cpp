#include "gouq/continuity.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gouq/divisibility.hpp"
#include "gouq/errors.hpp"
#include "gouq/mu.hpp"
#include "gouq/rational.hpp"
#include "gouq/rho.hpp"

namespace gouq {

namespace {

constexpr double kGoldenRatio = 1.6180339887498948482;
constexpr double kPlasticNumber = 1.3247179572447460260;

struct HornerEval {
  std::complex<double> value;
  std::complex<double> derivative;
  double error_bound;  // on |value|
};

HornerEval eval_poly(const std::vector<long long>& coeff,
                     std::complex<double> x) {
  std::complex<double> v(0, 0), d(0, 0);
  double s = 0;  // sum |a_j| |x|^{N-j}, for the rounding-error bound
  const double ax = std::abs(x);
  for (long long a : coeff) {
    d = d * x + v;
    v = v * x + double(a);
    s = s * ax + std::abs(double(a));
  }
  HornerEval out;
  out.value = v;
  out.derivative = d;
  const double n = double(coeff.size());
  out.error_bound = 4.0 * n * std::numeric_limits<double>::epsilon() * s;
  return out;
}

}  // namespace

PisotCertificate certify_pisot(double c, const std::vector<long long>& poly) {
  if (poly.size() < 2)
    throw Error(Errc::NotPisot, "polynomial degree must be at least 1");
  if (poly.front() != 1)
    throw Error(Errc::NotPisot,
                "polynomial is not monic; only algebraic integers qualify");
  const std::size_t degree = poly.size() - 1;

  // companion-matrix eigenvalues as starting points
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (std::size_t i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -double(poly[degree - i]);  // -coeff of x^i
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::UncertifiedRoots, "eigenvalue iteration failed");

  PisotCertificate cert;
  cert.coefficients = poly;
  cert.roots.resize(degree);
  cert.root_radii.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    std::complex<double> x = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    // Newton polish
    for (int it = 0; it < 60; ++it) {
      const HornerEval e = eval_poly(poly, x);
      if (std::abs(e.derivative) == 0.0) break;
      const std::complex<double> step = e.value / e.derivative;
      x -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(x))) break;
    }
    const HornerEval e = eval_poly(poly, x);
    const double dabs = std::abs(e.derivative);
    if (dabs <= 2.0 * e.error_bound)
      throw Error(Errc::UncertifiedRoots,
                  "derivative too small to bound the root error");
    // nearest-root bound n|F/F'|, inflated by the evaluation error
    cert.roots[i] = x;
    cert.root_radii[i] =
        double(degree) * (std::abs(e.value) + e.error_bound) /
        (dabs - e.error_bound);
  }

  for (std::size_t i = 0; i < degree; ++i)
    for (std::size_t j = i + 1; j < degree; ++j)
      if (std::abs(cert.roots[i] - cert.roots[j]) <=
          cert.root_radii[i] + cert.root_radii[j])
        throw Error(Errc::UncertifiedRoots,
                    "root discs overlap; roots may not be simple");

  bool found = false;
  for (std::size_t i = 0; i < degree; ++i) {
    const auto& x = cert.roots[i];
    const double tol = cert.root_radii[i] + 1e-9 * std::max(1.0, std::abs(c));
    if (std::abs(x.imag()) <= cert.root_radii[i] && x.real() > 1.0 &&
        std::abs(x.real() - c) <= tol) {
      cert.principal_index = i;
      found = true;
      break;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "c = " << c << " is not a real root > 1 of the polynomial";
    throw Error(Errc::NotPisot, os.str());
  }

  cert.conjugate_bound = 0.0;
  for (std::size_t i = 0; i < degree; ++i) {
    if (i == cert.principal_index) continue;
    cert.conjugate_bound = std::max(
        cert.conjugate_bound, std::abs(cert.roots[i]) + cert.root_radii[i]);
  }
  if (cert.conjugate_bound >= 1.0) {
    std::ostringstream os;
    os << "a conjugate root has modulus " << cert.conjugate_bound
       << " >= 1 (radii included)";
    throw Error(Errc::NotPisot, os.str());
  }
  cert.margin = 1.0 - cert.conjugate_bound;
  return cert;
}

std::optional<PisotCertificate> builtin_pisot_certificate(const ScaleC& c) {
  const double v = c.value;
  const double nearest = std::round(v);
  if (nearest >= 2.0 && std::abs(v - nearest) <= 1e-12) {
    const bool exact_ok =
        !c.exact || *c.exact == Rational(static_cast<long long>(nearest));
    if (exact_ok)
      return certify_pisot(nearest, {1, -static_cast<long long>(nearest)});
  }
  if (c.tag == Exactness::Rational) return std::nullopt;
  if (std::abs(v - kGoldenRatio) <= 1e-9)
    return certify_pisot(kGoldenRatio, {1, -1, -1});
  if (std::abs(v - kPlasticNumber) <= 1e-9)
    return certify_pisot(kPlasticNumber, {1, 0, -1, -1});
  return std::nullopt;
}

bool power_sums_near_integers(const PisotCertificate& cert, int nmax,
                              double slack) {
  const std::size_t degree = cert.coefficients.size() - 1;
  // exact power sums from Newton's identities; e_i = (-1)^i coeff[i]
  std::vector<BigInt> e(degree + 1);
  for (std::size_t i = 1; i <= degree; ++i) {
    e[i] = BigInt(cert.coefficients[i]);
    if (i % 2 == 1) e[i] = -e[i];
  }
  std::vector<BigInt> ps(static_cast<std::size_t>(nmax) + 1);
  ps[0] = BigInt(static_cast<long long>(degree));
  for (int n = 1; n <= nmax; ++n) {
    BigInt s = 0;
    const int top = std::min<int>(n - 1, static_cast<int>(degree));
    for (int i = 1; i <= top; ++i) {
      BigInt term = e[static_cast<std::size_t>(i)] * ps[static_cast<std::size_t>(n - i)];
      s += (i % 2 == 1) ? term : -term;
    }
    if (n <= static_cast<int>(degree)) {
      BigInt term = e[static_cast<std::size_t>(n)] * n;
      s += (n % 2 == 1) ? term : -term;
    }
    ps[static_cast<std::size_t>(n)] = s;
  }

  for (int n = 1; n <= nmax; ++n) {
    std::complex<double> num(0, 0);
    double bound = 0;
    for (std::size_t j = 0; j < cert.roots.size(); ++j) {
      num += std::pow(cert.roots[j], n);
      const double m = std::abs(cert.roots[j]) + cert.root_radii[j];
      bound += double(n) * std::pow(m, double(n - 1)) * cert.root_radii[j];
    }
    const double exact = ps[static_cast<std::size_t>(n)].convert_to<double>();
    const double tol =
        bound + slack * std::max(1.0, std::abs(exact)) +
        64 * std::numeric_limits<double>::epsilon() * std::abs(exact);
    if (std::abs(num.real() - exact) > tol) return false;
    if (std::abs(num.imag()) > tol) return false;
  }
  return true;
}

double dim_bound(const ModelParams& mp) {
  if (mp.q <= 0.0)
    throw Error(Errc::QZero,
                "entropy dimension bound needs q > 0 (Bernoulli-convolution "
                "regime excluded)");
  return rho_entropy(mp) / std::log(mp.c.value);
}

ContinuityVerdict classify_continuity(
    const ModelParams& mp, const std::optional<PisotCertificate>& pisot,
    bool ps_assumption) {
  ContinuityVerdict v;
  v.log_c = std::log(mp.c.value);
  if (mp.q == 0.0) {
    v.decision = Continuity::Undetermined;
    v.rule = "bernoulli-convolution-regime: classification open";
    v.entropy = rho_entropy(mp);
    return v;
  }
  v.entropy = rho_entropy(mp);
  v.dimension_bound = v.entropy / v.log_c;
  if (pisot) {
    v.decision = Continuity::ContinuousSingular;
    v.rule = "pisot-certificate";
    return v;
  }
  if (v.dimension_bound < 1.0) {
    v.decision = Continuity::ContinuousSingular;
    v.rule = "entropy-dim-bound";
    if (mp.r == 0.0 && mp.q <= 1.0 - std::numbers::ln2 / v.log_c)
      v.rule += " (small-q region)";
    return v;
  }
  const bool id_shape = (mp.p == 0.0) || (mp.p > 0 && mp.r <= mp.p * mp.q);
  if (ps_assumption && id_shape) {
    v.decision = Continuity::Undetermined;
    v.rule =
        "ps-assumption: shape consistent with absolute continuity, but the "
        "q-threshold constant is not computable";
    return v;
  }
  v.decision = Continuity::Undetermined;
  v.rule = "no-applicable-criterion";
  return v;
}

SingularityThreshold power_singularity_threshold(
    const ModelParams& mp, const std::optional<PisotCertificate>& pisot) {
  if (!rho_infinitely_divisible(mp))
    throw Error(Errc::NotInfinitelyDivisible,
                "convolution powers are defined only for r <= pq or p = 0");
  SingularityThreshold out;
  if (pisot) {
    out.t_low = std::numeric_limits<double>::infinity();
    out.rule = "pisot-certificate: continuous-singular for every t > 0";
    return out;
  }
  const double target = std::log(mp.c.value);
  double lo = 1e-6;
  if (rho_power_entropy(mp, lo) >= target) {
    out.t_low = lo;
    out.rule = "bracket-floor: entropy already exceeds log c at t = 1e-6";
    return out;
  }
  double hi = 1.0;
  while (rho_power_entropy(mp, hi) < target) {
    hi *= 2.0;
    if (hi > 65536.0) {
      out.t_low = std::numeric_limits<double>::infinity();
      out.rule = "entropy-cap-exceeded: undetermined";
      return out;
    }
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double h = rho_power_entropy(mp, mid);
    out.trace.emplace_back(mid, h);
    if (std::abs(h - target) <= 1e-9) break;
    (h < target ? lo : hi) = mid;
  }
  out.t_low = mid;
  out.rule = "entropy-bisection";
  return out;
}

ErdosWitness erdos_witness(const ModelParams& mp,
                           const std::optional<PisotCertificate>& cert,
                           int kmax) {
  if (mp.q <= 0.0)
    throw Error(Errc::QZero, "witness sequence needs q > 0");
  const double c = mp.c.value;
  const double two_pi = 2.0 * std::numbers::pi;
  ErdosWitness out;

  const bool nonneg = (mp.p == 0.0) || (mp.r <= mp.p * mp.q);
  double sum_m2 = 0;  // sum of m^2 * coefficient, for level truncation
  std::vector<double> epos;

  if (nonneg) {
    if (mp.p == 0.0) {
      sum_m2 = mp.q / ((1 - mp.q) * (1 - mp.q));
    } else {
      const double s = mp.r / mp.p;
      sum_m2 = mp.q / ((1 - mp.q) * (1 - mp.q)) + s / ((1 + s) * (1 + s));
    }
  } else {
    // signed branch: positive parts of the cosine-series coefficients give
    // certified lower bounds (throws DegenerateAB for p = r)
    const std::size_t mm = sym_mmax_for(mp, 1e-14);
    const SymCoefficients sym = sym_coefficients(mp, mm, 1e-14);
    epos.resize(sym.E.size());
    for (std::size_t i = 0; i < sym.E.size(); ++i) {
      epos[i] = std::max(sym.E[i], 0.0);
      sum_m2 += double((i + 1) * (i + 1)) * epos[i];
    }
    out.lower_bounds_only = true;
  }

  const double maxratio =
      nonneg ? std::max(mp.q, mp.p > 0 ? mp.r / mp.p : 0.0) : 0.0;
  std::size_t mmax = 64;
  if (nonneg && maxratio > 0)
    mmax = std::min<std::size_t>(
        20000, std::max<std::size_t>(
                   64, static_cast<std::size_t>(std::ceil(
                           std::log(1e-15) / std::log(maxratio)))));

  for (int k = 1; k <= kmax; ++k) {
    const double z = two_pi * std::pow(c, k);
    // levels until the remaining (1-cos) mass is below 1e-13
    const double lvl =
        std::log(z * std::sqrt(sum_m2 / (2e-13 * (1.0 - 1.0 / (c * c))))) /
        std::log(c);
    const std::size_t nlev =
        static_cast<std::size_t>(std::max(8.0, std::ceil(lvl) + 1.0));
    double value;
    if (nonneg) {
      value = mu_cf_modulus_exp(mp, z, nlev, mmax);
    } else {
      double s = 0;
      double scale = 1.0;
      for (std::size_t n = 0; n < nlev; ++n) {
        const double zn = z * scale;
        for (std::size_t m = 1; m <= epos.size(); ++m)
          s += epos[m - 1] * (1.0 - std::cos(double(m) * zn));
        scale /= c;
      }
      // add the level and coefficient tails so the bound stays valid
      s += 0.5 * z * z * std::pow(c, -2.0 * double(nlev)) /
           (1.0 - 1.0 / (c * c)) * sum_m2;
      s += 2.0 * double(nlev) * 1e-14;
      value = std::exp(-s);
    }
    out.values.emplace_back(k, value);
  }

  if (cert) {
    const double delta = cert->conjugate_bound;
    const double conj = double(cert->coefficients.size() - 2);  // N - 1
    const double factor =
        2.0 * std::numbers::pi * std::numbers::pi *
        (conj * conj / (1.0 - delta * delta) + 1.0 / (c * c - 1.0));
    out.uniform_lower_bound = std::exp(-sum_m2 * factor);
  }
  return out;
}

}  // namespace gouq
