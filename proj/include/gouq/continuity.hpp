#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gouq/params.hpp"

namespace gouq {

// Certificate that c is a Pisot-Vijayaraghavan number: c is a simple root
// of a monic integer polynomial whose remaining roots all lie strictly
// inside the unit circle, with enough margin to absorb the root radii.
struct PisotCertificate {
  std::vector<long long> coefficients;  // descending powers, leading 1
  std::vector<std::complex<double>> roots;
  std::vector<double> root_radii;
  std::size_t principal_index = 0;
  double conjugate_bound = 0;  // max over conjugates of |root| + radius
  double margin = 0;           // 1 - conjugate_bound
};

// Companion-matrix eigenvalues, Newton polishing, and a posteriori radii
// n |F(x)| / |F'(x)| inflated by the Horner evaluation error. Fails closed:
// overlapping root discs raise UncertifiedRoots, a conjugate reaching the
// unit circle or c not matching a real root > 1 raises NotPisot.
PisotCertificate certify_pisot(double c, const std::vector<long long>& poly);

// Integers >= 2, the golden ratio and the plastic number.
std::optional<PisotCertificate> builtin_pisot_certificate(const ScaleC& c);

// Newton-identity check: sum_j root_j^n must be an integer for every n; the
// numeric sum has to land within the combined radius-propagation bound of
// the exact integer value computed from the coefficients.
bool power_sums_near_integers(const PisotCertificate& cert, int nmax,
                              double slack = 1e-9);

// entropy(rho)/log c; an upper bound for the Hausdorff dimension of the
// stationary law. Requires q > 0 (throws QZero).
double dim_bound(const ModelParams& mp);

enum class Continuity { ContinuousSingular, AbsolutelyContinuous, Undetermined };

constexpr const char* to_string(Continuity c) noexcept {
  switch (c) {
    case Continuity::ContinuousSingular: return "ContinuousSingular";
    case Continuity::AbsolutelyContinuous: return "AbsolutelyContinuous";
    case Continuity::Undetermined: return "Undetermined";
  }
  return "?";
}

struct ContinuityVerdict {
  Continuity decision = Continuity::Undetermined;
  std::string rule;
  double entropy = std::numeric_limits<double>::quiet_NaN();
  double log_c = 0;
  double dimension_bound = std::numeric_limits<double>::quiet_NaN();
};

// Rule order: Pisot certificate (q > 0), entropy dimension bound < 1
// (q > 0), the almost-every-c assumption flag (reported, never decides),
// q = 0 (open problem), otherwise Undetermined.
ContinuityVerdict classify_continuity(
    const ModelParams& mp, const std::optional<PisotCertificate>& pisot,
    bool ps_assumption);

struct SingularityThreshold {
  double t_low = 0;  // +infinity when the Pisot rule applies
  std::string rule;
  std::vector<std::pair<double, double>> trace;  // bisection (t, entropy)
};

// Largest certified t below which every convolution power of the stationary
// law stays continuous-singular: the solution of
// entropy(rho^{t*}) = log c (bisection; the entropy is strictly increasing
// in t). A Pisot certificate upgrades this to +infinity.
SingularityThreshold power_singularity_threshold(
    const ModelParams& mp,
    const std::optional<PisotCertificate>& pisot = std::nullopt);

struct ErdosWitness {
  bool lower_bounds_only = false;  // signed-coefficient branch
  std::vector<std::pair<int, double>> values;  // (k, |mu_cf(2 pi c^k)|)
  std::optional<double> uniform_lower_bound;   // analytic, needs certificate
};

// Evaluates |mu_cf| along z_k = 2 pi c^k. For a Pisot c the values stay
// bounded away from zero; the certificate also yields a k-independent
// analytic lower bound. On the r > pq branch the positive-part coefficients
// give certified lower bounds instead of values.
ErdosWitness erdos_witness(const ModelParams& mp,
                           const std::optional<PisotCertificate>& cert,
                           int kmax);

}  // namespace gouq
