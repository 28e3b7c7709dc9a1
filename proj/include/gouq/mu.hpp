#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gouq/params.hpp"
#include "gouq/rational.hpp"

namespace gouq {

// Characteristic function of the stationary law as the truncated product
// prod_{n=0}^{N} rho_cf(c^{-n} z), N chosen from the small-argument bound
// |rho_cf(w) - 1| <= mean * |w| so the dropped factors deviate from 1 by
// less than tol.
std::complex<double> mu_cf(const ModelParams& mp, double z, double tol = 1e-9);

// |mu_cf(z)| through the exponent formula
//   exp[- sum_{n<=nmax} sum_{m<=mmax} (1 - cos(m c^{-n} z)) a_m ],
// valid when all a_m >= 0: p > 0 with r <= pq (a_m from
// levy_coefficients_a), or p = 0 (a_m = q^m/m). Independent of the product
// route, so the two can be cross-checked. Throws NotApplicable otherwise.
double mu_cf_modulus_exp(const ModelParams& mp, double z, std::size_t nmax,
                         std::size_t mmax);

// mean of rho times c/(c-1)
double mu_mean(const ModelParams& mp);

struct CfSample {
  double z = 0;
  std::complex<double> value;
};

// mu_cf on a uniform grid; OpenMP-parallel over grid points with a serial
// reference kept for testing. Both produce identical output.
std::vector<CfSample> cf_grid(const ModelParams& mp, double zmin, double zmax,
                              std::size_t steps, double tol = 1e-9);
std::vector<CfSample> cf_grid_serial(const ModelParams& mp, double zmin,
                                     double zmax, std::size_t steps,
                                     double tol = 1e-9);

// Truncation of the signed point measure  sum_n sum_m a_m delta_{c^{-n} m}.
// With an exact (integer or rational) c, atoms whose locations coincide are
// aggregated under exact rational keys; float c treats all locations as
// distinct. A certified negative aggregated weight witnesses failure of
// infinite divisibility.
struct SignedAtom {
  double location = 0;
  std::optional<Rational> location_exact;
  double weight = 0;
};

struct SignedPointMeasure {
  enum class Mode { ExactRational, FloatDistinct };
  Mode mode = Mode::FloatDistinct;
  std::vector<SignedAtom> atoms;  // sorted by location, ascending
  double total_abs_weight = 0;
  // bound on the |weight| a single location above complete_above may still
  // be missing because of the m-truncation
  double atom_tail_bound = 0;
  // locations at or below this can also miss n > nmax contributions
  double complete_above = 0;
};

// Requires p > r (the coefficient series is absolutely summable only then).
SignedPointMeasure mu_levy_measure(const ModelParams& mp, std::size_t nmax,
                                   std::size_t mmax);

// The most negative aggregated atom if its weight clears the truncation
// bound; throws TruncationTooSmall when a negative atom exists but the tail
// bound could still cancel it.
std::optional<SignedAtom> negative_atom_witness(const SignedPointMeasure& m);

// Sampler for the random series  sum_{j=0}^{depth} c^{-j} U_j  with U_j
// i.i.d. innovation draws by inversion. Deterministic per (seed, stream).
struct SeriesSampler {
  ModelParams params;
  std::size_t depth = 40;
  std::uint64_t seed = 0;
};

// smallest depth with c^{-depth} * mean < 1e-12
std::size_t default_series_depth(const ModelParams& mp);

double mu_sample_one(const SeriesSampler& s, std::uint64_t stream);

// n draws using streams 0..n-1. The OpenMP version and the serial reference
// return bit-identical vectors.
std::vector<double> mu_sample(const SeriesSampler& s, std::size_t n);
std::vector<double> mu_sample_serial(const SeriesSampler& s, std::size_t n);

}  // namespace gouq
