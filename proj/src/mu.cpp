#include "gouq/mu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gouq/divisibility.hpp"
#include "gouq/errors.hpp"
#include "gouq/rho.hpp"
#include "gouq/rng.hpp"

namespace gouq {

std::complex<double> mu_cf(const ModelParams& mp, double z, double tol) {
  if (z == 0.0) return {1.0, 0.0};
  if (!(tol > 0)) throw Error(Errc::InvalidRate, "tol must be positive");
  const double c = mp.c.value;
  // remainder factors satisfy |rho_cf(w) - 1| <= mean |w|; drop levels once
  // mean |z| c^{-N} / (1 - 1/c) < tol
  const double lead = rho_mean(mp) * std::abs(z) / (1.0 - 1.0 / c);
  std::size_t levels = 0;
  if (lead >= tol)
    levels = static_cast<std::size_t>(
        std::ceil(std::log(lead / tol) / std::log(c)));
  std::complex<double> prod(1.0, 0.0);
  double zn = z;
  for (std::size_t n = 0; n <= levels; ++n) {
    prod *= rho_cf(mp, zn);
    zn /= c;
  }
  return prod;
}

double mu_cf_modulus_exp(const ModelParams& mp, double z, std::size_t nmax,
                         std::size_t mmax) {
  std::vector<double> a;
  if (mp.p == 0.0) {
    a.resize(mmax);
    double qp = 1.0;
    for (std::size_t m = 1; m <= mmax; ++m) {
      qp *= mp.q;
      a[m - 1] = qp / double(m);
    }
  } else if (mp.r <= mp.p * mp.q) {
    a = levy_coefficients_a(mp, mmax);
  } else {
    throw Error(Errc::NotApplicable,
                "coefficients change sign for r > pq; evaluate mu_cf instead");
  }
  double s = 0;
  const double c = mp.c.value;
  double scale = 1.0;  // c^{-n}
  for (std::size_t n = 0; n < nmax; ++n) {
    const double zn = z * scale;
    for (std::size_t m = 1; m <= mmax; ++m)
      s += (1.0 - std::cos(double(m) * zn)) * a[m - 1];
    scale /= c;
  }
  return std::exp(-s);
}

double mu_mean(const ModelParams& mp) {
  return rho_mean(mp) * mp.c.value / (mp.c.value - 1.0);
}

std::vector<CfSample> cf_grid_serial(const ModelParams& mp, double zmin,
                                     double zmax, std::size_t steps,
                                     double tol) {
  if (steps == 0) return {};
  std::vector<CfSample> out(steps);
  const double dz = (steps > 1) ? (zmax - zmin) / double(steps - 1) : 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double z = zmin + dz * double(i);
    out[i] = {z, mu_cf(mp, z, tol)};
  }
  return out;
}

std::vector<CfSample> cf_grid(const ModelParams& mp, double zmin, double zmax,
                              std::size_t steps, double tol) {
  if (steps == 0) return {};
  std::vector<CfSample> out(steps);
  const double dz = (steps > 1) ? (zmax - zmin) / double(steps - 1) : 0.0;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(steps); ++i) {
    const double z = zmin + dz * double(i);
    out[static_cast<std::size_t>(i)] = {z, mu_cf(mp, z, tol)};
  }
  return out;
}

SignedPointMeasure mu_levy_measure(const ModelParams& mp, std::size_t nmax,
                                   std::size_t mmax) {
  if (mp.p == 0.0)
    throw Error(Errc::PZero, "signed measure parametrised for p > 0");
  if (mp.r >= mp.p)
    throw Error(Errc::NotApplicable,
                "coefficient series is absolutely summable only for r < p");
  const std::vector<double> a = levy_coefficients_a(mp, mmax);
  const double c = mp.c.value;
  const double s = mp.r / mp.p;

  SignedPointMeasure out;
  out.complete_above = double(mmax) * std::pow(c, -double(nmax));
  out.atom_tail_bound = (std::pow(mp.q, double(mmax + 1)) / (1.0 - mp.q) +
                         std::pow(s, double(mmax + 1)) / (1.0 - s)) /
                        double(mmax + 1);

  const bool exact = mp.c.exact.has_value();
  if (exact) {
    out.mode = SignedPointMeasure::Mode::ExactRational;
    const Rational cr = *mp.c.exact;
    std::map<Rational, double> agg;
    Rational level = 1;  // c^{-n}
    for (std::size_t n = 0; n < nmax; ++n) {
      for (std::size_t m = 1; m <= mmax; ++m)
        agg[level * int(m)] += a[m - 1];
      level /= cr;
    }
    out.atoms.reserve(agg.size());
    for (const auto& [loc, w] : agg)
      out.atoms.push_back({to_double(loc), loc, w});
  } else {
    out.mode = SignedPointMeasure::Mode::FloatDistinct;
    out.atoms.reserve(nmax * mmax);
    double level = 1.0;
    for (std::size_t n = 0; n < nmax; ++n) {
      for (std::size_t m = 1; m <= mmax; ++m)
        out.atoms.push_back({level * double(m), std::nullopt, a[m - 1]});
      level /= c;
    }
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const SignedAtom& x, const SignedAtom& y) {
              return x.location < y.location;
            });
  for (const auto& atom : out.atoms) out.total_abs_weight += std::abs(atom.weight);
  return out;
}

std::optional<SignedAtom> negative_atom_witness(const SignedPointMeasure& m) {
  if (m.mode == SignedPointMeasure::Mode::FloatDistinct) {
    // locations assumed pairwise distinct: every negative weight stands
    const SignedAtom* best = nullptr;
    for (const auto& atom : m.atoms)
      if (atom.weight < 0 && (!best || atom.weight < best->weight))
        best = &atom;
    if (best) return *best;
    return std::nullopt;
  }
  const SignedAtom* best = nullptr;       // certified
  const SignedAtom* uncertain = nullptr;  // negative but not conclusive
  for (const auto& atom : m.atoms) {
    if (atom.weight >= 0) continue;
    const bool complete = atom.location > m.complete_above;
    if (complete && atom.weight < -m.atom_tail_bound) {
      if (!best || atom.weight < best->weight) best = &atom;
    } else {
      uncertain = &atom;
    }
  }
  if (best) return *best;
  if (uncertain)
    throw Error(Errc::TruncationTooSmall,
                "negative atom found but the truncation tail could cancel "
                "it; increase nmax/mmax");
  return std::nullopt;
}

std::size_t default_series_depth(const ModelParams& mp) {
  const double mean = mu_mean(mp);
  const std::size_t n = static_cast<std::size_t>(
      std::ceil(std::log(std::max(mean, 1.0) / 1e-12) /
                std::log(mp.c.value)));
  return std::max<std::size_t>(n, 1);
}

namespace {

// quantile of the innovation law at u in (0,1), by inversion:
// P(Y <= k) = 1 - (q+r) q^k
inline std::uint32_t rho_quantile(const ModelParams& mp, double u) {
  if (u <= mp.p) return 0;
  if (mp.q == 0.0) return 1;
  const double k =
      std::ceil(std::log((1.0 - u) / (mp.q + mp.r)) / std::log(mp.q));
  return static_cast<std::uint32_t>(std::max(k, 1.0));
}

}  // namespace

double mu_sample_one(const SeriesSampler& s, std::uint64_t stream) {
  SplitMix64 g = stream_rng(s.seed, stream);
  const double c = s.params.c.value;
  double scale = 1.0, sum = 0.0;
  for (std::size_t j = 0; j <= s.depth; ++j) {
    sum += scale * double(rho_quantile(s.params, g.uniform()));
    scale /= c;
  }
  return sum;
}

std::vector<double> mu_sample_serial(const SeriesSampler& s, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = mu_sample_one(s, i);
  return out;
}

std::vector<double> mu_sample(const SeriesSampler& s, std::size_t n) {
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] =
        mu_sample_one(s, static_cast<std::uint64_t>(i));
  return out;
}

}  // namespace gouq
