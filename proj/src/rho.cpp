#include "gouq/rho.hpp"

#include <algorithm>
#include <cmath>

#include "gouq/divisibility.hpp"
#include "gouq/errors.hpp"

namespace gouq {

double DiscretePmf::enumerated_mass() const {
  double s = 0;
  for (double m : mass) s += m;
  return s;
}

double DiscretePmf::mean() const {
  double s = 0;
  for (std::size_t k = 1; k < mass.size(); ++k) s += double(k) * mass[k];
  return s;
}

DiscretePmf convolve(const DiscretePmf& a, const DiscretePmf& b,
                     std::size_t out_kmax) {
  DiscretePmf out;
  out.mass.assign(out_kmax + 1, 0.0);
  for (std::size_t i = 0; i < a.mass.size() && i <= out_kmax; ++i) {
    if (a.mass[i] == 0) continue;
    const std::size_t jmax = std::min(b.mass.size(), out_kmax + 1 - i);
    for (std::size_t j = 0; j < jmax; ++j)
      out.mass[i + j] += a.mass[i] * b.mass[j];
  }
  out.truncation_tail = std::max(0.0, 1.0 - out.enumerated_mass());
  return out;
}

std::size_t rho_default_kmax(const ModelParams& mp) {
  if (mp.q <= 0) return 1;
  // q^kmax < 1e-14
  return static_cast<std::size_t>(
      std::ceil(std::log(1e-14) / std::log(mp.q))) + 1;
}

DiscretePmf rho_pmf(const ModelParams& mp, std::size_t kmax) {
  DiscretePmf out;
  if (mp.q == 0.0) {
    out.mass = {1.0 - mp.r, mp.r};
    if (kmax == 0) {
      out.mass.resize(1);
      out.truncation_tail = mp.r;
    }
    return out;
  }
  out.mass.resize(kmax + 1);
  out.mass[0] = mp.p;
  const double step = mp.r + mp.q * mp.p;
  double geom = 1.0;  // q^{k-1}
  for (std::size_t k = 1; k <= kmax; ++k) {
    out.mass[k] = geom * step;
    geom *= mp.q;
  }
  // geometric tail is exact: P(Y > kmax) = (q+r) q^kmax
  out.truncation_tail = (mp.q + mp.r) * std::pow(mp.q, double(kmax));
  return out;
}

std::complex<double> rho_cf(const ModelParams& mp, double z) {
  const std::complex<double> eiz(std::cos(z), std::sin(z));
  return (mp.p + mp.r * eiz) / (1.0 - mp.q * eiz);
}

double rho_mean(const ModelParams& mp) {
  if (mp.q == 0.0) return mp.r;
  return (mp.q + mp.r) / (1.0 - mp.q);
}

double rho_entropy(const ModelParams& mp) {
  const double p = mp.p, q = mp.q, r = mp.r;
  if (q == 0.0)  // Bernoulli(r)
    return -(r * std::log(r) + (1 - r) * std::log(1 - r));
  double h = (q + r) * (std::log(1.0 / (1.0 - q)) +
                        std::log(1.0 / q) / (1.0 - q) -
                        std::log((q + r) / q));
  if (p > 0) h += p * std::log(1.0 / p);
  return h;
}

bool rho_infinitely_divisible(const ModelParams& mp) {
  if (mp.has_exact_pqr()) {
    if (*mp.p_exact == 0) return true;
    if (*mp.q_exact == 0) return false;
    return *mp.r_exact <= *mp.p_exact * *mp.q_exact;
  }
  if (mp.p == 0.0) return true;
  if (mp.q == 0.0) return false;
  return mp.r <= mp.p * mp.q;
}

namespace {

// negative binomial with exponent t in the geometric parameter q:
// mass(k) = C(-t, k) (1-q)^t (-q)^k via the stable running product
DiscretePmf negative_binomial_pmf(double q, double t, std::size_t kmax) {
  DiscretePmf out;
  out.mass.resize(kmax + 1);
  double cur = std::exp(t * std::log1p(-q));
  out.mass[0] = cur;
  for (std::size_t k = 1; k <= kmax; ++k) {
    cur *= (t + double(k) - 1.0) * q / double(k);
    out.mass[k] = cur;
  }
  out.truncation_tail = std::max(0.0, 1.0 - out.enumerated_mass());
  return out;
}

}  // namespace

DiscretePmf rho_power_pmf(const ModelParams& mp, double t, std::size_t kmax) {
  if (!(t > 0)) throw Error(Errc::InvalidRate, "t must be positive");
  if (!rho_infinitely_divisible(mp))
    throw Error(Errc::NotInfinitelyDivisible,
                "convolution powers need r <= pq or p = 0");
  if (mp.p == 0.0 || mp.r == 0.0)
    return negative_binomial_pmf(mp.q, t, kmax);

  // compound Poisson recursion  n p_n = t sum_{k<=n} k a_k p_{n-k}
  const std::vector<double> a = levy_coefficients_a(mp, std::max<std::size_t>(kmax, 1));
  DiscretePmf out;
  out.mass.resize(kmax + 1);
  out.mass[0] = std::exp(t * std::log(mp.p));  // exp(-t sum a_k) = p^t
  for (std::size_t n = 1; n <= kmax; ++n) {
    double s = 0;
    for (std::size_t k = 1; k <= n; ++k)
      s += double(k) * a[k - 1] * out.mass[n - k];
    out.mass[n] = t * s / double(n);
  }
  out.truncation_tail = std::max(0.0, 1.0 - out.enumerated_mass());
  return out;
}

double rho_power_entropy(const ModelParams& mp, double t) {
  std::size_t kmax = 256;
  constexpr std::size_t cap = std::size_t(1) << 22;
  for (;;) {
    DiscretePmf pmf = rho_power_pmf(mp, t, kmax);
    if (pmf.truncation_tail < 1e-12 || kmax >= cap) {
      double h = 0;
      for (double m : pmf.mass)
        if (m > 0) h -= m * std::log(m);
      return h;
    }
    kmax *= 2;
  }
}

double rho_power_entropy_bound(const ModelParams& mp, double t) {
  if (mp.r != 0.0)
    throw Error(Errc::NotApplicable, "bound requires r = 0");
  if (!(t > 0) || t > 1)
    throw Error(Errc::NotApplicable, "bound requires 0 < t <= 1");
  const double p = 1.0 - mp.q;
  return t * ((1.0 / p) * (1.0 + 2.0 * std::log(1.0 / p)) +
              (mp.q / p) * std::log(1.0 / t));
}

}  // namespace gouq
