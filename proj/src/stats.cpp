#include "gouq/stats.hpp"

#include <algorithm>
#include <cmath>

namespace gouq {

double tv_distance(const std::vector<double>& empirical,
                   const DiscretePmf& ref) {
  const std::size_t top = std::max(empirical.size(), ref.mass.size());
  double s = 0;
  for (std::size_t k = 0; k < top; ++k) {
    const double e = (k < empirical.size()) ? empirical[k] : 0.0;
    s += std::abs(e - ref.at(k));
  }
  s += ref.truncation_tail;  // reference mass beyond its enumeration
  return 0.5 * s;
}

Chi2Result chi_squared(const std::vector<std::size_t>& counts,
                       const DiscretePmf& ref, std::size_t nsamples,
                       double min_expected) {
  Chi2Result out;
  double pooled_obs = 0, pooled_exp = ref.truncation_tail * double(nsamples);
  const std::size_t top = std::max(counts.size(), ref.mass.size());
  for (std::size_t k = 0; k < top; ++k) {
    const double obs = (k < counts.size()) ? double(counts[k]) : 0.0;
    const double exp = ref.at(k) * double(nsamples);
    if (exp >= min_expected) {
      out.statistic += (obs - exp) * (obs - exp) / exp;
      ++out.cells;
    } else {
      pooled_obs += obs;
      pooled_exp += exp;
    }
  }
  if (pooled_exp >= min_expected) {
    out.statistic +=
        (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++out.cells;
  }
  return out;
}

namespace {

// asymptotic Kolmogorov distribution tail
double ks_pvalue(double lambda) {
  if (lambda <= 0) return 1.0;
  double s = 0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * double(j) * double(j) * lambda * lambda);
    s += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  KsResult out;
  out.statistic = d;
  out.pvalue = ks_pvalue((ne + 0.12 + 0.11 / ne) * d);
  return out;
}

}  // namespace gouq
