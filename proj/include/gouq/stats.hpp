#pragma once

#include <cstddef>
#include <vector>

#include "gouq/pmf.hpp"

namespace gouq {

// Total variation distance between an empirical pmf (indexed from 0) and a
// reference pmf; reference mass beyond both supports counts in full.
double tv_distance(const std::vector<double>& empirical,
                   const DiscretePmf& ref);

struct Chi2Result {
  double statistic = 0;
  std::size_t cells = 0;  // cells kept (expected count >= threshold)
};

Chi2Result chi_squared(const std::vector<std::size_t>& counts,
                       const DiscretePmf& ref, std::size_t nsamples,
                       double min_expected = 5.0);

struct KsResult {
  double statistic = 0;
  double pvalue = 0;
};

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace gouq
