#pragma once

#include <cstddef>
#include <vector>

namespace gouq {

// Probability mass function on {0,...,kmax}. Mass beyond kmax is carried
// in truncation_tail rather than dropped; enumerated mass + tail = 1.
struct DiscretePmf {
  std::vector<double> mass;
  double truncation_tail = 0.0;

  std::size_t kmax() const { return mass.empty() ? 0 : mass.size() - 1; }
  double at(std::size_t k) const { return k < mass.size() ? mass[k] : 0.0; }
  double enumerated_mass() const;
  double mean() const;
};

// Plain numerical convolution, truncated at out_kmax.
DiscretePmf convolve(const DiscretePmf& a, const DiscretePmf& b,
                     std::size_t out_kmax);

}  // namespace gouq
