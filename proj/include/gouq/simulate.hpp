#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gouq/params.hpp"
#include "gouq/pmf.hpp"

namespace gouq {

enum class JumpMark : std::uint8_t { NOnly, YOnly, Joint };  // (1,0) (0,1) (1,1)

constexpr const char* to_string(JumpMark m) noexcept {
  switch (m) {
    case JumpMark::NOnly: return "(1,0)";
    case JumpMark::YOnly: return "(0,1)";
    case JumpMark::Joint: return "(1,1)";
  }
  return "?";
}

struct JumpRecord {
  double time = 0;
  JumpMark mark = JumpMark::NOnly;
  std::uint64_t n_after = 0;
  std::uint64_t y_after = 0;
  double running_integral = 0;
};

struct PathResult {
  std::uint64_t y_at_first_n_jump = 0;  // Y at the first jump time of N
  double partial_integral = 0;          // sum of c^{-N_before} over Y jumps
  std::size_t jumps_used = 0;
  double truncation_bound = 0;  // c^{-horizon} envelope on the remainder
};

// Event-driven simulation of the bivariate compound Poisson process:
// exponential inter-jump times at rate u+v+w, i.i.d. marks with
// probabilities (p,q,r); runs until N reaches n_jump_horizon. r = 1 is
// allowed here as a diagnostic (the integral then telescopes to c/(c-1)).
PathResult simulate_path(const RawRates& raw, double c,
                         std::size_t n_jump_horizon, std::uint64_t seed);

std::vector<JumpRecord> simulate_path_records(const RawRates& raw, double c,
                                              std::size_t n_jump_horizon,
                                              std::uint64_t seed);

// n independent copies of Y at the first N-jump (one path each, stream i).
// OpenMP-parallel with a bit-identical serial reference.
std::vector<std::uint32_t> innovation_samples(const RawRates& raw,
                                              std::size_t n,
                                              std::uint64_t seed);
std::vector<std::uint32_t> innovation_samples_serial(const RawRates& raw,
                                                     std::size_t n,
                                                     std::uint64_t seed);

// n path integrals at the given horizon (stream i per path), OpenMP.
std::vector<double> path_integral_samples(const RawRates& raw, double c,
                                          std::size_t horizon, std::size_t n,
                                          std::uint64_t seed);
std::vector<double> path_integral_samples_serial(const RawRates& raw, double c,
                                                 std::size_t horizon,
                                                 std::size_t n,
                                                 std::uint64_t seed);

struct InnovationReport {
  std::vector<double> empirical;  // empirical pmf of Y at the first N jump
  double tv_distance = 0;         // against the innovation pmf
  double chi2 = 0;
  std::size_t chi2_cells = 0;
  std::size_t nsamples = 0;
};

InnovationReport validate_innovation_law(const RawRates& raw, double c,
                                         std::size_t nsamples,
                                         std::uint64_t seed);

struct SeriesReport {
  double ks_statistic = 0;
  double ks_pvalue = 0;
  double mean_paths = 0;
  double mean_series = 0;
  double expected_mean = 0;
  std::size_t nsamples = 0;
};

// Deep-horizon path integrals against direct series samples: both target
// the stationary law, compared by the two-sample Kolmogorov-Smirnov test.
SeriesReport validate_series_equivalence(const RawRates& raw, double c,
                                         std::size_t nsamples,
                                         std::uint64_t seed);

}  // namespace gouq
