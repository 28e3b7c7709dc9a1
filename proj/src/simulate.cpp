#include "gouq/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "gouq/errors.hpp"
#include "gouq/mu.hpp"
#include "gouq/rho.hpp"
#include "gouq/rng.hpp"
#include "gouq/stats.hpp"

namespace gouq {

namespace {

struct MarkProbs {
  double p, q, r, total;
};

MarkProbs mark_probs(const RawRates& raw, double c) {
  if (raw.u < 0 || raw.v < 0 || raw.w < 0)
    throw Error(Errc::InvalidRate, "rates must be nonnegative");
  if (raw.u + raw.w <= 0)
    throw Error(Errc::InvalidRate, "u + w = 0 (the N component never jumps)");
  if (raw.v + raw.w <= 0)
    throw Error(Errc::InvalidRate, "v + w = 0 (the Y component never jumps)");
  if (!(c > 1.0)) throw Error(Errc::InvalidC, "c must exceed 1");
  const double total = raw.u + raw.v + raw.w;
  return {raw.u / total, raw.v / total, raw.w / total, total};
}

// One path, event by event, until N reaches the horizon. The callback sees
// every jump; a no-op lambda compiles away.
template <typename OnJump>
PathResult run_path(const MarkProbs& mk, double c, std::size_t horizon,
                    SplitMix64& g, OnJump&& on_jump) {
  PathResult out;
  double time = 0.0, integral = 0.0;
  double level = 1.0;  // c^{-N}
  std::uint64_t n = 0, y = 0;
  bool first_n_seen = false;
  while (n < horizon) {
    time += -std::log(g.uniform()) / mk.total;
    const double x = g.uniform();
    ++out.jumps_used;
    JumpMark mark;
    if (x < mk.p) {
      mark = JumpMark::NOnly;
      ++n;
      level /= c;
    } else if (x < mk.p + mk.q) {
      mark = JumpMark::YOnly;
      integral += level;  // c^{-N} just before this jump
      ++y;
    } else {
      mark = JumpMark::Joint;
      integral += level;
      ++y;
      ++n;
      level /= c;
    }
    if (!first_n_seen && (mark == JumpMark::NOnly || mark == JumpMark::Joint)) {
      first_n_seen = true;
      out.y_at_first_n_jump = y;
    }
    on_jump(JumpRecord{time, mark, n, y, integral});
  }
  out.partial_integral = integral;
  // remainder envelope: deterministic for q = 0 (at most one Y jump per
  // remaining level), in expectation otherwise
  const double geo = level * c / (c - 1.0);
  out.truncation_bound =
      (mk.q == 0.0) ? geo : geo * (mk.q + mk.r) / (1.0 - mk.q);
  return out;
}

}  // namespace

PathResult simulate_path(const RawRates& raw, double c,
                         std::size_t n_jump_horizon, std::uint64_t seed) {
  if (n_jump_horizon == 0)
    throw Error(Errc::InvalidRate, "horizon must be at least 1");
  const MarkProbs mk = mark_probs(raw, c);
  SplitMix64 g = stream_rng(seed, 0);
  return run_path(mk, c, n_jump_horizon, g, [](const JumpRecord&) {});
}

std::vector<JumpRecord> simulate_path_records(const RawRates& raw, double c,
                                              std::size_t n_jump_horizon,
                                              std::uint64_t seed) {
  if (n_jump_horizon == 0)
    throw Error(Errc::InvalidRate, "horizon must be at least 1");
  const MarkProbs mk = mark_probs(raw, c);
  SplitMix64 g = stream_rng(seed, 0);
  std::vector<JumpRecord> records;
  run_path(mk, c, n_jump_horizon, g,
           [&records](const JumpRecord& rec) { records.push_back(rec); });
  return records;
}

std::vector<std::uint32_t> innovation_samples_serial(const RawRates& raw,
                                                     std::size_t n,
                                                     std::uint64_t seed) {
  const MarkProbs mk = mark_probs(raw, 2.0);  // c is irrelevant for Y_T
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 g = stream_rng(seed, i);
    out[i] = static_cast<std::uint32_t>(
        run_path(mk, 2.0, 1, g, [](const JumpRecord&) {}).y_at_first_n_jump);
  }
  return out;
}

std::vector<std::uint32_t> innovation_samples(const RawRates& raw,
                                              std::size_t n,
                                              std::uint64_t seed) {
  const MarkProbs mk = mark_probs(raw, 2.0);
  std::vector<std::uint32_t> out(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    SplitMix64 g = stream_rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
        run_path(mk, 2.0, 1, g, [](const JumpRecord&) {}).y_at_first_n_jump);
  }
  return out;
}

std::vector<double> path_integral_samples_serial(const RawRates& raw, double c,
                                                 std::size_t horizon,
                                                 std::size_t n,
                                                 std::uint64_t seed) {
  const MarkProbs mk = mark_probs(raw, c);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 g = stream_rng(seed, i);
    out[i] = run_path(mk, c, horizon, g, [](const JumpRecord&) {})
                 .partial_integral;
  }
  return out;
}

std::vector<double> path_integral_samples(const RawRates& raw, double c,
                                          std::size_t horizon, std::size_t n,
                                          std::uint64_t seed) {
  const MarkProbs mk = mark_probs(raw, c);
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    SplitMix64 g = stream_rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] =
        run_path(mk, c, horizon, g, [](const JumpRecord&) {}).partial_integral;
  }
  return out;
}

InnovationReport validate_innovation_law(const RawRates& raw, double c,
                                         std::size_t nsamples,
                                         std::uint64_t seed) {
  const ModelParams mp = normalize(raw, ScaleC::floating(c));
  const std::vector<std::uint32_t> samples =
      innovation_samples(raw, nsamples, seed);
  std::uint32_t top = 0;
  for (std::uint32_t s : samples) top = std::max(top, s);
  std::vector<std::size_t> counts(top + 1, 0);
  for (std::uint32_t s : samples) ++counts[s];

  const std::size_t kmax = std::max<std::size_t>(top, rho_default_kmax(mp));
  const DiscretePmf ref = rho_pmf(mp, kmax);

  InnovationReport rep;
  rep.nsamples = nsamples;
  rep.empirical.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    rep.empirical[k] = double(counts[k]) / double(nsamples);
  rep.tv_distance = tv_distance(rep.empirical, ref);
  const Chi2Result chi2 = chi_squared(counts, ref, nsamples);
  rep.chi2 = chi2.statistic;
  rep.chi2_cells = chi2.cells;
  return rep;
}

SeriesReport validate_series_equivalence(const RawRates& raw, double c,
                                         std::size_t nsamples,
                                         std::uint64_t seed) {
  const ModelParams mp = normalize(raw, ScaleC::floating(c));
  const std::size_t depth = default_series_depth(mp);

  std::vector<double> via_paths = path_integral_samples(
      raw, c, depth, nsamples, mix_stream(seed, 0x706174687321ULL));
  SeriesSampler sampler{mp, depth, mix_stream(seed, 0x73657269657321ULL)};
  std::vector<double> via_series = mu_sample(sampler, nsamples);

  SeriesReport rep;
  rep.nsamples = nsamples;
  rep.expected_mean = mu_mean(mp);
  double sa = 0, sb = 0;
  for (double x : via_paths) sa += x;
  for (double x : via_series) sb += x;
  rep.mean_paths = sa / double(nsamples);
  rep.mean_series = sb / double(nsamples);
  const KsResult ks = ks_two_sample(std::move(via_paths), std::move(via_series));
  rep.ks_statistic = ks.statistic;
  rep.ks_pvalue = ks.pvalue;
  return rep;
}

}  // namespace gouq
