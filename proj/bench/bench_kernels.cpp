// Times the OpenMP kernels against their serial references and checks that
// both produce identical output. Run with --quick for a smoke-test pass.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "gouq/mu.hpp"
#include "gouq/simulate.hpp"

using namespace gouq;

namespace {

template <typename F>
double time_of(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-24s %10.3fs %10.3fs %7.2fx   %s\n", name, serial, parallel,
              serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::size_t n_samples = quick ? 20000 : 2000000;
  const std::size_t n_paths = quick ? 10000 : 1000000;
  const std::size_t n_grid = quick ? 501 : 20001;

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif
  std::printf("%-24s %11s %11s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  const ModelParams mp = make_params(ScaleC::integer(2), 0.25, 0.5, 0.25);
  const SeriesSampler sampler{mp, default_series_depth(mp), 42};

  {
    std::vector<double> a, b;
    const double ts = time_of([&] { a = mu_sample_serial(sampler, n_samples); });
    const double tp = time_of([&] { b = mu_sample(sampler, n_samples); });
    row("series sampler", ts, tp, a == b);
  }
  {
    const RawRates raw{2, 2, 1};
    std::vector<std::uint32_t> a, b;
    const double ts =
        time_of([&] { a = innovation_samples_serial(raw, n_paths, 7); });
    const double tp = time_of([&] { b = innovation_samples(raw, n_paths, 7); });
    row("innovation paths", ts, tp, a == b);
  }
  {
    const RawRates raw{1, 2, 1};
    std::vector<double> a, b;
    const double ts = time_of(
        [&] { a = path_integral_samples_serial(raw, 2.0, 42, n_paths / 10, 9); });
    const double tp = time_of(
        [&] { b = path_integral_samples(raw, 2.0, 42, n_paths / 10, 9); });
    row("path integrals", ts, tp, a == b);
  }
  {
    std::vector<CfSample> a, b;
    const double ts =
        time_of([&] { a = cf_grid_serial(mp, -100, 100, n_grid, 1e-10); });
    const double tp = time_of([&] { b = cf_grid(mp, -100, 100, n_grid, 1e-10); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].z == b[i].z && a[i].value == b[i].value;
    row("cf grid", ts, tp, same);
  }
  return 0;
}
