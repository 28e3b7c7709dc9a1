#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "gouq/divisibility.hpp"
#include "gouq/rho.hpp"
#include "oracles.hpp"

using namespace gouq;

namespace {

ModelParams pqr(double p, double q, double r, double c = 2.0) {
  return make_params(ScaleC::floating(c), p, q, r);
}

// deterministic parameter grid with p > 0, q > 0, clear of the decision
// boundaries (|r - pq| and |p - qr| above 1e-3, |p - r| above 0.05)
std::vector<ModelParams> decision_grid() {
  std::vector<ModelParams> grid;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double q = 0.05 + 0.85 * i / 19.0;
      const double r = 0.02 + 0.9 * j / 19.0;
      const double p = 1.0 - q - r;
      if (p < 0.03) continue;
      if (std::abs(r - p * q) < 1e-3) continue;
      if (std::abs(p - q * r) < 1e-3) continue;
      if (std::abs(p - r) < 0.05) continue;
      grid.push_back(pqr(p, q, r));
    }
  }
  return grid;
}

}  // namespace

TEST_CASE("equal-weight example: threshold at 3 - 2 sqrt(2)") {
  // p = q = (1-r)/2; infinitely divisible exactly for r <= 3 - 2 sqrt(2)
  {
    const double r = 0.17;
    const ModelParams mp = pqr((1 - r) / 2, (1 - r) / 2, r);
    CHECK(classify_rho_id(mp).decision == Decision::Yes);
  }
  {
    const double r = 0.18;
    const ModelParams mp = pqr((1 - r) / 2, (1 - r) / 2, r);
    CHECK(classify_rho_id(mp).decision == Decision::No);
  }
}

TEST_CASE("classification is exact on rational inputs") {
  for (auto [rs, expect] : {std::pair{"0.1715", Decision::Yes},
                            std::pair{"0.1716", Decision::No}}) {
    const Rational r = *parse_decimal(rs);
    const Rational p = (1 - r) / 2;
    const ModelParams mp = make_params_exact(ScaleC::integer(2), p, p, r);
    CHECK(classify_rho_id(mp).decision == expect);
    CHECK(classify_mu_id(mp).decision == expect);
  }
}

TEST_CASE("the boundary r = pq is divisible, decided exactly") {
  // p = 1/3, q = 1/2 gives r = 1/6 = pq on the boundary
  const ModelParams mp = make_params_exact(
      ScaleC::integer(2), Rational(1, 3), Rational(1, 2), Rational(1, 6));
  CHECK(classify_rho_id(mp).decision == Decision::Yes);
  CHECK(classify_mu_id(mp).decision == Decision::Yes);
  CHECK(classify_sym_id(mp).decision == Decision::Yes);
}

TEST_CASE("q = 0 and p = 0 corner decisions") {
  CHECK(classify_rho_id(pqr(0.5, 0.0, 0.5)).decision == Decision::No);
  CHECK(classify_rho_id(pqr(0.0, 0.6, 0.4)).decision == Decision::Yes);
  CHECK(classify_sym_id(pqr(0.5, 0.0, 0.5)).decision == Decision::No);
}

TEST_CASE("stationary law verdict matches and ignores c") {
  const Verdict a = classify_mu_id(pqr(0.4, 0.4, 0.2, 2.0));
  const Verdict b = classify_mu_id(pqr(0.4, 0.4, 0.2, 7.3));
  CHECK(a.decision == Decision::No);
  CHECK(b.decision == Decision::No);
  CHECK(a.rule == b.rule);
}

TEST_CASE("symmetrisation verdicts on the 2p = q family") {
  // divisible for r <= (13-3 sqrt(17))/4, symmetrisation also on [1/2, 1)
  auto family = [](const char* rs) {
    const Rational r = *parse_decimal(rs);
    const Rational p = (1 - r) / 3;
    return make_params_exact(ScaleC::integer(2), p, 2 * p, r);
  };
  CHECK(classify_rho_id(family("0.15")).decision == Decision::Yes);
  CHECK(classify_sym_id(family("0.15")).decision == Decision::Yes);
  CHECK(classify_rho_id(family("0.2")).decision == Decision::No);
  CHECK(classify_sym_id(family("0.2")).decision == Decision::No);
  CHECK(classify_sym_id(family("0.45")).decision == Decision::No);
  CHECK(classify_sym_id(family("0.5")).decision == Decision::Yes);  // boundary
  CHECK(classify_sym_id(family("0.6")).decision == Decision::Yes);
}

TEST_CASE("p = r symmetrisation is never divisible") {
  CHECK(classify_sym_id(pqr(0.25, 0.5, 0.25)).decision == Decision::No);
}

TEST_CASE("canonical recursion reproduces the geometric closed form") {
  const ModelParams mp = pqr(0.5, 0.5, 0.0);
  const KattiSequence seq = katti(rho_pmf(mp, 80), 20);
  CHECK(!seq.first_negative_index.has_value());
  for (std::size_t k = 1; k <= 20; ++k)
    CHECK(seq.coefficients[k - 1] ==
          doctest::Approx(std::pow(0.5, double(k)) / double(k)).epsilon(1e-12));
}

TEST_CASE("canonical recursion flags the first negative coefficient") {
  const ModelParams mp = pqr(0.3, 0.5, 0.2);
  const KattiSequence seq = katti(rho_pmf(mp, 80), 20);
  CHECK(seq.coefficients[0] > 0);
  REQUIRE(seq.first_negative_index.has_value());
  CHECK(*seq.first_negative_index == 2);
  CHECK(seq.first_negative_value < 0);
  // closed form (1 + r/q)(1-q) q^2 / (2p^2) * [1 - q - (r/q)(1+q)]
  const double p = 0.3, q = 0.5, r = 0.2;
  const double q2 = (1 + r / q) * (1 - q) * q * q / (2 * p * p) *
                    (1 - q - (r / q) * (1 + q));
  CHECK(seq.coefficients[1] == doctest::Approx(q2).epsilon(1e-12));
  CHECK(q2 == doctest::Approx(-0.0972222222222222).epsilon(1e-12));
}

TEST_CASE("canonical coefficients match the closed form when divisible") {
  const ModelParams mp = pqr(0.5, 0.4, 0.1);
  const KattiSequence seq = katti(rho_pmf(mp, 200), 30);
  const std::vector<double> a = levy_coefficients_a(mp, 30);
  for (std::size_t k = 1; k <= 30; ++k)
    CHECK(std::abs(seq.coefficients[k - 1] - a[k - 1]) < 1e-10);
}

TEST_CASE("recursion residual is zero by construction") {
  const ModelParams mp = pqr(0.3, 0.5, 0.2);
  const DiscretePmf pmf = rho_pmf(mp, 80);
  const KattiSequence seq = katti(pmf, 40);
  for (std::size_t n = 1; n <= 40; ++n) {
    double rhs = 0;
    for (std::size_t k = 1; k <= n; ++k)
      rhs += double(k) * seq.coefficients[k - 1] * pmf.at(n - k);
    CHECK(std::abs(double(n) * pmf.at(n) - rhs) < 1e-10);
  }
}

TEST_CASE("recursion requires mass at the origin") {
  DiscretePmf pmf;
  pmf.mass = {0.0, 1.0};
  CHECK_THROWS_AS(katti(pmf, 5), Error);
}

TEST_CASE("coefficient signs separate the divisible region") {
  // negative canonical coefficient up to n = 60 iff r > pq
  for (const ModelParams& mp : decision_grid()) {
    const KattiSequence seq = katti(rho_pmf(mp, 130), 60);
    const bool id = mp.r <= mp.p * mp.q;
    CHECK(seq.first_negative_index.has_value() == !id);
    if (id) {
      const std::vector<double> a = levy_coefficients_a(mp, 30);
      for (std::size_t k = 1; k <= 30; ++k)
        CHECK(std::abs(seq.coefficients[k - 1] - a[k - 1]) < 1e-10);
    }
  }
}

TEST_CASE("levy coefficients: signs and r = 0 reduction") {
  const std::vector<double> geo = levy_coefficients_a(pqr(0.5, 0.5, 0.0), 12);
  for (std::size_t m = 1; m <= 12; ++m)
    CHECK(geo[m - 1] ==
          doctest::Approx(std::pow(0.5, double(m)) / double(m)).epsilon(1e-13));

  const std::vector<double> signed_a =
      levy_coefficients_a(pqr(0.3, 0.5, 0.2), 8);
  CHECK(signed_a[1] < 0);  // a_2 = (0.25 - (2/3)^2)/2
  CHECK(signed_a[1] == doctest::Approx((0.25 - 4.0 / 9.0) / 2).epsilon(1e-12));

  CHECK_THROWS_AS(levy_coefficients_a(pqr(0.0, 0.6, 0.4), 5), Error);

  for (const ModelParams& mp : decision_grid()) {
    if (mp.r > mp.p * mp.q) continue;
    for (double a : levy_coefficients_a(mp, 40)) CHECK(a >= 0.0);
  }
}

TEST_CASE("coefficient exponential rebuilds the characteristic function") {
  for (const ModelParams& mp : decision_grid()) {
    if (mp.r > mp.p * mp.q) continue;
    const std::vector<double> a = levy_coefficients_a(mp, 220);
    for (int i = 1; i <= 25; ++i) {
      const double z = 0.4 * i;
      std::complex<double> s(0, 0);
      for (std::size_t m = 1; m <= a.size(); ++m)
        s += a[m - 1] *
             (std::exp(std::complex<double>(0, double(m) * z)) - 1.0);
      CHECK(std::abs(std::exp(s) - rho_cf(mp, z)) < 1e-9);
    }
  }
}

TEST_CASE("cosine coefficients: first value and degenerate guard") {
  const ModelParams mp = pqr(0.3, 0.5, 0.2);
  const SymCoefficients sym = sym_coefficients(mp, 16);
  CHECK(sym.D[0] == doctest::Approx((sym.A + sym.B) / 2).epsilon(1e-13));
  CHECK(sym.E[1] < 0);  // p > qr here
  CHECK_THROWS_AS(sym_coefficients(pqr(0.25, 0.5, 0.25), 8), Error);
}

TEST_CASE("cosine coefficients bound |D_k|") {
  const ModelParams mp = pqr(0.3, 0.5, 0.2);
  const SymCoefficients sym = sym_coefficients(mp, 8);
  for (std::size_t k = 1; k <= sym.D.size(); ++k)
    CHECK(std::abs(sym.D[k - 1]) <=
          (std::pow(sym.A, double(k)) + std::pow(sym.B, double(k))) *
                  std::pow(0.5, double(k)) / double(k) +
              1e-15);
}

TEST_CASE("nonnegative cosine coefficients when p <= qr") {
  const ModelParams mp = pqr(0.05, 0.5, 0.45);
  const SymCoefficients sym = sym_coefficients(mp, 40);
  for (double e : sym.E) CHECK(e >= -1e-12);
}

TEST_CASE("cosine coefficients match the closed form") {
  for (const ModelParams& mp : decision_grid()) {
    const std::size_t mmax = std::min<std::size_t>(sym_mmax_for(mp, 1e-11), 4000);
    const SymCoefficients sym = sym_coefficients(mp, mmax, 1e-13);
    for (std::size_t m = 1; m <= std::min<std::size_t>(mmax, 60); ++m)
      CHECK(std::abs(sym.E[m - 1] - oracle::sym_e_closed_form(mp, m)) < 1e-10);
  }
}

TEST_CASE("even-index negativity tracks p > qr and A > B tracks p > qr") {
  for (const ModelParams& mp : decision_grid()) {
    if (mp.r <= mp.p * mp.q) continue;  // cosine criterion applies beyond
    const SymCoefficients sym = sym_coefficients(mp, 60);
    double min_even = 1e9;
    for (std::size_t m = 2; m <= 60; m += 2)
      min_even = std::min(min_even, sym.E[m - 1]);
    CHECK((min_even < 0) == (mp.p > mp.q * mp.r));
    CHECK((sym.A <= sym.B) == (mp.p <= mp.q * mp.r));
  }
}

TEST_CASE("cosine expansion rebuilds |rho_cf|^2") {
  for (const ModelParams& mp : decision_grid()) {
    const std::size_t mmax = std::min<std::size_t>(sym_mmax_for(mp, 5e-10), 20000);
    const SymCoefficients sym =
        sym_coefficients(mp, mmax, std::min(1e-12, 5e-10 / double(mmax)));
    const double budget = std::max(1e-8, 10 * sym.truncation_error);
    for (int i = 1; i <= 50; ++i) {
      const double z = 0.2 * i;
      double s = 0;
      for (std::size_t m = 1; m <= sym.E.size(); ++m)
        s += sym.E[m - 1] * (std::cos(double(m) * z) - 1.0);
      const double lhs = std::exp(2.0 * s);
      const double rhs = std::norm(rho_cf(mp, z));
      CHECK(std::abs(lhs - rhs) < budget);
    }
  }
}
