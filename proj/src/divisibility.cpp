#include "gouq/divisibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gouq/errors.hpp"
#include "gouq/rho.hpp"

namespace gouq {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// three-way comparison of r against pq, exact when possible
bool r_leq_pq(const ModelParams& mp) {
  if (mp.has_exact_pqr()) return *mp.r_exact <= *mp.p_exact * *mp.q_exact;
  return mp.r <= mp.p * mp.q;
}

bool p_leq_qr(const ModelParams& mp) {
  if (mp.has_exact_pqr()) return *mp.p_exact <= *mp.q_exact * *mp.r_exact;
  return mp.p <= mp.q * mp.r;
}

bool p_is_zero(const ModelParams& mp) {
  return mp.has_exact_pqr() ? (*mp.p_exact == 0) : (mp.p == 0.0);
}

bool q_is_zero(const ModelParams& mp) {
  return mp.has_exact_pqr() ? (*mp.q_exact == 0) : (mp.q == 0.0);
}

bool p_equals_r(const ModelParams& mp) {
  return mp.has_exact_pqr() ? (*mp.p_exact == *mp.r_exact) : (mp.p == mp.r);
}

}  // namespace

Verdict classify_rho_id(const ModelParams& mp) {
  Verdict v;
  if (p_is_zero(mp)) {
    v.decision = Decision::Yes;
    v.rule = "p=0: geometric law shifted by 1";
    v.witness = "p = 0";
    return v;
  }
  if (q_is_zero(mp)) {
    v.decision = Decision::No;
    v.rule = "q=0: bounded support, not a point mass";
    v.witness = "q = 0, r = " + fmt(mp.r);
    return v;
  }
  const bool id = r_leq_pq(mp);
  v.decision = id ? Decision::Yes : Decision::No;
  v.rule = id ? "r<=pq: nonnegative canonical coefficients"
              : "r>pq: second canonical coefficient is negative";
  v.witness = "r = " + fmt(mp.r) + ", pq = " + fmt(mp.p * mp.q);
  return v;
}

Verdict classify_mu_id(const ModelParams& mp) {
  Verdict v = classify_rho_id(mp);
  v.rule += " (shared by the stationary law; independent of c)";
  return v;
}

Verdict classify_sym_id(const ModelParams& mp) {
  Verdict base = classify_rho_id(mp);
  Verdict v;
  if (base.decision == Decision::Yes) {
    v.decision = Decision::Yes;
    v.rule = "base law infinitely divisible, symmetrisation inherits";
    v.witness = base.witness;
    return v;
  }
  if (q_is_zero(mp)) {
    v.decision = Decision::No;
    v.rule = "q=0: bounded support, not a point mass";
    v.witness = "q = 0";
    return v;
  }
  if (p_equals_r(mp)) {
    v.decision = Decision::No;
    v.rule = "p=r: characteristic function has a real zero";
    v.witness = "p = r = " + fmt(mp.p);
    return v;
  }
  const bool sym = p_leq_qr(mp);
  v.decision = sym ? Decision::Yes : Decision::No;
  v.rule = sym ? "p<=qr: cosine-series coefficients all nonnegative"
               : "p>qr: even cosine-series coefficients negative";
  v.witness = "p = " + fmt(mp.p) + ", qr = " + fmt(mp.q * mp.r);
  return v;
}

KattiSequence katti(const DiscretePmf& pmf, std::size_t nmax) {
  if (pmf.mass.empty() || pmf.mass[0] <= 0.0)
    throw Error(Errc::ZeroAtOrigin, "canonical recursion needs mass at 0");
  const double p0 = pmf.mass[0];
  KattiSequence out;
  out.coefficients.resize(nmax);
  for (std::size_t n = 1; n <= nmax; ++n) {
    double s = double(n) * pmf.at(n);
    for (std::size_t k = 1; k < n; ++k)
      s -= double(k) * out.coefficients[k - 1] * pmf.at(n - k);
    const double qn = s / (double(n) * p0);
    out.coefficients[n - 1] = qn;
    if (!out.first_negative_index && qn < -1e-12) {
      out.first_negative_index = n;
      out.first_negative_value = qn;
    }
  }
  return out;
}

std::vector<double> levy_coefficients_a(const ModelParams& mp,
                                        std::size_t mmax) {
  if (mp.p == 0.0)
    throw Error(Errc::PZero,
                "coefficients undefined at p = 0; use the shifted-geometric "
                "form q^m/m");
  std::vector<double> a(mmax);
  const double q = mp.q, s = -mp.r / mp.p;
  double qp = 1.0, sp = 1.0;  // q^m, (-r/p)^m
  for (std::size_t m = 1; m <= mmax; ++m) {
    qp *= q;
    sp *= s;
    a[m - 1] = (qp - sp) / double(m);
  }
  return a;
}

namespace {

// tail of sum_{k >= k0, k = k0 + 2h} (A^k + B^k)/k
double em_tail_bound(double A, double B, std::size_t k0) {
  const double a2 = 1.0 - A * A, b2 = 1.0 - B * B;
  return (std::pow(A, double(k0)) / a2 + std::pow(B, double(k0)) / b2) /
         double(k0);
}

}  // namespace

std::size_t sym_mmax_for(const ModelParams& mp, double tol) {
  const double p = mp.p, q = mp.q, r = mp.r;
  const double A = 2 * p * r / (p * p + r * r);
  const double B = 2 * q / (1 + q * q);
  const double M = std::max(A, B);
  // sum_{m > mmax} 2 M^m / (m (1 - M^2)) < tol
  std::size_t m = 8;
  while (2.0 * std::pow(M, double(m + 1)) /
             (double(m + 1) * (1.0 - M * M) * (1.0 - M)) >=
         tol) {
    ++m;
    if (m > 2000000) break;
  }
  return m;
}

SymCoefficients sym_coefficients(const ModelParams& mp, std::size_t mmax,
                                 double tol) {
  if (mp.q <= 0.0)
    throw Error(Errc::NotApplicable, "cosine expansion needs q > 0");
  if (mp.p == mp.r)
    throw Error(Errc::DegenerateAB,
                "p = r gives A = 1; the series diverges at z = pi");
  const double p = mp.p, q = mp.q, r = mp.r;
  SymCoefficients out;
  out.A = 2 * p * r / (p * p + r * r);
  out.B = 2 * q / (1 + q * q);
  out.C = (p * p + r * r) / (1 + q * q);
  const double A = out.A, B = out.B;
  const double lnA = (A > 0) ? std::log(A) : -std::numeric_limits<double>::infinity();
  const double lnB = std::log(B);
  const double ln2 = std::log(2.0);

  // D_k while the k-th total contribution (A^k + B^k)/k can matter
  std::size_t kcut = 1;
  while ((std::pow(A, double(kcut)) + std::pow(B, double(kcut))) / double(kcut) >= tol &&
         kcut < 1000000)
    ++kcut;
  out.D.resize(kcut);
  for (std::size_t k = 1; k <= kcut; ++k) {
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // -(-A)^k
    out.D[k - 1] = (sign * std::pow(A, double(k)) + std::pow(B, double(k))) *
                   std::pow(0.5, double(k)) / double(k);
  }

  out.E.resize(mmax);
  double accumulated_tail = 0.0;
  for (std::size_t m = 1; m <= mmax; ++m) {
    // a-priori bound: skip the h-summation when E_m cannot reach tol
    if (em_tail_bound(A, B, m) < tol) {
      out.E[m - 1] = 0.0;
      accumulated_tail += em_tail_bound(A, B, m);
      continue;
    }
    double s = 0.0;
    // log of C(k, h) 2^{-k} tracked incrementally over h -> h+1, k -> k+2
    double logw = -double(m) * ln2;  // h = 0: C(m,0) 2^{-m}
    std::size_t h = 0;
    for (;;) {
      const std::size_t k = m + 2 * h;
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;
      const double termA = (A > 0) ? sign * std::exp(logw + double(k) * lnA) : 0.0;
      const double termB = std::exp(logw + double(k) * lnB);
      s += (termA + termB) / double(k);
      if (em_tail_bound(A, B, k + 2) < tol) {
        accumulated_tail += em_tail_bound(A, B, k + 2);
        break;
      }
      // C(k+2, h+1) 2^{-(k+2)} / (C(k, h) 2^{-k})
      logw += std::log(double(k + 2) * double(k + 1) /
                       (4.0 * double(h + 1) * double(k + 1 - h)));
      ++h;
    }
    out.E[m - 1] = s;
  }
  // discarded m > mmax plus all per-m stopping tails
  out.truncation_error =
      2.0 * std::pow(std::max(A, B), double(mmax + 1)) /
          (double(mmax + 1) * (1.0 - std::max(A, B) * std::max(A, B)) *
           (1.0 - std::max(A, B))) +
      accumulated_tail;
  return out;
}

}  // namespace gouq
