#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gouq/params.hpp"
#include "gouq/pmf.hpp"

namespace gouq {

enum class Decision { Yes, No, Undetermined };

constexpr const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::Yes: return "Yes";
    case Decision::No: return "No";
    case Decision::Undetermined: return "Undetermined";
  }
  return "?";
}

struct Verdict {
  Decision decision = Decision::Undetermined;
  std::string rule;     // which criterion decided
  std::string witness;  // the numbers behind the decision
};

// Infinite divisibility of the innovation law: Yes iff p = 0, or q > 0 and
// r <= pq (exact arithmetic when rational forms are present).
Verdict classify_rho_id(const ModelParams& mp);

// Same decision as classify_rho_id; the stationary law inherits it and the
// answer does not involve c.
Verdict classify_mu_id(const ModelParams& mp);

// Symmetrisation (law with characteristic function |.|^2). Yes when the base
// law is infinitely divisible; otherwise No for q = 0 and for p = r, else
// decided by p <= qr. Applies to the innovation and stationary laws alike.
Verdict classify_sym_id(const ModelParams& mp);

// Canonical coefficients of a lattice law with positive mass at 0, computed
// by forward substitution from  n p_n = sum_{k=1}^n k q_k p_{n-k}.
// The law is infinitely divisible iff all coefficients are nonnegative.
struct KattiSequence {
  std::vector<double> coefficients;  // coefficients[i] is q_{i+1}
  std::optional<std::size_t> first_negative_index;  // 1-based
  double first_negative_value = 0.0;  // value at that index
};

KattiSequence katti(const DiscretePmf& pmf, std::size_t nmax);

// a_m = (q^m - (-r/p)^m)/m, the signed Levy-type coefficients of the
// innovation law. Nonnegative for all m iff r <= pq. Requires p > 0.
std::vector<double> levy_coefficients_a(const ModelParams& mp,
                                        std::size_t mmax);

// Cosine-series coefficients of log |rho_cf|^2:
//   log|rho_cf(z)|^2 = 2 sum_m E_m (cos mz - 1),
//   E_m = sum_h D_{m+2h} C(m+2h, h),  D_k = k^{-1} 2^{-k} (-(-A)^k + B^k),
//   A = 2pr/(p^2+r^2), B = 2q/(1+q^2), C = (p^2+r^2)/(1+q^2).
// All E_m >= 0 iff p <= qr (given r > pq). Throws DegenerateAB when p = r.
struct SymCoefficients {
  double A = 0;
  double B = 0;
  double C = 0;
  std::vector<double> D;  // D[k-1] = D_k
  std::vector<double> E;  // E[m-1] = E_m
  double truncation_error = 0;  // bound on total |E| mass not represented
};

SymCoefficients sym_coefficients(const ModelParams& mp, std::size_t mmax,
                                 double tol = 1e-12);

// Smallest mmax whose discarded-tail bound sum_{m>mmax} |E_m| is below tol.
std::size_t sym_mmax_for(const ModelParams& mp, double tol);

}  // namespace gouq
