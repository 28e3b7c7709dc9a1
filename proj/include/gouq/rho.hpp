#pragma once

#include <complex>
#include <cstddef>

#include "gouq/params.hpp"
#include "gouq/pmf.hpp"

namespace gouq {

// The innovation law: value of the second Poisson component accumulated up
// to (and including) the first jump of the first component.
//   mass(0) = p,  mass(k) = q^{k-1}(r + qp)  for k >= 1   (q > 0)
//   Bernoulli(r)                                          (q = 0)
DiscretePmf rho_pmf(const ModelParams& mp, std::size_t kmax);

// kmax with geometric tail q^kmax < 1e-14 (1 for q = 0).
std::size_t rho_default_kmax(const ModelParams& mp);

// (p + r e^{iz}) / (1 - q e^{iz})
std::complex<double> rho_cf(const ModelParams& mp, double z);

// (q+r)/(1-q) for q > 0, r for q = 0.
double rho_mean(const ModelParams& mp);

// Entropy in natural log, closed form.
double rho_entropy(const ModelParams& mp);

// True iff the innovation law is infinitely divisible:
// p = 0, or q > 0 and r <= pq. Decided exactly when rational forms exist.
bool rho_infinitely_divisible(const ModelParams& mp);

// t-fold convolution power of an infinitely divisible innovation law.
// r = 0: negative binomial closed form; p = 0: same closed form for the
// lattice part (the deterministic shift by t is dropped, which changes
// neither entropy nor convolution structure); otherwise the compound
// Poisson recursion  n p_n = t sum_k k a_k p_{n-k}  with p_0 = p^t.
// Throws NotInfinitelyDivisible when r > pq and p > 0, or q = 0.
DiscretePmf rho_power_pmf(const ModelParams& mp, double t, std::size_t kmax);

// -sum p_k log p_k over a support extended until the tail is < 1e-12.
double rho_power_entropy(const ModelParams& mp, double t);

// Upper bound t[(1/p)(1 + 2 log(1/p)) + (q/p) log(1/t)], valid for r = 0
// and 0 < t <= 1 (p = 1-q).
double rho_power_entropy_bound(const ModelParams& mp, double t);

}  // namespace gouq
