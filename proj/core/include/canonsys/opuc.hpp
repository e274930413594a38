#pragma once

// Orthogonal polynomials on the unit circle driven by moment inner products
// <z^j, z^k> = gamma_{k-j}.

#include <cstddef>
#include <vector>

#include "canonsys/measure.hpp"

namespace canonsys {

struct OpucBasis {
  std::size_t N = 0;
  std::vector<CPoly> monic;         // Phi_0..Phi_N, ascending coefficients
  std::vector<double> norms_sq;     // ||Phi_n||^2
  std::vector<cplx> verblunsky;     // alpha_0..alpha_{N-1}
};

/// Moment inner product <p, q> = sum_{j,k} p_j conj(q_k) gamma_{k-j}.
cplx moment_inner_product(const MomentSequence& gamma, const CPoly& p, const CPoly& q);

/// Szego recursion Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*.
OpucBasis szego_basis(const MomentSequence& gamma, std::size_t N);

/// |phi_n(eta)|^2 with phi_n = Phi_n / ||Phi_n||.
double h_via_onp(const OpucBasis& basis, std::size_t n, cplx eta);

/// Moments of the Poisson kernel P_a: gamma_0 = 1, gamma_k = conj(a)^k.
MomentSequence poisson_kernel_moments(cplx a, std::size_t K);

/// Moments of (1 - g) m + 2 pi g delta_0: gamma_0 = 1, gamma_k = g.
MomentSequence delta_plus_const_moments(double g, std::size_t K);

OpucBasis poisson_basis(cplx a, std::size_t N);
OpucBasis delta_plus_const_basis(double g, std::size_t N);

}  // namespace canonsys
