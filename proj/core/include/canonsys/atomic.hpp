#pragma once

// Inverse solver for mu = alpha * m + sum pi beta_n delta_{lambda_n}: the sinc
// system (alpha I + S_t B) C = L_t and the resulting h(t).

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "canonsys/hamiltonian.hpp"
#include "canonsys/measure.hpp"

namespace canonsys {

/// sin(t x) / x, equal to t at x = 0.
double sinc_t(double t, double x);

struct SolitonSystem {
  double t = 0.0;
  double alpha = 0.0;
  std::vector<LineAtom> atoms;
  Eigen::MatrixXd S;   // sinc_t(lambda_j - lambda_k)
  Eigen::MatrixXd dS;  // cos(t (lambda_j - lambda_k))
  Eigen::VectorXd B;   // beta_n
  Eigen::VectorXd L;   // sqrt(2/pi) sinc_t(lambda_n)
  Eigen::VectorXd dL;  // sqrt(2/pi) cos(lambda_n t)
  Eigen::VectorXd C;
  Eigen::VectorXd dC;
  double residual = 0.0;  // max |(alpha I + S B) C - L|
};

SolitonSystem soliton_coefficients(double alpha, const std::vector<LineAtom>& atoms, double t);

/// h(t) = 1/alpha - (pi / (2 alpha)) d/dt <B C_t, L_t>.
double h_atomic(double alpha, const std::vector<LineAtom>& atoms, double t);

struct SingleAtomClosedForm {
  double h = 0.0;
  double g = 0.0;
  bool even = false;  // lambda = 0: g vanishes by symmetry
};

SingleAtomClosedForm single_atom_closed_forms(double alpha, double beta, double lambda, double t);

/// alpha = beta = lambda = 1 expression scaled by 1/pi:
/// single_atom_closed_forms(1, 1, 1, t).g == pi * g_unit_atom_simplified(t).
double g_unit_atom_simplified(double t);

using ScalarFunction = std::function<double(double)>;

/// h_r(t) = h(t) / (1 + r int_0^t h)^2, the effect of adding mass pi r at 0;
/// the cumulative integral uses adaptive Simpson with absolute tolerance tol.
ScalarFunction add_point_mass_at_zero(ScalarFunction h, double r, double tol = 1e-10);

/// True when the atom set is symmetric under lambda -> -lambda with equal weights.
bool atoms_even(const std::vector<LineAtom>& atoms, double tol = 1e-12);

std::vector<SampledRow> hamiltonian_from_atomic(double alpha, const std::vector<LineAtom>& atoms,
                                                const std::vector<double>& t_grid, double gauge_k = 0.0);

}  // namespace canonsys
