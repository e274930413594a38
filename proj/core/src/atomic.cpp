#include "canonsys/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "canonsys/errors.hpp"
#include "canonsys/quadrature.hpp"

namespace canonsys {

namespace {

constexpr double kPi = std::numbers::pi;
const double kRoot2OverPi = std::sqrt(2.0 / std::numbers::pi);

void validate(double alpha, const std::vector<LineAtom>& atoms, double t) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorKind::InvalidArgument, "alpha must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidArgument, "t must be nonnegative");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].beta > 0.0) || !std::isfinite(atoms[i].beta) || !std::isfinite(atoms[i].lambda))
      fail(ErrorKind::InvalidArgument, "atom weights must be positive and finite");
    for (std::size_t j = 0; j < i; ++j)
      if (atoms[i].lambda == atoms[j].lambda) fail(ErrorKind::InvalidArgument, "duplicate atom location");
  }
}

}  // namespace

double sinc_t(double t, double x) {
  if (std::abs(x) < 1e-8) return t - t * t * t * x * x / 6.0;
  return std::sin(t * x) / x;
}

SolitonSystem soliton_coefficients(double alpha, const std::vector<LineAtom>& atoms, double t) {
  validate(alpha, atoms, t);
  const auto n = static_cast<Eigen::Index>(atoms.size());
  SolitonSystem sys;
  sys.t = t;
  sys.alpha = alpha;
  sys.atoms = atoms;
  sys.S.resize(n, n);
  sys.dS.resize(n, n);
  sys.B.resize(n);
  sys.L.resize(n);
  sys.dL.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lj = atoms[static_cast<std::size_t>(j)].lambda;
    sys.B[j] = atoms[static_cast<std::size_t>(j)].beta;
    sys.L[j] = kRoot2OverPi * sinc_t(t, lj);
    sys.dL[j] = kRoot2OverPi * std::cos(lj * t);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double d = lj - atoms[static_cast<std::size_t>(k)].lambda;
      sys.S(j, k) = sinc_t(t, d);
      sys.dS(j, k) = std::cos(t * d);
    }
  }
  if (n == 0) {
    sys.C.resize(0);
    sys.dC.resize(0);
    return sys;
  }
  // With u = B^{1/2} C the system becomes (alpha I + B^{1/2} S B^{1/2}) u = B^{1/2} L.
  const Eigen::VectorXd root_b = sys.B.array().sqrt();
  Eigen::MatrixXd A = root_b.asDiagonal() * sys.S * root_b.asDiagonal();
  A.diagonal().array() += alpha;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) fail(ErrorKind::Internal, "soliton system is not positive definite");
  auto solve = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
    const Eigen::VectorXd u = llt.solve(root_b.cwiseProduct(rhs));
    return u.cwiseQuotient(root_b);
  };
  sys.C = solve(sys.L);
  sys.dC = solve(sys.dL - sys.dS * sys.B.cwiseProduct(sys.C));
  const Eigen::VectorXd r = alpha * sys.C + sys.S * sys.B.cwiseProduct(sys.C) - sys.L;
  sys.residual = r.cwiseAbs().maxCoeff();
  return sys;
}

double h_atomic(double alpha, const std::vector<LineAtom>& atoms, double t) {
  const SolitonSystem sys = soliton_coefficients(alpha, atoms, t);
  if (atoms.empty()) return 1.0 / alpha;
  const double d = sys.B.cwiseProduct(sys.dC).dot(sys.L) + sys.B.cwiseProduct(sys.C).dot(sys.dL);
  const double h = 1.0 / alpha - kPi / (2.0 * alpha) * d;
  if (!(h > 0.0)) {
    std::ostringstream os;
    os << "h(" << t << ") = " << h << " is not positive";
    fail(ErrorKind::Numerical, os.str());
  }
  return h;
}

SingleAtomClosedForm single_atom_closed_forms(double alpha, double beta, double lambda, double t) {
  if (!(alpha > 0.0) || !(beta > 0.0)) fail(ErrorKind::InvalidArgument, "alpha and beta must be positive");
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArgument, "t must be nonnegative");
  const double ab = alpha + beta * t;
  const double s_over_l = sinc_t(t, lambda);
  const double c = std::cos(lambda * t);
  SingleAtomClosedForm out;
  // d/dt [t/alpha - (beta/alpha) (sin(lambda t)/lambda)^2 / (alpha + beta t)]
  out.h = 1.0 / alpha - beta / alpha * (2.0 * s_over_l * c / ab - beta * s_over_l * s_over_l / (ab * ab));
  if (lambda == 0.0) {
    out.even = true;
    out.g = 0.0;
    return out;
  }
  const double bracket = 1.0 - alpha / ab * std::cos(2.0 * lambda * t) -
                         (alpha * beta + 2.0 * beta * beta * t) / (ab * ab) * sinc_t(t, 2.0 * lambda) +
                         beta * beta / (ab * ab) * s_over_l * s_over_l;
  out.g = -beta / (alpha * lambda) * bracket;
  return out;
}

double g_unit_atom_simplified(double t) {
  const double c2 = std::cos(2.0 * t);
  const double s2 = std::sin(2.0 * t);
  return ((2.0 * t + 1.0) * (c2 + s2) + 2.0 * c2 - 1.0) / (2.0 * kPi * (1.0 + t) * (1.0 + t)) - 1.0 / kPi;
}

ScalarFunction add_point_mass_at_zero(ScalarFunction h, double r, double tol) {
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidArgument, "added mass must be nonnegative");
  if (r == 0.0) return h;
  return [h = std::move(h), r, tol](double t) {
    if (t < 0.0) fail(ErrorKind::InvalidArgument, "t must be nonnegative");
    // Unit panels keep the cumulative integral well resolved for large t.
    const int panels = std::max(1, static_cast<int>(std::ceil(t)));
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = t * p / panels;
      const double b = t * (p + 1) / panels;
      integral += quad::adaptive_simpson(h, a, b, tol / panels, 30);
    }
    const double denom = 1.0 + r * integral;
    return h(t) / (denom * denom);
  };
}

bool atoms_even(const std::vector<LineAtom>& atoms, double tol) {
  return std::all_of(atoms.begin(), atoms.end(), [&](const LineAtom& a) {
    return std::any_of(atoms.begin(), atoms.end(), [&](const LineAtom& b) {
      return std::abs(a.lambda + b.lambda) <= tol * std::max(1.0, std::abs(a.lambda)) &&
             std::abs(a.beta - b.beta) <= tol * std::max(1.0, a.beta);
    });
  });
}

std::vector<SampledRow> hamiltonian_from_atomic(double alpha, const std::vector<LineAtom>& atoms,
                                                const std::vector<double>& t_grid, double gauge_k) {
  if (!std::isfinite(gauge_k)) fail(ErrorKind::InvalidArgument, "gauge k must be finite");
  const bool even = atoms_even(atoms);
  if (!even && atoms.size() > 1)
    fail(ErrorKind::OutOfScope, "g for two or more non-symmetric atoms is not available in closed form");
  std::vector<SampledRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    SampledRow row;
    row.t = t;
    row.h11 = h_atomic(alpha, atoms, t);
    double g = 0.0;
    if (!even) {
      const auto& a = atoms.front();
      g = single_atom_closed_forms(alpha, a.beta, a.lambda, t).g;
    }
    row.h12 = g - gauge_k * row.h11;
    row.h22 = (1.0 + row.h12 * row.h12) / row.h11;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace canonsys
