#include "canonsys/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

namespace canonsys::poly {

namespace {

template <class T, class X>
X horner(std::span<const T> p, X x) {
  X acc{0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + X(*it);
  return acc;
}

template <class T>
std::vector<T> derivative_impl(std::span<const T> p) {
  if (p.size() <= 1) return {T{0}};
  std::vector<T> d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

template <class T>
std::vector<T> multiply_impl(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T{0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class T>
std::vector<T> add_impl(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out(std::max(a.size(), b.size()), T{0});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

template <class T, class S>
std::vector<T> scale_impl(std::span<const T> a, S s) {
  std::vector<T> out(a.begin(), a.end());
  for (auto& c : out) c *= s;
  return out;
}

}  // namespace

cplx eval(std::span<const cplx> p, cplx x) { return horner<cplx, cplx>(p, x); }
cplx eval(std::span<const double> p, cplx x) { return horner<double, cplx>(p, x); }
double eval(std::span<const double> p, double x) { return horner<double, double>(p, x); }

CPoly derivative(std::span<const cplx> p) { return derivative_impl(p); }
RPoly derivative(std::span<const double> p) { return derivative_impl(p); }

CPoly multiply(std::span<const cplx> a, std::span<const cplx> b) { return multiply_impl(a, b); }
RPoly multiply(std::span<const double> a, std::span<const double> b) { return multiply_impl(a, b); }

CPoly add(std::span<const cplx> a, std::span<const cplx> b) { return add_impl(a, b); }
RPoly add(std::span<const double> a, std::span<const double> b) { return add_impl(a, b); }

CPoly scale(std::span<const cplx> a, cplx s) { return scale_impl(a, s); }
RPoly scale(std::span<const double> a, double s) { return scale_impl(a, s); }

RPoly trimmed(std::span<const double> p, double tol) {
  RPoly out(p.begin(), p.end());
  double mx = 0.0;
  for (double c : out) mx = std::max(mx, std::abs(c));
  while (!out.empty() && std::abs(out.back()) <= tol * mx) out.pop_back();
  return out;
}

std::vector<double> real_roots(std::span<const double> p, double imag_tol) {
  RPoly q = trimmed(p);
  if (q.size() <= 1) return {};
  Eigen::VectorXd coeffs(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) coeffs[static_cast<Eigen::Index>(i)] = q[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  std::vector<double> roots;
  for (const auto& r : solver.roots()) {
    if (std::abs(r.imag()) <= imag_tol * std::max(1.0, std::abs(r))) roots.push_back(r.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace canonsys::poly
