#pragma once

#include <complex>
#include <span>
#include <vector>

namespace canonsys {

using cplx = std::complex<double>;

// Dense polynomials, coefficients in ascending powers.
using CPoly = std::vector<cplx>;
using RPoly = std::vector<double>;

namespace poly {

cplx eval(std::span<const cplx> p, cplx x);
cplx eval(std::span<const double> p, cplx x);
double eval(std::span<const double> p, double x);

CPoly derivative(std::span<const cplx> p);
RPoly derivative(std::span<const double> p);

CPoly multiply(std::span<const cplx> a, std::span<const cplx> b);
RPoly multiply(std::span<const double> a, std::span<const double> b);

CPoly add(std::span<const cplx> a, std::span<const cplx> b);
RPoly add(std::span<const double> a, std::span<const double> b);

CPoly scale(std::span<const cplx> a, cplx s);
RPoly scale(std::span<const double> a, double s);

/// Drops trailing coefficients with |c| <= tol * max|c|.
RPoly trimmed(std::span<const double> p, double tol = 0.0);

/// Real roots of a real polynomial, sorted ascending. A companion-matrix root
/// counts as real when |Im r| <= imag_tol * max(1, |r|).
std::vector<double> real_roots(std::span<const double> p, double imag_tol = 1e-9);

}  // namespace poly
}  // namespace canonsys
