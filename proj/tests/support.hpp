#pragma once

// Independent oracles and random generators shared by unit and acceptance tests.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "canonsys/measure.hpp"

namespace testsupport {

using canonsys::cplx;
using canonsys::MomentSequence;
using canonsys::SpectralMeasure;
using canonsys::TrigCoefficient;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<cplx> random_poly(std::mt19937& rng, int degree, bool real_coeffs) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<cplx> p(static_cast<std::size_t>(degree) + 1);
  for (auto& c : p) c = real_coeffs ? cplx(nd(rng), 0.0) : cplx(nd(rng), nd(rng));
  return p;
}

// Trig coefficients gamma_k (k >= 0) of eps + |p(e^{ix})|^2.
inline std::vector<TrigCoefficient> abs_square_density(const std::vector<cplx>& p, double eps) {
  std::vector<TrigCoefficient> out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    cplx c{0.0, 0.0};
    for (std::size_t l = 0; l + k < p.size(); ++l) c += p[l + k] * std::conj(p[l]);
    if (k == 0) c += eps;
    out.push_back({static_cast<int>(k), c});
  }
  return out;
}

inline SpectralMeasure random_positive_measure(std::mt19937& rng, bool even, int max_degree = 6) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_real_distribution<double> eps(0.05, 1.0);
  return SpectralMeasure::periodic(abs_square_density(random_poly(rng, deg(rng), even), eps(rng)));
}

// Trapezoid moments (1/2pi) int e^{-ikx} f(x) dx, spectrally accurate for smooth f.
inline std::vector<cplx> circle_moments(const std::function<double(double)>& f, std::size_t K, int N = 8192) {
  std::vector<cplx> out(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < N; ++j) {
      const double x = 2.0 * kPi * j / N;
      acc += f(x) * std::polar(1.0, -static_cast<double>(k) * x);
    }
    out[k] = acc / static_cast<double>(N);
  }
  return out;
}

inline Eigen::MatrixXcd dense_gamma(const MomentSequence& g, std::size_t n) {
  Eigen::MatrixXcd G(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < G.rows(); ++j)
    for (Eigen::Index k = 0; k < G.cols(); ++k) G(j, k) = g[static_cast<long>(k - j)];
  return G;
}

// Sigma[Gamma_n^-1] by explicit inversion.
inline double dense_sigma(const MomentSequence& g, std::size_t n) {
  return dense_gamma(g, n).fullPivLu().inverse().sum().real();
}

// Sigma[Delta_n Gamma_n^-1] by explicit inversion.
inline cplx dense_delta_sigma(const MomentSequence& g, std::size_t n) {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < D.rows(); ++j)
    for (Eigen::Index k = 0; k < D.cols(); ++k) {
      if (k > j) D(j, k) = g[static_cast<long>(k - j)];
      if (k < j) D(j, k) = -g[static_cast<long>(k - j)];
    }
  return (D * dense_gamma(g, n).fullPivLu().inverse()).sum();
}

// Monic orthogonal polynomials by Gram-Schmidt on 1, z, ..., z^N.
inline std::vector<std::vector<cplx>> gram_schmidt(const MomentSequence& g, std::size_t N) {
  auto ip = [&](const std::vector<cplx>& p, const std::vector<cplx>& q) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < p.size(); ++j)
      for (std::size_t k = 0; k < q.size(); ++k)
        acc += p[j] * std::conj(q[k]) * g[static_cast<long>(k) - static_cast<long>(j)];
    return acc;
  };
  std::vector<std::vector<cplx>> basis;
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<cplx> v(n + 1, cplx{0.0, 0.0});
    v[n] = 1.0;
    std::vector<cplx> w = v;
    for (const auto& b : basis) {
      const cplx c = ip(v, b) / ip(b, b);
      for (std::size_t i = 0; i < b.size(); ++i) w[i] -= c * b[i];
    }
    basis.push_back(w);
  }
  return basis;
}

inline double poisson_density(cplx a, double x) {
  return (1.0 - std::norm(a)) / std::norm(std::polar(1.0, x) - a);
}

}  // namespace testsupport
