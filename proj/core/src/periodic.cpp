#include "canonsys/periodic.hpp"

#include <cmath>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canonsys {

HgSequences hg_sequences(const MomentSequence& gamma, std::size_t N, const ToeplitzOptions& options) {
  if (N > gamma.max_index()) {
    std::ostringstream os;
    os << "h_" << N << " needs moments up to gamma_" << N << ", only gamma_" << gamma.max_index() << " stored";
    fail(ErrorKind::InsufficientMoments, os.str());
  }
  const auto sums = inverse_sums_progressive(gamma, N + 1, options);
  HgSequences out;
  out.h.resize(N + 1);
  out.g.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    out.h[n] = sums[n + 1].sigma - sums[n].sigma;
    if (!(out.h[n] > 0.0)) {
      std::ostringstream os;
      os << "h_" << n << " = " << out.h[n] << " is not positive";
      fail(ErrorKind::IllPosed, os.str());
    }
    // Sigma[Delta G^-1] is purely imaginary; g is its imaginary increment.
    const cplx diff = sums[n + 1].delta_sigma - sums[n].delta_sigma;
    if (std::abs(diff.real()) > 1e-10 * std::max(1.0, std::abs(diff))) {
      std::ostringstream os;
      os << "g_" << n << " has real residue " << diff.real();
      fail(ErrorKind::Numerical, os.str());
    }
    out.g[n] = diff.imag();
  }
  return out;
}

cplx KernelProfile::value_at(double xi) const {
  if (!(xi > breakpoints.front() && xi < breakpoints.back())) return cplx{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (xi < breakpoints[i + 1]) return values[i];
  return values.back();
}

double KernelProfile::length_weighted_integral() const {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < values.size(); ++i) acc += (breakpoints[i + 1] - breakpoints[i]) * values[i];
  return acc.real();
}

KernelProfile kernel_profile(const MomentSequence& gamma, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidArgument, "kernel profile needs t > 0");
  const double two_t = 2.0 * t;
  if (two_t == std::floor(two_t)) fail(ErrorKind::Degenerate, "t on the half-integer grid degenerates the partition");
  const int n = static_cast<int>(std::floor(two_t));
  if (static_cast<std::size_t>(n) > gamma.max_index()) fail(ErrorKind::InsufficientMoments, "not enough moments for this t");

  // Values solve sum_m f(xi + m) gamma_{j-m} = 1, the transposed system.
  std::vector<cplx> conj_moments(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) conj_moments[k] = std::conj(gamma[static_cast<long>(k)]);
  const MomentSequence transposed(std::move(conj_moments));
  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::VectorXcd expanding = toeplitz_solve(transposed, Eigen::VectorXcd::Ones(nn + 1));
  Eigen::VectorXcd shrinking;
  if (n > 0) shrinking = toeplitz_solve(transposed, Eigen::VectorXcd::Ones(nn));

  KernelProfile p;
  p.t = t;
  p.n = n;
  p.breakpoints.push_back(-t);
  for (int j = 0; j <= n; ++j) {
    p.breakpoints.push_back(t - n + j);
    p.values.push_back(expanding[j]);
    if (j < n) {
      p.breakpoints.push_back(-t + j + 1);
      p.values.push_back(shrinking[j]);
    }
  }
  const double sigma_expanding = expanding.sum().real();
  const double sigma_shrinking = n > 0 ? shrinking.sum().real() : 0.0;
  p.integral = (two_t - n) * sigma_expanding + (n + 1 - two_t) * sigma_shrinking;
  p.k0 = 0.5 * p.integral;
  return p;
}

std::vector<double> dual_h_sequence(const SpectralMeasure& mu, std::size_t N, const DualOptions& options) {
  const SpectralMeasure dual = dual_measure(mu, 0.0, N, options);
  return hg_sequences(periodic_moments(dual, N), N).h;
}

PiecewiseHamiltonian hamiltonian_from_periodic(const SpectralMeasure& mu, const PeriodicSolveOptions& options) {
  if (options.steps == 0) fail(ErrorKind::InvalidArgument, "at least one step is required");
  if (!std::isfinite(options.gauge_k)) fail(ErrorKind::InvalidArgument, "gauge k must be finite");
  const std::size_t N = options.steps - 1;
  const MomentSequence gamma = periodic_moments(mu, N);
  if (!positivity_check(gamma, N + 1))
    fail(ErrorKind::IllPosed, "moment matrix is not positive definite up to the requested order");
  const HgSequences hg = hg_sequences(gamma, N);

  std::vector<double> dual_h;
  const bool check = options.crosscheck && mu.is_even();
  if (check) dual_h = dual_h_sequence(mu, N, options.dual);

  std::vector<HamiltonianBlock> blocks;
  blocks.reserve(options.steps);
  for (std::size_t n = 0; n <= N; ++n) {
    HamiltonianBlock b;
    b.t_lo = 0.5 * static_cast<double>(n);
    b.t_hi = 0.5 * static_cast<double>(n + 1);
    b.h11 = hg.h[n];
    b.h12 = hg.g[n] - options.gauge_k * hg.h[n];
    b.h22 = (1.0 + b.h12 * b.h12) / b.h11;
    if (check && n >= 1) {
      const double primary = (1.0 + hg.g[n] * hg.g[n]) / hg.h[n];
      if (std::abs(primary - dual_h[n]) > options.crosscheck_tol * std::max(1.0, std::abs(primary))) {
        std::ostringstream os;
        os.precision(17);
        os << "h22 cross-check failed at n = " << n << ": det path " << primary << ", dual path " << dual_h[n];
        fail(ErrorKind::Consistency, os.str());
      }
    }
    blocks.push_back(b);
  }
  return PiecewiseHamiltonian(std::move(blocks));
}

}  // namespace canonsys
