#include "canonsys/toeplitz.hpp"

#include <cmath>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canonsys {

namespace {

using Eigen::Index;

void require_order(const MomentSequence& gamma, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "matrix dimension must be at least 1");
  if (n > gamma.size()) {
    std::ostringstream os;
    os << "dimension " << n << " needs moments up to gamma_" << n - 1 << ", only gamma_" << gamma.max_index()
       << " stored";
    fail(ErrorKind::InsufficientMoments, os.str());
  }
}

Eigen::MatrixXcd gamma_matrix(const MomentSequence& gamma, std::size_t n) {
  const auto g = gamma.values();
  Eigen::MatrixXcd G(static_cast<Index>(n), static_cast<Index>(n));
  for (Index j = 0; j < G.rows(); ++j)
    for (Index k = 0; k < G.cols(); ++k)
      G(j, k) = k >= j ? g[static_cast<std::size_t>(k - j)] : std::conj(g[static_cast<std::size_t>(j - k)]);
  return G;
}

// Dense LDLT solve; rejects indefinite or numerically singular matrices.
Eigen::VectorXcd dense_solve(const MomentSequence& gamma, std::size_t n, const Eigen::VectorXcd& rhs,
                             double floor) {
  const Eigen::MatrixXcd G = gamma_matrix(gamma, n);
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(G);
  if (ldlt.info() != Eigen::Success) fail(ErrorKind::IllPosed, "dense factorization of Gamma failed");
  const double g0 = gamma[0].real();
  for (Index i = 0; i < ldlt.vectorD().size(); ++i) {
    if (!(ldlt.vectorD()[i].real() > floor * g0))
      fail(ErrorKind::IllPosed, "Gamma is not positive definite (dense pivot below threshold)");
  }
  return ldlt.solve(rhs);
}

// Levinson recursion for T x = y with T_{jk} = gamma_{k-j}, advanced one
// dimension at a time so that every leading solution is available.
class LevinsonSweep {
 public:
  LevinsonSweep(const MomentSequence& gamma, const ToeplitzOptions& options)
      : gamma_(gamma), g_(gamma.values().begin(), gamma.values().end()), options_(options) {
    const double g0 = gamma[0].real();
    f_ = Eigen::VectorXcd::Constant(1, 1.0 / g0);
    b_ = f_;
    minor_ratio_ = g0;
  }

  std::size_t size() const { return static_cast<std::size_t>(f_.size()); }
  bool dense() const { return dense_; }

  // Extends forward and backward vectors to size m + 1.
  void extend() {
    const Index m = f_.size();
    if (dense_) {
      ++dense_size_;
      f_.resize(m + 1);
      return;
    }
    cplx ef{0.0, 0.0};
    cplx eb{0.0, 0.0};
    for (Index i = 0; i < m; ++i) {
      ef += std::conj(g_[static_cast<std::size_t>(m - i)]) * f_[i];
      eb += g_[static_cast<std::size_t>(i + 1)] * b_[i];
    }
    if (std::sqrt(std::abs(ef * eb)) > 1.0 - options_.reflection_margin) {
      dense_ = true;
      dense_size_ = static_cast<std::size_t>(m) + 1;
      f_.resize(m + 1);
      return;
    }
    const cplx denom = 1.0 - ef * eb;
    minor_ratio_ *= denom.real();
    if (!(minor_ratio_ > options_.minor_ratio_floor * gamma_[0].real())) {
      std::ostringstream os;
      os << "Gamma_" << m + 1 << " is not positive definite (leading-minor ratio " << minor_ratio_ << ")";
      fail(ErrorKind::IllPosed, os.str());
    }
    Eigen::VectorXcd fz = Eigen::VectorXcd::Zero(m + 1);
    Eigen::VectorXcd zb = Eigen::VectorXcd::Zero(m + 1);
    fz.head(m) = f_;
    zb.tail(m) = b_;
    f_ = (fz - ef * zb) / denom;
    b_ = (zb - eb * fz) / denom;
  }

  // Given x solving the size-m system with rhs y, return the size-(m+1)
  // solution with y extended by y_m. Must be called right after extend().
  Eigen::VectorXcd extend_solution(const Eigen::VectorXcd& x, const Eigen::VectorXcd& rhs) const {
    const Index m = x.size();
    if (dense_) return dense_solve(gamma_, static_cast<std::size_t>(m) + 1, rhs.head(m + 1), options_.minor_ratio_floor);
    cplx ex{0.0, 0.0};
    for (Index i = 0; i < m; ++i) ex += std::conj(g_[static_cast<std::size_t>(m - i)]) * x[i];
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m + 1);
    out.head(m) = x;
    out += (rhs[m] - ex) * b_;
    return out;
  }

 private:
  const MomentSequence& gamma_;
  std::vector<cplx> g_;
  ToeplitzOptions options_;
  Eigen::VectorXcd f_;
  Eigen::VectorXcd b_;
  double minor_ratio_ = 0.0;
  bool dense_ = false;
  std::size_t dense_size_ = 0;
};

Eigen::VectorXcd levinson_solve(const MomentSequence& gamma, const Eigen::VectorXcd& rhs,
                                const ToeplitzOptions& options) {
  LevinsonSweep sweep(gamma, options);
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(1, rhs[0] / gamma[0].real());
  while (x.size() < rhs.size()) {
    sweep.extend();
    if (sweep.dense()) return dense_solve(gamma, static_cast<std::size_t>(rhs.size()), rhs, options.minor_ratio_floor);
    x = sweep.extend_solution(x, rhs);
  }
  return x;
}

}  // namespace

MomentMatrices moment_matrices(const MomentSequence& gamma, std::size_t n) {
  require_order(gamma, n);
  MomentMatrices out;
  out.n = n;
  out.gamma = gamma_matrix(gamma, n);
  out.delta = Eigen::MatrixXcd::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (Index j = 0; j < out.delta.rows(); ++j) {
    for (Index k = 0; k < out.delta.cols(); ++k) {
      if (k > j) out.delta(j, k) = gamma[static_cast<long>(k - j)];
      if (k < j) out.delta(j, k) = -gamma[static_cast<long>(k - j)];
    }
  }
  return out;
}

bool positivity_check(const MomentSequence& gamma, std::size_t n) {
  require_order(gamma, n);
  // Cholesky runs through the leading minors in order, so one factorization
  // certifies all of them.
  const Eigen::MatrixXcd G = gamma_matrix(gamma, n);
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() != Eigen::Success) return false;
  const double g0 = gamma[0].real();
  const Eigen::MatrixXcd L = llt.matrixL();
  for (Index i = 0; i < L.rows(); ++i) {
    const double pivot = std::norm(L(i, i));
    if (!(pivot > 1e-13 * g0)) return false;
  }
  return true;
}

Eigen::VectorXcd toeplitz_solve(const MomentSequence& gamma, const Eigen::VectorXcd& rhs,
                                const ToeplitzOptions& options) {
  const auto n = static_cast<std::size_t>(rhs.size());
  require_order(gamma, n);
  if (options.path == SolvePath::Dense) return dense_solve(gamma, n, rhs, options.minor_ratio_floor);
  return levinson_solve(gamma, rhs, options);
}

InverseSums inverse_sums(const MomentSequence& gamma, std::size_t n, const ToeplitzOptions& options) {
  require_order(gamma, n);
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Index>(n));
  const Eigen::VectorXcd x = toeplitz_solve(gamma, ones, options);
  const cplx s = x.sum();
  if (std::abs(s.imag()) > 1e-10 * std::max(1.0, std::abs(s)))
    fail(ErrorKind::Numerical, "Sigma[Gamma^-1] has a non-negligible imaginary part");
  InverseSums out;
  out.sigma = s.real();
  // Column k of Delta sums to sum_{j<k} gamma_{k-j} - sum_{j>k} gamma_{k-j}.
  const auto g = gamma.values();
  cplx d{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    cplx col{0.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) col += g[k - j];
    for (std::size_t j = k + 1; j < n; ++j) col -= std::conj(g[j - k]);
    d += col * x[static_cast<Index>(k)];
  }
  out.delta_sigma = d;
  return out;
}

std::vector<InverseSums> inverse_sums_progressive(const MomentSequence& gamma, std::size_t n,
                                                  const ToeplitzOptions& options) {
  std::vector<InverseSums> out(n + 1);
  if (n == 0) return out;
  require_order(gamma, n);

  auto record = [&](std::size_t m, const Eigen::VectorXcd& x, const std::vector<cplx>& colsum) {
    const cplx s = x.sum();
    if (std::abs(s.imag()) > 1e-10 * std::max(1.0, std::abs(s)))
      fail(ErrorKind::Numerical, "Sigma[Gamma^-1] has a non-negligible imaginary part");
    cplx d{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) d += colsum[k] * x[static_cast<Index>(k)];
    out[m].sigma = s.real();
    out[m].delta_sigma = d;
  };

  // Column sums of Delta_m, updated as rows and columns are appended.
  std::vector<cplx> colsum{cplx{0.0, 0.0}};
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Index>(n));

  auto grow_colsum = [&](std::size_t m) {
    // New row m contributes -gamma_{k-m} to columns k < m.
    for (std::size_t k = 0; k < m; ++k) colsum[k] -= gamma[static_cast<long>(k) - static_cast<long>(m)];
    cplx c{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) c += gamma[static_cast<long>(m - j)];
    colsum.push_back(c);
  };

  if (options.path == SolvePath::Dense) {
    for (std::size_t m = 1; m <= n; ++m) {
      if (m > 1) grow_colsum(m - 1);
      record(m, dense_solve(gamma, m, ones.head(static_cast<Index>(m)), options.minor_ratio_floor), colsum);
    }
    return out;
  }

  LevinsonSweep sweep(gamma, options);
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(1, 1.0 / gamma[0].real());
  record(1, x, colsum);
  for (std::size_t m = 2; m <= n; ++m) {
    sweep.extend();
    grow_colsum(m - 1);
    x = sweep.extend_solution(x, ones);
    record(m, x, colsum);
  }
  return out;
}

double sigma_closed_form(const MomentSequence& gamma, std::size_t n) {
  if (n < 1 || n > 4) fail(ErrorKind::InvalidArgument, "closed forms exist for n = 1..4 only");
  require_order(gamma, n);
  if (!gamma.is_real(1e-14)) fail(ErrorKind::InvalidArgument, "closed forms assume real moments");
  const double g0 = gamma[0].real();
  const double g1 = n > 1 ? gamma[1].real() : 0.0;
  const double g2 = n > 2 ? gamma[2].real() : 0.0;
  const double g3 = n > 3 ? gamma[3].real() : 0.0;
  double num = 1.0;
  double den = g0;
  switch (n) {
    case 1:
      break;
    case 2:
      num = 2.0;
      den = g0 + g1;
      break;
    case 3:
      num = 3.0 * g0 - 4.0 * g1 + g2;
      den = (g0 + g2) * g0 - 2.0 * g1 * g1;
      break;
    default:
      num = 2.0 * (2.0 * g0 - g1 - 2.0 * g2 + g3);
      den = (g0 + g3) * (g0 + g1) - (g1 + g2) * (g1 + g2);
      break;
  }
  if (den == 0.0) fail(ErrorKind::Degenerate, "closed-form denominator vanishes");
  return num / den;
}

}  // namespace canonsys
