#include "canonsys/opuc.hpp"

#include <cmath>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canonsys {

namespace {

CPoly reversed_conjugate(const CPoly& p) {
  CPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p.size() - 1 - i] = std::conj(p[i]);
  return out;
}

}  // namespace

cplx moment_inner_product(const MomentSequence& gamma, const CPoly& p, const CPoly& q) {
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == cplx{0.0, 0.0}) continue;
    for (std::size_t k = 0; k < q.size(); ++k)
      acc += p[j] * std::conj(q[k]) * gamma[static_cast<long>(k) - static_cast<long>(j)];
  }
  return acc;
}

OpucBasis szego_basis(const MomentSequence& gamma, std::size_t N) {
  if (N > gamma.max_index()) fail(ErrorKind::InsufficientMoments, "Szego basis of degree N needs gamma_0..gamma_N");
  OpucBasis basis;
  basis.N = N;
  basis.monic.push_back(CPoly{cplx{1.0, 0.0}});
  basis.norms_sq.push_back(gamma[0].real());
  for (std::size_t n = 0; n < N; ++n) {
    const CPoly& phi = basis.monic.back();
    CPoly zphi(phi.size() + 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < phi.size(); ++i) zphi[i + 1] = phi[i];
    const cplx alpha_bar = moment_inner_product(gamma, zphi, CPoly{cplx{1.0, 0.0}}) / basis.norms_sq.back();
    const cplx alpha = std::conj(alpha_bar);
    if (!(std::abs(alpha) < 1.0)) {
      std::ostringstream os;
      os << "Verblunsky coefficient alpha_" << n << " has modulus " << std::abs(alpha);
      fail(ErrorKind::NonPositiveMeasure, os.str());
    }
    CPoly star = reversed_conjugate(phi);
    star.push_back(cplx{0.0, 0.0});
    CPoly next(zphi.size());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = zphi[i] - alpha_bar * star[i];
    basis.verblunsky.push_back(alpha);
    basis.norms_sq.push_back(basis.norms_sq.back() * (1.0 - std::norm(alpha)));
    basis.monic.push_back(std::move(next));
  }
  return basis;
}

double h_via_onp(const OpucBasis& basis, std::size_t n, cplx eta) {
  if (n > basis.N) fail(ErrorKind::Range, "polynomial index exceeds basis degree");
  if (std::abs(std::abs(eta) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "eta must be unimodular");
  return std::norm(poly::eval(basis.monic[n], eta)) / basis.norms_sq[n];
}

MomentSequence poisson_kernel_moments(cplx a, std::size_t K) {
  if (!(std::abs(a) < 1.0)) fail(ErrorKind::InvalidArgument, "Poisson parameter must satisfy |a| < 1");
  std::vector<cplx> g(K + 1);
  g[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) g[k] = g[k - 1] * std::conj(a);
  return MomentSequence(std::move(g));
}

MomentSequence delta_plus_const_moments(double g, std::size_t K) {
  if (!(g > 0.0 && g < 1.0)) fail(ErrorKind::InvalidArgument, "delta weight must lie in (0, 1)");
  std::vector<cplx> m(K + 1, cplx{g, 0.0});
  m[0] = 1.0;
  return MomentSequence(std::move(m));
}

OpucBasis poisson_basis(cplx a, std::size_t N) {
  if (!(std::abs(a) < 1.0)) fail(ErrorKind::InvalidArgument, "Poisson parameter must satisfy |a| < 1");
  OpucBasis basis;
  basis.N = N;
  basis.monic.push_back(CPoly{cplx{1.0, 0.0}});
  basis.norms_sq.push_back(1.0);
  for (std::size_t n = 1; n <= N; ++n) {
    CPoly p(n + 1, cplx{0.0, 0.0});
    p[n] = 1.0;
    p[n - 1] = -a;
    basis.monic.push_back(std::move(p));
    basis.norms_sq.push_back(1.0 - std::norm(a));
    basis.verblunsky.push_back(n == 1 ? std::conj(a) : cplx{0.0, 0.0});
  }
  return basis;
}

OpucBasis delta_plus_const_basis(double g, std::size_t N) {
  if (!(g > 0.0 && g < 1.0)) fail(ErrorKind::InvalidArgument, "delta weight must lie in (0, 1)");
  OpucBasis basis;
  basis.N = N;
  basis.monic.push_back(CPoly{cplx{1.0, 0.0}});
  basis.norms_sq.push_back(1.0);
  for (std::size_t n = 1; n <= N; ++n) {
    const double prev = g / (1.0 + static_cast<double>(n - 1) * g);
    CPoly p(n + 1, cplx{-prev, 0.0});
    p[n] = 1.0;
    basis.monic.push_back(std::move(p));
    basis.norms_sq.push_back(1.0 - static_cast<double>(n) * prev * g);
    basis.verblunsky.push_back(cplx{prev, 0.0});
  }
  return basis;
}

}  // namespace canonsys
