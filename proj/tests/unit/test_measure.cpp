#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"

#include "canonsys/errors.hpp"
#include "canonsys/measure.hpp"
#include "canonsys/measure_json.hpp"

using namespace canonsys;
using testsupport::kPi;

TEST_CASE("periodic moments of simple measures") {
  auto mu = SpectralMeasure::periodic({{0, 1.0}, {1, 0.5}});
  auto g = periodic_moments(mu, 4);
  CHECK(std::abs(g[0] - 1.0) < 1e-15);
  CHECK(std::abs(g[1] - 0.5) < 1e-15);
  CHECK(std::abs(g[-1] - 0.5) < 1e-15);
  CHECK(std::abs(g[2]) < 1e-15);

  // half Lebesgue plus mass pi at odd multiples of pi
  auto nu = SpectralMeasure::periodic({{0, 0.5}}, {{kPi, kPi}});
  auto gn = periodic_moments(nu, 6);
  for (long k = 0; k <= 6; ++k) {
    const double expected = k == 0 ? 1.0 : (k % 2 ? -0.5 : 0.5);
    CHECK(std::abs(gn[k] - expected) < 1e-14);
  }

  auto c = periodic_moments(SpectralMeasure::periodic({{0, 2.5}}), 3);
  CHECK(std::abs(c[0] - 2.5) < 1e-15);
  CHECK(std::abs(c[3]) < 1e-15);
}

TEST_CASE("invalid measures are rejected") {
  CHECK_THROWS_AS(SpectralMeasure::periodic({{0, 0.2}, {1, 0.5}}), Error);  // negative somewhere
  CHECK_THROWS_AS(SpectralMeasure::periodic({{0, cplx(1.0, 0.5)}}), Error);
  CHECK_THROWS_AS(SpectralMeasure::line(-1.0), Error);
  CHECK_THROWS_AS(periodic_moments(SpectralMeasure::line(1.0), 2), Error);
}

TEST_CASE("moment reconstruction is the identity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto mu = testsupport::random_positive_measure(rng, false);
    auto g = periodic_moments(mu, 8);
    auto oracle = testsupport::circle_moments([&](double x) { return mu.density(x); }, 8, 256);
    for (long k = 0; k <= 8; ++k) CHECK(std::abs(g[k] - oracle[static_cast<std::size_t>(k)]) < 1e-12);
  }
}

TEST_CASE("even densities have real moments") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto mu = testsupport::random_positive_measure(rng, true);
    CHECK(mu.is_even());
    auto g = periodic_moments(mu, 10);
    CHECK(g.is_real(1e-15));
  }
  auto odd = SpectralMeasure::periodic({{0, 1.0}, {1, cplx(0.0, 0.3)}});
  CHECK_FALSE(odd.is_even());
  CHECK_FALSE(periodic_moments(odd, 2).is_real());
}

TEST_CASE("Cauchy transform examples") {
  const double a = 0.6;
  auto rep = cauchy_transform(SpectralMeasure::periodic({{0, 1.0}, {1, a / 2}}));
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.7, 1.1), cplx(2.0, 0.05)}) {
    const cplx S = std::exp(cplx(0.0, 1.0) * z);
    CHECK(std::abs(rep.eval(z) - cplx(0.0, 1.0) * (1.0 + a * S)) < 1e-13);
  }
  auto lin = cauchy_transform(SpectralMeasure::line(1.0, {{0.0, 1.0}}));
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.7, 1.1)}) CHECK(std::abs(lin.eval(z) - (cplx(0.0, 1.0) - 1.0 / z)) < 1e-13);
  for (double x : {-3.0, -0.4, 0.7, 5.0}) {
    const cplx w = cplx(0.0, 1.0) / lin.eval(cplx(x, 0.0));
    CHECK(std::abs(w.real() - x * x / (1.0 + x * x)) < 1e-14);
  }
  auto flat = cauchy_transform(SpectralMeasure::line(2.0));
  CHECK(std::abs(flat.eval(cplx(0.1, 0.4)) - cplx(0.0, 2.0)) < 1e-15);
}

TEST_CASE("Im K is the Poisson extension of the density") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = testsupport::random_positive_measure(rng, false, 4);
    auto rep = cauchy_transform(mu);
    CHECK(herglotz_spot_check(rep));
    // boundary values: Im K(x + i0) = density
    for (double x : {0.1, 1.3, 4.0}) CHECK(std::abs(rep.eval(cplx(x, 0.0)).imag() - mu.density(x)) < 1e-12);
  }
  CHECK(herglotz_spot_check(cauchy_transform(SpectralMeasure::line(0.5, {{1.0, 2.0}, {-3.0, 0.5}}))));
}

TEST_CASE("periodic atom contributes a Clark term") {
  // density 1 plus mass m at x0: Poisson extension at z = x + iy has the
  // periodized Poisson kernel (m / 2pi) (1 - r^2) / |1 - r e^{i(x - x0)}|^2.
  const double x0 = 1.1, m = 0.7;
  auto rep = cauchy_transform(SpectralMeasure::periodic({{0, 1.0}}, {{x0, m}}));
  const double x = 0.4, y = 0.3, r = std::exp(-y);
  const double poisson = (1.0 - r * r) / std::norm(1.0 - r * std::polar(1.0, x - x0));
  CHECK(std::abs(rep.eval(cplx(x, y)).imag() - (1.0 + m / (2.0 * kPi) * poisson)) < 1e-13);
}

TEST_CASE("periodic duals") {
  auto dual = dual_measure(SpectralMeasure::periodic({{0, 1.0}, {1, 0.5}}), 0.0, 10);
  auto g = periodic_moments(dual, 10);
  for (long k = 0; k <= 10; ++k) CHECK(std::abs(g[k] - (k == 0 ? 1.0 : (k % 2 ? -0.5 : 0.5))) < 1e-9);

  const double a = 0.4;
  auto dual_a = dual_measure(SpectralMeasure::periodic({{0, 1.0}, {1, a / 2}}), 0.0, 8);
  auto ga = periodic_moments(dual_a, 8);
  CHECK(std::abs(ga[0] - 1.0) < 1e-9);
  for (long k = 1; k <= 8; ++k) CHECK(std::abs(ga[k] - (k % 2 ? -1.0 : 1.0) * std::pow(a, k) / 2.0) < 1e-9);

  auto dual_c = periodic_moments(dual_measure(SpectralMeasure::periodic({{0, 4.0}}), 0.0, 3), 3);
  CHECK(std::abs(dual_c[0] - 0.25) < 1e-12);
  CHECK(std::abs(dual_c[2]) < 1e-12);
}

TEST_CASE("dual moments do not depend on the quadrature height") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    auto rep = cauchy_transform(testsupport::random_positive_measure(rng, false, 3));
    auto hi = dual_moments_at_height(rep, 0.2, 8, 0.5, 4096);
    auto lo = dual_moments_at_height(rep, 0.2, 8, 0.25, 4096);
    for (long k = 0; k <= 8; ++k) CHECK(std::abs(hi[k] - lo[k]) < 1e-9);
  }
}

TEST_CASE("dual of the dual reproduces an even measure") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    auto mu = testsupport::random_positive_measure(rng, true, 2);
    auto twice = dual_measure(dual_measure(mu, 0.0, 12), 0.0, 6);
    auto g = periodic_moments(mu, 6);
    auto g2 = periodic_moments(twice, 6);
    for (long k = 0; k <= 6; ++k) CHECK(std::abs(g[k] - g2[k]) < 1e-9);
  }
}

TEST_CASE("line duals") {
  auto dual = dual_measure(SpectralMeasure::line(1.0, {{0.0, 1.0}}), 0.0, 0);
  REQUIRE(dual.is_rational());
  for (double x : {-4.0, -0.5, 0.0, 0.3, 9.0}) CHECK(std::abs(dual.density(x) - x * x / (1.0 + x * x)) < 1e-13);

  const double alpha = 2.0, beta = 0.5;
  auto d2 = dual_measure(SpectralMeasure::line(alpha, {{0.0, beta}}), 0.0, 0);
  for (double x : {-1.0, 0.25, 3.0})
    CHECK(std::abs(d2.density(x) - alpha * x * x / (alpha * alpha * x * x + beta * beta)) < 1e-13);

  // pure point input: dual atoms sit between the original atoms
  auto d3 = dual_measure(SpectralMeasure::line(0.0, {{-1.0, 1.0}, {1.0, 1.0}}), 0.0, 0);
  auto atoms = d3.atoms_in(-10.0, 10.0);
  REQUIRE(atoms.size() == 1);
  CHECK(std::abs(atoms[0].first) < 1e-12);
  // K = 1/(-1 - z) + 1/(1 - z), K'(0) = 2, mass pi / 2
  CHECK(std::abs(atoms[0].second - kPi / 2.0) < 1e-10);
}

TEST_CASE("Fourier representation") {
  auto rep = fourier_rep(SpectralMeasure::periodic({{0, 1.0}, {1, 0.5}}));
  const double s = std::sqrt(2.0 * kPi);
  REQUIRE(rep.atoms.size() == 3);
  for (const auto& a : rep.atoms) {
    const double w = a.position == 0.0 ? s : s / 2.0;
    CHECK(std::abs(a.weight - w) < 1e-14);
  }
  auto line = fourier_rep(SpectralMeasure::line(1.5, {{0.7, 2.0}}));
  REQUIRE(line.atoms.size() == 1);
  CHECK(std::abs(line.atoms[0].weight - 1.5 * s) < 1e-14);
  REQUIRE(line.exponentials.size() == 1);
  CHECK(line.exponentials[0].frequency == doctest::Approx(0.7));
  CHECK(std::abs(line.exponentials[0].coefficient - kPi * 2.0 / s) < 1e-14);
  CHECK_THROWS_AS(fourier_rep(SpectralMeasure::rational({1.0}, {1.0, 0.0, 1.0})), Error);
}

TEST_CASE("mass and atoms") {
  auto lin = SpectralMeasure::line(1.0, {{0.0, 1.0}});
  CHECK(lin.mass(-1.0, 1.0) == doctest::Approx(2.0 + kPi));
  CHECK(lin.mass(0.0, 1.0) == doctest::Approx(1.0));
  auto per = SpectralMeasure::periodic({{0, 1.0}}, {{0.5, 2.0}});
  CHECK(per.mass(0.0, 4.0 * kPi) == doctest::Approx(4.0 * kPi + 4.0));
  CHECK(SpectralMeasure::line(0.0, {{0.0, 1.0}}).flagged_non_pw());
  CHECK_FALSE(lin.flagged_non_pw());
}

TEST_CASE("measure JSON round trip") {
  std::mt19937 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = testsupport::random_positive_measure(rng, false, 4);
    auto text = measure_to_json(mu);
    auto back = parse_measure_json(text);
    CHECK(measure_to_json(back) == text);
  }
  for (const char* text :
       {R"({"type":"line","lebesgue":1.0,"atoms":[{"lambda":0.0,"beta":1.0}]})",
        R"({"type":"periodic","density":[{"k":0,"re":1.0,"im":0.0}],"atoms":[{"x":3.141592653589793,"mass":3.141592653589793}]})",
        R"({"type":"rational","numerator":[0,0,1],"denominator":[1,0,1]})"}) {
    auto once = measure_to_json(parse_measure_json(text));
    CHECK(measure_to_json(parse_measure_json(once)) == once);
  }
  CHECK_THROWS_AS(parse_measure_json(R"({"type":"line","lebesgue":1.0,"bogus":1})"), Error);
  try {
    parse_measure_json("{\n  \"type\": \"line\",\n  \"lebesgue\": ]\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
