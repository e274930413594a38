#include "doctest.h"

#include "canonsys/csv.hpp"
#include "canonsys/errors.hpp"
#include "canonsys/hamiltonian.hpp"

using namespace canonsys;

TEST_CASE("validation") {
  CHECK_NOTHROW(PiecewiseHamiltonian({{0.0, 1.0, 2.0, 0.0, 0.5}, {1.0, 2.0, 1.0, 0.0, 1.0}}));
  CHECK_THROWS_AS(PiecewiseHamiltonian({{0.5, 1.0, 1.0, 0.0, 1.0}}), Error);
  CHECK_THROWS_AS(PiecewiseHamiltonian({{0.0, 1.0, 1.0, 0.0, 1.0}, {1.5, 2.0, 1.0, 0.0, 1.0}}), Error);
  CHECK_THROWS_AS(PiecewiseHamiltonian({{0.0, 1.0, 2.0, 0.0, 1.0}}), Error);
  CHECK_THROWS_AS(PiecewiseHamiltonian({{0.0, 1.0, -1.0, 0.0, -1.0}}, false), Error);
  CHECK_NOTHROW(PiecewiseHamiltonian({{0.0, 1.0, 4.0, 0.0, 1.0}}, false));
}

TEST_CASE("involutions") {
  const HamiltonianBlock b{0.0, 1.0, 2.0, 0.0, 0.5};
  auto t = involution(b, Involution::Tilde);
  CHECK(t.h11 == 0.5);
  CHECK(t.h22 == 2.0);
  auto br = involution(b, Involution::Breve);
  CHECK(br.h11 == b.h11);
  CHECK(br.h12 == 0.0);
  auto c = involution(b, Involution::Conjugate, 0.7);
  CHECK(c.h12 == doctest::Approx(0.7 * 2.0));
  CHECK(c.h22 == doctest::Approx(0.5 + 0.49 * 2.0));
  const HamiltonianBlock g{0.0, 1.0, 2.0, 0.6, 0.68};
  for (auto kind : {Involution::Breve, Involution::Tilde, Involution::Conjugate})
    CHECK(involution(g, kind, -1.3).det() == doctest::Approx(g.det()));
}

TEST_CASE("normalization") {
  PiecewiseHamiltonian H({{0.0, 1.0, 4.0, 0.0, 1.0}}, false);
  auto n = normalize(H, NormalizeMode::Det);
  REQUIRE(n.hamiltonian.size() == 1);
  const auto& b = n.hamiltonian.blocks()[0];
  CHECK(b.t_hi == doctest::Approx(2.0));
  CHECK(b.h11 == doctest::Approx(2.0));
  CHECK(b.h22 == doctest::Approx(0.5));
  CHECK(n.time_change.s_of_t(0.5) == doctest::Approx(1.0));
  CHECK(n.time_change.t_of_s(1.0) == doctest::Approx(0.5));

  PiecewiseHamiltonian unit({{0.0, 1.5, 2.0, 0.0, 0.5}});
  auto id = normalize(unit, NormalizeMode::Det);
  CHECK(id.hamiltonian.blocks()[0].t_hi == doctest::Approx(1.5));
  CHECK(id.time_change.s_of_t(0.9) == doctest::Approx(0.9));

  auto tr = normalize(unit, NormalizeMode::Trace);
  CHECK(tr.hamiltonian.blocks()[0].trace() == doctest::Approx(1.0));
  CHECK(tr.hamiltonian.end() == doctest::Approx(1.5 * 2.5));

  PiecewiseHamiltonian singular({{0.0, 1.0, 1.0, 0.0, 0.0}}, false);
  try {
    normalize(singular, NormalizeMode::Det);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDetNormalizable);
  }
}

TEST_CASE("CSV") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  PiecewiseHamiltonian H({{0.0, 0.5, 1.0, 0.0, 1.0}, {0.5, 1.0, 1.0 / 3.0, 0.0, 3.0}});
  auto text = piecewise_csv(H);
  CHECK(text.rfind("t_lo,t_hi,h11,h12,h22\n", 0) == 0);
  auto back = parse_piecewise_csv(text);
  REQUIRE(back.size() == 2);
  CHECK(back.blocks()[1].h11 == H.blocks()[1].h11);
  CHECK(piecewise_csv(back) == text);
  CHECK(sampled_csv({{1.0, 0.25, 0.0, 4.0}}) == "t,h11,h12,h22\n1,0.25,0,4\n");
  CHECK_THROWS_AS(parse_piecewise_csv("t_lo,t_hi,h11,h12,h22\n0,1,x,0,1\n"), Error);
}
