#include <doctest.h>

#include "oracles.hpp"
#include "willmore/error.hpp"
#include "willmore/jet.hpp"

using namespace wm;

namespace {

// A non-holomorphic test field g(z, zbar) = exp(z) * (1 + z zbar^2) evaluated
// both as a jet and pointwise.
cplx gPoint(cplx z) { return std::exp(z) * (1.0 + z * std::conj(z) * std::conj(z)); }

Jet gJet(int order, cplx z0) {
  const Jet z = Jet::zVar(order, z0), zb = Jet::zbarVar(order, z0);
  return exp(z) * (Jet::constant(order, 1.0) + z * zb * zb);
}

}  // namespace

TEST_CASE("jet arithmetic: f * (1/f) = 1") {
  const cplx z0(0.3, -0.2);
  const Jet f = gJet(6, z0) + cplx(2.0);
  const Jet one = f * inverse(f);
  CHECK(std::abs(one.coeff(0, 0) - 1.0) < 1e-13);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b)
      if (a + b > 0) CHECK(std::abs(one.coeff(a, b)) < 1e-12);
  CHECK_THROWS_AS(inverse(Jet::zVar(3, 0.0)), Error);
}

TEST_CASE("jet log and exp round-trip") {
  const cplx z0(0.1, 0.4);
  const Jet f = gJet(5, z0) + cplx(1.5);
  const Jet back = exp(log(f));
  CHECK((back - f).maxAbs() < 1e-12);
  const Jet s = sqrt(f * f);
  CHECK((s - f).maxAbs() < 1e-11);
}

TEST_CASE("jet derivatives agree with finite differences") {
  const cplx z0(0.25, 0.35);
  const Jet g = gJet(4, z0);
  auto asXY = [](double x, double y) { return gPoint(cplx(x, y)); };
  CHECK(std::abs(g.derivative(1, 0) - oracle::dzFD(asXY, z0.real(), z0.imag())) < 1e-8);
  CHECK(std::abs(g.derivative(1, 1) - oracle::mixedWirtinger(asXY, z0.real(), z0.imag())) < 1e-5);
  CHECK(std::abs(g.dz().dzb().value() - g.derivative(1, 1)) < 1e-13);
  CHECK(std::abs(g.conj().derivative(0, 1) - std::conj(g.derivative(1, 0))) < 1e-13);
}

TEST_CASE("differentiation lowers the order and eventually fails") {
  Jet j = Jet::zVar(2, 0.0);
  CHECK(j.dz().order() == 1);
  CHECK_THROWS_AS(j.dz().dz().dz(), Error);
}

TEST_CASE("branch functions reject a zero constant term") {
  CHECK_THROWS_AS(sqrt(Jet::zVar(3, 0.0)), Error);
  CHECK_THROWS_AS(log(Jet::zVar(3, 0.0)), Error);
  const Jet p = pow(Jet::zVar(4, 2.0), 1.5);
  CHECK(std::abs(p.derivative(1, 0) - 1.5 * std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("holomorphic seed reproduces the rational function and its derivative") {
  VRatFn f;
  f.num = {CPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(0, 2)}), CPoly::monomial(3)};
  f.den = CPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(0), GaussRat(1)});
  const cplx z0(0.4, 0.1);
  const JetVec j = seedHolomorphic(f, z0, 4);
  CHECK((values(j) - f.eval(z0)).norm() < 1e-13);
  for (size_t i = 0; i < 2; ++i) {
    const cplx fd = oracle::holoDerivative([&](cplx w) { return f.eval(w)[static_cast<Eigen::Index>(i)]; }, z0);
    CHECK(std::abs(j[i].derivative(1, 0) - fd) < 1e-8);
    CHECK(std::abs(j[i].derivative(0, 1)) == 0.0);
  }
  const JetVec h = seedHarmonic(f, z0, 4);
  CHECK(std::abs(h[0].value().imag()) < 1e-15);
}

TEST_CASE("mixed coefficient of |x|^2 against a two-dimensional stencil") {
  VRatFn f;
  f.num = {CPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(0, 1)}), CPoly::monomial(2), CPoly::monomial(1, GaussRat(3))};
  f.den = CPoly(std::vector<GaussRat>{GaussRat(2), GaussRat(1)});
  const cplx z0(0.3, -0.25);
  const JetVec x = seedHarmonic(f, z0, 4);
  const Jet sq = edot(x, x);
  auto pointwise = [&](double a, double b) {
    const CplxVec v = f.eval(cplx(a, b));
    const Eigen::VectorXd re = 2.0 * v.real();
    return cplx(re.squaredNorm(), 0.0);
  };
  const cplx want = oracle::mixedWirtinger(pointwise, z0.real(), z0.imag(), 1e-3);
  CHECK(std::abs(sq.coeff(1, 1) - want) <= 1e-5 * std::abs(want));
}

TEST_CASE("conjugation swaps Wirtinger slots") {
  const Jet g = gJet(4, cplx(0.2, 0.1));
  const Jet c = g.conj();
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) CHECK(c.coeff(b, a) == std::conj(g.coeff(a, b)));
}
