#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "willmore/crational.hpp"
#include "willmore/error.hpp"

using namespace wm;

namespace {

CPoly poly(std::initializer_list<long> cs) {
  std::vector<GaussRat> v;
  for (long c : cs) v.emplace_back(c);
  return CPoly(v);
}

}  // namespace

TEST_CASE("Gaussian rational arithmetic is exact") {
  const GaussRat a = GaussRat::ratio(1, 3) + GaussRat::i() * GaussRat::ratio(2, 5);
  const GaussRat b = GaussRat::ratio(-7, 4) + GaussRat::i();
  CHECK((a * b) / b == a);
  CHECK(a - a == GaussRat(0));
  CHECK((a * a.conj()).im == 0);
  CHECK(GaussRat::i() * GaussRat::i() == GaussRat(-1));
  CHECK_THROWS_AS(a / GaussRat(0), Error);
}

TEST_CASE("Gaussian rationals round-trip through strings") {
  const GaussRat a(mpq_class("-123456789012345678901/7"), mpq_class("5/3"));
  CHECK(GaussRat::fromStrings(a.toStrings()) == a);
  CHECK_THROWS_AS(GaussRat::fromStrings({"1", "x", "0", "1"}), Error);
  CHECK_THROWS_AS(GaussRat::fromStrings({"1", "0", "0", "1"}), Error);
}

TEST_CASE("polynomial derivative of z^l") {
  for (int l = 0; l <= 9; ++l) {
    const CPoly d = CPoly::monomial(l).derivative();
    if (l == 0) {
      CHECK(d.isZero());
    } else {
      CHECK(d == CPoly::monomial(l - 1, GaussRat(l)));
    }
  }
}

TEST_CASE("polynomial derivative agrees with a finite-difference oracle") {
  const CPoly p(std::vector<GaussRat>{GaussRat(3), GaussRat(0, 2), GaussRat::ratio(-1, 2), GaussRat(1, 1)});
  const cplx z(0.4, -0.3);
  const cplx fd = oracle::holoDerivative([&](cplx w) { return p.eval(w); }, z);
  CHECK(std::abs(p.derivative().eval(z) - fd) < 1e-8);
}

TEST_CASE("division and gcd") {
  const CPoly a = poly({-1, 0, 1});  // z^2 - 1
  const CPoly b = poly({1, 1});      // z + 1
  const auto [q, r] = divmod(a, b);
  CHECK(q == poly({-1, 1}));
  CHECK(r.isZero());
  CHECK(gcd(a * poly({2, 1}), b * poly({5, 1}) * poly({2, 1})) == b * poly({2, 1}));
  CHECK_THROWS_AS(divmod(a, CPoly()), Error);
}

TEST_CASE("exact evaluation matches floating evaluation") {
  const CPoly p(std::vector<GaussRat>{GaussRat::ratio(1, 3), GaussRat(0, -2), GaussRat(5), GaussRat::ratio(2, 7)});
  const GaussRat z(mpq_class(1, 2), mpq_class(-3, 4));
  const GaussRat exact = p.eval(z);
  CHECK(std::abs(exact.toComplex() - p.eval(z.toComplex())) < 1e-14);
}

TEST_CASE("residues of simple rational functions") {
  // 1/z^2 has residue 0 at the origin and 2/z has residue 2.
  CHECK(std::abs(residueNumeric(poly({1}), poly({0, 0, 1}), 0.0, 2)) < 1e-12);
  CHECK(std::abs(residueNumeric(poly({2}), poly({0, 1}), 0.0, 1) - 2.0) < 1e-12);
  // A pole order that disagrees with the denominator is rejected.
  CHECK_THROWS_AS(residueNumeric(poly({1}), poly({0, 0, 1}), 0.0, 1), Error);
}

TEST_CASE("residues agree with contour quadrature") {
  // f(z) = (z^3 + 2 i z + 1) / ((z - 1)^2 (z + 2) z^3)
  VRatFn f;
  f.num = {CPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(0, 2), GaussRat(0), GaussRat(1)}), poly({1, 1})};
  f.den = pow(poly({-1, 1}), 2) * poly({2, 1}) * CPoly::monomial(3);
  struct Pole {
    cplx p;
    int order;
  };
  for (const Pole& pl : {Pole{1.0, 2}, Pole{-2.0, 1}, Pole{0.0, 3}}) {
    const CplxVec got = residueNumeric(f, pl.p, pl.order);
    const Eigen::VectorXcd want = oracle::contourResidue([&](cplx z) { return Eigen::VectorXcd(f.eval(z)); }, pl.p, 0.3, 512);
    CHECK((got - want).norm() < 1e-9);
  }
}

TEST_CASE("Taylor coefficients of a quotient") {
  const CPoly num = poly({1, 2});
  const CPoly den = poly({1, -1});  // (1 + 2z) / (1 - z) = 1 + 3z + 3z^2 + ...
  const auto t = taylorCoefficients(num, den, 0.0, 5);
  CHECK(std::abs(t[0] - 1.0) < 1e-14);
  for (int k = 1; k <= 5; ++k) CHECK(std::abs(t[k] - 3.0) < 1e-12);
  // Expansion about another point versus a finite-difference first derivative.
  const cplx z0(0.3, 0.2);
  const auto s = taylorCoefficients(num, den, z0, 2);
  const cplx fd = oracle::holoDerivative([&](cplx z) { return num.eval(z) / den.eval(z); }, z0);
  CHECK(std::abs(s[1] - fd) < 1e-8);
}

TEST_CASE("inversion and reduction of vector rational functions") {
  VRatFn f;
  f.num = {poly({0, 1, 1}), poly({0, 0, 3})};
  f.den = poly({0, 2});
  const VRatFn r = f.reduce();
  CHECK(r.den.degree() == 0);
  const cplx z(0.7, -0.4);
  CHECK((r.eval(z) - f.eval(z)).norm() < 1e-13);
  const VRatFn g = f.inverted();
  CHECK((g.eval(1.0 / z) - f.eval(z)).norm() < 1e-12);
}

TEST_CASE("derivative of a vector rational function") {
  VRatFn f;
  f.num = {poly({1, 0, 3}), CPoly(std::vector<GaussRat>{GaussRat(0, 1), GaussRat(2)})};
  f.den = poly({2, 0, 0, 1});
  const VRatFn d = ratDerivative(f);
  const cplx z(-0.2, 0.9);
  for (size_t i = 0; i < 2; ++i) {
    const cplx fd = oracle::holoDerivative([&](cplx w) { return f.eval(w)[static_cast<Eigen::Index>(i)]; }, z);
    CHECK(std::abs(d.eval(z)[static_cast<Eigen::Index>(i)] - fd) < 1e-7);
  }
}

TEST_CASE("pairing of rational vectors") {
  VRatFn f;
  f.num = {poly({1}), poly({0, 1}), CPoly(std::vector<GaussRat>{GaussRat(0, 1)})};
  f.den = poly({1, 1});
  const RatFn p = bilinearPairingRat(f, f);
  const cplx z(0.5, 0.5);
  const CplxVec v = f.eval(z);
  // The rational-function pairing is the Euclidean bilinear one used for x_z.
  const cplx want = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  CHECK(std::abs(p.num.eval(z) / p.den.eval(z) - want) < 1e-13);
}

TEST_CASE("isotropic constant vector pairs to zero") {
  VRatFn f;
  f.num = {CPoly::constant(GaussRat(1)), CPoly::constant(GaussRat::i())};
  f.den = CPoly::constant(GaussRat(1));
  CHECK(bilinearPairingRat(f, f).num.isZero());
}

TEST_CASE("quotient rule on simple examples") {
  VRatFn inv{{CPoly::constant(GaussRat(1))}, CPoly::monomial(1)};
  const VRatFn d = ratDerivative(inv).reduce();
  CHECK(d.num[0] == CPoly::constant(GaussRat(-1)));
  CHECK(d.den == CPoly::monomial(2));
  VRatFn q{{CPoly::monomial(1)}, poly({-1, 1})};
  const VRatFn dq = ratDerivative(q).reduce();
  CHECK(dq.num[0] == CPoly::constant(GaussRat(-1)));
  CHECK(dq.den == pow(poly({-1, 1}), 2));
}

TEST_CASE("repeated derivatives agree with repeated finite differences") {
  VRatFn f;
  f.num = {CPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(0, 1), GaussRat(2)})};
  f.den = poly({3, 0, 1, 1});
  const cplx z0(0.3, 0.2);
  // Oracle: Cauchy integral formula f^(j)(z0) = j! * mean over circle of f(z) / (z - z0)^j.
  VRatFn d = f;
  for (int j = 1; j <= 3; ++j) {
    d = ratDerivative(d);
    const double r = 0.1;
    cplx acc = 0.0;
    const int pts = 128;
    for (int k = 0; k < pts; ++k) {
      const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / pts);
      acc += f.eval(z0 + r * e)[0] / std::pow(r * e, j);
    }
    double fact = 1.0;
    for (int t = 2; t <= j; ++t) fact *= t;
    const cplx want = fact * acc / static_cast<double>(pts);
    const cplx got = d.eval(z0)[0];
    CHECK(std::abs(got - want) <= 1e-5 * std::abs(want));
  }
}
