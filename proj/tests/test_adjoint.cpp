#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "willmore/adjoint.hpp"
#include "willmore/error.hpp"

using namespace wm;

namespace {

GridSpec adjointGrid() {
  GridSpec g;
  g.center = 2.0;
  g.side = 0.5;
  return g;
}

// mu0 = d/dz log |x_z|^2 from finite differences of the position only.
cplx dualMuOracle(const Surface& s, cplx z) {
  auto metric = [&](double u, double v) {
    const double h = 1e-4;
    auto x = [&](double a, double b) -> Eigen::VectorXd { return values(s.jets(cplx(a, b), 0)).real(); };
    const Eigen::VectorXd xu = (x(u + h, v) - x(u - h, v)) / (2 * h);
    return cplx(std::log(xu.squaredNorm()));
  };
  return oracle::dzFD(metric, z.real(), z.imag(), 1e-3);
}

}  // namespace

TEST_CASE("S-Willmore test") {
  const Surface s = surfaceFromData(generate(1, 4));
  std::vector<MoebiusFrame> frames;
  for (const cplx z : interiorSamples(s, 24, 2)) frames.push_back(frameAt(s, z, 5));
  const SWillmoreResult r = sWillmoreTest(frames);
  CHECK(r.sWillmore);
  CHECK(r.maxChi0 < 1e-8);

  // Rescaling kappa moves chi0 but not the verdict.
  std::vector<std::pair<CplxVec, CplxVec>> scaled;
  for (const auto& f : frames) {
    scaled.emplace_back(1e3 * values(normalD(f.kappa, f, Direction::Zbar)), 1e3 * values(f.kappa));
  }
  const SWillmoreResult rs = sWillmoreTest(scaled);
  CHECK(rs.sWillmore == r.sWillmore);
  CHECK(rs.maxRelative == doctest::Approx(r.maxRelative).epsilon(1e-6));

  // D_zbar kappa orthogonal to kappa, both nonzero.
  std::vector<std::pair<CplxVec, CplxVec>> perp(20);
  for (auto& [d, k] : perp) {
    d = unitVec(5, 2);
    k = unitVec(5, 3);
  }
  CHECK_FALSE(sWillmoreTest(perp).sWillmore);
  perp.resize(5);
  CHECK_THROWS_AS(sWillmoreTest(perp), Error);
}

TEST_CASE("dual mu") {
  const Surface bryant = invertedSurface(surfaceFromData(buildBryantPengXiao(4)));
  for (const cplx z : interiorSamples(bryant, 50, 8)) {
    const MoebiusFrame f = frameAt(bryant, z, 5);
    CHECK(dualMu(f).residual < 1e-8 * std::max(1.0, values(f.kappa).norm()));
  }
  // mu of the dual point at infinity is d/dz log |x_z|^2.
  const Surface s = surfaceFromData(generate(1, 4));
  for (const cplx z : {cplx(2.0, 0.3), cplx(-1.6, 0.9), cplx(0.1, 2.2)}) {
    const cplx mu = std::conj(dualMu(frameAt(s, z, 5)).muBar);
    CHECK(std::abs(mu - dualMuOracle(s, z)) < 1e-5 * std::max(1.0, std::abs(mu)));
  }
  CHECK_THROWS_AS(dualMu(frameAt(planeSurface(), 0.3, 5)), Error);
}

TEST_CASE("dual point is constant: rho vanishes") {
  for (const auto& w : {generate(0, 4), generate(1, 4), generate(2, 7)}) {
    const Surface s = surfaceFromData(w);
    for (const cplx z : interiorSamples(s, 20, 4)) CHECK(std::abs(dualRho(frameAt(s, z, 6))) < 1e-6);
  }
  const Surface inv = invertedSurface(surfaceFromData(generate(0, 4)));
  for (const cplx z : interiorSamples(inv, 10, 4)) CHECK(std::abs(dualRho(frameAt(inv, z, 6))) < 1e-6);
  // A non-minimal surface has no constant dual point.
  CHECK(std::abs(dualRho(frameAt(invertedSurface(cylinderSurface()), cplx(0.3, 0.4), 6))) > 1e-3);
}

TEST_CASE("conformal quadratic roots") {
  const ConformalRoots two = conformalRoots(1.0, 0.0, -1.0);
  REQUIRE(two.kind == RootKind::Two);
  CHECK(std::abs(two.roots[0] - 2.0) < 1e-15);
  CHECK(std::abs(two.roots[1] + 2.0) < 1e-15);

  const ConformalRoots one = conformalRoots(1.0, 1.0, 1.0);
  REQUIRE(one.kind == RootKind::One);
  CHECK(std::abs(one.roots[0] + 2.0) < 1e-15);
  CHECK(std::abs(one.theta0) < 1e-15);

  CHECK(conformalRoots(0.0, 0.0, 0.0).kind == RootKind::All);
  CHECK(conformalRoots(0.0, 0.0, 1.0).kind == RootKind::None);

  // Every root solves the quadratic.
  const cplx kk(0.3, -1.1), kd(0.7, 0.2), dd(-0.4, 0.9);
  for (const cplx r : conformalRoots(kk, kd, dd).roots) CHECK(std::abs(0.25 * r * r * kk + r * kd + dd) < 1e-13);

  const Surface s = surfaceFromData(generate(1, 4));
  for (const cplx z : interiorSamples(s, 5, 3)) CHECK(conformalRoots(frameAt(s, z, 5)).kind == RootKind::All);
  CHECK(conformalRoots(frameAt(planeSurface(), 0.2, 5)).kind == RootKind::NoneNeeded);

  // Two roots exactly when theta0 is away from zero.
  const Surface r4 = surfaceFromData(buildR4Example(2));
  for (const cplx z : interiorSamples(r4, 5, 3)) {
    const MoebiusFrame f = frameAt(r4, z, 5);
    const ConformalRoots c = conformalRoots(f);
    const Chi0Theta0 t = chi0theta0(f);
    CHECK(std::abs(c.theta0 - t.theta0) < 1e-10 * std::max(1.0, std::abs(t.theta0)));
  }
}

TEST_CASE("adjoint lift is light-like and normalized") {
  const Surface s = surfaceFromData(generate(1, 4));
  const MoebiusFrame f = frameAt(s, cplx(0.5, 0.1), 4);
  CHECK((adjointLift(0.0, f) - values(f.N)).norm() == 0.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const cplx mu(n(rng), n(rng));
    const CplxVec y = adjointLift(mu, f);
    CHECK(std::abs(mdot(y, y)) < 1e-11 * std::max(1.0, std::norm(mu)));
    CHECK(std::abs(mdot(y, values(f.Y)) + 1.0) < 1e-11);
  }
}

TEST_CASE("grid checks") {
  GridSpec g;
  g.nodes = 9;
  g.interior = 7;
  CHECK_THROWS_AS(g.require(2), Error);
  g.interior = 5;
  CHECK_NOTHROW(g.require(2));

  // Plane: s = 0, so mu = 0 gives theta = 0 and mu = 1 gives theta = -1/2.
  GridSpec p;
  p.nodes = 17;
  p.interior = 9;
  const Field zero = Field::Zero(p.nodes, p.nodes);
  const Field one = Field::Ones(p.nodes, p.nodes);
  CHECK(coTouchResidual(zero, zero, p).max == 0.0);
  const ScalarSummary t1 = coTouchResidual(one, zero, p);
  CHECK(std::abs(t1.values(3, 3) + 0.5) < 1e-14);

  // Fourth-order differences are exact on quartic polynomials in z and zbar.
  Field f(p.nodes, p.nodes);
  for (int i = 0; i < p.nodes; ++i)
    for (int j = 0; j < p.nodes; ++j) {
      const cplx z = p.node(i, j);
      f(i, j) = z * z * z * std::conj(z);
    }
  const cplx z = p.node(8, 8);
  CHECK(std::abs(dzField(f, p, 8, 8) - 3.0 * z * z * std::conj(z)) < 1e-12);
  CHECK(std::abs(dzbField(f, p, 8, 8) - z * z * z) < 1e-12);
}

TEST_CASE("riccati extension on the plane matches the closed form") {
  GridSpec g;
  g.nodes = 17;
  g.interior = 9;
  g.center = cplx(0.5, 0.5);
  const PolarizedMu zero = [](cplx, cplx) { return cplx(0.0); };
  RiccatiInit init;
  init.base = cplx(0.1, 0.2);
  init.g = [](cplx zeta) { return 3.0 + zeta; };
  const RiccatiField r = riccatiExtend(zero, g, init);
  for (int i = 0; i < g.nodes; i += 4)
    for (int j = 0; j < g.nodes; j += 4) {
      const cplx z = g.node(i, j);
      const cplx w = 3.0 + std::conj(z) - (z - *init.base) / 2.0;
      CHECK(std::abs(r.w(i, j) - w) < 1e-13);
      CHECK(std::abs(r.mu(i, j) - 1.0 / w) < 1e-12);
    }
  RiccatiInit inf;
  inf.infinite = true;
  const PolarizedMu seven = [](cplx, cplx) { return cplx(7.0); };
  CHECK((riccatiExtend(seven, g, inf).mu.array() - 7.0).abs().maxCoeff() == 0.0);

  // The plane has no adjoint: with constant data mu is holomorphic, so
  // rho = 0 and Y^ is degenerate.
  RiccatiInit constant;
  constant.base = init.base;
  constant.g = [](cplx) { return cplx(3.0); };
  const RiccatiField rc = riccatiExtend(zero, g, constant);
  const FrameField ff = frameField(planeSurface(), g);
  const VecField yh = adjointLiftField(rc.mu, ff);
  const RhoMetric rm = rhoAndMetric(rc.mu, ff, yh);
  CHECK(rm.rho.cwiseAbs().maxCoeff() < 1e-8);
  CHECK(rm.metric.cwiseAbs().maxCoeff() < 1e-8);
  CHECK_THROWS_AS(adjointWillmoreResidual(yh, g, 4, 3, 6), Error);
}

TEST_CASE("the dual of a minimal surface solves the co-touch equation") {
  const WeierstrassData w = generate(1, 4);
  const Surface s = surfaceFromData(w);
  const GridSpec g = adjointGrid();
  const FrameField ff = frameField(s, g);
  RiccatiInit inf;
  inf.infinite = true;
  const RiccatiField dual = riccatiExtend(polarizedDualMu(integratePrimitive(w)), g, inf);
  CHECK(coTouchResidual(dual.mu, ff.s, g).max < 1e-5);

  // A constant shift of mu breaks it.
  const Field shifted = dual.mu.array() + 0.01;
  CHECK(coTouchResidual(shifted, ff.s, g).max > 1e-3);

  const VecField yh = adjointLiftField(dual.mu, ff);
  const RhoMetric rm = rhoAndMetric(dual.mu, ff, yh);
  CHECK(rm.rho.cwiseAbs().maxCoeff() < 1e-6);
  CHECK(rm.maxIdentity < 1e-5);
  CHECK_THROWS_AS(adjointWillmoreResidual(yh, g), Error);
}

TEST_CASE("riccati-extended adjoint of a 1-isotropic example") {
  const WeierstrassData w = generate(1, 4);
  const Surface s = surfaceFromData(w);
  const GridSpec g = adjointGrid();
  const PolarizedMu mu0 = polarizedDualMu(integratePrimitive(w));
  const FrameField ff = frameField(s, g);
  const RiccatiField r = riccatiExtend(mu0, g);
  REQUIRE(r.blowUpCount == 0);

  CHECK(coTouchResidual(r.mu, ff.s, g).max < 1e-5);
  const VecField yh = adjointLiftField(r.mu, ff);
  const RhoMetric rm = rhoAndMetric(r.mu, ff, yh);
  CHECK(rm.maxLightlike < 1e-10);
  CHECK(rm.maxNormalization < 1e-10);
  CHECK(rm.maxConformal < 1e-5);
  CHECK(rm.maxEtaPairing < 1e-10);
  CHECK(rm.maxEtaIdentity < 1e-5);
  // eta does not vanish away from the dual, so the bare identity is off by 4 |eta|^2.
  CHECK(rm.maxIdentity > 1e-4);

  const AdjointWillmoreReport aw = adjointWillmoreResidual(yh, g);
  CHECK(aw.evaluated > 100);
  CHECK(aw.maxResidual < 1e-3);
}

TEST_CASE("riccati extension is path independent") {
  const WeierstrassData w = generate(1, 4);
  const PolarizedMu mu0 = polarizedDualMu(integratePrimitive(w));
  GridSpec g = adjointGrid();
  g.nodes = 21;
  g.interior = 11;
  const cplx left = g.node(0, g.nodes / 2), right = g.node(g.nodes - 1, g.nodes / 2);
  RiccatiInit a;
  a.base = left;
  a.g = [](cplx) { return cplx(1.0); };
  RiccatiInit b;
  b.base = right;
  b.g = [&](cplx zeta) { return riccatiSolve(mu0, left, 1.0, right, zeta, 256); };
  const RiccatiField ra = riccatiExtend(mu0, g, a), rb = riccatiExtend(mu0, g, b);
  CHECK((ra.w - rb.w).cwiseAbs().maxCoeff() < 1e-6);
}
