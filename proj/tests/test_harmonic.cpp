#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "willmore/adjoint.hpp"
#include "willmore/error.hpp"
#include "willmore/harmonic.hpp"

using namespace wm;

namespace {

JetVec applyMatrix(const Eigen::MatrixXd& l, const JetVec& v) {
  JetVec out;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    Jet acc = Jet::constant(orderOf(v), 0.0);
    for (Eigen::Index j = 0; j < l.cols(); ++j) acc += v[static_cast<size_t>(j)] * cplx(l(i, j));
    out.push_back(acc);
  }
  return out;
}

// x_r(z) = r x(z / r): the unit cylinder scaled to radius r.
Surface scaledCylinder(double r) {
  Surface base = cylinderSurface();
  Surface out = base;
  out.jets = [inner = base.jets, r](cplx z, int order) {
    JetVec x = inner(z / r, order);
    for (Jet& c : x) {
      for (int a = 0; a <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) c.coeffRef(a, b) *= std::pow(r, 1 - a - b);
      }
    }
    return x;
  };
  return out;
}

// Gram matrix of real vectors in the Lorentz pairing.
Eigen::MatrixXd gram(const std::vector<CplxVec>& vs) {
  const Eigen::Index m = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const Eigen::VectorXd u = vs[static_cast<size_t>(a)].real(), v = vs[static_cast<size_t>(b)].real();
      g(a, b) = -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
    }
  }
  return g;
}

double spanDistance(const std::vector<CplxVec>& a, const std::vector<CplxVec>& b) {
  double worst = 0.0;
  for (const CplxVec& v : a) worst = std::max(worst, containmentResidual(v, b));
  for (const CplxVec& v : b) worst = std::max(worst, containmentResidual(v, a));
  return worst;
}

std::vector<CplxVec> cgmBasis(const MoebiusFrame& f) { return values(frameSections(f)); }

const Surface& k1Surface() {
  static const Surface s = surfaceFromData(generate(1, 4));
  return s;
}

}  // namespace

TEST_CASE("conformal Gauss map: Gram, constancy on the plane, equivariance") {
  const Surface& s = k1Surface();
  for (const cplx z : interiorSamples(s, 5, 3)) {
    const SubspaceBasis v = conformalGauss(frameAt(s, z, 6));
    // {Y, Re Y_z, Im Y_z, N} has Gram [[0,0,0,-1],[0,1/4,0,0],[0,0,1/4,0],[-1,0,0,0]].
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
    expected(0, 3) = expected(3, 0) = -1.0;
    expected(1, 1) = expected(2, 2) = 0.25;
    CHECK((gram(v.vectors) - expected).norm() < 1e-10);
    const Signature sig = lorentzSignature({v.vectors[0].real(), v.vectors[1].real(), v.vectors[2].real(),
                                            v.vectors[3].real()});
    CHECK(sig.negative == 1);
    CHECK(sig.positive == 3);
  }

  const Surface plane = planeSurface(3);
  const SubspaceBasis p0 = conformalGauss(ambientFrame(plane, cplx(0.1, 0.2)));
  for (const cplx z : {cplx(1.0, -0.5), cplx(-2.0, 0.7), cplx(0.3, 3.0)}) {
    CHECK(spanDistance(conformalGauss(ambientFrame(plane, z)).vectors, p0.vectors) < 1e-12);
  }

  const cplx z(0.7, 0.3);
  const JetVec y = lightConeLift(normalizedAt(s, z).jets(z, 6));
  for (unsigned seed : {4u, 5u}) {
    const Eigen::MatrixXd l = oracle::randomLorentz(static_cast<int>(y.size()), seed, 0.5);
    const SubspaceBasis a = conformalGauss(moebiusFrame(canonicalLift(y, z)));
    const SubspaceBasis b = conformalGauss(moebiusFrame(canonicalLift(applyMatrix(l, y), z)));
    std::vector<CplxVec> moved;
    for (const CplxVec& v : a.vectors) moved.push_back((l * v.real()).cast<cplx>());
    CHECK(spanDistance(moved, b.vectors) < 1e-10);
  }
}

TEST_CASE("Pi bundles and their residuals on the 1-isotropic example") {
  const Surface& s = k1Surface();
  for (const cplx z : interiorSamples(s, 8, 5)) {
    const MoebiusFrame f = frameAt(s, z, 10);
    const std::vector<SectionJets> pis = piBundles(f, 1);
    const BundleResidualReport r = bundleResiduals(pis[0], f);
    CHECK(r.rank >= 1);
    CHECK(r.rank <= 2);
    CHECK(r.isotropy < 1e-9);
    CHECK(r.holomorphicity < 1e-8);
    CHECK(r.secondOrder < 1e-8);
    // D_z of Pi_0 stays inside Pi_1.
    CHECK(dzContainment(pis[0], pis[1], f) < 1e-8);
  }

  // The plane has kappa = 0.
  const MoebiusFrame plane = frameAt(planeSurface(4), cplx(0.2, 0.1), 8);
  CHECK(independentSections(piBundles(plane, 0)[0]).empty());
}

TEST_CASE("bundle residual sanity cases") {
  const MoebiusFrame f = frameAt(k1Surface(), cplx(0.8, 0.3), 8);
  const int order = orderOf(f.N);
  // A real spacelike normal direction is as far from isotropic as possible.
  const SectionJets spacelike = {constantJetVec(f.normalBasis[0].cast<cplx>(), order)};
  CHECK(bundleResiduals(spacelike, f).isotropy == doctest::Approx(1.0).epsilon(1e-9));

  // The whole complexified normal bundle is conjugate-closed and contains everything normal.
  SectionJets normals;
  for (const MinkVec& n : f.normalBasis) normals.push_back(constantJetVec(n.cast<cplx>(), order));
  const BundleResidualReport r = bundleResiduals(normals, f);
  CHECK(r.holomorphicity < 1e-12);
  CHECK(r.secondOrder < 1e-12);
}

TEST_CASE("partial transforms") {
  // A constant bundle has no derivative.
  const SectionJets constant = {constantJetVec(unitVec(5, 0), 4), constantJetVec(unitVec(5, 2), 4)};
  CHECK(partialTransform(constant, Direction::Z).rank.rank == 0);

  const Surface& s = k1Surface();
  for (const cplx z : interiorSamples(s, 6, 9)) {
    const IsotropicBundles b = isotropicBundles(frameAt(s, z, 10), 1);
    const int rank = b.dfk.rank.rank;
    CHECK((rank == 1 || rank == 2));
    CHECK_FALSE(b.dfk.rank.ambiguous);
    // d f0 = span{kappa}: the frame derivatives leave V only through Y_zz.
    const PartialTransform d0 = partialTransform(b.f0, Direction::Z);
    CHECK(d0.rank.rank == 1);
    CHECK(containmentResidual(values(frameAt(s, z, 10).kappa), d0.basis) < 1e-10);
  }
}

TEST_CASE("finite-difference transform agrees with jets and ranks are semicontinuous") {
  // Away from the ends, where fourth-order stencils at h = 1/64 resolve the frame.
  GridSpec g;
  g.center = cplx(2.0, 0.3);
  g.nodes = 9;
  g.interior = 5;
  g.side = 8.0 / 64.0;
  const SubbundleSamples b = sampleBundle(k1Surface(), g, "f0", cgmBasis);
  const RankProfile fd = partialTransformGrid(b, Direction::Z);
  CHECK(fd.path == "finite-difference");
  const Surface normalized = normalizedAt(k1Surface(), g.center);
  int idx = 0;
  for (int i = g.first(); i <= g.last(); ++i) {
    for (int j = g.first(); j <= g.last(); ++j, ++idx) {
      const PartialTransform jet = partialTransform(frameSections(ambientFrame(normalized, g.node(i, j), 6)),
                                                    Direction::Z);
      CHECK(jet.path == "jet");
      CHECK_FALSE(fd.masked[static_cast<size_t>(idx)]);
      CHECK(fd.ranks[static_cast<size_t>(idx)] == jet.rank.rank);
      CHECK(spanDistance(fd.bases[static_cast<size_t>(idx)], jet.basis) < 1e-6);
    }
  }
  // Masked points may only have lower rank than retained neighbours.
  const int n = g.interior;
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      const size_t p = static_cast<size_t>(a * n + c);
      if (!fd.masked[p]) continue;
      for (int da = -1; da <= 1; ++da) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int aa = a + da, cc = c + dc;
          if (aa < 0 || cc < 0 || aa >= n || cc >= n) continue;
          const size_t q = static_cast<size_t>(aa * n + cc);
          if (!fd.masked[q]) CHECK(fd.ranks[p] <= fd.ranks[q]);
        }
      }
    }
  }
}

TEST_CASE("Frenet-bundle structure of the 1-isotropic example") {
  const Surface& s = k1Surface();
  for (const cplx z : interiorSamples(s, 6, 11)) {
    const MoebiusFrame f = frameAt(s, z, 10);
    const IsotropicBundles b = isotropicBundles(f, 1);
    const SectionJets h = complementSections(b.fk);
    CHECK(h.size() + b.fk.size() == values(f.Y).size());
    const FrenetReport r = frenetCheck(b.f0, b.pi, h);
    CHECK(r.a < 1e-6);
    CHECK(r.b < 1e-6);
    CHECK(r.c < 1e-6);
    CHECK(r.dh.rank == 1);

    // Z = 0: h is the whole complement of f and (a) holds trivially.
    const FrenetReport trivial = frenetCheck(b.f0, {}, complementSections(b.f0));
    CHECK(trivial.a < 1e-10);

    // Moving the complement of f0 by a Lorentz transformation loses d f0, so (a) fails.
    const Eigen::MatrixXd l = oracle::randomLorentz(static_cast<int>(h.front().size()), 21, 0.8);
    SectionJets rotated;
    for (const JetVec& v : complementSections(b.f0)) rotated.push_back(applyMatrix(l, v));
    CHECK(frenetCheck(b.f0, {}, rotated).a > 1e-2);
  }
  const MoebiusFrame f = frameAt(s, cplx(0.8, 0.3), 8);
  const IsotropicBundles b = isotropicBundles(f, 1);
  CHECK_THROWS_AS(frenetCheck(b.f0, b.pi, {}), Error);
}

TEST_CASE("D-transform rank arithmetic and inclusion") {
  const MoebiusFrame f = frameAt(k1Surface(), cplx(0.8, 0.3), 8);
  const SectionJets f0 = frameSections(f);
  CHECK(values(dTransform(f0, {})).size() == 4);
  const SectionJets z = independentSections(piBundles(f, 0)[0]);
  const SectionJets d = dTransform(f0, z);
  // rank f + 2 rank Z; Pi_0 has complex rank 1 on a minimal surface.
  CHECK(d.size() == 4 + 2 * z.size());
  CHECK(rankOf(values(d)) == 6);
  for (const CplxVec& v : values(f0)) CHECK(containmentResidual(v, values(d)) == doctest::Approx(0.0).epsilon(1e-14));

  // A real Z is not isotropic: Z and conj Z coincide.
  const SectionJets real = {constantJetVec(f.normalBasis[0].cast<cplx>(), orderOf(f.N))};
  try {
    dTransform(f0, real);
    FAIL("expected RankDrop");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDrop);
  }
}

TEST_CASE("harmonicity of projector fields") {
  GridSpec g;
  g.center = cplx(2.0, 0.3);
  g.nodes = 9;
  g.interior = 5;
  g.side = 8.0 / 64.0;

  // Constant projector.
  ProjectorField constant;
  constant.grid = g;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(4, 4);
  p(1, 1) = p(2, 2) = 1.0;
  constant.P.assign(static_cast<size_t>(g.nodes * g.nodes), p);
  CHECK(harmonicityResidual(constant).max == 0.0);

  const ProjectorField bryant = projectorField(sampleBundle(surfaceFromData(generate(0, 4)), g, "f0", cgmBasis));
  CHECK(projectorDefect(bryant) < 1e-10);
  CHECK(harmonicityResidual(bryant).max < 1e-3);

  // The conformal Gauss map is harmonic exactly when the surface is Willmore.
  const Surface cyl = scaledCylinder(0.5);
  const MoebiusFrame cf = frameAt(cyl, g.center, 6);
  CHECK(willmoreResidual(cf) > 1e-2 * values(cf.kappa).norm());
  const ProjectorField cylinder = projectorField(sampleBundle(cyl, g, "f0", cgmBasis));
  CHECK(projectorDefect(cylinder) < 1e-10);
  CHECK(harmonicityResidual(cylinder).max > 1e-1);

  // f0 + Re(Pi_0) of the 1-isotropic example.
  auto dBasis = [](const MoebiusFrame& f) {
    return values(dTransform(frameSections(f), independentSections(piBundles(f, 0)[0])));
  };
  const ProjectorField d = projectorField(sampleBundle(k1Surface(), g, "D f0", dBasis, 8));
  CHECK(projectorDefect(d) < 1e-10);
  CHECK(harmonicityResidual(d).max < 1e-4);

  GridSpec tight = g;
  tight.interior = 7;
  CHECK_THROWS_AS(harmonicityResidual(ProjectorField{tight, constant.P}), Error);
}

TEST_CASE("isotropic line extraction") {
  const int dim = 6;
  const CplxVec a = unitVec(dim, 1), b = unitVec(dim, 2), c = unitVec(dim, 3);
  const cplx i(0.0, 1.0);
  const CplxVec iso = a + i * b;

  // Already split: returned unchanged.
  const ExtractedLine same = isotropicLineExtract(iso, c);
  CHECK((same.line - iso).norm() < 1e-14);
  CHECK((same.complement - c).norm() < 1e-14);

  // A mixed basis of the same span gives back the isotropic line.
  for (const CplxVec& x2 : {CplxVec(c + 0.7 * iso), CplxVec(2.0 * c - i * iso)}) {
    const ExtractedLine e = isotropicLineExtract(iso + 0.3 * c, x2);
    CHECK(std::abs(mdot(e.line, e.line)) < 1e-12 * e.line.squaredNorm());
    CHECK(containmentResidual(e.line, {iso}) < 1e-12);
    CHECK(std::abs(mdot(e.complement, e.line)) < 1e-12);
    CHECK(std::abs(mdot(e.complement, CplxVec(e.line.conjugate()))) < 1e-12);
  }

  // X1 = a + i b, X2 = a spans two isotropic lines: <X1,X2>^2 = 1 != 0 = <X1,X1><X2,X2>.
  try {
    isotropicLineExtract(iso, a);
    FAIL("expected DegenerateInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateInput);
  }
  // Totally isotropic span.
  const CplxVec iso2 = c + i * unitVec(dim, 4);
  try {
    isotropicLineExtract(iso, iso2);
    FAIL("expected TotallyIsotropicInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TotallyIsotropicInput);
  }
}

TEST_CASE("phi sequence") {
  // A minimal surface is S-Willmore, so phi_1 collapses.
  const Surface& s = k1Surface();
  for (const cplx z : interiorSamples(s, 6, 13)) {
    const MoebiusFrame f = frameAt(s, z, 10);
    const PhiSequence p = phiSequence(f, 1, 3);
    CHECK(p.collapsedAt == 1);
    CHECK(p.maxPairing < 1e-8);
    // phi_1 vanishes and mu is then the dual mu.
    const DualMu dm = dualMu(f);
    CHECK(std::abs(p.muBar.front() - dm.muBar) < 1e-8 * std::max(1.0, std::abs(dm.muBar)));
    // k = 0 on this surface: phi = kappa is isotropic, which is the singular set.
    CHECK_THROWS_AS(phiSequence(f, 0, 2), Error);
  }
  // k = 0: phi is kappa itself.
  const Surface bryant = surfaceFromData(generate(0, 4));
  const MoebiusFrame f = frameAt(bryant, cplx(0.6, 0.4), 8);
  const PhiSequence p = phiSequence(f, 0, 2);
  CHECK((p.phi.front() - values(f.kappa)).norm() < 1e-12 * values(f.kappa).norm());
}

TEST_CASE("Q chain of the 1-isotropic example") {
  const Surface& s = k1Surface();
  for (const cplx z : interiorSamples(s, 8, 17)) {
    const MoebiusFrame f = frameAt(s, z, 12);
    const QSequence q = qSequence(f, 1, 6);
    CHECK(q.Q.size() >= 2);
    for (const CplxVec& v : q.Q) CHECK(std::abs(mdot(v, v)) < 1e-8 * v.squaredNorm());
    CHECK(q.maxIsotropy < 1e-8);
    CHECK(q.maxStructure < 1e-5);
    // The chain ends on a real light-like direction: the dual point of the
    // minimal surface, which is where its adjoint with the dual mu collapses.
    REQUIRE(q.terminalStep > 0);
    CHECK(q.terminalLightlike);
    const CplxVec yhat = adjointLift(std::conj(dualMu(f).muBar), f);
    CHECK(containmentResidual(yhat, {q.terminalDirection.cast<cplx>()}) < 1e-8);
  }
  // A section with no z-derivative off h0 collapses at the first step.
  const MoebiusFrame f = frameAt(s, cplx(0.8, 0.3), 10);
  const IsotropicBundles b = isotropicBundles(f, 1);
  const SectionJets h0 = complementSections(b.fk);
  const JetVec flat = constantJetVec(values(h0.front()), orderOf(h0.front()));
  try {
    qSequence(h0, flat, 4);
    FAIL("expected RankCollapse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankCollapse);
  }
}
