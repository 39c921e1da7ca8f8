#include "willmore/adjoint.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "willmore/error.hpp"

namespace wm {

namespace {

double wedgeNorm(const CplxVec& a, const CplxVec& b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j) acc += std::norm(a[i] * b[j] - a[j] * b[i]);
  return std::sqrt(acc);
}

std::vector<cplx> conjugated(std::vector<cplx> c) {
  for (cplx& v : c) v = std::conj(v);
  return c;
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Floating-point copy of a vector rational function for fast evaluation.
struct FastVRat {
  std::vector<std::vector<cplx>> num;
  std::vector<cplx> den;
  explicit FastVRat(const VRatFn& f, bool conj = false) {
    for (const CPoly& p : f.num) num.push_back(conj ? conjugated(p.toComplex()) : p.toComplex());
    den = conj ? conjugated(f.den.toComplex()) : f.den.toComplex();
  }
  CplxVec operator()(cplx z) const {
    CplxVec v(static_cast<Eigen::Index>(num.size()));
    const cplx d = horner(den, z);
    for (size_t i = 0; i < num.size(); ++i) v[static_cast<Eigen::Index>(i)] = horner(num[i], z) / d;
    return v;
  }
};

// Fourth-order central difference weights for d/dx.
constexpr double kD1[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};

template <class Get>
auto partials(const Get& at, const GridSpec& g, int i, int j) {
  using T = decltype(at(i, j));
  T fx = at(i, j) * 0.0, fy = at(i, j) * 0.0;
  for (int k = -2; k <= 2; ++k) {
    if (k == 0) continue;
    fx = fx + at(i + k, j) * kD1[k + 2];
    fy = fy + at(i, j + k) * kD1[k + 2];
  }
  return std::pair<T, T>{fx / g.h(), fy / g.h()};
}

bool stencilMasked(const std::vector<char>& mask, const GridSpec& g, int i, int j, int half) {
  if (mask.empty()) return false;
  for (int a = -half; a <= half; ++a)
    for (int b = -half; b <= half; ++b)
      if (mask[static_cast<size_t>((i + a) * g.nodes + (j + b))]) return true;
  return false;
}

}  // namespace

// ------------------------------------------------------------ pointwise

SWillmoreResult sWillmoreTest(const std::vector<std::pair<CplxVec, CplxVec>>& samples, double tol) {
  if (samples.size() < 20) throw Error(ErrorCode::InvalidArgument, "S-Willmore test needs at least 20 samples");
  SWillmoreResult r;
  r.samples = static_cast<int>(samples.size());
  for (const auto& [d, k] : samples) {
    const double chi = wedgeNorm(d, k);
    r.maxChi0 = std::max(r.maxChi0, chi);
    const double scale = k.norm() * std::max(d.norm(), k.norm());
    if (scale > 0.0) r.maxRelative = std::max(r.maxRelative, chi / scale);
  }
  r.sWillmore = r.maxRelative < tol;
  return r;
}

SWillmoreResult sWillmoreTest(const std::vector<MoebiusFrame>& frames, double tol) {
  std::vector<std::pair<CplxVec, CplxVec>> samples;
  for (const auto& f : frames) samples.emplace_back(values(normalD(f.kappa, f, Direction::Zbar)), values(f.kappa));
  return sWillmoreTest(samples, tol);
}

Jet dualMuBarJet(const MoebiusFrame& f, double umbilicTol) {
  const JetVec kb = conj(f.kappa);
  const Jet kk = mdot(f.kappa, kb);
  if (!(kk.value().real() > umbilicTol * umbilicTol)) {
    throw Error(ErrorCode::UmbilicPoint, "kappa vanishes at the base point");
  }
  const JetVec d = normalD(f.kappa, f, Direction::Zbar);
  return (mdot(d, truncated(kb, orderOf(d))) / kk.truncated(orderOf(d))) * cplx(-2.0);
}

DualMu dualMu(const MoebiusFrame& f, double umbilicTol) {
  const CplxVec k = values(f.kappa);
  const cplx kk = mdot(k, CplxVec(k.conjugate()));
  if (!(kk.real() > umbilicTol * umbilicTol)) {
    throw Error(ErrorCode::UmbilicPoint, "kappa vanishes at the base point");
  }
  const CplxVec d = values(normalD(f.kappa, f, Direction::Zbar));
  DualMu out;
  out.muBar = -2.0 * mdot(d, CplxVec(k.conjugate())) / kk;
  out.residual = (d + 0.5 * out.muBar * k).norm();
  return out;
}

cplx dualRho(const MoebiusFrame& f) {
  const Jet mb = dualMuBarJet(f);
  const CplxVec k = values(f.kappa);
  return mb.dz().value() - 2.0 * mdot(k, CplxVec(k.conjugate()));
}

const char* rootKindName(RootKind k) {
  switch (k) {
    case RootKind::Two: return "two";
    case RootKind::One: return "one";
    case RootKind::All: return "all";
    case RootKind::None: return "none";
    case RootKind::NoneNeeded: return "none-needed";
  }
  return "unknown";
}

ConformalRoots conformalRoots(cplx kk, cplx kd, cplx dd, double tol, double kappaScale) {
  ConformalRoots out;
  out.theta0 = kd * kd - kk * dd;
  const double ref = kappaScale * kappaScale;
  if (ref == 0.0) return out;
  const bool aZero = std::abs(kk) <= tol * ref;
  const bool bZero = std::abs(kd) <= tol * ref;
  if (aZero) {
    if (bZero) {
      // The equation degenerates to dd = 0: every muBar solves it, or none does.
      out.kind = std::abs(dd) <= tol * ref ? RootKind::All : RootKind::None;
      return out;
    }
    out.kind = RootKind::One;
    out.roots = {-dd / kd};
    return out;
  }
  if (std::abs(out.theta0) > tol * ref * ref) {
    const cplx r = std::sqrt(out.theta0);
    out.kind = RootKind::Two;
    out.roots = {2.0 * (-kd + r) / kk, 2.0 * (-kd - r) / kk};
  } else {
    out.kind = RootKind::One;
    out.roots = {-2.0 * kd / kk};
  }
  return out;
}

ConformalRoots conformalRoots(const MoebiusFrame& f, double tol) {
  const CplxVec k = values(f.kappa);
  const CplxVec d = values(normalD(f.kappa, f, Direction::Zbar));
  const double scale = k.norm() + d.norm();
  if (k.norm() <= 1e-12) {
    ConformalRoots out;
    out.kind = RootKind::NoneNeeded;
    return out;
  }
  return conformalRoots(mdot(k, k), mdot(k, d), mdot(d, d), tol, scale);
}

CplxVec adjointLift(cplx mu, const MoebiusFrame& f) {
  return 0.5 * std::norm(mu) * values(f.Y) + std::conj(mu) * values(f.Yz) + mu * values(f.Yzb) + values(f.N);
}

// ------------------------------------------------------------ grids

cplx GridSpec::node(int i, int j) const {
  const double hh = h();
  return center + cplx(-0.5 * side + i * hh, -0.5 * side + j * hh);
}

void GridSpec::require(int halfWidth) const {
  if (nodes < 2 * halfWidth + 1 || interior < 1 || interior > nodes || first() < halfWidth ||
      nodes - 1 - last() < halfWidth || !(side > 0.0)) {
    throw Error(ErrorCode::GridTooCoarse, "grid leaves no room for the difference stencil");
  }
}

cplx dzField(const Field& f, const GridSpec& g, int i, int j) {
  const auto [fx, fy] = partials([&](int a, int b) { return f(a, b); }, g, i, j);
  return 0.5 * (fx - cplx(0, 1) * fy);
}

cplx dzbField(const Field& f, const GridSpec& g, int i, int j) {
  const auto [fx, fy] = partials([&](int a, int b) { return f(a, b); }, g, i, j);
  return 0.5 * (fx + cplx(0, 1) * fy);
}

CplxVec dzField(const VecField& f, const GridSpec& g, int i, int j) {
  const auto [fx, fy] =
      partials([&](int a, int b) -> CplxVec { return f[static_cast<size_t>(a * g.nodes + b)]; }, g, i, j);
  return 0.5 * (fx - cplx(0, 1) * fy);
}

CplxVec dzbField(const VecField& f, const GridSpec& g, int i, int j) {
  const auto [fx, fy] =
      partials([&](int a, int b) -> CplxVec { return f[static_cast<size_t>(a * g.nodes + b)]; }, g, i, j);
  return 0.5 * (fx + cplx(0, 1) * fy);
}

ScalarSummary coTouchResidual(const Field& mu, const Field& s, const GridSpec& g, const std::vector<char>& mask) {
  g.require(2);
  ScalarSummary out;
  out.values = Field::Zero(g.interior, g.interior);
  for (int a = 0; a < g.interior; ++a)
    for (int b = 0; b < g.interior; ++b) {
      const int i = g.first() + a, j = g.first() + b;
      if (stencilMasked(mask, g, i, j, 2)) {
        ++out.masked;
        continue;
      }
      const cplx th = dzField(mu, g, i, j) - 0.5 * mu(i, j) * mu(i, j) - s(i, j);
      out.values(a, b) = th;
      out.max = std::max(out.max, std::abs(th));
    }
  return out;
}

PolarizedMu polarizedDualMu(const VRatFn& primitive) {
  const VRatFn d1 = ratDerivative(primitive).reduce();
  const VRatFn d2 = ratDerivative(d1).reduce();
  const FastVRat f1(d1), f2(d2), f1bar(d1, true);
  return [f1, f2, f1bar](cplx z, cplx zeta) {
    const CplxVec q = f1bar(zeta);
    return f2(z).cwiseProduct(q).sum() / f1(z).cwiseProduct(q).sum();
  };
}

cplx riccatiSolve(const PolarizedMu& mu0, cplx base, cplx wBase, cplx z, cplx zeta, int substeps) {
  // A fixed step count keeps the result a smooth function of the end point,
  // which the difference quotients downstream rely on.
  const cplx delta = (z - base) / static_cast<double>(substeps);
  auto rhs = [&](cplx at, cplx wv) { return delta * (-mu0(at, zeta) * wv - 0.5); };
  cplx w = wBase, at = base;
  for (int k = 0; k < substeps; ++k) {
    const cplx k1 = rhs(at, w);
    const cplx k2 = rhs(at + 0.5 * delta, w + 0.5 * k1);
    const cplx k3 = rhs(at + 0.5 * delta, w + 0.5 * k2);
    const cplx k4 = rhs(at + delta, w + k3);
    w += (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    at += delta;
  }
  return w;
}

RiccatiField riccatiExtend(const PolarizedMu& mu0, const GridSpec& g, const RiccatiInit& init) {
  if (init.substeps < 1) throw Error(ErrorCode::InvalidArgument, "RK4 needs at least one substep");
  const cplx base = init.base.value_or(g.node(g.nodes / 2, g.nodes / 2));
  RiccatiField out;
  out.mu = Field::Zero(g.nodes, g.nodes);
  out.w = Field::Zero(g.nodes, g.nodes);
  out.blowUp.assign(static_cast<size_t>(g.nodes * g.nodes), 0);
  for (int i = 0; i < g.nodes; ++i)
    for (int j = 0; j < g.nodes; ++j) {
      const cplx p = g.node(i, j);
      const cplx zeta = std::conj(p);
      const cplx m0 = mu0(p, zeta);
      if (init.infinite) {
        out.mu(i, j) = m0;
        out.w(i, j) = std::numeric_limits<double>::infinity();
        continue;
      }
      const cplx w = riccatiSolve(mu0, base, init.g ? init.g(zeta) : cplx(1.0), p, zeta, init.substeps);
      out.w(i, j) = w;
      if (std::abs(w) < init.blowUpTol) {
        out.blowUp[static_cast<size_t>(i * g.nodes + j)] = 1;
        ++out.blowUpCount;
        out.mu(i, j) = m0;
      } else {
        out.mu(i, j) = m0 + 1.0 / w;
      }
    }
  return out;
}

FrameField frameField(const Surface& surf, const GridSpec& g, int order) {
  const Surface s = normalizedAt(surf, g.center);
  FrameField ff;
  ff.grid = g;
  ff.s = Field::Zero(g.nodes, g.nodes);
  ff.kk = Field::Zero(g.nodes, g.nodes);
  ff.frames.reserve(static_cast<size_t>(g.nodes * g.nodes));
  for (int i = 0; i < g.nodes; ++i)
    for (int j = 0; j < g.nodes; ++j) {
      ff.frames.push_back(ambientFrame(s, g.node(i, j), order));
      const MoebiusFrame& f = ff.frames.back();
      ff.s(i, j) = f.s.value();
      const CplxVec k = values(f.kappa);
      ff.kk(i, j) = mdot(k, CplxVec(k.conjugate()));
      ff.dbarKappa.push_back(values(normalD(f.kappa, f, Direction::Zbar)));
    }
  return ff;
}

VecField adjointLiftField(const Field& mu, const FrameField& ff) {
  const GridSpec& g = ff.grid;
  VecField out;
  out.reserve(ff.frames.size());
  for (int i = 0; i < g.nodes; ++i)
    for (int j = 0; j < g.nodes; ++j) out.push_back(adjointLift(mu(i, j), ff.frames[static_cast<size_t>(i * g.nodes + j)]));
  return out;
}

RhoMetric rhoAndMetric(const Field& mu, const FrameField& ff, const VecField& yhat, double branchTol,
                       const std::vector<char>& mask) {
  const GridSpec& g = ff.grid;
  g.require(2);
  RhoMetric r;
  r.rho = Field::Zero(g.interior, g.interior);
  r.metric = Field::Zero(g.interior, g.interior);
  r.branch.assign(static_cast<size_t>(g.interior * g.interior), 0);
  for (int a = 0; a < g.interior; ++a)
    for (int b = 0; b < g.interior; ++b) {
      const int i = g.first() + a, j = g.first() + b;
      if (stencilMasked(mask, g, i, j, 2)) continue;
      const size_t n = static_cast<size_t>(i * g.nodes + j);
      const cplx rho = std::conj(dzbField(mu, g, i, j)) - 2.0 * ff.kk(i, j);
      const CplxVec yz = dzField(yhat, g, i, j), yzb = dzbField(yhat, g, i, j);
      const cplx metric = mdot(yz, yzb);
      r.rho(a, b) = rho;
      r.metric(a, b) = metric;
      r.maxIdentity = std::max(r.maxIdentity, std::abs(metric - 0.5 * std::norm(rho)));
      const CplxVec eta = ff.dbarKappa[n] + 0.5 * std::conj(mu(i, j)) * values(ff.frames[n].kappa);
      r.maxEtaPairing = std::max(r.maxEtaPairing, std::abs(mdot(eta, eta)));
      r.maxEtaIdentity = std::max(
          r.maxEtaIdentity, std::abs(metric - 0.5 * std::norm(rho) - 4.0 * mdot(eta, CplxVec(eta.conjugate()))));
      r.maxConformal = std::max(r.maxConformal, std::abs(mdot(yz, yz)));
      r.maxLightlike = std::max(r.maxLightlike, std::abs(mdot(yhat[n], yhat[n])));
      r.maxNormalization = std::max(r.maxNormalization, std::abs(mdot(yhat[n], values(ff.frames[n].Y)) + 1.0));
      if (std::abs(rho) < branchTol) {
        r.branch[static_cast<size_t>(a * g.interior + b)] = 1;
        ++r.branchCount;
      }
    }
  return r;
}

AdjointWillmoreReport adjointWillmoreResidual(const VecField& yhat, const GridSpec& g, int stride, int radius,
                                              int fitDegree, double metricTol, const std::vector<char>& mask) {
  g.require(radius);
  if (stride < 1 || fitDegree < 6) throw Error(ErrorCode::InvalidArgument, "stride >= 1 and fitDegree >= 6 needed");
  const int width = 2 * radius + 1;
  const int nMono = static_cast<int>(Jet::sizeFor(fitDegree));
  if (width * width < nMono) throw Error(ErrorCode::GridTooCoarse, "stencil smaller than the fitted basis");

  // Design matrix in units of h; shared by every base point.
  Eigen::MatrixXcd design(width * width, nMono);
  for (int di = -radius; di <= radius; ++di)
    for (int dj = -radius; dj <= radius; ++dj) {
      const int row = (di + radius) * width + (dj + radius);
      const cplx u(di, dj);
      for (int deg = 0; deg <= fitDegree; ++deg)
        for (int b = 0; b <= deg; ++b) {
          const int a = deg - b;
          design(row, static_cast<int>(Jet::index(a, b))) = std::pow(u, a) * std::pow(std::conj(u), b);
        }
    }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(design);
  const int dim = static_cast<int>(yhat.front().size());
  const int order = 6;

  AdjointWillmoreReport rep;
  std::vector<double> residuals, kappas;
  for (int a = 0; a < g.interior; a += stride)
    for (int b = 0; b < g.interior; b += stride) {
      const int i = g.first() + a, j = g.first() + b;
      if (stencilMasked(mask, g, i, j, radius)) {
        ++rep.skipped;
        continue;
      }
      Eigen::MatrixXcd rhs(width * width, dim);
      for (int di = -radius; di <= radius; ++di)
        for (int dj = -radius; dj <= radius; ++dj)
          rhs.row((di + radius) * width + (dj + radius)) =
              yhat[static_cast<size_t>((i + di) * g.nodes + (j + dj))].transpose();
      const Eigen::MatrixXcd coef = qr.solve(rhs);
      JetVec jets(static_cast<size_t>(dim), Jet(order));
      for (int deg = 0; deg <= order; ++deg)
        for (int bb = 0; bb <= deg; ++bb) {
          const int aa = deg - bb;
          const double scale = std::pow(g.h(), -deg);
          for (int c = 0; c < dim; ++c)
            jets[static_cast<size_t>(c)].coeffRef(aa, bb) = coef(static_cast<int>(Jet::index(aa, bb)), c) * scale;
        }
      const double metric = mdot(values(dz(jets)), values(dzb(jets))).real();
      if (!(metric > metricTol)) {
        ++rep.skipped;
        continue;
      }
      try {
        const MoebiusFrame f = moebiusFrame(canonicalLift(jets, g.node(i, j)));
        residuals.push_back(willmoreResidual(f, 1e-4));
        kappas.push_back(values(f.kappa).squaredNorm());
      } catch (const Error& e) {
        // Near a branch point of the adjoint the fitted jets are too poor
        // for the frame's normality guard; such points count as skipped.
        if (e.code() != ErrorCode::BranchPoint && e.code() != ErrorCode::DegenerateV &&
            e.code() != ErrorCode::NotNormal)
          throw;
        ++rep.skipped;
      }
    }
  if (residuals.empty()) throw Error(ErrorCode::NotImmersed, "adjoint surface is not immersed on the grid");
  double acc = 0.0;
  for (double k : kappas) acc += k;
  rep.kappaRms = std::sqrt(acc / static_cast<double>(kappas.size()));
  rep.evaluated = static_cast<int>(residuals.size());
  const double worst = *std::max_element(residuals.begin(), residuals.end());
  rep.maxResidual = rep.kappaRms > 0.0 ? worst / rep.kappaRms : worst;
  return rep;
}

}  // namespace wm
