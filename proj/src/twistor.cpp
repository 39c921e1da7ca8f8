#include "willmore/twistor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "willmore/error.hpp"
#include "willmore/harmonic.hpp"

namespace wm {

namespace {

double distanceFrom(const CplxVec& v, const std::vector<CplxVec>& basis, double scale) {
  const double denom = std::max(v.norm(), scale);
  if (denom == 0.0) return 0.0;
  return containmentResidual(v, basis) * v.norm() / denom;
}

// Rescale so that <E, conj E> = 2.
JetVec normalizeHermitian(const JetVec& e) {
  const Jet n2 = edot(e, conj(e));
  return cplx(std::sqrt(2.0)) * (pow(n2, -0.5) * e);
}

void assembleFrame(TwistorFrame& t) {
  t.rankI2 = static_cast<int>(t.E.size()) - 1;
  t.complete = static_cast<int>(t.E.size()) == t.m;
  t.F.resize(0, 0);
  t.det = 0;
  if (!t.complete) return;
  const Eigen::Index dim = 2 * t.m + 1;
  t.F = Eigen::MatrixXd::Zero(dim, dim);
  t.F.col(0) = values(t.x).real();
  for (int j = 0; j < t.m; ++j) {
    const CplxVec e = values(t.E[static_cast<size_t>(j)]);
    t.F.col(1 + j) = e.real();
    t.F.col(1 + t.m + j) = -e.imag();
  }
  t.det = t.F.determinant() > 0.0 ? 1 : -1;
}

std::vector<CplxVec> iValues(const TwistorFrame& f) {
  std::vector<CplxVec> out;
  for (const JetVec& e : f.E) out.push_back(values(e));
  return out;
}

}  // namespace

Eigen::MatrixXd complexStructure(int m) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  j.bottomLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  return j;
}

TwistorFrame adaptedFrame(const Surface& s, cplx z0, int order, double isoTol) {
  const MoebiusFrame f = ambientFrame(s, z0, order);
  const int n = static_cast<int>(f.Y.size()) - 2;
  TwistorFrame t;
  t.z0 = z0;
  const Jet y0inv = inverse(f.Y[0]);
  for (int c = 0; c <= n; ++c) t.x.push_back(f.Y[static_cast<size_t>(c + 1)] * y0inv);

  // Pi_0 is contained in every later Pi_j, so equal ranks mean equal spans.
  SectionJets stable;
  for (int j = 0; j < n; ++j) {
    const std::vector<SectionJets> pis = piBundles(f, j + 1);
    const SectionJets a = independentSections(pis[static_cast<size_t>(j)]);
    const SectionJets b = independentSections(pis[static_cast<size_t>(j + 1)]);
    if (a.size() == b.size()) {
      t.piStable = j;
      stable = a;
      break;
    }
  }
  if (t.piStable < 0) throw Error(ErrorCode::NotTotallyIsotropic, "Pi-chain does not stabilize");
  const std::vector<CplxVec> sv = values(stable);
  for (size_t a = 0; a < sv.size(); ++a) {
    for (size_t b = a; b < sv.size(); ++b) {
      if (relativePairing(sv[a], sv[b]) > isoTol) {
        throw Error(ErrorCode::NotTotallyIsotropic, "stable Pi bundle is not isotropic");
      }
    }
  }
  if (n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "twistor frames need an even-dimensional sphere");
  t.m = n / 2;
  if (static_cast<int>(stable.size()) > t.m - 1) {
    throw Error(ErrorCode::NotTotallyIsotropic, "stable Pi bundle is too large to be isotropic");
  }

  t.E.push_back(normalizeHermitian(dz(t.x)));
  for (const JetVec& ehat : stable) {
    // Remove the Y component so the time coordinate vanishes; the spatial part
    // is then orthogonal to x, x_z and x_zbar.
    const Jet c = ehat[0] * y0inv;
    JetVec e;
    for (int k = 0; k <= n; ++k) e.push_back(ehat[static_cast<size_t>(k + 1)] - c * f.Y[static_cast<size_t>(k + 1)]);
    for (const JetVec& prev : t.E) e = e - (cplx(0.5) * edot(e, conj(prev))) * prev;
    t.E.push_back(normalizeHermitian(e));
  }
  assembleFrame(t);
  if (t.det < 0) {
    for (JetVec& e : t.E) e = conj(e);
    t.holomorphic = false;
    assembleFrame(t);
  }
  return t;
}

TwistorField adaptedFrameField(const Surface& s, const std::vector<cplx>& samples, int order) {
  TwistorField out;
  for (const cplx z : samples) {
    out.frames.push_back(adaptedFrame(s, z, order));
    if (out.frames.size() > 1 && out.frames.back().det != out.frames[out.frames.size() - 2].det) ++out.signChanges;
  }
  if (!out.frames.empty() && out.signChanges == 0) out.det = out.frames.front().det;
  return out;
}

TwistorField adaptedFrameField(const WeierstrassData& w, const std::vector<cplx>& samples, int order) {
  if (!isotropyOrder(w).total) throw Error(ErrorCode::NotTotallyIsotropic, "datum has finite isotropy order");
  return adaptedFrameField(surfaceFromData(w), samples, order);
}

TwistorFrame rotatedFrame(const TwistorFrame& f, const Eigen::MatrixXd& r) {
  if (!f.complete) throw Error(ErrorCode::InvalidArgument, "rotation needs a complete frame");
  if (r.rows() != 2 * f.m || r.cols() != 2 * f.m) throw Error(ErrorCode::DimensionMismatch, "rotation size");
  const cplx i(0.0, 1.0);
  std::vector<JetVec> e;
  for (int j = 0; j < f.m; ++j) e.push_back(cplx(0.5) * (f.E[static_cast<size_t>(j)] + conj(f.E[static_cast<size_t>(j)])));
  for (int j = 0; j < f.m; ++j) {
    e.push_back((0.5 * i) * (f.E[static_cast<size_t>(j)] - conj(f.E[static_cast<size_t>(j)])));
  }
  std::vector<JetVec> moved(e.size());
  for (Eigen::Index k = 0; k < r.cols(); ++k) {
    JetVec acc = cplx(0.0) * e.front();
    for (Eigen::Index l = 0; l < r.rows(); ++l) acc = acc + cplx(r(l, k)) * e[static_cast<size_t>(l)];
    moved[static_cast<size_t>(k)] = acc;
  }
  TwistorFrame out = f;
  for (int j = 0; j < f.m; ++j) {
    out.E[static_cast<size_t>(j)] = moved[static_cast<size_t>(j)] - i * moved[static_cast<size_t>(f.m + j)];
  }
  assembleFrame(out);
  return out;
}

JHolomorphicReport jHolomorphicCheck(const TwistorFrame& f, double tol) {
  JHolomorphicReport r;
  r.tol = tol;
  const std::vector<CplxVec> iv = iValues(f);
  auto residual = [&](Direction d) {
    const JetVec xd = d == Direction::Z ? dz(f.x) : dzb(f.x);
    double worst = containmentResidual(values(xd), iv);
    for (const JetVec& e : f.E) {
      const JetVec ed = d == Direction::Z ? dz(e) : dzb(e);
      worst = std::max(worst, distanceFrom(values(ed), iv, values(e).norm()));
    }
    return worst;
  };
  r.holomorphic = residual(Direction::Z);
  r.antiHolomorphic = residual(Direction::Zbar);
  return r;
}

double normalHorizontalCheck(const TwistorFrame& f) {
  if (f.E.size() < 2) return 0.0;
  const std::vector<CplxVec> iv = iValues(f);
  std::vector<CplxVec> target(iv.begin() + 1, iv.end());
  target.push_back(values(dz(f.x)));
  target.push_back(values(dzb(f.x)));
  double worst = 0.0;
  for (size_t j = 1; j < f.E.size(); ++j) {
    const JetVec d = f.holomorphic ? dzb(f.E[j]) : dz(f.E[j]);
    worst = std::max(worst, distanceFrom(values(d), target, values(f.E[j]).norm()));
  }
  return worst;
}

double horizontalCheck(const TwistorFrame& f) {
  std::vector<CplxVec> target = iValues(f);
  target.push_back(values(f.x));
  double worst = 0.0;
  for (const JetVec& e : f.E) {
    const JetVec d = f.holomorphic ? dzb(e) : dz(e);
    worst = std::max(worst, distanceFrom(values(d), target, values(e).norm()));
  }
  return worst;
}

TransferReport isotropyTransfer(const TwistorFrame& f, double constant) {
  TransferReport r;
  r.constant = constant;
  const JHolomorphicReport j = jHolomorphicCheck(f);
  r.tau = std::min(j.holomorphic, j.antiHolomorphic);
  const bool alongZ = j.holomorphic <= j.antiHolomorphic;
  JetVec w = f.x;
  for (int k = 1; k <= 4; ++k) {
    w = alongZ ? dz(w) : dzb(w);
    const CplxVec v = values(w);
    if (v.squaredNorm() == 0.0) continue;
    r.isotropy = std::max(r.isotropy, std::abs(v.cwiseProduct(v).sum()) / v.squaredNorm());
  }
  // Below 1e-12 both sides are roundoff.
  r.holds = r.isotropy <= constant * std::max(r.tau, 1e-12);
  return r;
}

}  // namespace wm
