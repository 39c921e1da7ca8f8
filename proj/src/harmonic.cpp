#include "willmore/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "willmore/error.hpp"

namespace wm {

namespace {

Eigen::MatrixXcd columns(const std::vector<CplxVec>& vs) {
  if (vs.empty()) return {};
  Eigen::MatrixXcd m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  return m;
}

Eigen::MatrixXcd lorentzMetric(Eigen::Index dim) {
  Eigen::MatrixXcd eta = Eigen::MatrixXcd::Identity(dim, dim);
  eta(0, 0) = -1.0;
  return eta;
}

// Euclidean distance of v from span(basis), relative to max(|v|, scale). The
// scale keeps sections that vanish up to roundoff from reading as O(1).
double distanceFrom(const CplxVec& v, const std::vector<CplxVec>& basis, double scale) {
  const double denom = std::max(v.norm(), scale);
  if (denom == 0.0) return 0.0;
  return containmentResidual(v, basis) * v.norm() / denom;
}

double norm(const JetVec& v) { return values(v).norm(); }

std::vector<CplxVec> leftSingular(const std::vector<CplxVec>& vs, int rank) {
  std::vector<CplxVec> out;
  if (vs.empty() || rank <= 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns(vs), Eigen::ComputeThinU);
  for (int i = 0; i < rank; ++i) out.push_back(svd.matrixU().col(i));
  return out;
}

int commonOrder(const SectionJets& s) {
  int o = -1;
  for (const JetVec& v : s) {
    const int ov = orderOf(v);
    o = o < 0 ? ov : std::min(o, ov);
  }
  return o;
}

}  // namespace

// ------------------------------------------------------------ section algebra

std::vector<CplxVec> values(const SectionJets& s) {
  std::vector<CplxVec> out;
  out.reserve(s.size());
  for (const JetVec& v : s) out.push_back(values(v));
  return out;
}

SectionJets conj(const SectionJets& s) {
  SectionJets out;
  out.reserve(s.size());
  for (const JetVec& v : s) out.push_back(conj(v));
  return out;
}

SectionJets concat(std::initializer_list<const SectionJets*> parts) {
  SectionJets out;
  for (const SectionJets* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

SectionJets independentSections(const SectionJets& s, double gapRatio) {
  const std::vector<CplxVec> v = values(s);
  const int rank = rankByGap(v, gapRatio).rank;
  double biggest = 0.0;
  for (const CplxVec& x : v) biggest = std::max(biggest, x.norm());
  SectionJets out;
  std::vector<CplxVec> kept;
  // Greedy in the given order so that callers control which sections survive.
  for (size_t i = 0; i < s.size() && static_cast<int>(out.size()) < rank; ++i) {
    if (v[i].norm() <= biggest / std::sqrt(gapRatio)) continue;
    if (!kept.empty() && containmentResidual(v[i], kept) * v[i].norm() <= biggest / std::sqrt(gapRatio)) continue;
    kept.push_back(v[i]);
    out.push_back(s[i]);
  }
  if (static_cast<int>(out.size()) < rank) {
    // Fall back to a pivoted QR when the greedy pass was too strict.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(columns(v));
    out.clear();
    std::vector<int> idx;
    for (int i = 0; i < rank; ++i) idx.push_back(qr.colsPermutation().indices()[i]);
    std::sort(idx.begin(), idx.end());
    for (int i : idx) out.push_back(s[static_cast<size_t>(i)]);
  }
  return out;
}

JetProjector::JetProjector(SectionJets basis, double tol) : basis_(std::move(basis)) {
  const size_t m = basis_.size();
  if (m == 0) return;
  std::vector<std::vector<Jet>> g(m, std::vector<Jet>(m));
  Eigen::MatrixXcd g0(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  double scale = 0.0;
  for (size_t a = 0; a < m; ++a) {
    scale = std::max(scale, norm(basis_[a]));
    for (size_t b = a; b < m; ++b) {
      g[a][b] = mdot(basis_[a], basis_[b]);
      g[b][a] = g[a][b];
      g0(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g[a][b].value();
      g0(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = g[a][b].value();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g0);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= tol * scale * scale) {
    throw Error(ErrorCode::NullDirection, "the bundle is degenerate for the Lorentz pairing");
  }
  // Gauss-Jordan elimination on jets with partial pivoting by value.
  const int order = mdot(basis_.front(), basis_.front()).order();
  ginv_.assign(m, std::vector<Jet>(m));
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = 0; b < m; ++b) ginv_[a][b] = Jet::constant(order, a == b ? 1.0 : 0.0);
  }
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < m; ++r) {
      if (std::abs(g[r][col].value()) > std::abs(g[piv][col].value())) piv = r;
    }
    std::swap(g[piv], g[col]);
    std::swap(ginv_[piv], ginv_[col]);
    const Jet inv = inverse(g[col][col]);
    for (size_t c = 0; c < m; ++c) {
      g[col][c] = g[col][c] * inv;
      ginv_[col][c] = ginv_[col][c] * inv;
    }
    for (size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const Jet factor = g[r][col];
      for (size_t c = 0; c < m; ++c) {
        g[r][c] -= factor * g[col][c];
        ginv_[r][c] -= factor * ginv_[col][c];
      }
    }
  }
}

JetVec JetProjector::project(const JetVec& x) const {
  const size_t m = basis_.size();
  JetVec out(x.size());
  const int order = std::min(orderOf(x), m ? commonOrder(basis_) : orderOf(x));
  for (Jet& c : out) c = Jet(order);
  if (m == 0) return out;
  std::vector<Jet> t(m);
  for (size_t a = 0; a < m; ++a) t[a] = mdot(basis_[a], x);
  for (size_t a = 0; a < m; ++a) {
    Jet c = ginv_[a][0] * t[0];
    for (size_t b = 1; b < m; ++b) c += ginv_[a][b] * t[b];
    out = out + c * basis_[a];
  }
  return out;
}

Signature lorentzSignature(const std::vector<MinkVec>& vs, double relTol) {
  Signature s;
  if (vs.empty()) return s;
  const Eigen::Index m = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) g(a, b) = mdot(vs[static_cast<size_t>(a)], vs[static_cast<size_t>(b)]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const double big = es.eigenvalues().cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double e = es.eigenvalues()[i];
    if (std::abs(e) <= relTol * big) {
      ++s.zero;
    } else if (e < 0) {
      ++s.negative;
    } else {
      ++s.positive;
    }
  }
  return s;
}

SubspaceBasis conformalGauss(const MoebiusFrame& f) {
  const CplxVec yz = values(f.Yz);
  const std::vector<MinkVec> real = {values(f.Y).real(), yz.real(), yz.imag(), values(f.N).real()};
  const Signature sig = lorentzSignature(real);
  if (sig.negative != 1 || sig.positive != 3) {
    throw Error(ErrorCode::DegenerateV, "conformal Gauss map does not have signature (1, 3)");
  }
  SubspaceBasis out;
  out.realFlag = true;
  for (const MinkVec& v : real) out.vectors.push_back(v.cast<cplx>());
  return out;
}

SectionJets frameSections(const MoebiusFrame& f) {
  const int o = orderOf(f.N);
  return {truncated(f.Y, o), truncated(f.Yz, o), truncated(f.Yzb, o), f.N};
}

PartialTransform partialTransform(const SectionJets& bundle, Direction d, double gapRatio) {
  PartialTransform out;
  const SectionJets basis = independentSections(bundle, gapRatio);
  const JetProjector p(basis);
  for (const JetVec& psi : basis) {
    out.sections.push_back(p.complement(d == Direction::Z ? dz(psi) : dzb(psi)));
  }
  const std::vector<CplxVec> v = values(out.sections);
  out.rank = rankByGap(v, gapRatio);
  out.basis = leftSingular(v, out.rank.rank);
  return out;
}

std::vector<SectionJets> piBundles(const MoebiusFrame& f, int jMax) {
  std::vector<SectionJets> out;
  SectionJets acc;
  JetVec dk = f.kappa;
  for (int j = 0; j <= jMax; ++j) {
    if (j > 0) dk = normalD(dk, f, Direction::Z);
    acc.push_back(dk);
    acc.push_back(normalD(dk, f, Direction::Zbar));
    out.push_back(acc);
  }
  return out;
}

BundleResidualReport bundleResiduals(const SectionJets& bundle, const MoebiusFrame& f) {
  BundleResidualReport r;
  const SectionJets basis = independentSections(bundle);
  r.rank = static_cast<int>(basis.size());
  const std::vector<CplxVec> v = values(basis);
  for (size_t a = 0; a < v.size(); ++a) {
    for (size_t b = a; b < v.size(); ++b) r.isotropy = std::max(r.isotropy, relativePairing(v[a], v[b]));
  }
  for (const JetVec& psi : basis) {
    const JetVec d1 = normalD(psi, f, Direction::Zbar);
    const JetVec d2 = normalD(d1, f, Direction::Zbar);
    const double scale = norm(psi);
    r.holomorphicity = std::max(r.holomorphicity, distanceFrom(values(d1), v, scale));
    r.secondOrder = std::max(r.secondOrder, distanceFrom(values(d2), v, scale));
  }
  return r;
}

double dzContainment(const SectionJets& from, const SectionJets& into, const MoebiusFrame& f) {
  const std::vector<CplxVec> target = values(independentSections(into));
  double worst = 0.0;
  for (const JetVec& phi : from) {
    worst = std::max(worst, distanceFrom(values(normalD(phi, f, Direction::Z)), target, norm(phi)));
  }
  return worst;
}

SectionJets complementSections(const SectionJets& bundle) {
  const SectionJets basis = independentSections(bundle);
  const JetProjector p(basis);
  const int dim = static_cast<int>(bundle.front().size());
  const int order = commonOrder(basis);
  SectionJets candidates;
  for (int i = 0; i < dim; ++i) candidates.push_back(p.complement(constantJetVec(unitVec(dim, i), order)));
  // Largest complements first, so the chosen sections are well conditioned.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const JetVec& a, const JetVec& b) { return norm(a) > norm(b); });
  SectionJets out = independentSections(candidates);
  if (static_cast<int>(out.size()) + static_cast<int>(basis.size()) != dim) {
    throw Error(ErrorCode::SpanDeficit, "complement does not have the expected rank");
  }
  return out;
}

FrenetReport frenetCheck(const SectionJets& f, const SectionJets& Z, const SectionJets& h, double gapRatio) {
  const SectionJets zb = conj(Z);
  const SectionJets all = concat({&f, &Z, &zb, &h});
  const int dim = static_cast<int>(f.front().size());
  if (rankByGap(values(all), gapRatio).rank != dim) {
    throw Error(ErrorCode::SpanDeficit, "f + Re(Z) + h does not span the ambient space");
  }
  FrenetReport r;
  const std::vector<CplxVec> zh = values(concat({&Z, &h}));
  const std::vector<CplxVec> zf = values(concat({&Z, &f}));
  for (const CplxVec& v : partialTransform(f, Direction::Z, gapRatio).basis) {
    r.a = std::max(r.a, containmentResidual(v, zh));
  }
  for (const JetVec& psi : Z) {
    const double scale = norm(psi);
    r.b = std::max(r.b, distanceFrom(values(dz(psi)), zh, scale));
    r.c = std::max(r.c, distanceFrom(values(dzb(psi)), zf, scale));
  }
  r.dh = partialTransform(h, Direction::Z, gapRatio).rank;
  return r;
}

SectionJets dTransform(const SectionJets& f, const SectionJets& Z, double gapRatio) {
  const SectionJets fi = independentSections(f, gapRatio);
  if (Z.empty()) return fi;
  const SectionJets zi = independentSections(Z, gapRatio);
  const SectionJets zb = conj(zi);
  SectionJets out = concat({&fi, &zi, &zb});
  const int expected = static_cast<int>(fi.size() + 2 * zi.size());
  if (rankByGap(values(out), gapRatio).rank != expected) {
    throw Error(ErrorCode::RankDrop, "f + Re(Z) has lower rank than rank f + 2 rank Z");
  }
  try {
    JetProjector check(out);
  } catch (const Error&) {
    throw Error(ErrorCode::RankDrop, "Re(Z) is degenerate; Z is not isotropic");
  }
  return out;
}

IsotropicBundles isotropicBundles(const MoebiusFrame& f, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "isotropy order must be nonnegative");
  IsotropicBundles b;
  b.k = k;
  b.f0 = frameSections(f);
  if (k >= 1) b.pi = independentSections(piBundles(f, k - 1).back());
  b.fk = b.pi.empty() ? b.f0 : dTransform(b.f0, b.pi);
  b.dfk = partialTransform(b.fk, Direction::Z);
  return b;
}

// ------------------------------------------------------------ line extraction

ExtractedLine isotropicLineExtract(const CplxVec& x1, const CplxVec& x2, double tol) {
  const cplx p11 = mdot(x1, x1), p22 = mdot(x2, x2), p12 = mdot(x1, x2);
  const double s1 = x1.squaredNorm(), s2 = x2.squaredNorm();
  if (s1 == 0.0 || s2 == 0.0) throw Error(ErrorCode::DegenerateInput, "zero input vector");
  if (std::abs(p12 * p12 - p11 * p22) > tol * s1 * s2) {
    throw Error(ErrorCode::DegenerateInput, "<X1,X2>^2 != <X1,X1><X2,X2>: the span has two isotropic lines");
  }
  const double r1 = std::abs(p11) / s1, r2 = std::abs(p22) / s2;
  if (r1 <= tol && r2 <= tol && std::abs(p12) <= tol * std::sqrt(s1 * s2)) {
    throw Error(ErrorCode::TotallyIsotropicInput, "the span is totally isotropic; no unique line");
  }
  ExtractedLine out;
  // Divide by the self-pairing that is safely away from zero; the other
  // vector minus its component along that one is the isotropic line.
  const bool useFirst = r1 > r2;
  const CplxVec& a = useFirst ? x1 : x2;  // denominator
  const CplxVec& b = useFirst ? x2 : x1;
  out.branch = useFirst ? 1 : 2;
  out.line = b - (mdot(a, b) / mdot(a, a)) * a;
  const CplxVec lb = out.line.conjugate();
  out.complement = a - (mdot(a, lb) / mdot(out.line, lb)) * out.line;
  return out;
}

// ------------------------------------------------------------ recursions

PhiSequence phiSequence(const MoebiusFrame& f, int k, int maxSteps, double singularTol, double collapseTol) {
  const IsotropicBundles b = isotropicBundles(f, k);
  JetVec dk = f.kappa;
  for (int j = 0; j < k; ++j) dk = normalD(dk, f, Direction::Z);
  const JetProjector p0(b.fk);
  const JetVec phi = p0.complement(dk);
  const Jet pp = mdot(phi, phi);
  const double phiNorm = norm(phi);
  if (std::abs(pp.value()) <= singularTol * phiNorm * phiNorm) {
    throw Error(ErrorCode::SingularSetHit, "<phi, phi> vanishes at the base point");
  }
  PhiSequence out;
  std::vector<JetVec> phis = {phi};
  std::vector<double> scales = {phiNorm};

  const JetVec nzb = p0.complement(dzb(phi));
  const Jet muBar = mdot(nzb, phi) * cplx(-2.0) / pp;
  out.muBar.push_back(muBar.value());
  phis.push_back(nzb + (muBar * cplx(0.5)) * phi);
  scales.push_back(norm(nzb) + 0.5 * std::abs(muBar.value()) * phiNorm);

  SectionJets current = b.fk;
  for (int j = 1; j < maxSteps; ++j) {
    const JetVec& pj = phis.back();
    if (norm(pj) <= collapseTol * scales.back()) break;
    current.push_back(pj);
    current.push_back(conj(pj));
    const JetProjector pr(current);
    const JetVec perp = pr.complement(phi);
    const JetVec t = pr.complement(dz(pj));
    const Jet coef = mdot(t, perp) / mdot(perp, perp);
    phis.push_back(t - coef * perp);
    scales.push_back(norm(t) + std::abs(coef.value()) * norm(perp));
  }
  for (size_t j = 0; j < phis.size(); ++j) {
    out.phi.push_back(values(phis[j]));
    if (out.collapsedAt < 0 && j > 0 && out.phi.back().norm() <= collapseTol * scales[j]) {
      out.collapsedAt = static_cast<int>(j);
    }
  }
  for (size_t a = 0; a < phis.size(); ++a) {
    for (size_t c = std::max<size_t>(a, 1); c < phis.size(); ++c) {
      const double s = scales[a] * scales[c];
      if (s > 0.0) out.maxPairing = std::max(out.maxPairing, std::abs(mdot(out.phi[a], out.phi[c])) / s);
    }
  }
  return out;
}

namespace {

double hermitianRatio(const CplxVec& q) {
  const double n2 = q.squaredNorm();
  return n2 == 0.0 ? 0.0 : std::abs(mdot(q, CplxVec(q.conjugate()))) / n2;
}

}  // namespace

QSequence qSequence(const SectionJets& h0, const JetVec& xiHat, int maxSteps, double collapseTol) {
  const JetProjector ph(h0);
  const JetVec q1 = conj(ph.complement(dz(xiHat)));
  if (norm(q1) <= collapseTol * norm(dz(xiHat)) || hermitianRatio(values(q1)) <= collapseTol) {
    throw Error(ErrorCode::RankCollapse, "Q_1 is degenerate (step 1)");
  }
  QSequence out;
  std::vector<JetVec> qs = {q1};
  SectionJets span;
  for (int j = 1; j < maxSteps; ++j) {
    span.push_back(qs.back());
    span.push_back(conj(qs.back()));
    const JetVec dq = dzb(qs.back());
    const JetVec next = JetProjector(span).complement(dq);
    if (norm(next) <= collapseTol * norm(dq)) break;
    qs.push_back(next);
    if (hermitianRatio(values(next)) <= collapseTol) {
      out.terminalStep = static_cast<int>(qs.size());
      const CplxVec v = values(next);
      const MinkVec re = v.real(), im = v.imag();
      const MinkVec dir = re.norm() >= im.norm() ? re : im;
      const double parallel = containmentResidual(re.norm() >= im.norm() ? CplxVec(im.cast<cplx>())
                                                                         : CplxVec(re.cast<cplx>()),
                                                  {dir.cast<cplx>()});
      out.terminalLightlike = parallel <= 1e-6 && std::abs(mdot(dir, dir)) <= 1e-6 * dir.squaredNorm();
      out.terminalDirection = (dir[0] < 0 ? -1.0 : 1.0) * dir / dir.norm();
      break;
    }
  }
  for (const JetVec& q : qs) out.Q.push_back(values(q));
  for (size_t a = 0; a < out.Q.size(); ++a) {
    for (size_t b = a; b < out.Q.size(); ++b) out.maxIsotropy = std::max(out.maxIsotropy, relativePairing(out.Q[a], out.Q[b]));
  }
  const std::vector<CplxVec> hv = values(h0);
  for (size_t j = 0; j < qs.size(); ++j) {
    std::vector<CplxVec> target;
    if (j == 0) {
      target = hv;
      target.push_back(out.Q[0]);
    } else {
      target = {out.Q[j], out.Q[j - 1]};
    }
    out.maxStructure = std::max(out.maxStructure, distanceFrom(values(dz(qs[j])), target, out.Q[j].norm()));
  }
  return out;
}

QSequence qSequence(const MoebiusFrame& f, int k, int maxSteps, double collapseTol) {
  const IsotropicBundles b = isotropicBundles(f, k);
  if (b.dfk.rank.rank != 1) {
    throw Error(ErrorCode::InvalidArgument, "the Q chain needs Rank_C d f^k_k = 1");
  }
  JetVec dk = f.kappa;
  for (int j = 0; j < k; ++j) dk = normalD(dk, f, Direction::Z);
  const JetVec xiHat = JetProjector(b.fk).complement(dk);
  return qSequence(complementSections(b.fk), xiHat, maxSteps, collapseTol);
}

// ------------------------------------------------------------ grids

SubbundleSamples sampleBundle(const Surface& surf, const GridSpec& g, const std::string& label,
                              const std::function<std::vector<CplxVec>(const MoebiusFrame&)>& bundle, int order) {
  const Surface s = normalizedAt(surf, g.center);
  SubbundleSamples out;
  out.label = label;
  out.grid = g;
  out.bases.resize(static_cast<size_t>(g.nodes * g.nodes));
  for (int i = 0; i < g.nodes; ++i) {
    for (int j = 0; j < g.nodes; ++j) {
      out.bases[static_cast<size_t>(i * g.nodes + j)] = bundle(ambientFrame(s, g.node(i, j), order));
    }
  }
  return out;
}

RankProfile partialTransformGrid(const SubbundleSamples& b, Direction d, double gapRatio) {
  const GridSpec& g = b.grid;
  g.require(2);
  const size_t count = b.bases.front().size();
  std::vector<VecField> fields(count, VecField(b.bases.size()));
  for (size_t node = 0; node < b.bases.size(); ++node) {
    if (b.bases[node].size() != count) throw Error(ErrorCode::DimensionMismatch, "basis size varies across nodes");
    for (size_t a = 0; a < count; ++a) fields[a][node] = b.bases[node][a];
  }
  RankProfile out;
  const Eigen::Index dim = b.bases.front().front().size();
  const Eigen::MatrixXcd eta = lorentzMetric(dim);
  for (int i = g.first(); i <= g.last(); ++i) {
    for (int j = g.first(); j <= g.last(); ++j) {
      const Eigen::MatrixXcd B = columns(b.bases[static_cast<size_t>(i * g.nodes + j)]);
      const Eigen::MatrixXcd gram = B.transpose() * eta * B;
      const Eigen::MatrixXcd proj = B * gram.fullPivLu().solve(B.transpose() * eta);
      std::vector<CplxVec> ds;
      for (size_t a = 0; a < count; ++a) {
        const CplxVec v = d == Direction::Z ? dzField(fields[a], g, i, j) : dzbField(fields[a], g, i, j);
        ds.push_back(v - proj * v);
      }
      const RankGap r = rankByGap(ds, gapRatio);
      out.ranks.push_back(r.rank);
      out.masked.push_back(r.ambiguous ? 1 : 0);
      out.bases.push_back(leftSingular(ds, r.rank));
    }
  }
  return out;
}

ProjectorField projectorField(const SubbundleSamples& b) {
  ProjectorField out;
  out.grid = b.grid;
  const Eigen::Index dim = b.bases.front().front().size();
  const Eigen::MatrixXcd eta = lorentzMetric(dim);
  for (const auto& basis : b.bases) {
    const Eigen::MatrixXcd B = columns(basis);
    const Eigen::MatrixXcd gram = B.transpose() * eta * B;
    out.P.push_back(B * gram.fullPivLu().solve(B.transpose() * eta));
  }
  return out;
}

double projectorDefect(const ProjectorField& p) {
  double worst = 0.0;
  for (const Eigen::MatrixXcd& P : p.P) {
    const Eigen::MatrixXcd eta = lorentzMetric(P.rows());
    const Eigen::MatrixXcd adj = eta * P.transpose() * eta;
    worst = std::max({worst, (P * P - P).norm(), (adj - P).norm()});
  }
  return worst;
}

ScalarSummary harmonicityResidual(const ProjectorField& p) {
  const GridSpec& g = p.grid;
  g.require(2);
  const double h2 = g.h() * g.h();
  auto at = [&](int i, int j) -> const Eigen::MatrixXcd& { return p.P[static_cast<size_t>(i * g.nodes + j)]; };
  ScalarSummary out;
  out.values = Field::Zero(g.interior, g.interior);
  for (int i = g.first(); i <= g.last(); ++i) {
    for (int j = g.first(); j <= g.last(); ++j) {
      const Eigen::MatrixXcd pxx =
          (-at(i + 2, j) + 16.0 * at(i + 1, j) - 30.0 * at(i, j) + 16.0 * at(i - 1, j) - at(i - 2, j)) / (12.0 * h2);
      const Eigen::MatrixXcd pyy =
          (-at(i, j + 2) + 16.0 * at(i, j + 1) - 30.0 * at(i, j) + 16.0 * at(i, j - 1) - at(i, j - 2)) / (12.0 * h2);
      const Eigen::MatrixXcd lap = 0.25 * (pxx + pyy);
      const double r = (at(i, j) * lap - lap * at(i, j)).norm();
      out.values(i - g.first(), j - g.first()) = r;
      out.max = std::max(out.max, r);
    }
  }
  return out;
}

}  // namespace wm
