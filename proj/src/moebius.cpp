#include "willmore/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>
#include <boost/math/quadrature/gauss.hpp>

#include "willmore/error.hpp"

namespace wm {

namespace {

constexpr double kPi = std::numbers::pi;

// Terms of the structure equations smaller than kTermFloor * (1 + |kappa|^2)
// are treated as zero when forming relative residuals. The normalized gauge of frameAt makes the
// frame O(1), so an absolute floor is meaningful there; on totally umbilic
// or codimension-one pieces both sides are pure roundoff.
constexpr double kTermFloor = 1e-7;

Jet realPartVar(int order, cplx z0) {
  return (Jet::zVar(order, z0) + Jet::zbarVar(order, z0)) * cplx(0.5);
}

Jet imagPartVar(int order, cplx z0) {
  return (Jet::zVar(order, z0) - Jet::zbarVar(order, z0)) * cplx(0.0, -0.5);
}

// cos or sin of a jet through its Taylor series about the base value.
Jet trig(const Jet& u, bool cosine) {
  const double u0 = u.value().real();
  std::vector<cplx> c(static_cast<size_t>(u.order()) + 1);
  double fact = 1.0;
  for (size_t k = 0; k < c.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    // k-th derivative of cos is cos(u + k pi/2); of sin, sin(u + k pi/2).
    const double phase = u0 + static_cast<double>(k) * kPi / 2.0;
    c[k] = (cosine ? std::cos(phase) : std::sin(phase)) / fact;
  }
  return composeSeries(u, c);
}

std::vector<cplx> polesOf(const VRatFn& f) {
  WeierstrassData w;
  w.xz = f;
  return finitePoles(w);
}

double maxNorm(const std::vector<CplxVec>& vs) {
  double m = 0.0;
  for (const auto& v : vs) m = std::max(m, v.norm());
  return m;
}

}  // namespace

// ------------------------------------------------------------ surfaces

Surface surfaceFromPrimitive(const VRatFn& f, std::string name) {
  Surface s;
  s.dim = static_cast<int>(f.dim());
  s.jets = [f](cplx z0, int order) { return seedHarmonic(f, z0, order); };
  s.singular = polesOf(f);
  s.name = std::move(name);
  return s;
}

Surface surfaceFromData(const WeierstrassData& w, Chart chart) {
  const VRatFn f = integratePrimitive(w);
  if (chart == Chart::North) return surfaceFromPrimitive(f, w.generator + "/north");
  return surfaceFromPrimitive(f.inverted().reduce(), w.generator + "/south");
}

Surface planeSurface(int dim) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "plane needs dimension >= 2");
  VRatFn f;
  f.num.assign(static_cast<size_t>(dim), CPoly());
  f.num[0] = CPoly::monomial(1, GaussRat::ratio(1, 2));
  f.num[1] = CPoly::monomial(1, GaussRat(0, mpq_class(-1, 2)));
  f.den = CPoly::constant(GaussRat(1));
  return surfaceFromPrimitive(f, "plane");
}

Surface sphereSurface() {
  Surface s;
  s.dim = 3;
  s.name = "sphere";
  s.jets = [](cplx z0, int order) {
    const Jet z = Jet::zVar(order, z0), zb = Jet::zbarVar(order, z0);
    const Jet zz = z * zb;
    const Jet q = inverse(zz + cplx(1.0));
    return JetVec{(z + zb) * q, (z - zb) * q * cplx(0, -1), (zz - cplx(1.0)) * q};
  };
  return s;
}

Surface cylinderSurface() {
  Surface s;
  s.dim = 3;
  s.name = "cylinder";
  s.jets = [](cplx z0, int order) {
    const Jet u = realPartVar(order, z0);
    return JetVec{trig(u, true), trig(u, false), imagPartVar(order, z0)};
  };
  return s;
}

Surface invertedSurface(const Surface& base) {
  Surface s = base;
  s.name = base.name + "/inverted";
  s.jets = [inner = base.jets](cplx z0, int order) {
    const JetVec x = inner(z0, order);
    const Jet q = inverse(edot(x, x));
    return q * x;
  };
  return s;
}

// ------------------------------------------------------------ lifts

JetVec lightConeLift(const JetVec& x) {
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty surface jets");
  const int order = orderOf(x);
  const Jet r2 = edot(x, x);
  const Jet one = Jet::constant(order, 1.0);
  JetVec y;
  y.reserve(x.size() + 2);
  y.push_back((one + r2) * cplx(0.5));
  y.push_back((one - r2) * cplx(0.5));
  for (const Jet& c : x) y.push_back(c);
  return y;
}

CanonicalLift canonicalLift(const JetVec& ytilde, cplx z0, double tol) {
  const JetVec yz = dz(ytilde), yzb = dzb(ytilde);
  const Jet g = mdot(yz, yzb) * cplx(2.0);
  const double scale = values(yz).norm() * values(yzb).norm();
  if (!(g.value().real() > tol * scale)) {
    throw Error(ErrorCode::BranchPoint, "degenerate induced metric at the base point");
  }
  CanonicalLift lift;
  lift.z0 = z0;
  lift.omega = log(g) * cplx(0.5);
  lift.Y = pow(g, -0.5) * truncated(ytilde, g.order());
  return lift;
}

MoebiusFrame moebiusFrame(const CanonicalLift& lift) {
  if (orderOf(lift.Y) < 2) throw Error(ErrorCode::InvalidArgument, "frame needs a lift of jet order >= 2");
  MoebiusFrame f;
  f.z0 = lift.z0;
  f.Y = lift.Y;
  f.Yz = dz(lift.Y);
  f.Yzb = dzb(lift.Y);
  const JetVec yzz = dz(f.Yz);
  const JetVec yzzb = dzb(f.Yz);

  // Rank of V at the base point.
  const CplxVec y0 = values(f.Y), yz0 = values(f.Yz), yzzb0 = values(yzzb);
  const std::vector<CplxVec> vBasis = {y0, CplxVec(yz0.real().cast<cplx>()), CplxVec(yz0.imag().cast<cplx>()),
                                       yzzb0};
  const std::vector<double> sv = singularValues(vBasis);
  if (sv.size() < 4 || sv[3] <= 1e-9 * sv[0]) {
    throw Error(ErrorCode::DegenerateV, "the mean curvature sphere is degenerate at the base point");
  }

  // N = 2 Y_zzbar + 2 <Y_zzbar, Y_zzbar> Y solves <N,N> = 0, <N,Y> = -1,
  // <N,Y_z> = 0 inside V.
  f.N = cplx(2.0) * yzzb + (mdot(yzzb, yzzb) * cplx(2.0)) * truncated(f.Y, orderOf(yzzb));
  f.s = mdot(yzz, f.N) * cplx(2.0);
  f.kappa = yzz + (f.s * cplx(0.5)) * f.Y;

  // Normal space: Lorentz-orthogonal complement of V, made orthonormal.
  const int dim = static_cast<int>(y0.size());
  Eigen::MatrixXd c(4, dim);
  const std::vector<Eigen::VectorXd> real = {y0.real(), yz0.real(), yz0.imag(), values(f.N).real()};
  for (int r = 0; r < 4; ++r) {
    Eigen::VectorXd v = real[static_cast<size_t>(r)];
    v[0] = -v[0];
    c.row(r) = v.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  std::vector<MinkVec> normals;
  for (int j = 4; j < dim; ++j) normals.push_back(svd.matrixV().col(j));
  if (!normals.empty()) f.normalBasis = lorentzGramSchmidt(normals).vectors;
  return f;
}

namespace {

// Translate x(z0) to the origin and rescale so that the induced metric is 1
// there. Both are Moebius maps, so the lift only moves by a Lorentz
// transformation, and the light-cone coordinates stay O(1) even next to an end.
std::pair<CplxVec, double> gaugeAt(const JetVec& x) {
  const double g = 2.0 * edot(dz(x), dzb(x)).value().real();
  if (!(g > 0.0)) throw Error(ErrorCode::BranchPoint, "degenerate induced metric at the base point");
  return {values(x), 1.0 / std::sqrt(g)};
}

JetVec applyGauge(JetVec x, const CplxVec& x0, double lam) {
  for (size_t i = 0; i < x.size(); ++i) x[i] = (x[i] - x0[static_cast<Eigen::Index>(i)]) * cplx(lam);
  return x;
}

}  // namespace

MoebiusFrame frameAt(const Surface& s, cplx z0, int order) {
  const JetVec x = s.jets(z0, order);
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty surface jets");
  const auto [x0, lam] = gaugeAt(x);
  return moebiusFrame(canonicalLift(lightConeLift(applyGauge(x, x0, lam)), z0));
}

Surface normalizedAt(const Surface& s, cplx c) {
  const auto [x0, lam] = gaugeAt(s.jets(c, 1));
  Surface out = s;
  out.jets = [inner = s.jets, x0 = x0, lam = lam](cplx z, int order) { return applyGauge(inner(z, order), x0, lam); };
  return out;
}

MoebiusFrame ambientFrame(const Surface& s, cplx z0, int order) {
  return moebiusFrame(canonicalLift(lightConeLift(s.jets(z0, order)), z0));
}

// ------------------------------------------------------------ connection

JetVec vComponent(const JetVec& w, const MoebiusFrame& f) {
  return (mdot(w, f.N) * cplx(-1.0)) * f.Y + (mdot(w, f.Y) * cplx(-1.0)) * f.N +
         (mdot(w, f.Yzb) * cplx(2.0)) * f.Yz + (mdot(w, f.Yz) * cplx(2.0)) * f.Yzb;
}

JetVec normalD(const JetVec& xi, const MoebiusFrame& f, Direction d, double tol) {
  // The absolute floor keeps sections that vanish up to roundoff (such as
  // D_zbar kappa on a cylinder) from being rejected.
  const CplxVec x0 = values(xi);
  const double xn = x0.norm() + 1e-13 / tol;
  {
    for (const JetVec* v : {&f.Y, &f.N, &f.Yz, &f.Yzb}) {
      const CplxVec v0 = values(*v);
      if (std::abs(mdot(x0, v0)) > tol * xn * v0.norm()) {
        throw Error(ErrorCode::NotNormal, "section is not normal at the base point");
      }
    }
  }
  const JetVec w = d == Direction::Z ? dz(xi) : dzb(xi);
  return w - vComponent(w, f);
}

CplxVec willmoreVector(const MoebiusFrame& f, double normalTol) {
  const JetVec a = normalD(f.kappa, f, Direction::Zbar, normalTol);
  const JetVec b = normalD(a, f, Direction::Zbar, normalTol);
  return values(b) + 0.5 * std::conj(f.s.value()) * values(f.kappa);
}

double willmoreResidual(const MoebiusFrame& f, double normalTol) { return willmoreVector(f, normalTol).norm(); }

IntegrabilityResiduals integrabilityResiduals(const MoebiusFrame& f) {
  IntegrabilityResiduals r;
  const JetVec kb = conj(f.kappa);
  const double floor = kTermFloor * (1.0 + values(f.kappa).squaredNorm());
  // Gauss: s_zbar / 2 = 3 <D_z kbar, kappa> + <kbar, D_z kappa>.
  {
    const cplx t1 = 0.5 * f.s.dzb().value();
    const cplx t2 = 3.0 * mdot(values(normalD(kb, f, Direction::Z)), values(f.kappa));
    const cplx t3 = mdot(values(kb), values(normalD(f.kappa, f, Direction::Z)));
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), floor});
    r.gauss = std::abs(t1 - t2 - t3) / scale;
  }
  r.codazzi = willmoreVector(f).imag().norm();
  // Ricci: D_zbar D_z xi - D_z D_zbar xi = 2 <xi,kappa> kbar - 2 <xi,kbar> kappa.
  for (const MinkVec& c : f.normalBasis) {
    const JetVec cj = constantJetVec(c.cast<cplx>(), orderOf(f.N));
    const JetVec xi = cj - vComponent(cj, f);
    const CplxVec lhs = values(normalD(normalD(xi, f, Direction::Z), f, Direction::Zbar)) -
                        values(normalD(normalD(xi, f, Direction::Zbar), f, Direction::Z));
    const CplxVec x0 = values(xi);
    const CplxVec rhs =
        2.0 * mdot(x0, values(f.kappa)) * values(kb) - 2.0 * mdot(x0, values(kb)) * values(f.kappa);
    // Both covariant derivatives come from projecting xi_{z zbar}, so its
    // size sets the roundoff level of the left side.
    const double raw = values(dzb(dz(xi))).norm();
    const double scale = std::max({lhs.norm(), rhs.norm(), raw, floor});
    r.ricci = std::max(r.ricci, (lhs - rhs).norm() / scale);
  }
  return r;
}

Chi0Theta0 chi0theta0(const MoebiusFrame& f) {
  const CplxVec a = values(normalD(f.kappa, f, Direction::Zbar));
  const CplxVec b = values(f.kappa);
  const Eigen::Index n = a.size();
  Chi0Theta0 out;
  out.chi0 = a * b.transpose() - b * a.transpose();
  double sq = 0.0;
  cplx wedge = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const cplx c = out.chi0(i, j);
      sq += std::norm(c);
      const double eta = (i == 0 ? -1.0 : 1.0) * (j == 0 ? -1.0 : 1.0);
      wedge -= eta * c * c;
    }
  out.chi0Norm = std::sqrt(sq);
  const cplx ab = mdot(a, b);
  out.theta0 = ab * ab - mdot(a, a) * mdot(b, b);
  out.wedgePairing = wedge;
  return out;
}

double energyDensity(const MoebiusFrame& f) {
  const CplxVec k = values(f.kappa);
  return mdot(k, CplxVec(k.conjugate())).real();
}

// ------------------------------------------------------------ energy

namespace {

using GL = boost::math::quadrature::gauss<double, 20>;

// Smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
double smoothStep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

struct Bump {
  cplx center;
  double inner, outer;
  double operator()(cplx z) const { return 1.0 - smoothStep((std::abs(z - center) - inner) / (outer - inner)); }
};

// Integral over the annulus r0 <= |z - c| <= r1 of g(z) dx dy: composite
// Gauss-Legendre in r, trapezoid in theta.
template <class G>
double annulus(const G& g, cplx c, double r0, double r1, int panels, int nTheta, int& evals) {
  double total = 0.0;
  const double h = (r1 - r0) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = r0 + p * h;
    total += GL::integrate(
        [&](double r) {
          double acc = 0.0;
          for (int k = 0; k < nTheta; ++k) {
            const double t = 2.0 * kPi * (k + 0.5) / nTheta;
            acc += g(c + std::polar(r, t));
            ++evals;
          }
          return acc * r * 2.0 * kPi / nTheta;
        },
        a, a + h);
  }
  return total;
}

// Evaluates an integral at two resolutions, doubling up to twice more when
// they disagree.
template <class F>
double converged(const F& at, double relTol, double absFloor, int maxRefinements, double& err) {
  double prev = at(1);
  for (int level = 2; level <= (1 << maxRefinements); level *= 2) {
    const double cur = at(level);
    err = std::abs(cur - prev);
    if (err <= relTol * std::max(std::abs(cur), absFloor)) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureNonconvergent, "energy quadrature did not converge under doubling");
}

}  // namespace

EnergyResult willmoreEnergy(const Surface& north, const Surface& south, const std::vector<cplx>& ends,
                            const EnergyOptions& opt) {
  EnergyResult res;
  double minSep = 1e300;
  for (size_t i = 0; i < ends.size(); ++i)
    for (size_t j = i + 1; j < ends.size(); ++j) minSep = std::min(minSep, std::abs(ends[i] - ends[j]));
  const double delta = std::min(opt.bumpRadius, 0.45 * minSep);
  if (!opt.excision.empty() && opt.excision.front() >= 0.6 * delta) {
    throw Error(ErrorCode::InvalidArgument, "excision radii must lie well inside the end bumps");
  }
  std::vector<Bump> bumps;
  for (const cplx& e : ends) bumps.push_back({e, 0.35 * delta, delta});

  auto rho = [](const Surface& s, cplx z) { return energyDensity(frameAt(s, z, 3)); };
  auto outside = [&](cplx z) {
    double w = 1.0;
    for (const Bump& b : bumps) w -= b(z);
    return w;
  };

  const int nr = 1, nt = opt.angularNodes;
  double err = 0.0, errSum = 0.0;
  const double floor = 1.0;

  // z chart away from the ends.
  const double partA = converged(
      [&](int L) {
        return annulus(
            [&](cplx z) {
              const double w = outside(z);
              return w <= 0.0 ? 0.0 : w * rho(north, z);
            },
            0.0, 0.0, opt.chartRadius, 8 * nr * L, nt * L, res.evaluations);
      },
      opt.relTol, floor, opt.maxRefinements, err);
  errSum += err;

  // w chart, |w| < 1/R (regular there by assumption).
  const double partC = converged(
      [&](int L) {
        return annulus([&](cplx w) { return rho(south, w); }, 0.0, 0.0, 1.0 / opt.chartRadius, 2 * L, nt * L / 2,
                       res.evaluations);
      },
      opt.relTol, floor, opt.maxRefinements, err);
  errSum += err;

  // End bumps: the excised integral I(r) = I0 + a r^2 + b r^4 + ..., so the
  // nested annuli give I at each excision radius and a polynomial fit in r^2
  // recovers I0.
  std::vector<double> excised(opt.excision.size(), 0.0);
  for (const Bump& b : bumps) {
    auto g = [&](cplx z) { return b(z) * rho(north, z); };
    double acc = converged(
        [&](int L) { return annulus(g, b.center, opt.excision[0], delta, 4 * L, nt * L / 2, res.evaluations); },
        opt.relTol, floor, opt.maxRefinements, err);
    errSum += err;
    excised[0] += acc;
    for (size_t i = 1; i < opt.excision.size(); ++i) {
      acc += converged(
          [&](int L) {
            return annulus(g, b.center, opt.excision[i], opt.excision[i - 1], L, nt * L / 2, res.evaluations);
          },
          opt.relTol, floor, opt.maxRefinements, err);
      errSum += err;
      excised[i] += acc;
    }
  }

  const size_t q = opt.excision.size();
  double bumpTotal = q ? excised.back() : 0.0;
  if (q >= 2) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(q));
    for (size_t i = 0; i < q; ++i) {
      const double r2 = opt.excision[i] * opt.excision[i];
      double p = 1.0;
      for (size_t j = 0; j < q; ++j) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p;
        p *= r2;
      }
      rhs[static_cast<Eigen::Index>(i)] = excised[i];
    }
    bumpTotal = a.colPivHouseholderQr().solve(rhs)[0];
  }

  res.energy = 4.0 * (partA + partC + bumpTotal);
  for (double e : excised) res.excisedValues.push_back(4.0 * (partA + partC + e));
  res.doublingError = 4.0 * errSum;
  res.normalized = res.energy / (4.0 * kPi);
  res.nearestInteger = std::lround(res.normalized);
  res.integerDistance =
      std::abs(res.normalized - static_cast<double>(res.nearestInteger)) / std::max(1.0, std::abs(res.normalized));
  return res;
}

EnergyResult willmoreEnergy(const WeierstrassData& w, const EnergyOptions& opt) {
  const Surface north = surfaceFromData(w, Chart::North);
  const Surface south = surfaceFromData(w, Chart::South);
  for (const cplx& p : north.singular) {
    if (std::abs(p) > 0.8 * opt.chartRadius) {
      throw Error(ErrorCode::InvalidArgument, "an end lies outside the z chart disk");
    }
  }
  return willmoreEnergy(north, south, north.singular, opt);
}

// ------------------------------------------------------------ isotropy

MoebiusIsotropy moebiusIsotropyOrder(const Surface& s, const std::vector<cplx>& samples, int maxK, double tol) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "no samples");
  // Conditions up to level maxK+1 need D_z^j kappa for j <= 2 maxK + 1.
  const int jMax = 2 * maxK + 1;
  const int order = jMax + 4;
  int best = maxK + 1;
  double worstHeld = 0.0;
  for (const cplx& z : samples) {
    const MoebiusFrame f = frameAt(s, z, order);
    std::vector<CplxVec> d;
    JetVec cur = f.kappa;
    d.push_back(values(cur));
    for (int j = 1; j <= jMax; ++j) {
      cur = normalD(cur, f, Direction::Z);
      d.push_back(values(cur));
    }
    const double scale = maxNorm(d);
    // Level K asks <D^j kappa, D^l kappa> = 0 for j + l <= 2K - 1.
    int held = 0;
    for (int K = 1; K <= maxK + 1; ++K) {
      bool ok = true;
      double worst = 0.0;
      for (int j = 0; j <= 2 * K - 1 && ok; ++j)
        for (int l = 0; j + l <= 2 * K - 1; ++l) {
          const double na = d[static_cast<size_t>(j)].norm(), nb = d[static_cast<size_t>(l)].norm();
          const double denom = std::max(na * nb, 1e-300);
          const double rel = scale == 0.0 ? 0.0 : std::abs(mdot(d[static_cast<size_t>(j)], d[static_cast<size_t>(l)])) /
                                                      std::max(denom, 1e-24 * scale * scale);
          worst = std::max(worst, rel);
          if (rel >= tol) {
            ok = false;
            break;
          }
        }
      if (!ok) break;
      held = K;
      worstHeld = std::max(worstHeld, worst);
    }
    best = std::min(best, held);
  }
  MoebiusIsotropy out;
  out.maxRetained = worstHeld;
  if (best > maxK) {
    out.total = true;
    out.order = maxK + 1;
  } else {
    out.order = best;
  }
  return out;
}

std::vector<cplx> interiorSamples(const Surface& s, int count, std::uint64_t seed, double radius, double margin) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<cplx> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 1000 * count) throw Error(ErrorCode::InvalidArgument, "could not place interior samples");
    const double r = radius * std::sqrt(uniform());
    const double t = 2.0 * kPi * uniform();
    const cplx z = std::polar(r, t);
    bool ok = true;
    for (const cplx& p : s.singular) ok = ok && std::abs(z - p) >= margin;
    if (ok) out.push_back(z);
  }
  return out;
}

}  // namespace wm
