#include "willmore/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "exact_linalg.hpp"
#include "willmore/error.hpp"

namespace wm {

namespace {

// p (p-1) ... (p-r+1), zero once a factor would be negative.
mpq_class falling(long p, int r) {
  if (p - r < 0) return 0;
  mpz_class out = 1;
  for (int q = 0; q < r; ++q) out *= p - q;
  return mpq_class(out);
}

mpq_class frac(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

bool rationalSqrt(const mpq_class& q, mpq_class& root) {
  if (sgn(q) < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  root = mpq_class(sqrt(num), sqrt(den));
  root.canonicalize();
  return true;
}

using RatVec = std::vector<GaussRat>;

RatVec scaledVec(const RatVec& v, const GaussRat& s) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
  return out;
}

RatVec addVec(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool isZeroVec(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const GaussRat& q) { return q.isZero(); });
}

// Basis vector e_i with 1-based index, as used by the assembly recipe.
RatVec basis(int dim, int i, const GaussRat& s = GaussRat(1)) {
  RatVec v(static_cast<size_t>(dim));
  v.at(static_cast<size_t>(i - 1)) = s;
  return v;
}

// z^2 (z^n - 1)^2.
CPoly standardDenominator(int n) {
  return CPoly::monomial(2) * pow(CPoly::monomial(n) - CPoly::constant(GaussRat(1)), 2);
}

// n when den is a nonzero multiple of z^2 (z^n - 1)^2, else 0.
int standardStructure(const CPoly& den) {
  const int d = den.degree();
  if (d < 4 || d % 2 != 0) return 0;
  const int n = (d - 2) / 2;
  const CPoly ref = standardDenominator(n);
  const GaussRat lead = den.coeff(d);
  return den == ref.scaled(lead) ? n : 0;
}

VRatFn fromCoefficients(const std::vector<RatVec>& v, int dim, const CPoly& den) {
  VRatFn f;
  f.num.resize(static_cast<size_t>(dim));
  for (int c = 0; c < dim; ++c) {
    std::vector<GaussRat> coeffs(v.size());
    for (size_t j = 0; j < v.size(); ++j) coeffs[j] = v[j][static_cast<size_t>(c)];
    f.num[static_cast<size_t>(c)] = CPoly(coeffs);
  }
  f.den = den;
  return f;
}

// Numeric roots of a squarefree polynomial: companion eigenvalues refined by
// Newton steps on the exact coefficients.
std::vector<cplx> squarefreeRoots(const CPoly& p) {
  const int d = p.degree();
  std::vector<cplx> roots;
  if (d < 1) return roots;
  const std::vector<cplx> c = p.toComplex();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(d)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  const CPoly dp = p.derivative();
  for (int i = 0; i < d; ++i) {
    cplx r = es.eigenvalues()[i];
    for (int it = 0; it < 8; ++it) {
      const cplx step = p.eval(r) / dp.eval(r);
      r -= step;
      if (std::abs(step) < 1e-17 * std::max(1.0, std::abs(r))) break;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return std::arg(a) != std::arg(b) ? std::arg(a) < std::arg(b) : std::abs(a) < std::abs(b);
  });
  return roots;
}

int maxNumDegree(const VRatFn& f) {
  int d = -1;
  for (const CPoly& p : f.num) d = std::max(d, p.degree());
  return d;
}

constexpr double kIsotropyTol = 1e-8;

EndInfo classifyPole(const VRatFn& f, cplx p, int order, double tol) {
  EndInfo e;
  e.location = p;
  e.poleOrder = order;
  if (order == 0) {
    e.cls = EndClass::Regular;
    return e;
  }
  e.residue = residueNumeric(f, p, order).norm();
  e.leading = leadingLaurent(f, p, order);
  const double a2 = e.leading.squaredNorm();
  e.isotropy = a2 > 0.0 ? std::abs((e.leading.array() * e.leading.array()).sum()) / a2 : 0.0;
  const bool planar = order == 2 && e.residue < tol && a2 > 0.0 && e.isotropy < kIsotropyTol;
  e.cls = planar ? EndClass::PlanarEnd : EndClass::NonPlanarPole;
  return e;
}

}  // namespace

// ------------------------------------------------------------ tau system

CoefficientTables coefficientTables(int k, int m) {
  if (k < 0 || m < 3 * k + 1) {
    throw Error(ErrorCode::ParameterDomain, "need k >= 0 and m >= 3k+1 (k=" + std::to_string(k) +
                                                ", m=" + std::to_string(m) + ")");
  }
  const long n = 2L * m + 1, l = m + 1;
  const int s = 3 * k;
  CoefficientTables t;
  t.k = k;
  t.m = m;
  const mpq_class q = frac(m + 1, m);
  for (int i = 0; i < k; ++i) {
    const int r = i + 1;
    std::vector<mpq_class> a(static_cast<size_t>(s + 3)), b(a.size()), c(a.size());
    a[0] = falling(l, r) * falling(l, r);
    b[0] = falling(l, r) * falling(n + l, r) * q;
    c[0] = falling(n + l, r) * falling(n + l, r) * q * q;
    for (int j = 1; j <= s; ++j) {
      a[static_cast<size_t>(j)] = falling(l - j, r) * falling(l + j, r);
      b[static_cast<size_t>(j)] = falling(l - j, r) * falling(n + l + j, r) * frac(n - l - j + 1, l + j - 1) +
                                  falling(l + j, r) * falling(n + l - j, r) * frac(n - l + j + 1, l - j - 1);
      c[static_cast<size_t>(j)] = falling(n + l - j, r) * falling(n + l + j, r) *
                                  frac((n - l - j + 1) * (n - l + j + 1), (l + j - 1) * (l - j - 1));
    }
    b[static_cast<size_t>(s + 2)] = falling(n, r) * falling(2 * l, r);
    c[static_cast<size_t>(s + 2)] = falling(2 * l, r) * falling(2 * n, r);
    t.a.push_back(std::move(a));
    t.b.push_back(std::move(b));
    t.c.push_back(std::move(c));
  }
  return t;
}

std::pair<mpq_class, mpq_class> eliminatedTau(int m, const std::vector<mpq_class>& head) {
  const int s = static_cast<int>(head.size()) - 1;
  mpq_class t1 = -head[0] / 2;
  mpq_class t2 = -frac(m + 1, m) * head[0];
  for (int j = 1; j <= s; ++j) {
    t1 -= head[static_cast<size_t>(j)];
    t2 -= (frac(m - j + 1, m + j) + frac(m + j + 1, m - j)) * head[static_cast<size_t>(j)];
  }
  return {t1, t2};
}

std::vector<mpq_class> isotropyRowValues(const CoefficientTables& t, const std::vector<mpq_class>& tau) {
  const int s = 3 * t.k;
  if (static_cast<int>(tau.size()) != s + 3) throw Error(ErrorCode::DimensionMismatch, "tau has wrong length");
  const mpq_class& ts1 = tau[static_cast<size_t>(s + 1)];
  const mpq_class& ts2 = tau[static_cast<size_t>(s + 2)];
  std::vector<mpq_class> out;
  for (int i = 0; i < t.k; ++i) {
    const auto& a = t.a[static_cast<size_t>(i)];
    const auto& b = t.b[static_cast<size_t>(i)];
    const auto& c = t.c[static_cast<size_t>(i)];
    mpq_class ra = a[0] * tau[0];
    mpq_class rb = b[static_cast<size_t>(s + 2)] * ts2 + b[0] * tau[0];
    mpq_class rc = c[static_cast<size_t>(s + 2)] * (frac(2 * (t.m + 1), t.m) * ts1 + ts2 / t.m) + c[0] * tau[0];
    for (int j = 1; j <= s; ++j) {
      ra += 2 * a[static_cast<size_t>(j)] * tau[static_cast<size_t>(j)];
      rb += b[static_cast<size_t>(j)] * tau[static_cast<size_t>(j)];
      rc += 2 * c[static_cast<size_t>(j)] * tau[static_cast<size_t>(j)];
    }
    out.push_back(ra);
    out.push_back(rb);
    out.push_back(rc);
  }
  return out;
}

TauVector solveTau(int k, int m, const std::vector<mpq_class>& freeParams, std::uint64_t seed) {
  const CoefficientTables tables = coefficientTables(k, m);
  const int s = 3 * k;
  const int cols = s + 1;
  // Each row is linear in tau_0..tau_s once tau_{s+1}, tau_{s+2} are
  // eliminated, so its coefficients are the row values at unit vectors.
  detail::ExactMatrix<mpq_class> rows(static_cast<size_t>(3 * k), std::vector<mpq_class>(static_cast<size_t>(cols)));
  for (int u = 0; u < cols; ++u) {
    std::vector<mpq_class> head(static_cast<size_t>(cols), mpq_class(0));
    head[static_cast<size_t>(u)] = 1;
    const auto [t1, t2] = eliminatedTau(m, head);
    head.push_back(t1);
    head.push_back(t2);
    const std::vector<mpq_class> vals = isotropyRowValues(tables, head);
    for (size_t r = 0; r < vals.size(); ++r) rows[r][static_cast<size_t>(u)] = vals[r];
  }
  const auto basisVecs = detail::nullspace(rows, cols);
  if (basisVecs.empty()) throw Error(ErrorCode::NoNontrivialSolution, "the isotropy system has only the zero solution");

  const long n = 2L * m + 1;
  auto combine = [&](const std::vector<mpq_class>& w) {
    std::vector<mpq_class> head(static_cast<size_t>(cols), mpq_class(0));
    for (size_t b = 0; b < basisVecs.size(); ++b)
      for (int j = 0; j < cols; ++j) head[static_cast<size_t>(j)] += w[b] * basisVecs[b][static_cast<size_t>(j)];
    return head;
  };
  auto finish = [&](std::vector<mpq_class> head, const std::vector<mpq_class>& w) {
    if (sgn(head[0]) != 0) {
      const mpq_class f = mpq_class(2 * m) / head[0];
      for (auto& h : head) h *= f;
    }
    const auto [t1, t2] = eliminatedTau(m, head);
    head.push_back(t1);
    head.push_back(t2);
    TauVector out;
    out.k = k;
    out.m = m;
    out.tau = std::move(head);
    out.nullity = static_cast<int>(basisVecs.size());
    out.weights = w;
    return out;
  };
  // Generic means v_l, v_0 and v_{2n} of the assembled datum are all nonzero.
  auto generic = [&](const std::vector<mpq_class>& head) {
    const auto [t1, t2] = eliminatedTau(m, head);
    return sgn(head[0]) != 0 && sgn(t1) != 0 && sgn(t2 + (n + 1) * t1) != 0;
  };

  if (!freeParams.empty()) {
    if (freeParams.size() != basisVecs.size()) {
      throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(basisVecs.size()) + " free parameters");
    }
    const auto head = combine(freeParams);
    if (std::all_of(head.begin(), head.end(), [](const mpq_class& q) { return sgn(q) == 0; })) {
      throw Error(ErrorCode::NoNontrivialSolution, "free parameters select the zero solution");
    }
    return finish(head, freeParams);
  }

  // Deterministic weights: i+2 for seed 0 (the first basis vector alone can
  // be degenerate), small pseudo-random integers otherwise. A few shifted
  // retries guard against landing on a degenerate combination.
  std::mt19937_64 rng(seed);
  std::vector<mpq_class> base(basisVecs.size());
  for (size_t i = 0; i < base.size(); ++i) base[i] = seed == 0 ? mpq_class(static_cast<long>(i) + 2) : mpq_class(static_cast<long>(rng() % 9) + 1);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<mpq_class> w = base;
    for (size_t i = 0; i < w.size(); ++i) w[i] += attempt * static_cast<long>(i + 1);
    const auto head = combine(w);
    if (generic(head)) return finish(head, w);
  }
  throw Error(ErrorCode::NoNontrivialSolution, "no generic solution found among the tried combinations");
}

// ------------------------------------------------------------- assembly

std::vector<GaussRat> WeierstrassData::coefficient(int j) const {
  std::vector<GaussRat> v(xz.dim());
  for (size_t c = 0; c < xz.dim(); ++c) v[c] = xz.num[c].coeff(j);
  return v;
}

WeierstrassData assembleVectors(const TauVector& tv) {
  const int k = tv.k, m = tv.m, s = 3 * k;
  if (static_cast<int>(tv.tau.size()) != s + 3) throw Error(ErrorCode::DimensionMismatch, "tau has wrong length");
  const int n = 2 * m + 1, l = m + 1, dim = 2 * s + 3;
  const mpq_class& tau0 = tv.tau[0];

  // v_l = c e_3 needs c^2 = t tau_0 with c Gaussian-rational.
  mpq_class t = 1, root;
  GaussRat c;
  if (rationalSqrt(tau0, root)) {
    c = GaussRat(root);
  } else if (rationalSqrt(-tau0, root)) {
    c = GaussRat(0, root);
  } else {
    t = tau0;
    c = GaussRat(tau0);
  }
  auto target = [&](int j) { return GaussRat(t * tv.tau[static_cast<size_t>(j)] / 2); };

  std::vector<RatVec> v(static_cast<size_t>(2 * n + 1), RatVec(static_cast<size_t>(dim)));
  auto at = [&](int j) -> RatVec& { return v.at(static_cast<size_t>(j)); };
  at(l) = basis(dim, 3, c);
  for (int j = 1; j <= s; ++j) {
    at(l - j) = addVec(basis(dim, 2 * j + 2), basis(dim, 2 * j + 3, -GaussRat::i()));
    at(l + j) = addVec(basis(dim, 2 * j + 2, target(j)), basis(dim, 2 * j + 3, target(j) * GaussRat::i()));
  }
  const RatVec plus = addVec(basis(dim, 1), basis(dim, 2, GaussRat::i()));
  at(2 * l) = addVec(basis(dim, 1), basis(dim, 2, -GaussRat::i()));
  at(0) = scaledVec(plus, target(s + 1));
  at(n) = scaledVec(plus, target(s + 2));
  at(2 * n) = addVec(scaledVec(at(n), GaussRat::ratio(1, n - 1)), scaledVec(at(0), GaussRat::ratio(n + 1, n - 1)));
  for (int j = -s; j <= s; ++j) {
    const int J = l + j;
    at(n + J) = scaledVec(at(J), GaussRat::ratio(n - J + 1, J - 1));
  }
  if (isZeroVec(at(0)) || isZeroVec(at(2 * n)) || isZeroVec(at(2 * l))) {
    throw Error(ErrorCode::InconsistentTargets, "tau targets force v_0, v_2l or v_2n to vanish");
  }

  WeierstrassData w;
  w.kind = "weierstrass";
  w.ambientDim = dim;
  w.k = k;
  w.m = m;
  w.n = n;
  w.xz = fromCoefficients(v, dim, standardDenominator(n));
  w.generator = "isotropic-planar-ends";
  w.scale = GaussRat(t);
  w.tau = tv.tau;
  return w;
}

WeierstrassData generate(int k, int m, std::uint64_t seed) {
  WeierstrassData w = assembleVectors(solveTau(k, m, {}, seed));
  w.seed = seed;
  return w;
}

GaussRat LambdaTable::at(int i, int j) const {
  const auto it = entries.find({std::min(i, j), std::max(i, j)});
  return it == entries.end() ? GaussRat(0) : it->second;
}

LambdaTable lambdaTable(const WeierstrassData& w) {
  int deg = -1;
  for (const CPoly& p : w.xz.num) deg = std::max(deg, p.degree());
  std::vector<RatVec> v;
  for (int j = 0; j <= deg; ++j) v.push_back(w.coefficient(j));
  LambdaTable out;
  for (int i = 0; i <= deg; ++i) {
    if (isZeroVec(v[static_cast<size_t>(i)])) continue;
    for (int j = i; j <= deg; ++j) {
      GaussRat acc;
      for (size_t c = 0; c < v[static_cast<size_t>(i)].size(); ++c) acc += v[static_cast<size_t>(i)][c] * v[static_cast<size_t>(j)][c];
      if (!acc.isZero()) out.entries[{i, j}] = acc / w.scale;
    }
  }
  return out;
}

// -------------------------------------------------------------- verifiers

ConformalReport verifyConformal(const VRatFn& xz) {
  ConformalReport r;
  r.pairing = bilinearPairingRat(xz, xz);
  r.degenerate = std::all_of(xz.num.begin(), xz.num.end(), [](const CPoly& p) { return p.isZero(); });
  const auto& cs = r.pairing.num.coeffs();
  for (size_t j = 0; j < cs.size(); ++j)
    if (!cs[j].isZero()) r.offendingPowers.push_back(static_cast<int>(j));
  r.pass = r.offendingPowers.empty();
  return r;
}

const char* endClassName(EndClass c) {
  switch (c) {
    case EndClass::PlanarEnd: return "planar-end";
    case EndClass::NonPlanarPole: return "non-planar-pole";
    case EndClass::Regular: return "regular";
    case EndClass::BranchPoint: return "branch-point";
  }
  return "unknown";
}

std::vector<cplx> finitePoles(const WeierstrassData& w) {
  const VRatFn f = w.xz.reduce();
  std::vector<cplx> poles;
  const int n = standardStructure(f.den);
  if (n > 0) {
    poles.push_back(0.0);
    for (int j = 1; j <= n; ++j) poles.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / n));
    return poles;
  }
  const CPoly g = gcd(f.den, f.den.derivative());
  const CPoly sqfree = g.degree() > 0 ? divmod(f.den, g).first : f.den;
  return squarefreeRoots(sqfree);
}

EndReport verifyPlanarEnds(const VRatFn& xz, double tol) {
  WeierstrassData w;
  w.xz = xz;
  return verifyPlanarEnds(w, tol);
}

EndReport verifyPlanarEnds(const WeierstrassData& w, double tol) {
  const VRatFn f = w.xz.reduce();
  EndReport rep;
  const std::vector<cplx> den = f.den.toComplex();
  for (const cplx& p : finitePoles(w)) {
    const int order = rootMultiplicity(den, p);
    EndInfo e = classifyPole(f, p, order, tol);
    if (e.cls == EndClass::PlanarEnd) ++rep.planarCount;
    rep.ends.push_back(std::move(e));
  }

  // At infinity, x_w = -z^2 x_z with w = 1/z, so x_z ~ z^{-2} is the regular
  // immersed case and a faster decay is a branch point.
  EndInfo inf;
  inf.atInfinity = true;
  const int excess = f.den.degree() - maxNumDegree(f);
  if (maxNumDegree(f) < 0 || excess > 2) {
    inf.cls = EndClass::BranchPoint;
  } else if (excess == 2) {
    inf.cls = EndClass::Regular;
    rep.infinityRegular = true;
  } else {
    VRatFn g = f.inverted();  // f(1/w)
    g.den = g.den * CPoly::monomial(2);
    for (CPoly& p : g.num) p = p.scaled(GaussRat(-1));
    g = g.reduce();
    const int order = rootMultiplicity(g.den.toComplex(), 0.0);
    inf = classifyPole(g, 0.0, order, tol);
    inf.atInfinity = true;
    if (inf.cls == EndClass::PlanarEnd) ++rep.planarCount;
  }
  rep.ends.push_back(std::move(inf));
  return rep;
}

IsotropyResult isotropyOrder(const VRatFn& xz) {
  if (std::all_of(xz.num.begin(), xz.num.end(), [](const CPoly& p) { return p.isZero(); })) {
    throw Error(ErrorCode::DegenerateInput, "constant map has no isotropy order");
  }
  // The a-th derivative of P/D is N_a / D^{a+1} with
  // N_{a+1} = N_a' D - (a+1) N_a D', so its self-pairing vanishes exactly
  // when the polynomial pairing of N_a does.
  const CPoly& d = xz.den;
  const CPoly dd = d.derivative();
  std::vector<CPoly> na = xz.num;
  // Once the osculating spaces stop growing (after at most dim steps) all
  // higher derivatives lie in their span, so dim vanishing orders imply
  // vanishing for every order.
  const int bound = static_cast<int>(xz.dim());
  IsotropyResult res;
  for (int a = 0; a < bound; ++a) {
    CPoly pairing;
    for (const CPoly& p : na) pairing += p * p;
    if (!pairing.isZero()) {
      if (a == 0) throw Error(ErrorCode::NotConformal, "<x_z, x_z> is not identically zero");
      res.order = a - 1;
      res.firstNonvanishing = a + 1;
      return res;
    }
    for (CPoly& p : na) p = p.derivative() * d - p * dd.scaled(GaussRat(a + 1));
  }
  res.order = bound - 1;
  res.total = true;
  return res;
}

// --------------------------------------------------------- closed forms

WeierstrassData buildBryantPengXiao(int m) {
  if (m < 1) throw Error(ErrorCode::ParameterDomain, "m must be positive");
  const int n = 2 * m + 1;
  const CPoly r = CPoly::constant(GaussRat(m)) + CPoly::monomial(n, GaussRat(m + 1));
  const CPoly r2 = r * r;
  const CPoly zl = CPoly::monomial(m + 1);
  const CPoly z2l = CPoly::monomial(2 * m + 2);
  // R^2 (e1 + i e2) - z^{2m+2} (e1 - i e2) + 2 z^{m+1} R e3
  WeierstrassData w;
  w.kind = "weierstrass";
  w.ambientDim = 3;
  w.k = 0;
  w.m = m;
  w.n = n;
  w.xz.num = {r2 - z2l, (r2 + z2l).scaled(GaussRat::i()), (zl * r).scaled(GaussRat(2))};
  w.xz.den = standardDenominator(n);
  w.generator = "bryant-peng-xiao";
  return w;
}

WeierstrassData buildR4Example(int m) {
  if (m < 2) throw Error(ErrorCode::ParameterDomain, "the R^4 example needs m >= 2");
  // F = A (e1 + i e2) + B (e1 - i e2) + C (e3 + i e4) + D (e3 - i e4) over the
  // common denominator z (z^{2m} - 1):
  //   A = ((m+1)/(m-1) z^{2m} - 1) / 2,  B = -z / (2m),
  //   C = z^m / (m-1),                   D = z^{m+1} / (2m).
  const GaussRat one(1);
  const CPoly a = (CPoly::monomial(2 * m, GaussRat::ratio(m + 1, m - 1)) - CPoly::constant(one)).scaled(GaussRat::ratio(1, 2));
  const CPoly b = CPoly::monomial(1, GaussRat::ratio(-1, 2 * m));
  const CPoly c = CPoly::monomial(m, GaussRat::ratio(1, m - 1));
  const CPoly d = CPoly::monomial(m + 1, GaussRat::ratio(1, 2 * m));
  const GaussRat i = GaussRat::i();
  VRatFn f;
  f.num = {a + b, (a - b).scaled(i), c + d, (c - d).scaled(i)};
  f.den = CPoly::monomial(1) * (CPoly::monomial(2 * m) - CPoly::constant(one));
  WeierstrassData w;
  w.kind = "closed-form";
  w.ambientDim = 4;
  w.m = m;
  w.primitive = f;
  w.xz = ratDerivative(f).reduce();
  w.n = standardStructure(w.xz.den);
  w.generator = "r4-non-isotropic";
  return w;
}

WeierstrassData buildTotallyIsotropicExample() {
  const GaussRat i = GaussRat::i();
  const RatVec v0 = {GaussRat(1), i, GaussRat(0), GaussRat(0)};
  const RatVec v3 = {GaussRat(0), GaussRat(0), GaussRat(1), i};
  const RatVec v2 = addVec(v0, v3);
  const RatVec v4 = addVec(scaledVec(v0, GaussRat(3)), v2);
  const RatVec zero(4);
  WeierstrassData w;
  w.kind = "weierstrass";
  w.ambientDim = 4;
  w.m = 0;
  w.n = 2;
  w.xz = fromCoefficients({v0, zero, v2, v3, v4}, 4, standardDenominator(2));
  w.generator = "totally-isotropic-r4";
  return w;
}

VRatFn integratePrimitive(const WeierstrassData& w) {
  if (w.primitive) return *w.primitive;
  const int n = standardStructure(w.xz.den);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "integration needs the pole structure z^2 (z^n - 1)^2");
  const GaussRat lead = w.xz.den.coeff(w.xz.den.degree());
  // F = A / (z (z^n - 1)) with deg A <= n+1 and the gauge a_{n+1} = 0, i.e.
  // F(infinity) = 0. Matching z^t in F' gives
  //   P_t = (1 - t) a_t + (t - 2n - 1) a_{t-n}.
  const int cols = n + 1;
  const int rows = 2 * n + 2;
  detail::ExactMatrix<GaussRat> mat(static_cast<size_t>(rows), std::vector<GaussRat>(static_cast<size_t>(cols)));
  for (int t = 0; t < rows; ++t) {
    if (t < cols) mat[static_cast<size_t>(t)][static_cast<size_t>(t)] = GaussRat(1 - t);
    if (t - n >= 0 && t - n < cols) mat[static_cast<size_t>(t)][static_cast<size_t>(t - n)] = GaussRat(t - 2 * n - 1);
  }
  VRatFn f;
  f.den = CPoly::monomial(1) * (CPoly::monomial(n) - CPoly::constant(GaussRat(1)));
  for (size_t c = 0; c < w.xz.dim(); ++c) {
    const CPoly& p = w.xz.num[c];
    if (p.degree() >= rows) throw Error(ErrorCode::InvalidArgument, "numerator degree exceeds 2n+1");
    std::vector<GaussRat> rhs(static_cast<size_t>(rows));
    for (int t = 0; t < rows; ++t) rhs[static_cast<size_t>(t)] = p.coeff(t) / lead;
    std::vector<GaussRat> a;
    if (!detail::solveExact(mat, rhs, cols, a)) {
      throw Error(ErrorCode::NonzeroResidue, "component " + std::to_string(c + 1) + " has a nonzero residue");
    }
    f.num.push_back(CPoly(a));
  }
  return f;
}

}  // namespace wm
