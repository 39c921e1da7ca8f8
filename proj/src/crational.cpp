#include "willmore/crational.hpp"

#include <algorithm>
#include <cmath>

#include "willmore/error.hpp"

namespace wm {

// ---------------------------------------------------------------- GaussRat

GaussRat GaussRat::ratio(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return GaussRat(q, 0);
}

std::array<std::string, 4> GaussRat::toStrings() const {
  return {re.get_num().get_str(), re.get_den().get_str(), im.get_num().get_str(),
          im.get_den().get_str()};
}

GaussRat GaussRat::fromStrings(const std::array<std::string, 4>& parts) {
  auto part = [](const std::string& num, const std::string& den) {
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
      throw Error(ErrorCode::Parse, "not a decimal integer: '" + num + "' / '" + den + "'");
    }
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  };
  return GaussRat(part(parts[0], parts[1]), part(parts[2], parts[3]));
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.isZero()) throw Error(ErrorCode::InvalidArgument, "division by zero Gaussian rational");
  const mpq_class n = o.re * o.re + o.im * o.im;
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

std::string formatGaussRat(const GaussRat& q) {
  if (sgn(q.im) == 0) return q.re.get_str();
  return "(" + q.re.get_str() + (sgn(q.im) < 0 ? "" : "+") + q.im.get_str() + "i)";
}

// ------------------------------------------------------------------- CPoly

CPoly::CPoly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { normalize(); }

CPoly CPoly::constant(const GaussRat& c) { return CPoly(std::vector<GaussRat>{c}); }

CPoly CPoly::monomial(int degree, const GaussRat& c) {
  std::vector<GaussRat> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return CPoly(std::move(v));
}

void CPoly::normalize() {
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
}

GaussRat CPoly::coeff(int j) const {
  if (j < 0 || j > degree()) return GaussRat();
  return c_[static_cast<size_t>(j)];
}

CPoly CPoly::derivative() const {
  if (c_.size() <= 1) return CPoly();
  std::vector<GaussRat> d(c_.size() - 1);
  for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = c_[j] * GaussRat(static_cast<long>(j));
  return CPoly(std::move(d));
}

CPoly CPoly::scaled(const GaussRat& s) const {
  std::vector<GaussRat> d = c_;
  for (auto& x : d) x *= s;
  return CPoly(std::move(d));
}

GaussRat CPoly::eval(const GaussRat& z) const {
  GaussRat acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx CPoly::eval(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->toComplex();
  return acc;
}

std::vector<cplx> CPoly::toComplex() const {
  std::vector<cplx> out(c_.size());
  for (size_t j = 0; j < c_.size(); ++j) out[j] = c_[j].toComplex();
  return out;
}

CPoly CPoly::reversed(int d) const {
  if (d < degree()) throw Error(ErrorCode::InvalidArgument, "reversal degree below polynomial degree");
  std::vector<GaussRat> out(static_cast<size_t>(d) + 1);
  for (int j = 0; j <= degree(); ++j) out[static_cast<size_t>(d - j)] = c_[static_cast<size_t>(j)];
  return CPoly(std::move(out));
}

CPoly& CPoly::operator+=(const CPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  normalize();
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
  normalize();
  return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.isZero() || b.isZero()) return CPoly();
  std::vector<GaussRat> out(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].isZero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].isZero()) continue;
      out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return CPoly(std::move(out));
}

CPoly pow(const CPoly& p, int e) {
  CPoly r = CPoly::constant(GaussRat(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

std::pair<CPoly, CPoly> divmod(const CPoly& a, const CPoly& b) {
  if (b.isZero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<GaussRat> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {CPoly(), a};
  std::vector<GaussRat> quo(static_cast<size_t>(da - db) + 1);
  const GaussRat lead = b.coeff(db);
  for (int k = da - db; k >= 0; --k) {
    const GaussRat q = rem[static_cast<size_t>(k + db)] / lead;
    quo[static_cast<size_t>(k)] = q;
    if (q.isZero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k + j)] -= q * b.coeff(j);
  }
  return {CPoly(std::move(quo)), CPoly(std::move(rem))};
}

CPoly gcd(CPoly a, CPoly b) {
  while (!b.isZero()) {
    CPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.isZero()) return a;
  return a.scaled(GaussRat(1) / a.coeff(a.degree()));
}

// ------------------------------------------------------------------ VRatFn

CplxVec VRatFn::eval(cplx z) const {
  const cplx d = den.eval(z);
  CplxVec out(static_cast<Eigen::Index>(num.size()));
  for (size_t i = 0; i < num.size(); ++i) out[static_cast<Eigen::Index>(i)] = num[i].eval(z) / d;
  return out;
}

VRatFn VRatFn::reduce() const {
  CPoly g = den;
  for (const CPoly& p : num) g = gcd(g, p);
  VRatFn out;
  out.den = divmod(den, g).first;
  for (const CPoly& p : num) out.num.push_back(divmod(p, g).first);
  const GaussRat lead = out.den.coeff(out.den.degree());
  const GaussRat inv = GaussRat(1) / lead;
  out.den = out.den.scaled(inv);
  for (CPoly& p : out.num) p = p.scaled(inv);
  return out;
}

VRatFn VRatFn::inverted() const {
  int d = den.degree();
  for (const CPoly& p : num) d = std::max(d, p.degree());
  VRatFn out;
  out.den = den.reversed(d);
  for (const CPoly& p : num) out.num.push_back(p.isZero() ? CPoly() : p.reversed(d));
  return out;
}

VRatFn ratDerivative(const VRatFn& f) {
  VRatFn out;
  const CPoly dden = f.den.derivative();
  out.den = f.den * f.den;
  for (const CPoly& p : f.num) out.num.push_back(p.derivative() * f.den - p * dden);
  return out;
}

VRatFn add(const VRatFn& f, const VRatFn& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "rational function dimensions differ");
  VRatFn out;
  if (f.den == g.den) {
    out.den = f.den;
    for (size_t i = 0; i < f.dim(); ++i) out.num.push_back(f.num[i] + g.num[i]);
    return out;
  }
  out.den = f.den * g.den;
  for (size_t i = 0; i < f.dim(); ++i) out.num.push_back(f.num[i] * g.den + g.num[i] * f.den);
  return out;
}

RatFn bilinearPairingRat(const VRatFn& f, const VRatFn& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "rational function dimensions differ");
  RatFn out;
  out.den = f.den * g.den;
  for (size_t i = 0; i < f.dim(); ++i) out.num += f.num[i] * g.num[i];
  return out;
}

// ------------------------------------------------------- floating helpers

namespace {

// Coefficients of p(z0 + t) in powers of t.
std::vector<cplx> shifted(std::vector<cplx> p, cplx z0) {
  const size_t n = p.size();
  for (size_t k = 0; k + 1 < n; ++k) {
    for (size_t j = n - 1; j > k; --j) p[j - 1] += z0 * p[j];
  }
  return p;
}

std::vector<cplx> seriesDivide(const std::vector<cplx>& a, const std::vector<cplx>& b, int order) {
  if (b.empty() || b[0] == cplx(0.0)) {
    throw Error(ErrorCode::PoleOrderMismatch, "denominator vanishes at the expansion point");
  }
  std::vector<cplx> q(static_cast<size_t>(order) + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    cplx acc = k < static_cast<int>(a.size()) ? a[static_cast<size_t>(k)] : cplx(0.0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) {
      acc -= b[static_cast<size_t>(j)] * q[static_cast<size_t>(k - j)];
    }
    q[static_cast<size_t>(k)] = acc / b[0];
  }
  return q;
}

// Synthetic division by (z - p); returns quotient, stores remainder.
std::vector<cplx> deflate(const std::vector<cplx>& poly, cplx p, cplx& remainder) {
  if (poly.empty()) {
    remainder = 0.0;
    return {};
  }
  const size_t n = poly.size();
  std::vector<cplx> q(n - 1);
  cplx acc = poly[n - 1];
  for (size_t j = n - 1; j > 0; --j) {
    q[j - 1] = acc;
    acc = poly[j - 1] + p * acc;
  }
  remainder = acc;
  return q;
}

// Deflate den by (z-p)^order, checking that the multiplicity is exact.
std::vector<cplx> deflatePole(const CPoly& den, cplx pole, int order) {
  std::vector<cplx> d = den.toComplex();
  const int mult = rootMultiplicity(d, pole);
  if (mult != order) {
    throw Error(ErrorCode::PoleOrderMismatch, "denominator root multiplicity " + std::to_string(mult) +
                                                  " differs from requested order " + std::to_string(order));
  }
  for (int k = 0; k < order; ++k) {
    cplx r;
    d = deflate(d, pole, r);
  }
  return d;
}

}  // namespace

std::vector<cplx> taylorCoefficients(const CPoly& num, const CPoly& den, cplx z0, int order) {
  return seriesDivide(shifted(num.toComplex(), z0), shifted(den.toComplex(), z0), order);
}

int rootMultiplicity(const std::vector<cplx>& poly, cplx p, double relTol) {
  std::vector<cplx> cur = poly;
  int mult = 0;
  while (cur.size() > 1) {
    cplx r;
    std::vector<cplx> q = deflate(cur, p, r);
    // Compare the remainder against the size of the terms that produced it.
    double scale = 0.0;
    double zp = 1.0;
    for (const cplx& c : cur) {
      scale = std::max(scale, std::abs(c) * zp);
      zp *= std::max(1.0, std::abs(p));
    }
    if (std::abs(r) > relTol * std::max(scale, 1e-300)) break;
    cur = std::move(q);
    ++mult;
  }
  return mult;
}

cplx residueNumeric(const CPoly& num, const CPoly& den, cplx pole, int poleOrder) {
  if (poleOrder < 1) throw Error(ErrorCode::PoleOrderMismatch, "pole order must be positive");
  const std::vector<cplx> q = deflatePole(den, pole, poleOrder);
  const std::vector<cplx> g =
      seriesDivide(shifted(num.toComplex(), pole), shifted(q, pole), poleOrder - 1);
  return g[static_cast<size_t>(poleOrder - 1)];
}

CplxVec residueNumeric(const VRatFn& f, cplx pole, int poleOrder) {
  if (poleOrder < 1) throw Error(ErrorCode::PoleOrderMismatch, "pole order must be positive");
  const std::vector<cplx> qs = shifted(deflatePole(f.den, pole, poleOrder), pole);
  CplxVec out(static_cast<Eigen::Index>(f.dim()));
  for (size_t i = 0; i < f.dim(); ++i) {
    const std::vector<cplx> g = seriesDivide(shifted(f.num[i].toComplex(), pole), qs, poleOrder - 1);
    out[static_cast<Eigen::Index>(i)] = g[static_cast<size_t>(poleOrder - 1)];
  }
  return out;
}

CplxVec leadingLaurent(const VRatFn& f, cplx pole, int poleOrder) {
  const std::vector<cplx> q = deflatePole(f.den, pole, poleOrder);
  cplx qv = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) qv = qv * pole + *it;
  CplxVec out(static_cast<Eigen::Index>(f.dim()));
  for (size_t i = 0; i < f.dim(); ++i) out[static_cast<Eigen::Index>(i)] = f.num[i].eval(pole) / qv;
  return out;
}

}  // namespace wm
