#include "willmore/jet.hpp"

#include <algorithm>
#include <cmath>

#include "willmore/error.hpp"

namespace wm {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Jet::Jet(int order) : order_(order), c_(sizeFor(order), cplx(0.0)) {}

Jet Jet::constant(int order, cplx v) {
  Jet j(order);
  j.c_[0] = v;
  return j;
}

Jet Jet::zVar(int order, cplx z0) {
  Jet j = constant(order, z0);
  if (order >= 1) j.coeffRef(1, 0) = 1.0;
  return j;
}

Jet Jet::zbarVar(int order, cplx z0) {
  Jet j = constant(order, std::conj(z0));
  if (order >= 1) j.coeffRef(0, 1) = 1.0;
  return j;
}

Jet Jet::holomorphic(int order, const std::vector<cplx>& taylor) {
  Jet j(order);
  for (int a = 0; a <= order && a < static_cast<int>(taylor.size()); ++a) j.coeffRef(a, 0) = taylor[a];
  return j;
}

cplx Jet::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) return 0.0;
  return c_[index(a, b)];
}

cplx Jet::derivative(int a, int b) const { return coeff(a, b) * factorial(a) * factorial(b); }

Jet Jet::dz() const {
  if (order_ < 1) throw Error(ErrorCode::InvalidArgument, "jet order exhausted by differentiation");
  Jet out(order_ - 1);
  for (int d = 0; d <= order_ - 1; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      out.c_[index(a, b)] = static_cast<double>(a + 1) * c_[index(a + 1, b)];
    }
  }
  return out;
}

Jet Jet::dzb() const {
  if (order_ < 1) throw Error(ErrorCode::InvalidArgument, "jet order exhausted by differentiation");
  Jet out(order_ - 1);
  for (int d = 0; d <= order_ - 1; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      out.c_[index(a, b)] = static_cast<double>(b + 1) * c_[index(a, b + 1)];
    }
  }
  return out;
}

Jet Jet::conj() const {
  Jet out(order_);
  for (int d = 0; d <= order_; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      out.c_[index(b, a)] = std::conj(c_[index(a, b)]);
    }
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet out(order);
  std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(sizeFor(order)), out.c_.begin());
  return out;
}

double Jet::maxAbs() const {
  double m = 0.0;
  for (const cplx& x : c_) m = std::max(m, std::abs(x));
  return m;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  for (cplx& x : c_) x *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (cplx& x : out.c_) x = -x;
  return out;
}

Jet operator+(Jet a, cplx s) {
  if (!a.c_.empty()) a.c_[0] += s;
  return a;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int J = std::min(a.order_, b.order_);
  Jet out(J);
  for (int d1 = 0; d1 <= J; ++d1) {
    for (int b1 = 0; b1 <= d1; ++b1) {
      const cplx x = a.c_[Jet::index(d1 - b1, b1)];
      if (x == cplx(0.0)) continue;
      for (int d2 = 0; d2 <= J - d1; ++d2) {
        const size_t base = Jet::index(d1 - b1 + d2, b1);  // (a1 + d2 - b2, b1 + b2) at b2 = 0
        for (int b2 = 0; b2 <= d2; ++b2) {
          // index(a1 + a2, b1 + b2) with a2 = d2 - b2 equals base + b2 because
          // the total degree d1 + d2 is fixed along this inner loop.
          out.c_[base + static_cast<size_t>(b2)] += x * b.c_[Jet::index(d2 - b2, b2)];
        }
      }
    }
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

Jet composeSeries(const Jet& f, const std::vector<cplx>& coeffs) {
  Jet h = f;
  h.coeffRef(0, 0) = 0.0;
  const int K = std::min(static_cast<int>(coeffs.size()) - 1, f.order());
  Jet r = Jet::constant(f.order(), coeffs[static_cast<size_t>(K)]);
  for (int k = K - 1; k >= 0; --k) r = r * h + coeffs[static_cast<size_t>(k)];
  return r;
}

Jet inverse(const Jet& f) {
  const cplx v = f.value();
  if (std::abs(v) == 0.0) throw Error(ErrorCode::DivisionByZeroJet, "constant term is zero");
  std::vector<cplx> c(static_cast<size_t>(f.order()) + 1);
  cplx p = 1.0 / v;
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] = p;
    p *= -1.0 / v;
  }
  return composeSeries(f, c);
}

Jet exp(const Jet& f) {
  const cplx e = std::exp(f.value());
  std::vector<cplx> c(static_cast<size_t>(f.order()) + 1);
  for (size_t k = 0; k < c.size(); ++k) c[k] = e / factorial(static_cast<int>(k));
  return composeSeries(f, c);
}

Jet log(const Jet& f) {
  const cplx v = f.value();
  if (std::abs(v) == 0.0) throw Error(ErrorCode::NonpositiveBranch, "log of a jet with zero constant term");
  std::vector<cplx> c(static_cast<size_t>(f.order()) + 1);
  c[0] = std::log(v);
  cplx p = 1.0;
  for (size_t k = 1; k < c.size(); ++k) {
    p /= v;
    c[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / static_cast<double>(k);
  }
  return composeSeries(f, c);
}

Jet pow(const Jet& f, double alpha) {
  const cplx v = f.value();
  if (std::abs(v) == 0.0) throw Error(ErrorCode::NonpositiveBranch, "power of a jet with zero constant term");
  std::vector<cplx> c(static_cast<size_t>(f.order()) + 1);
  double binom = 1.0;
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] = binom * std::pow(v, alpha - static_cast<double>(k));
    binom *= (alpha - static_cast<double>(k)) / static_cast<double>(k + 1);
  }
  return composeSeries(f, c);
}

Jet sqrt(const Jet& f) { return pow(f, 0.5); }

// ------------------------------------------------------------- jet vectors

namespace {

void requireSameDim(const JetVec& u, const JetVec& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "jet vector dimensions differ");
}

}  // namespace

Jet mdot(const JetVec& u, const JetVec& v) {
  requireSameDim(u, v);
  if (u.empty()) return Jet(0);
  Jet acc = -(u[0] * v[0]);
  for (size_t i = 1; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

Jet edot(const JetVec& u, const JetVec& v) {
  requireSameDim(u, v);
  if (u.empty()) return Jet(0);
  Jet acc = u[0] * v[0];
  for (size_t i = 1; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

JetVec operator+(const JetVec& u, const JetVec& v) {
  requireSameDim(u, v);
  JetVec out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

JetVec operator-(const JetVec& u, const JetVec& v) {
  requireSameDim(u, v);
  JetVec out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

JetVec operator*(const Jet& s, const JetVec& v) {
  JetVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

JetVec operator*(cplx s, const JetVec& v) {
  JetVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
  return out;
}

JetVec dz(const JetVec& v) {
  JetVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].dz();
  return out;
}

JetVec dzb(const JetVec& v) {
  JetVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].dzb();
  return out;
}

JetVec conj(const JetVec& v) {
  JetVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].conj();
  return out;
}

JetVec truncated(const JetVec& v, int order) {
  JetVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].truncated(order);
  return out;
}

JetVec constantJetVec(const CplxVec& v, int order) {
  JetVec out(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<size_t>(i)] = Jet::constant(order, v[i]);
  return out;
}

CplxVec values(const JetVec& v) {
  CplxVec out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value();
  return out;
}

int orderOf(const JetVec& v) {
  int o = v.empty() ? -1 : v.front().order();
  for (const Jet& j : v) o = std::min(o, j.order());
  return o;
}

JetVec seedHolomorphic(const VRatFn& f, cplx z0, int order) {
  JetVec out(f.dim());
  for (size_t i = 0; i < f.dim(); ++i) {
    out[i] = Jet::holomorphic(order, taylorCoefficients(f.num[i], f.den, z0, order));
  }
  return out;
}

JetVec seedHarmonic(const VRatFn& f, cplx z0, int order) {
  const JetVec h = seedHolomorphic(f, z0, order);
  return h + conj(h);
}

}  // namespace wm
