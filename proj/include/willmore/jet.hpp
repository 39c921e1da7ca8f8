#pragma once

// Truncated bivariate Taylor series in (z - z0, zbar - zbar0). Coefficient
// (a, b) stores d_z^a d_zbar^b f(z0) / (a! b!), for a + b <= order.

#include <vector>

#include "willmore/crational.hpp"
#include "willmore/minkowski.hpp"

namespace wm {

class Jet {
 public:
  Jet() = default;
  explicit Jet(int order);

  static Jet constant(int order, cplx v);
  // The coordinate functions z and zbar around z0.
  static Jet zVar(int order, cplx z0);
  static Jet zbarVar(int order, cplx z0);
  // Holomorphic jet from Taylor coefficients f^{(a)}(z0)/a!.
  static Jet holomorphic(int order, const std::vector<cplx>& taylor);

  int order() const { return order_; }
  static size_t sizeFor(int order) { return static_cast<size_t>((order + 1) * (order + 2) / 2); }
  static size_t index(int a, int b) { return static_cast<size_t>((a + b) * (a + b + 1) / 2 + b); }

  cplx value() const { return c_.empty() ? cplx(0.0) : c_[0]; }
  cplx coeff(int a, int b) const;
  cplx& coeffRef(int a, int b) { return c_[index(a, b)]; }
  // The mixed derivative d_z^a d_zbar^b at the base point.
  cplx derivative(int a, int b) const;
  const std::vector<cplx>& data() const { return c_; }

  Jet dz() const;
  Jet dzb() const;
  Jet conj() const;
  Jet truncated(int order) const;
  double maxAbs() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(cplx s);
  Jet operator-() const;
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, cplx s);
  friend Jet operator-(Jet a, cplx s) { return a + (-s); }
  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  int order_ = -1;
  std::vector<cplx> c_;
};

// sum_k coeffs[k] (f - f(z0))^k, truncated at the jet order.
Jet composeSeries(const Jet& f, const std::vector<cplx>& coeffs);
Jet inverse(const Jet& f);
Jet exp(const Jet& f);
Jet log(const Jet& f);
Jet pow(const Jet& f, double alpha);
Jet sqrt(const Jet& f);

using JetVec = std::vector<Jet>;

Jet mdot(const JetVec& u, const JetVec& v);  // Lorentzian, bilinear
Jet edot(const JetVec& u, const JetVec& v);  // Euclidean, bilinear

JetVec operator+(const JetVec& u, const JetVec& v);
JetVec operator-(const JetVec& u, const JetVec& v);
JetVec operator*(const Jet& s, const JetVec& v);
JetVec operator*(cplx s, const JetVec& v);
JetVec dz(const JetVec& v);
JetVec dzb(const JetVec& v);
JetVec conj(const JetVec& v);
JetVec truncated(const JetVec& v, int order);
JetVec constantJetVec(const CplxVec& v, int order);
CplxVec values(const JetVec& v);
int orderOf(const JetVec& v);

// Jets of a holomorphic F (exact rational) and of x = F + conj(F).
JetVec seedHolomorphic(const VRatFn& f, cplx z0, int order);
JetVec seedHarmonic(const VRatFn& f, cplx z0, int order);

}  // namespace wm
