#pragma once

// Exact polynomial and rational-function calculus over the Gaussian
// rationals Q(i), plus floating-point helpers (Taylor expansion, residues)
// that read those exact objects.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "willmore/minkowski.hpp"

namespace wm {

struct GaussRat {
  mpq_class re;
  mpq_class im;

  GaussRat() : re(0), im(0) {}
  GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long r) : re(r), im(0) {}

  static GaussRat ratio(long num, long den);
  static GaussRat i() { return GaussRat(0, 1); }

  bool isZero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRat conj() const { return GaussRat(re, -im); }
  cplx toComplex() const { return {re.get_d(), im.get_d()}; }

  // [re_num, re_den, im_num, im_den] as decimal strings, canonical form.
  std::array<std::string, 4> toStrings() const;
  static GaussRat fromStrings(const std::array<std::string, 4>& parts);

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

std::string formatGaussRat(const GaussRat& q);

// Polynomial with ascending Gaussian-rational coefficients; trailing zeros are
// always stripped, and the zero polynomial has degree -1.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<GaussRat> coeffs);
  static CPoly constant(const GaussRat& c);
  static CPoly monomial(int degree, const GaussRat& c = GaussRat(1));

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool isZero() const { return c_.empty(); }
  const std::vector<GaussRat>& coeffs() const { return c_; }
  GaussRat coeff(int j) const;

  CPoly derivative() const;
  CPoly scaled(const GaussRat& s) const;
  GaussRat eval(const GaussRat& z) const;
  cplx eval(cplx z) const;
  std::vector<cplx> toComplex() const;
  // z^d p(1/z) for d >= degree().
  CPoly reversed(int d) const;

  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend bool operator==(const CPoly& a, const CPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const CPoly& a, const CPoly& b) { return !(a == b); }

 private:
  void normalize();
  std::vector<GaussRat> c_;
};

CPoly pow(const CPoly& p, int e);
std::pair<CPoly, CPoly> divmod(const CPoly& a, const CPoly& b);
CPoly gcd(CPoly a, CPoly b);  // monic, or zero when both inputs are zero

// Scalar rational function.
struct RatFn {
  CPoly num;
  CPoly den;
};

// Vector-valued rational function sharing a single denominator.
struct VRatFn {
  std::vector<CPoly> num;
  CPoly den;

  size_t dim() const { return num.size(); }
  CplxVec eval(cplx z) const;
  VRatFn reduce() const;
  // f(1/w) as a rational function of w.
  VRatFn inverted() const;
  RatFn component(size_t i) const { return {num.at(i), den}; }
};

VRatFn ratDerivative(const VRatFn& f);
VRatFn add(const VRatFn& f, const VRatFn& g);

// sum_i f_i g_i (Euclidean, complex-bilinear), not reduced.
RatFn bilinearPairingRat(const VRatFn& f, const VRatFn& g);

// Taylor coefficients p^{(a)}(z0)/a!, a = 0..order, of num/den at z0.
std::vector<cplx> taylorCoefficients(const CPoly& num, const CPoly& den, cplx z0, int order);

// Multiplicity of z = p as a root of a floating-point polynomial, decided by
// successive synthetic division with a relative remainder tolerance.
int rootMultiplicity(const std::vector<cplx>& poly, cplx p, double relTol = 1e-8);

// Residue at a pole of the given order via the derivative formula
// res = g_{order-1}, where g = (z-p)^order f expanded at p.
cplx residueNumeric(const CPoly& num, const CPoly& den, cplx pole, int poleOrder);
CplxVec residueNumeric(const VRatFn& f, cplx pole, int poleOrder);

// Leading Laurent vector lim (z-p)^order f(z).
CplxVec leadingLaurent(const VRatFn& f, cplx pole, int poleOrder);

}  // namespace wm
