#pragma once

// Independent numerical references used only by the tests: contour
// quadrature, finite differences and random Lorentz transformations. None of
// this shares code paths with the library routines being checked.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// (1 / 2 pi i) * contour integral of f over |z - c| = r, trapezoid rule.
inline Eigen::VectorXcd contourResidue(const std::function<Eigen::VectorXcd(cplx)>& f, cplx c, double r,
                                       int points = 256) {
  Eigen::VectorXcd acc;
  for (int k = 0; k < points; ++k) {
    const double t = 2.0 * std::numbers::pi * k / points;
    const cplx e = std::polar(1.0, t);
    const Eigen::VectorXcd v = f(c + r * e) * (r * e);  // dz / (2 pi i) = r e dt / (2 pi)
    if (k == 0) acc = v;
    else acc += v;
  }
  return acc / static_cast<double>(points);
}

// d/dz of a holomorphic function by a complex central difference.
inline cplx holoDerivative(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-6) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Wirtinger derivative d^2/(dz dzbar) = Laplacian / 4 of a function of (x, y),
// by a 5-point stencil.
inline cplx mixedWirtinger(const std::function<cplx(double, double)>& f, double x, double y, double h = 1e-4) {
  const cplx lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * f(x, y)) / (h * h);
  return lap / 4.0;
}

// d/dz = (d/dx - i d/dy) / 2 by central differences.
inline cplx dzFD(const std::function<cplx(double, double)>& f, double x, double y, double h = 1e-5) {
  const cplx fx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
  const cplx fy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
  return 0.5 * (fx - cplx(0, 1) * fy);
}

// A random orthochronous Lorentz transformation of R^{dim}_1 built from a boost
// along a random spatial direction and a random spatial rotation.
inline Eigen::MatrixXd randomLorentz(int dim, unsigned seed, double rapidity = 0.7) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = dim - 1;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd rot = qr.householderQ();
  Eigen::VectorXd dir(n);
  for (int i = 0; i < n; ++i) dir[i] = g(rng);
  dir.normalize();
  Eigen::MatrixXd boost = Eigen::MatrixXd::Identity(dim, dim);
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  boost(0, 0) = ch;
  boost.block(0, 1, 1, n) = sh * dir.transpose();
  boost.block(1, 0, n, 1) = sh * dir;
  boost.block(1, 1, n, n) += (ch - 1.0) * dir * dir.transpose();
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
  r.block(1, 1, n, n) = rot;
  return boost * r;
}

}  // namespace oracle
