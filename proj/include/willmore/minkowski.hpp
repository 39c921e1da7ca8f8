#pragma once

// Linear algebra on R^{n+2}_1 with signature (-,+,...,+) and on its
// complexification. The pairing is complex-bilinear: nothing is conjugated.

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace wm {

using cplx = std::complex<double>;
using MinkVec = Eigen::VectorXd;
using CplxVec = Eigen::VectorXcd;

double mdot(const MinkVec& u, const MinkVec& v);
cplx mdot(const CplxVec& u, const CplxVec& v);

// Unit coordinate vector e_i in dimension dim.
CplxVec unitVec(int dim, int i);

struct LorentzFrame {
  std::vector<MinkVec> vectors;
  std::vector<int> signs;  // self-pairing of each vector, -1 or +1
};

// Signed Gram-Schmidt in the given order; throws NullDirection when a
// partially projected vector is (numerically) light-like.
LorentzFrame lorentzGramSchmidt(const std::vector<MinkVec>& vs, double tol = 1e-10);

// Numerical rank from Euclidean singular values, relative to the largest.
int rankOf(const std::vector<CplxVec>& vs, double relTol = 1e-9);
std::vector<double> singularValues(const std::vector<CplxVec>& vs);

// Rank chosen at the largest consecutive singular-value ratio exceeding
// `ratio`; ambiguous when no such clean gap exists.
struct RankGap {
  int rank = 0;
  bool ambiguous = false;
  double gap = 0.0;
};
RankGap rankByGap(const std::vector<CplxVec>& vs, double ratio = 1e6, double absFloor = 1e-13);

struct SubspaceBasis {
  std::vector<CplxVec> vectors;
  bool realFlag = false;
  double rankTolerance = 1e-9;
};

SubspaceBasis subspaceIntersect(const SubspaceBasis& a, const SubspaceBasis& b, double tol = 1e-9);

// Orthonormal (Hermitian) basis for the span, dropping dependent directions.
std::vector<CplxVec> orthonormalSpan(const std::vector<CplxVec>& vs, double relTol = 1e-9);

// Relative Euclidean distance of v from span(basis): |v - P v| / |v|.
// Returns 0 for v = 0.
double containmentResidual(const CplxVec& v, const std::vector<CplxVec>& basis, double relTol = 1e-12);

// |<a,b>| / (|a||b|) with Euclidean coordinate norms; 0 if either is zero.
double relativePairing(const CplxVec& a, const CplxVec& b);

}  // namespace wm
