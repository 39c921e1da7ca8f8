#include "willmore/minkowski.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "willmore/error.hpp"

namespace wm {

namespace {

void requireSameDim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

Eigen::MatrixXcd columns(const std::vector<CplxVec>& vs) {
  if (vs.empty()) return Eigen::MatrixXcd(0, 0);
  Eigen::MatrixXcd m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j) {
    requireSameDim(vs[j].size(), m.rows());
    m.col(static_cast<Eigen::Index>(j)) = vs[j];
  }
  return m;
}

}  // namespace

double mdot(const MinkVec& u, const MinkVec& v) {
  requireSameDim(u.size(), v.size());
  if (u.size() == 0) return 0.0;
  return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

cplx mdot(const CplxVec& u, const CplxVec& v) {
  requireSameDim(u.size(), v.size());
  if (u.size() == 0) return 0.0;
  // Eigen's dot() conjugates its first argument, so use an explicit product.
  return -u[0] * v[0] + (u.tail(u.size() - 1).array() * v.tail(v.size() - 1).array()).sum();
}

CplxVec unitVec(int dim, int i) {
  CplxVec e = CplxVec::Zero(dim);
  e[i] = 1.0;
  return e;
}

LorentzFrame lorentzGramSchmidt(const std::vector<MinkVec>& vs, double tol) {
  LorentzFrame out;
  for (const MinkVec& v : vs) {
    MinkVec w = v;
    for (size_t j = 0; j < out.vectors.size(); ++j) {
      w -= out.signs[j] * mdot(w, out.vectors[j]) * out.vectors[j];
    }
    const double self = mdot(w, w);
    const double scale = std::max(1.0, v.squaredNorm());
    if (std::abs(self) <= tol * scale) {
      throw Error(ErrorCode::NullDirection, "partial projection is light-like");
    }
    out.signs.push_back(self < 0 ? -1 : 1);
    out.vectors.push_back(w / std::sqrt(std::abs(self)));
  }
  return out;
}

std::vector<double> singularValues(const std::vector<CplxVec>& vs) {
  if (vs.empty()) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns(vs));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

int rankOf(const std::vector<CplxVec>& vs, double relTol) {
  const std::vector<double> s = singularValues(vs);
  if (s.empty() || s.front() == 0.0) return 0;
  return static_cast<int>(std::count_if(s.begin(), s.end(),
                                        [&](double x) { return x > relTol * s.front(); }));
}

RankGap rankByGap(const std::vector<CplxVec>& vs, double ratio, double absFloor) {
  RankGap out;
  const std::vector<double> s = singularValues(vs);
  if (s.empty() || s.front() <= absFloor) return out;
  int bestIdx = -1;
  double bestGap = 0.0;
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    // Ratios between two roundoff-level values carry no information.
    if (s[i] <= std::max(absFloor, 1e-12 * s.front())) break;
    const double gap = s[i] / std::max(s[i + 1], 1e-300);
    if (gap > bestGap) {
      bestGap = gap;
      bestIdx = static_cast<int>(i);
    }
  }
  if (bestGap >= ratio) {
    out.rank = bestIdx + 1;
    out.gap = bestGap;
    return out;
  }
  // No clean gap: full rank when the spectrum is well conditioned, otherwise
  // the decision is ambiguous.
  out.rank = static_cast<int>(s.size());
  out.gap = s.front() / s.back();
  out.ambiguous = s.back() < s.front() / std::sqrt(ratio);
  return out;
}

std::vector<CplxVec> orthonormalSpan(const std::vector<CplxVec>& vs, double relTol) {
  std::vector<CplxVec> out;
  if (vs.empty()) return out;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns(vs), Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > relTol * s[0]) out.push_back(svd.matrixU().col(i));
  }
  return out;
}

SubspaceBasis subspaceIntersect(const SubspaceBasis& a, const SubspaceBasis& b, double tol) {
  SubspaceBasis out;
  out.rankTolerance = tol;
  out.realFlag = a.realFlag && b.realFlag;
  if (a.vectors.empty() || b.vectors.empty()) return out;
  const Eigen::Index dim = a.vectors.front().size();
  requireSameDim(dim, b.vectors.front().size());
  const std::vector<CplxVec> qa = orthonormalSpan(a.vectors, tol);
  const std::vector<CplxVec> qb = orthonormalSpan(b.vectors, tol);
  if (qa.empty() || qb.empty()) return out;
  // Hermitian complement of B: the left singular vectors beyond rank(B).
  Eigen::JacobiSVD<Eigen::MatrixXcd> svdB(columns(qb), Eigen::ComputeFullU);
  const Eigen::Index rb = static_cast<Eigen::Index>(qb.size());
  const Eigen::MatrixXcd comp = svdB.matrixU().rightCols(dim - rb);
  const Eigen::MatrixXcd qaM = columns(qa);
  if (comp.cols() == 0) return SubspaceBasis{qa, out.realFlag, tol};
  // a = Qa t lies in B iff comp^H Qa t = 0.
  const Eigen::MatrixXcd constraint = comp.adjoint() * qaM;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svdC(constraint, Eigen::ComputeFullV);
  const auto& s = svdC.singularValues();
  const Eigen::Index ra = qaM.cols();
  for (Eigen::Index i = 0; i < ra; ++i) {
    const double sv = i < s.size() ? s[i] : 0.0;
    if (sv <= tol) out.vectors.push_back(qaM * svdC.matrixV().col(i));
  }
  return out;
}

double containmentResidual(const CplxVec& v, const std::vector<CplxVec>& basis, double relTol) {
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  const std::vector<CplxVec> q = orthonormalSpan(basis, relTol);
  CplxVec r = v;
  for (const CplxVec& e : q) r -= e.dot(v) * e;  // dot() conjugates e
  return r.norm() / nv;
}

double relativePairing(const CplxVec& a, const CplxVec& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(mdot(a, b)) / (na * nb);
}

}  // namespace wm
