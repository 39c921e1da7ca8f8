#pragma once

// Twistor lifts of surfaces in S^{2m}. A surface in R^{2m} is moved to the
// sphere through its light-cone lift, x = (Y_1, ..., Y_{2m+1}) / Y_0, and
// framed by F = (x, e_1, ..., e_{2m}) with E_j = e_j - i e_{m+j}. The twistor
// space itself is never built: J-holomorphy and horizontality are checked as
// span conditions on the isotropic bundle I = span{E_j}, using jets of E_j.

#include <vector>

#include "willmore/moebius.hpp"
#include "willmore/weierstrass.hpp"

namespace wm {

// [[0, -I_m], [I_m, 0]].
Eigen::MatrixXd complexStructure(int m);

struct TwistorFrame {
  cplx z0{0.0};
  int m = 0;
  JetVec x;                 // point of S^{2m} in R^{2m+1}
  std::vector<JetVec> E;    // E_1, E_2, ...; <E_j, conj E_l> = 2 delta_jl
  int rankI2 = 0;           // E.size() - 1
  int piStable = -1;        // first k with Pi_k = Pi_{k+1}
  bool complete = false;    // E spans an m-dimensional isotropic subspace
  bool holomorphic = true;  // E_1 proportional to x_z (else to x_zbar)
  Eigen::MatrixXd F;        // columns x, e_1..e_2m at z0 (complete frames only)
  int det = 0;              // sign of det F, 0 when incomplete
};

// Frame at z0 built from the stabilized Pi-chain. E_1 is x_z and E_2..E_m
// come from Pi_k with the Y component removed. When det is -1 the conjugate
// bundle is used instead (E_1 proportional to x_zbar), which gives the
// anti-holomorphic case; for even m this leaves det at -1.
// Throws NotTotallyIsotropic when the chain does not stabilize within the
// ambient dimension or the stable bundle is not isotropic, and InvalidArgument
// for odd ambient dimension.
TwistorFrame adaptedFrame(const Surface& s, cplx z0, int order = 10, double isoTol = 1e-8);

// Frames at each sample, with the orientation compared along the sample order.
struct TwistorField {
  std::vector<TwistorFrame> frames;
  int det = 0;              // common sign, 0 if incomplete or inconsistent
  int signChanges = 0;
};
TwistorField adaptedFrameField(const WeierstrassData& w, const std::vector<cplx>& samples, int order = 10);
TwistorField adaptedFrameField(const Surface& s, const std::vector<cplx>& samples, int order = 10);

// The same frame with F replaced by F diag(1, R) for a constant R in O(2m).
TwistorFrame rotatedFrame(const TwistorFrame& f, const Eigen::MatrixXd& r);

struct JHolomorphicReport {
  double holomorphic = 0.0;      // x_z and E_{j,z} off I
  double antiHolomorphic = 0.0;  // x_zbar and E_{j,zbar} off I
  double tol = 1e-6;
  bool holomorphicPass() const { return holomorphic < tol; }
  bool antiHolomorphicPass() const { return antiHolomorphic < tol; }
  bool pass() const { return holomorphicPass() || antiHolomorphicPass(); }
};
JHolomorphicReport jHolomorphicCheck(const TwistorFrame& f, double tol = 1e-6);

// E_{j,zbar} (E_{j,z} in the anti case) off span{I_2, x_z, x_zbar}, j >= 2.
double normalHorizontalCheck(const TwistorFrame& f);
// The stronger condition: E_{j,zbar} off span{I, x} for every j.
double horizontalCheck(const TwistorFrame& f);

// If the frame is J-holomorphic to tau, the z-derivatives of x up to order 4
// are isotropic to C tau.
struct TransferReport {
  double tau = 0.0;        // the J-holomorphic residual of the passing case
  double isotropy = 0.0;   // max_j |<x^(j), x^(j)>| / |x^(j)|^2, j = 1..4
  double constant = 100.0;
  bool holds = false;
};
TransferReport isotropyTransfer(const TwistorFrame& f, double constant = 100.0);

}  // namespace wm
