#pragma once

// Dual and adjoint transforms of a Willmore surface: S-Willmore detection,
// the dual mu, roots of the conformal quadratic, the co-touch (Riccati)
// residual, the adjoint lift Y^ and its metric, and the Riccati extension
// mu = mu0 + 1/w for surfaces with <kappa, kappa> = 0.
//
// Grid quantities live on a square of nodes x nodes points; derivatives of
// grid fields are fourth-order central differences, evaluated only on the
// centered interior block so the wide stencils never leave the grid.

#include <functional>
#include <optional>
#include <vector>

#include "willmore/moebius.hpp"

namespace wm {

// ------------------------------------------------------------ pointwise

struct SWillmoreResult {
  bool sWillmore = false;
  double maxChi0 = 0.0;       // largest |D_zbar kappa ^ kappa|
  double maxRelative = 0.0;   // largest |chi0| / (|kappa| max(|D_zbar kappa|, |kappa|))
  int samples = 0;
};

// Samples are (D_zbar kappa, kappa) pairs; the verdict uses the relative
// measure so that rescaling kappa does not change it. Needs >= 20 samples.
SWillmoreResult sWillmoreTest(const std::vector<std::pair<CplxVec, CplxVec>>& samples, double tol = 1e-8);
SWillmoreResult sWillmoreTest(const std::vector<MoebiusFrame>& frames, double tol = 1e-8);

struct DualMu {
  cplx muBar{0.0};
  double residual = 0.0;  // |D_zbar kappa + (muBar/2) kappa|
};
// Least-squares solution of D_zbar kappa + (muBar/2) kappa = 0. Throws
// UmbilicPoint when kappa vanishes.
DualMu dualMu(const MoebiusFrame& f, double umbilicTol = 1e-12);
// The same quotient as a jet, so its derivatives are available.
Jet dualMuBarJet(const MoebiusFrame& f, double umbilicTol = 1e-12);

// rho = muBar_z - 2 <kappa, conj kappa> for the dual mu, from jets.
cplx dualRho(const MoebiusFrame& f);

// NoneNeeded: kappa = 0, so the conformal condition is empty.
enum class RootKind { Two, One, All, None, NoneNeeded };
const char* rootKindName(RootKind k);

struct ConformalRoots {
  RootKind kind = RootKind::NoneNeeded;
  std::vector<cplx> roots;  // values of muBar
  cplx theta0{0.0};         // discriminant <kappa, D>^2 - <kappa, kappa><D, D>
};
// Roots of (muBar^2/4) kk + muBar kd + dd = 0 with kk = <kappa,kappa>,
// kd = <kappa, D_zbar kappa>, dd = <D_zbar kappa, D_zbar kappa>. Coefficients
// below tol * kappaScale^2 count as zero, the discriminant below
// tol * kappaScale^4. The frame overload uses kappaScale = |kappa| + |D_zbar kappa|.
ConformalRoots conformalRoots(cplx kk, cplx kd, cplx dd, double tol = 1e-8, double kappaScale = 1.0);
ConformalRoots conformalRoots(const MoebiusFrame& f, double tol = 1e-8);

// Y^ = |mu|^2/2 Y + muBar Y_z + mu Y_zbar + N at the base point.
CplxVec adjointLift(cplx mu, const MoebiusFrame& f);

// ------------------------------------------------------------ grids

struct GridSpec {
  cplx center{0.0};
  double side = 0.5;
  int nodes = 65;     // h = side / (nodes - 1)
  int interior = 41;  // centered block where derived quantities are reported

  double h() const { return side / (nodes - 1); }
  cplx node(int i, int j) const;  // i along Re z, j along Im z
  int first() const { return (nodes - interior) / 2; }
  int last() const { return first() + interior - 1; }
  // Throws GridTooCoarse when the interior block leaves no room for a
  // stencil of the given half-width.
  void require(int halfWidth) const;
};

using Field = Eigen::MatrixXcd;          // (i, j) indexing as GridSpec::node
using VecField = std::vector<CplxVec>;   // index i * nodes + j

// d/dz and d/dzbar of a scalar or vector field at node (i, j).
cplx dzField(const Field& f, const GridSpec& g, int i, int j);
cplx dzbField(const Field& f, const GridSpec& g, int i, int j);
CplxVec dzField(const VecField& f, const GridSpec& g, int i, int j);
CplxVec dzbField(const VecField& f, const GridSpec& g, int i, int j);

struct ScalarSummary {
  Field values;       // interior x interior
  double max = 0.0;   // of |values|, ignoring masked points
  int masked = 0;
};

// theta = mu_z - mu^2/2 - s on the interior block.
ScalarSummary coTouchResidual(const Field& mu, const Field& s, const GridSpec& g,
                              const std::vector<char>& mask = {});

// mu0(z, zeta): a Riccati solution continued holomorphically in z for
// frozen zeta = conj(z).
using PolarizedMu = std::function<cplx(cplx z, cplx zeta)>;

// The dual mu of the minimal surface x = F + conj(F),
// <F''(z), Fbar'(zeta)> / <F'(z), Fbar'(zeta)>.
PolarizedMu polarizedDualMu(const VRatFn& primitive);

struct RiccatiInit {
  std::optional<cplx> base;                  // default: the grid center
  std::function<cplx(cplx zeta)> g;          // w(base, zeta); default constant 1
  bool infinite = false;                     // 1/w = 0, i.e. mu = mu0
  int substeps = 64;                         // RK4 steps from the base to each node
  double blowUpTol = 1e-8;                   // |w| below this marks a branch point of mu
};

struct RiccatiField {
  Field mu, w;
  std::vector<char> blowUp;  // per node
  int blowUpCount = 0;
};

// w(z, zeta) from w(base, zeta) = wBase by RK4 along the straight segment.
cplx riccatiSolve(const PolarizedMu& mu0, cplx base, cplx wBase, cplx z, cplx zeta, int substeps = 64);

// mu = mu0 + 1/w, where for each node p the linear equation
// dw/dz = -mu0(z, conj p) w - 1/2 is integrated by RK4 along the segment
// from the base point to p.
RiccatiField riccatiExtend(const PolarizedMu& mu0, const GridSpec& g, const RiccatiInit& init = {});

// Frames of a surface at every grid node in one fixed Moebius gauge (the
// surface normalized at the grid center), so vector fields can be
// differenced across nodes.
struct FrameField {
  GridSpec grid;
  std::vector<MoebiusFrame> frames;
  Field s, kk;                  // Schwarzian and <kappa, conj kappa>
  std::vector<CplxVec> dbarKappa;  // D_zbar kappa per node
};
FrameField frameField(const Surface& surf, const GridSpec& g, int order = 4);

VecField adjointLiftField(const Field& mu, const FrameField& ff);

struct RhoMetric {
  Field rho;             // interior block
  Field metric;          // <Y^_z, Y^_zbar>
  double maxIdentity = 0.0;    // max |<Y^_z, Y^_zbar> - |rho|^2/2|
  // With eta = D_zbar kappa + (muBar/2) kappa the full metric is
  // |rho|^2/2 + 4 <eta, conj eta> once theta = 0; the bare identity above is
  // the special case eta = 0 of the dual surface.
  double maxEtaIdentity = 0.0;  // max |<Y^_z, Y^_zbar> - |rho|^2/2 - 4 <eta, conj eta>|
  double maxEtaPairing = 0.0;   // max |<eta, eta>| (conformal condition)
  double maxConformal = 0.0;   // max |<Y^_z, Y^_z>|
  double maxLightlike = 0.0;   // max |<Y^, Y^>|
  double maxNormalization = 0.0;  // max |<Y^, Y> + 1|
  std::vector<char> branch;    // interior points with |rho| < branchTol
  int branchCount = 0;
};
RhoMetric rhoAndMetric(const Field& mu, const FrameField& ff, const VecField& yhat, double branchTol = 1e-6,
                       const std::vector<char>& mask = {});

struct AdjointWillmoreReport {
  double maxResidual = 0.0;   // relative to the RMS of |kappa^|
  double kappaRms = 0.0;
  int evaluated = 0;
  int skipped = 0;            // masked, non-immersed or near-branch points
};
// Refits Y^ locally by least squares on a (2 r + 1)^2 stencil with
// monomials of total degree <= fitDegree, rebuilds the canonical lift and
// frame from the fitted jets and evaluates the Willmore residual. Throws
// NotImmersed when no interior point has metric above metricTol.
AdjointWillmoreReport adjointWillmoreResidual(const VecField& yhat, const GridSpec& g, int stride = 4,
                                              int radius = 5, int fitDegree = 8, double metricTol = 1e-8,
                                              const std::vector<char>& mask = {});

}  // namespace wm
