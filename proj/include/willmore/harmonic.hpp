#pragma once

// Subbundles of the trivial bundle C^{n+2} over a surface: the conformal Gauss
// map, the Chern-Wolfson d/dzbar transforms, the Pi_j bundles of a
// k-isotropic Willmore surface, Frenet-bundle checks, the D-transform, the
// phi and Q recursions, and harmonicity of projector fields.
//
// Frame-derived bundles are carried as jets of spanning sections at one base
// point, so every derivative is exact up to the jet order. Projector fields
// live on grids and are differenced with fourth-order stencils.

#include <string>
#include <vector>

#include "willmore/adjoint.hpp"
#include "willmore/moebius.hpp"

namespace wm {

// Spanning sections of a bundle near a base point.
using SectionJets = std::vector<JetVec>;

std::vector<CplxVec> values(const SectionJets& s);
SectionJets conj(const SectionJets& s);
SectionJets concat(std::initializer_list<const SectionJets*> parts);

// Sections whose values are linearly independent, picked greedily by a
// pivoted QR on the values; the decision uses the same gap test as rankByGap.
SectionJets independentSections(const SectionJets& s, double gapRatio = 1e6);

// Lorentz-orthogonal projection onto the span of nondegenerate sections.
// Throws NullDirection when the Gram matrix is singular at the base point.
class JetProjector {
 public:
  explicit JetProjector(SectionJets basis, double tol = 1e-10);
  JetVec project(const JetVec& x) const;
  JetVec complement(const JetVec& x) const { return x - project(x); }
  const SectionJets& basis() const { return basis_; }

 private:
  SectionJets basis_;
  std::vector<std::vector<Jet>> ginv_;
};

// Counts of negative, positive and (numerically) zero eigenvalues of the
// Gram matrix of real vectors.
struct Signature {
  int negative = 0, positive = 0, zero = 0;
};
Signature lorentzSignature(const std::vector<MinkVec>& vs, double relTol = 1e-9);

// span{Y, Re Y_z, Im Y_z, N}; throws DegenerateV unless the signature is (1, 3).
SubspaceBasis conformalGauss(const MoebiusFrame& f);
// The same bundle as sections {Y, Y_z, Y_zbar, N}.
SectionJets frameSections(const MoebiusFrame& f);

struct PartialTransform {
  SectionJets sections;         // psi_z (or psi_zbar) minus the projection onto the bundle
  std::vector<CplxVec> basis;   // independent values at the base point
  RankGap rank;
  std::string path = "jet";
};
// The d (or dbar) transform of a nondegenerate bundle.
PartialTransform partialTransform(const SectionJets& bundle, Direction d, double gapRatio = 1e6);

// Pi_j = span{kappa, D_zbar kappa, ..., D_z^j kappa, D_zbar D_z^j kappa} for j = 0..jMax.
std::vector<SectionJets> piBundles(const MoebiusFrame& f, int jMax);

struct BundleResidualReport {
  int rank = 0;
  double isotropy = 0.0;        // max |<a,b>| / (|a||b|) over basis pairs
  double holomorphicity = 0.0;  // max relative distance of D_zbar psi from the bundle
  double secondOrder = 0.0;     // the same for D_zbar D_zbar psi
};
// Residuals of a bundle of normal sections. Relative distances use the
// Euclidean norm of the coordinates.
BundleResidualReport bundleResiduals(const SectionJets& bundle, const MoebiusFrame& f);

// max relative distance of D_z phi from `into`, over phi in `from`.
double dzContainment(const SectionJets& from, const SectionJets& into, const MoebiusFrame& f);

// Real sections spanning the Lorentz-orthogonal complement of a nondegenerate bundle.
SectionJets complementSections(const SectionJets& bundle);

struct FrenetReport {
  double a = 0.0;   // d f inside Z + h
  double b = 0.0;   // psi_z inside Z + h for psi in Z
  double c = 0.0;   // psi_zbar inside Z + f for psi in Z
  RankGap dh;       // Rank_C of d h
};
// Throws SpanDeficit when f + Z + conj Z + h does not span the ambient space.
FrenetReport frenetCheck(const SectionJets& f, const SectionJets& Z, const SectionJets& h, double gapRatio = 1e6);

// f + Re(Z), as sections of f, Z and conj Z. Throws RankDrop when the result
// does not have rank f + 2 rank Z, which happens when Z is not isotropic.
SectionJets dTransform(const SectionJets& f, const SectionJets& Z, double gapRatio = 1e6);

// Bundles of a k-isotropic Willmore surface at one point: Pi_{k-1} (empty for
// k = 0), f^k_k = f0 + Re(Pi_{k-1}), and d f^k_k.
struct IsotropicBundles {
  int k = 0;
  SectionJets f0, pi, fk;
  PartialTransform dfk;
};
IsotropicBundles isotropicBundles(const MoebiusFrame& f, int k);

// ------------------------------------------------------------ line extraction

struct ExtractedLine {
  CplxVec line;        // isotropic
  CplxVec complement;  // orthogonal to line and conj(line)
  int branch = 0;      // which self-pairing was used as the denominator (1 or 2)
};
// Requires <X1,X2>^2 = <X1,X1><X2,X2> up to tol (relative to |X1|^2 |X2|^2);
// throws DegenerateInput otherwise and TotallyIsotropicInput when all three
// pairings vanish.
ExtractedLine isotropicLineExtract(const CplxVec& x1, const CplxVec& x2, double tol = 1e-10);

// ------------------------------------------------------------ recursions

struct PhiSequence {
  std::vector<CplxVec> phi;   // phi, phi_1, phi_2, ... at the base point
  std::vector<cplx> muBar;    // -2 <D_zbar phi, phi> / <phi, phi>
  double maxPairing = 0.0;    // over all pairs except <phi, phi>, scale-relative
  int collapsedAt = -1;       // first j with phi_j = 0 (relative to its terms), or -1
};
// phi = D_z^k kappa off f^k_k, phi_1 = nabla_zbar phi + (muBar/2) phi, then
// the projected z-derivatives. Throws SingularSetHit when <phi, phi> vanishes.
PhiSequence phiSequence(const MoebiusFrame& f, int k, int maxSteps, double singularTol = 1e-10,
                        double collapseTol = 1e-8);

struct QSequence {
  std::vector<CplxVec> Q;        // Q_1, Q_2, ... at the base point
  double maxIsotropy = 0.0;      // max |<Q_i, Q_j>| / (|Q_i||Q_j|), all i, j
  double maxStructure = 0.0;     // Q_{1z} in Q_1 + h0, Q_{jz} in span{Q_j, Q_{j-1}}
  int terminalStep = -1;         // first j with <Q_j, conj Q_j> = 0, or -1
  bool terminalLightlike = false;  // Re Q_j and Im Q_j span one real null line
  MinkVec terminalDirection;
};
// conj Q_1 = xiHat_z off h0; Q_{j+1} = Q_{j,zbar} off span{Q_l, conj Q_l}.
// Stops at the first step whose Q is degenerate in the Hermitian sense.
// Throws RankCollapse when that already happens for Q_1.
QSequence qSequence(const SectionJets& h0, const JetVec& xiHat, int maxSteps, double collapseTol = 1e-8);

// The Q chain of a k-isotropic surface whose d f^k_k has rank 1:
// h0 = (f^k_k)^perp, xiHat = D_z^k kappa off f^k_k.
QSequence qSequence(const MoebiusFrame& f, int k, int maxSteps, double collapseTol = 1e-8);

// ------------------------------------------------------------ grids

struct SubbundleSamples {
  std::string label;
  GridSpec grid;
  std::vector<std::vector<CplxVec>> bases;  // per node (i * nodes + j)
};

// Bases of a frame-derived bundle at every node, all frames taken in the
// fixed gauge of the surface normalized at the grid center.
SubbundleSamples sampleBundle(const Surface& surf, const GridSpec& g, const std::string& label,
                              const std::function<std::vector<CplxVec>(const MoebiusFrame&)>& bundle,
                              int order = 6);

// Finite-difference version of partialTransform on the interior block. Points
// whose rank gap is ambiguous are masked.
struct RankProfile {
  std::vector<int> ranks;     // interior x interior, row-major in (i, j)
  std::vector<char> masked;
  std::vector<std::vector<CplxVec>> bases;
  std::string path = "finite-difference";
};
RankProfile partialTransformGrid(const SubbundleSamples& b, Direction d, double gapRatio = 1e6);

struct ProjectorField {
  GridSpec grid;
  std::vector<Eigen::MatrixXcd> P;  // per node
};
// P = B (B^T eta B)^{-1} B^T eta for each node basis B.
ProjectorField projectorField(const SubbundleSamples& b);
// max over nodes of ||P^2 - P|| and ||P* - P|| (Lorentz adjoint), Frobenius.
double projectorDefect(const ProjectorField& p);

// ||[P, P_{z zbar}]||_F on the interior block.
ScalarSummary harmonicityResidual(const ProjectorField& p);

}  // namespace wm
