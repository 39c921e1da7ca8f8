#pragma once

// Moebius-invariant surface data in the light-cone model: canonical lift,
// frame {Y, Y_z, Y_zbar, N}, Schwarzian s, Hopf differential kappa, the normal
// connection, and the residuals of the Willmore and structure equations.
// Everything is computed from Wirtinger jets at a base point.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "willmore/jet.hpp"
#include "willmore/weierstrass.hpp"

namespace wm {

// A conformal immersion given by jets of x : C -> R^dim at any base point.
struct Surface {
  std::function<JetVec(cplx z0, int order)> jets;
  int dim = 0;
  std::vector<cplx> singular;  // points where the chart is not defined (ends)
  std::string name;
};

// x = F + conj(F) for a holomorphic rational F.
Surface surfaceFromPrimitive(const VRatFn& f, std::string name = "primitive");

// The minimal surface of a datum in the z chart (north) or the w = 1/z chart (south).
enum class Chart { North, South };
Surface surfaceFromData(const WeierstrassData& w, Chart chart = Chart::North);

Surface planeSurface(int dim = 3);
Surface sphereSurface();    // inverse stereographic projection onto the unit sphere
Surface cylinderSurface();  // (cos u, sin u, v) with z = u + i v; conformal, not Willmore

// Composition with the inversion x -> x / |x|^2.
Surface invertedSurface(const Surface& s);

// Y~ = ((1 + |x|^2)/2, (1 - |x|^2)/2, x).
JetVec lightConeLift(const JetVec& x);

struct CanonicalLift {
  cplx z0{0.0};
  JetVec Y;
  Jet omega;  // e^{2 omega} = 2 <Y~_z, Y~_zbar>
};

CanonicalLift canonicalLift(const JetVec& ytilde, cplx z0 = 0.0, double tol = 1e-12);

struct MoebiusFrame {
  cplx z0{0.0};
  JetVec Y, Yz, Yzb, N, kappa;
  Jet s;
  std::vector<MinkVec> normalBasis;  // orthonormal basis of the normal space at z0
};

MoebiusFrame moebiusFrame(const CanonicalLift& lift);

// Frame of s at z0, computed for the translate-and-rescale of x with
// x(z0) = 0 and unit induced metric at z0. Lorentz invariants (s, pairings of
// kappa, Theta0, the energy density) do not depend on this gauge; frame
// vectors are those of the normalized surface.
MoebiusFrame frameAt(const Surface& s, cplx z0, int order = 6);

// The same surface after the fixed translate-and-rescale normalizing it at c.
Surface normalizedAt(const Surface& s, cplx c);
// Frame in the coordinates of the surface itself (no per-point gauge), for
// fields that are compared or differenced across base points.
MoebiusFrame ambientFrame(const Surface& s, cplx z0, int order = 6);

// Part of w lying in V = span{Y, Y_z, Y_zbar, N}, recovered from the dual pairings.
JetVec vComponent(const JetVec& w, const MoebiusFrame& f);

enum class Direction { Z, Zbar };
JetVec normalD(const JetVec& xi, const MoebiusFrame& f, Direction d, double tol = 1e-8);

// D_zbar D_zbar kappa + (sbar/2) kappa at the base point.
// normalTol is passed to normalD; frames rebuilt from fitted data need a
// looser value than exact jets.
CplxVec willmoreVector(const MoebiusFrame& f, double normalTol = 1e-8);
double willmoreResidual(const MoebiusFrame& f, double normalTol = 1e-8);

struct IntegrabilityResiduals {
  double gauss = 0.0;     // relative to the largest term (terms below 1e-9 count as zero)
  double codazzi = 0.0;   // absolute, |Im(D_zbar D_zbar kappa + sbar/2 kappa)|
  double ricci = 0.0;     // as gauss, max over the normal probes
};
IntegrabilityResiduals integrabilityResiduals(const MoebiusFrame& f);

struct Chi0Theta0 {
  Eigen::MatrixXcd chi0;      // antisymmetric coordinates of D_zbar kappa ^ kappa
  double chi0Norm = 0.0;      // sqrt of the sum of |chi_ij|^2 over i < j
  cplx theta0{0.0};           // <D_zbar kappa, kappa>^2 - <D_zbar kappa, D_zbar kappa><kappa, kappa>
  cplx wedgePairing{0.0};     // <chi0, chi0> with <a^b, c^d> = <a,d><b,c> - <a,c><b,d>
};
Chi0Theta0 chi0theta0(const MoebiusFrame& f);

// Energy density <kappa, conj kappa> of the chart, so W = 4 * integral over dx dy.
double energyDensity(const MoebiusFrame& f);

struct EnergyOptions {
  double chartRadius = 2.0;     // z chart |z| <= R, w chart |w| < 1/R
  double bumpRadius = 0.3;      // partition-of-unity bumps around the ends
  std::vector<double> excision{0.1, 0.05, 0.025};
  int angularNodes = 96;
  double relTol = 1e-5;         // doubling check
  int maxRefinements = 3;       // grid doublings tried before giving up
};

struct EnergyResult {
  double energy = 0.0;          // W
  double normalized = 0.0;      // W / 4 pi
  long nearestInteger = 0;
  double integerDistance = 0.0;  // |W/4pi - nearest| / max(1, nearest)
  std::vector<double> excisedValues;  // W at each excision radius (before extrapolation)
  double doublingError = 0.0;
  int evaluations = 0;
};

// ends: finite ends of the z chart; the south chart must be regular at w = 0.
EnergyResult willmoreEnergy(const Surface& north, const Surface& south, const std::vector<cplx>& ends,
                            const EnergyOptions& opt = {});
EnergyResult willmoreEnergy(const WeierstrassData& w, const EnergyOptions& opt = {});

struct MoebiusIsotropy {
  int order = -1;
  bool total = false;
  double maxRetained = 0.0;  // largest relative pairing among the conditions that held
};
MoebiusIsotropy moebiusIsotropyOrder(const Surface& s, const std::vector<cplx>& samples, int maxK = 3,
                                     double tol = 1e-8);

// Deterministic interior sample points: uniform in the disk |z| <= radius,
// at distance >= margin from every singular point.
std::vector<cplx> interiorSamples(const Surface& s, int count, std::uint64_t seed = 1, double radius = 1.6,
                                  double margin = 0.15);

}  // namespace wm
