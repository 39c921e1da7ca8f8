#pragma once

// Genus-zero minimal surfaces with planar ends given by a rational
// Weierstrass datum x_z = P(z) / (z^2 (z^n - 1)^2), the exact generator of
// k-isotropic examples, and exact/numeric verifiers for conformality, end
// structure and isotropy order.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "willmore/crational.hpp"

namespace wm {

// Rows i = 0..k-1 of the three k-isotropy coefficient families. Entry j of a
// row is the coefficient of tau_j for j = 0..s; index s+2 holds the
// coefficient of the tau_{s+2} term (index s+1 is unused and zero).
struct CoefficientTables {
  int k = 0;
  int m = 0;
  std::vector<std::vector<mpq_class>> a, b, c;
};

CoefficientTables coefficientTables(int k, int m);

struct TauVector {
  int k = 0;
  int m = 0;
  std::vector<mpq_class> tau;      // tau_0 .. tau_{s+2}
  int nullity = 0;                 // dimension of the solution family
  std::vector<mpq_class> weights;  // combination of nullspace basis vectors used
};

// tau_{s+1}, tau_{s+2} as forced by the vanishing-residue and low-order
// conformality relations, given tau_0..tau_s.
std::pair<mpq_class, mpq_class> eliminatedTau(int m, const std::vector<mpq_class>& head);

// Values of the 3k isotropy rows at a full tau vector (all zero for a solution).
std::vector<mpq_class> isotropyRowValues(const CoefficientTables& t, const std::vector<mpq_class>& tau);

// Nonzero solution of the combined system. freeParams, when given, are the
// weights of the nullspace basis vectors; otherwise weights are derived from
// seed. The result is normalized to tau_0 = 2m whenever tau_0 != 0.
TauVector solveTau(int k, int m, const std::vector<mpq_class>& freeParams = {}, std::uint64_t seed = 0);

struct WeierstrassData {
  std::string kind = "weierstrass";  // or "closed-form"
  int ambientDim = 0;
  int k = -1;  // isotropy target of the generator, -1 when not generated
  int m = 0;
  int n = 0;  // 0 when the pole structure is not z^2 (z^n - 1)^2
  VRatFn xz;
  std::optional<VRatFn> primitive;  // closed-form data carry F with F' = xz
  std::string generator;
  std::uint64_t seed = 0;
  GaussRat scale{1};              // homothety factor t applied to the tau targets
  std::vector<mpq_class> tau;     // empty unless generated

  // Coefficient vector v_j of z^j in the numerator.
  std::vector<GaussRat> coefficient(int j) const;
};

WeierstrassData assembleVectors(const TauVector& tau);
WeierstrassData generate(int k, int m, std::uint64_t seed = 0);

// lambda_{i,j} = <v_i, v_j> / scale, nonzero entries with i <= j.
struct LambdaTable {
  std::map<std::pair<int, int>, GaussRat> entries;
  GaussRat at(int i, int j) const;
};
LambdaTable lambdaTable(const WeierstrassData& w);

struct ConformalReport {
  bool pass = false;
  bool degenerate = false;          // x_z identically zero
  std::vector<int> offendingPowers;  // powers of z with a nonzero coefficient in <P, P>
  RatFn pairing;
};
ConformalReport verifyConformal(const VRatFn& xz);
inline ConformalReport verifyConformal(const WeierstrassData& w) { return verifyConformal(w.xz); }

enum class EndClass { PlanarEnd, NonPlanarPole, Regular, BranchPoint };
const char* endClassName(EndClass c);

struct EndInfo {
  cplx location{0.0};
  bool atInfinity = false;
  int poleOrder = 0;
  double residue = 0.0;
  CplxVec leading;
  double isotropy = 0.0;  // |<a,a>| / |a|^2 for the leading vector a
  EndClass cls = EndClass::Regular;
};

struct EndReport {
  std::vector<EndInfo> ends;  // finite poles, then infinity last
  int planarCount = 0;
  bool infinityRegular = false;
};

EndReport verifyPlanarEnds(const WeierstrassData& w, double tol = 1e-10);
EndReport verifyPlanarEnds(const VRatFn& xz, double tol = 1e-10);

struct IsotropyResult {
  int order = -1;
  bool total = false;
  int firstNonvanishing = -1;  // j such that <x^{(j)}, x^{(j)}> is not identically zero
};
IsotropyResult isotropyOrder(const VRatFn& xz);
inline IsotropyResult isotropyOrder(const WeierstrassData& w) { return isotropyOrder(w.xz); }

WeierstrassData buildBryantPengXiao(int m);
WeierstrassData buildR4Example(int m);
WeierstrassData buildTotallyIsotropicExample();

// Exact F with F' = x_z, normalized by F(infinity) = 0.
VRatFn integratePrimitive(const WeierstrassData& w);

// Poles of the datum: 0 and the n-th roots of unity for the standard
// structure, numerically located roots of the reduced denominator otherwise.
std::vector<cplx> finitePoles(const WeierstrassData& w);

}  // namespace wm
