#pragma once

// Check suites behind the command-line tool. Each suite turns a surface
// document into a Report; sampling and grids are fixed so the same input
// always produces the same report.

#include <optional>

#include "willmore/report.hpp"
#include "willmore/weierstrass.hpp"

namespace wm {

// Exact checks on the rational data. Generated documents must also have
// isotropy order k and 2m + 2 planar ends with residues below 1e-10.
Report verifySuite(const WeierstrassData& w);

struct InvariantsOptions {
  int samples = 50;
  bool energy = false;  // the Willmore energy quadrature takes tens of seconds
};
// Pointwise residuals of the Willmore equation and its integrability
// conditions at deterministic interior samples; W / 4 pi on request.
Report invariantsSuite(const WeierstrassData& w, const InvariantsOptions& opt = {});

enum class AdjointMode { Dual, Riccati };
struct AdjointOptions {
  AdjointMode mode = AdjointMode::Riccati;
  cplx g{1.0};  // constant initial value w(base, zeta) for the Riccati mode
};
// Adjoint-transform identities on the 65 x 65 grid around z = 2. Riccati
// mode also fits the adjoint surface and reports its Willmore residual.
Report adjointSuite(const WeierstrassData& w, const AdjointOptions& opt = {});

// Bundle checks at eight sample points, plus harmonicity of the conformal
// Gauss map on a small grid.
Report harmonicSuite(const WeierstrassData& w, int maxSteps = 6);

// Adapted frames of the twistor lift and the conditions on them. Data of
// finite isotropy order give a failed report rather than an exception.
Report twistorSuite(const WeierstrassData& w);

}  // namespace wm
