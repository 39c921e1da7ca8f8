#pragma once

// Surface documents (JSON) and point-cloud export (CSV).
//
// Rationals are written as decimal strings, a Gaussian rational as
// [re_num, re_den, im_num, im_den], so parse(serialize(d)) == d exactly.
// Parsing is strict: a wrong schemaVersion, a missing field or any field not
// in the schema raises Schema; malformed JSON raises Parse.

#include <string>

#include "willmore/moebius.hpp"
#include "willmore/weierstrass.hpp"

namespace wm {

inline constexpr int kSchemaVersion = 1;

std::string surfaceJson(const WeierstrassData& w);
WeierstrassData parseSurfaceJson(const std::string& text);

// Exact equality of every serialized field.
bool sameDocument(const WeierstrassData& a, const WeierstrassData& b);

// Writes to a temporary file in the same directory and renames it over the
// target. Throws Io on failure.
void writeFileAtomic(const std::string& path, const std::string& contents);
std::string readFile(const std::string& path);

struct ExportOptions {
  Chart chart = Chart::North;
  int gridN = 101;
  double halfWidth = 2.0;     // box |Re c|, |Im c| <= halfWidth in the chart coordinate c (z or w = 1/z)
  double maskRadius = 0.1;    // chart distance from a pole below which a node is masked
};

struct ExportResult {
  std::string csv;
  int rows = 0;
  int maskedNodes = 0;
  int maskedPoles = 0;  // poles with at least one masked node
};

// x = F + conj(F) on an N x N chart grid in row-major order (Im z outer,
// Re z inner). Masked nodes keep their row with "nan" coordinates. Throws
// NonzeroResidue when the datum has no single-valued primitive.
ExportResult exportPointCloud(const WeierstrassData& w, const ExportOptions& opt = {});

}  // namespace wm
