#include "willmore/documents.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "willmore/error.hpp"

namespace wm {

using nlohmann::json;

namespace {

const char* kPoleStructure = "z^2(z^n-1)^2";

[[noreturn]] void schemaError(const std::string& what) { throw Error(ErrorCode::Schema, what); }

// Every key of obj must be in `keys`, and every key in `keys` must be present.
void expectKeys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) schemaError(where + ": expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) schemaError(where + ": unknown field '" + item.key() + "'");
  }
  for (const char* k : keys) {
    if (!obj.contains(k)) schemaError(where + ": missing field '" + std::string(k) + "'");
  }
}

template <typename T>
T get(const json& j, const std::string& where) {
  if constexpr (std::is_same_v<T, int>) {
    if (!j.is_number_integer()) schemaError(where + ": expected an integer");
  }
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    schemaError(where + ": wrong type");
  }
}

json gaussJson(const GaussRat& q) {
  const auto s = q.toStrings();
  return json::array({s[0], s[1], s[2], s[3]});
}

GaussRat parseGauss(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) schemaError(where + ": expected [re_num, re_den, im_num, im_den]");
  std::array<std::string, 4> parts;
  for (size_t i = 0; i < 4; ++i) {
    if (!j[i].is_string()) schemaError(where + ": rational parts must be decimal strings");
    parts[i] = j[i].get<std::string>();
  }
  return GaussRat::fromStrings(parts);
}

json polyJson(const CPoly& p) {
  json a = json::array();
  for (const GaussRat& c : p.coeffs()) a.push_back(gaussJson(c));
  return a;
}

CPoly parsePoly(const json& j, const std::string& where) {
  if (!j.is_array()) schemaError(where + ": expected a coefficient array");
  std::vector<GaussRat> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(parseGauss(j[i], where + "[" + std::to_string(i) + "]"));
  return CPoly(std::move(c));
}

json vratJson(const VRatFn& f) {
  json num = json::array();
  for (const CPoly& p : f.num) num.push_back(polyJson(p));
  return {{"numerator", num}, {"denominator", polyJson(f.den)}};
}

VRatFn parseVrat(const json& j, const std::string& where, int dim) {
  expectKeys(j, where, {"numerator", "denominator"});
  VRatFn f;
  const json& num = j["numerator"];
  if (!num.is_array() || static_cast<int>(num.size()) != dim) {
    schemaError(where + ".numerator: expected " + std::to_string(dim) + " coordinates");
  }
  for (size_t i = 0; i < num.size(); ++i) f.num.push_back(parsePoly(num[i], where + ".numerator"));
  f.den = parsePoly(j["denominator"], where + ".denominator");
  if (f.den.isZero()) schemaError(where + ".denominator: zero polynomial");
  return f;
}

bool sameVrat(const VRatFn& a, const VRatFn& b) { return a.num == b.num && a.den == b.den; }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string surfaceJson(const WeierstrassData& w) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["kind"] = w.kind;
  j["ambientDim"] = w.ambientDim;
  j["parameters"] = {{"k", w.k}, {"m", w.m}};
  j["poles"] = {{"structure", w.n > 0 ? kPoleStructure : "general"}, {"n", w.n}};
  j["xz"] = vratJson(w.xz);
  j["primitive"] = w.primitive ? vratJson(*w.primitive) : json(nullptr);
  j["scale"] = gaussJson(w.scale);
  json tau = json::array();
  for (const mpq_class& t : w.tau) tau.push_back(json::array({t.get_num().get_str(), t.get_den().get_str()}));
  j["tau"] = tau;
  j["provenance"] = {{"generator", w.generator}, {"seed", w.seed}};
  return j.dump(2) + "\n";
}

WeierstrassData parseSurfaceJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!j.is_object() || !j.contains("schemaVersion")) schemaError("missing schemaVersion");
  if (!j["schemaVersion"].is_number_integer() || j["schemaVersion"].get<int>() != kSchemaVersion) {
    schemaError("unsupported schemaVersion");
  }
  expectKeys(j, "document",
             {"schemaVersion", "kind", "ambientDim", "parameters", "poles", "xz", "primitive", "scale", "tau",
              "provenance"});
  WeierstrassData w;
  w.kind = get<std::string>(j["kind"], "kind");
  if (w.kind != "weierstrass" && w.kind != "closed-form") schemaError("kind: unknown value '" + w.kind + "'");
  w.ambientDim = get<int>(j["ambientDim"], "ambientDim");
  if (w.ambientDim < 1) schemaError("ambientDim: must be positive");

  expectKeys(j["parameters"], "parameters", {"k", "m"});
  w.k = get<int>(j["parameters"]["k"], "parameters.k");
  w.m = get<int>(j["parameters"]["m"], "parameters.m");

  expectKeys(j["poles"], "poles", {"structure", "n"});
  const std::string structure = get<std::string>(j["poles"]["structure"], "poles.structure");
  w.n = get<int>(j["poles"]["n"], "poles.n");
  if (structure == kPoleStructure) {
    if (w.n <= 0) schemaError("poles.n: must be positive for " + std::string(kPoleStructure));
  } else if (structure == "general") {
    if (w.n != 0) schemaError("poles.n: must be 0 for general pole structure");
  } else {
    schemaError("poles.structure: unknown value '" + structure + "'");
  }

  w.xz = parseVrat(j["xz"], "xz", w.ambientDim);
  if (!j["primitive"].is_null()) w.primitive = parseVrat(j["primitive"], "primitive", w.ambientDim);
  w.scale = parseGauss(j["scale"], "scale");

  if (!j["tau"].is_array()) schemaError("tau: expected an array");
  for (const json& t : j["tau"]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string()) {
      schemaError("tau: entries are [num, den] decimal strings");
    }
    const GaussRat q = GaussRat::fromStrings({t[0].get<std::string>(), t[1].get<std::string>(), "0", "1"});
    w.tau.push_back(q.re);
  }

  expectKeys(j["provenance"], "provenance", {"generator", "seed"});
  w.generator = get<std::string>(j["provenance"]["generator"], "provenance.generator");
  if (!j["provenance"]["seed"].is_number_unsigned()) schemaError("provenance.seed: expected an unsigned integer");
  w.seed = j["provenance"]["seed"].get<std::uint64_t>();
  return w;
}

bool sameDocument(const WeierstrassData& a, const WeierstrassData& b) {
  if (a.kind != b.kind || a.ambientDim != b.ambientDim || a.k != b.k || a.m != b.m || a.n != b.n) return false;
  if (!sameVrat(a.xz, b.xz)) return false;
  if (a.primitive.has_value() != b.primitive.has_value()) return false;
  if (a.primitive && !sameVrat(*a.primitive, *b.primitive)) return false;
  return a.generator == b.generator && a.seed == b.seed && a.scale == b.scale && a.tau == b.tau;
}

void writeFileAtomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot replace '" + path + "'");
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExportResult exportPointCloud(const WeierstrassData& w, const ExportOptions& opt) {
  if (opt.gridN < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 nodes per side");
  const VRatFn f = w.primitive ? *w.primitive : integratePrimitive(w);

  // Poles of x in the chart coordinate.
  std::vector<cplx> poles;
  const std::vector<cplx> finite = w.xz.den.degree() > 0 ? finitePoles(w) : std::vector<cplx>{};
  if (opt.chart == Chart::North) {
    poles = finite;
  } else {
    for (const cplx p : finite) {
      if (std::abs(p) > 1e-12) poles.push_back(1.0 / p);
    }
    // x_z = O(z^-2) at infinity exactly when x is regular there.
    int numDeg = -1;
    for (const CPoly& p : w.xz.num) numDeg = std::max(numDeg, p.degree());
    if (numDeg > w.xz.den.degree() - 2) poles.push_back(0.0);
  }

  ExportResult out;
  std::ostringstream csv;
  csv << "z_re,z_im";
  for (int c = 1; c <= w.ambientDim; ++c) csv << ",x_" << c;
  csv << "\n";
  std::vector<char> poleHit(poles.size(), 0);
  const double h = 2.0 * opt.halfWidth / (opt.gridN - 1);
  for (int j = 0; j < opt.gridN; ++j) {
    for (int i = 0; i < opt.gridN; ++i) {
      const cplx c(-opt.halfWidth + i * h, -opt.halfWidth + j * h);
      bool masked = false;
      for (size_t p = 0; p < poles.size(); ++p) {
        if (std::abs(c - poles[p]) < opt.maskRadius) {
          masked = true;
          poleHit[p] = 1;
        }
      }
      csv << fmt(c.real()) << "," << fmt(c.imag());
      if (masked) {
        ++out.maskedNodes;
        for (int k = 0; k < w.ambientDim; ++k) csv << ",nan";
      } else {
        const cplx z = opt.chart == Chart::North ? c : 1.0 / c;
        const CplxVec F = f.eval(z);
        for (int k = 0; k < w.ambientDim; ++k) csv << "," << fmt(2.0 * F[k].real());
      }
      csv << "\n";
      ++out.rows;
    }
  }
  for (char hit : poleHit) out.maskedPoles += hit;
  out.csv = csv.str();
  return out;
}

}  // namespace wm
