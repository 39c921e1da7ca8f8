#include "willmore/willmore_c.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "willmore/documents.hpp"
#include "willmore/error.hpp"
#include "willmore/pipelines.hpp"

struct wm_surface {
  wm::WeierstrassData data;
};

struct wm_report {
  wm::Report report;
};

namespace {

thread_local std::string lastError;

wm_status fail(wm_status code, std::string message) {
  lastError = std::move(message);
  return code;
}

// Runs fn and maps exceptions to status codes.
template <typename Fn>
wm_status guarded(Fn&& fn) {
  try {
    fn();
    lastError.clear();
    return WM_OK;
  } catch (const wm::Error& e) {
    return fail(static_cast<wm_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WM_ERR_INTERNAL, "unknown exception");
  }
}

char* copyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wm_status nullArgument(const char* what) { return fail(WM_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

template <typename Build>
wm_status makeReport(const wm_surface* s, wm_report** out, Build&& build) {
  if (!s) return nullArgument("surface");
  if (!out) return nullArgument("output");
  return guarded([&] { *out = new wm_report{build(s->data)}; });
}

}  // namespace

extern "C" {

const char* wm_last_error(void) { return lastError.c_str(); }

const char* wm_status_name(wm_status status) {
  if (status == WM_OK) return "Ok";
  if (status == WM_ERR_INTERNAL) return "Internal";
  return wm::errorName(static_cast<wm::ErrorCode>(static_cast<int>(status)));
}

void wm_string_free(char* s) { std::free(s); }

wm_status wm_generate(int k, int m, uint64_t seed, wm_surface** out) {
  if (!out) return nullArgument("output");
  return guarded([&] { *out = new wm_surface{wm::generate(k, m, seed)}; });
}

wm_status wm_surface_parse(const char* json, wm_surface** out) {
  if (!json) return nullArgument("json");
  if (!out) return nullArgument("output");
  return guarded([&] { *out = new wm_surface{wm::parseSurfaceJson(json)}; });
}

wm_status wm_surface_load(const char* path, wm_surface** out) {
  if (!path) return nullArgument("path");
  if (!out) return nullArgument("output");
  return guarded([&] { *out = new wm_surface{wm::parseSurfaceJson(wm::readFile(path))}; });
}

wm_status wm_surface_json(const wm_surface* s, char** out) {
  if (!s) return nullArgument("surface");
  if (!out) return nullArgument("output");
  return guarded([&] { *out = copyString(wm::surfaceJson(s->data)); });
}

wm_status wm_surface_save(const wm_surface* s, const char* path) {
  if (!s) return nullArgument("surface");
  if (!path) return nullArgument("path");
  return guarded([&] { wm::writeFileAtomic(path, wm::surfaceJson(s->data)); });
}

wm_status wm_surface_get_info(const wm_surface* s, wm_surface_info* out) {
  if (!s) return nullArgument("surface");
  if (!out) return nullArgument("output");
  out->k = s->data.k;
  out->m = s->data.m;
  out->ambient_dim = s->data.ambientDim;
  out->n = s->data.n;
  lastError.clear();
  return WM_OK;
}

void wm_surface_free(wm_surface* s) { delete s; }

wm_status wm_verify(const wm_surface* s, wm_report** out) {
  return makeReport(s, out, [](const wm::WeierstrassData& w) { return wm::verifySuite(w); });
}

wm_status wm_invariants(const wm_surface* s, int samples, int energy, wm_report** out) {
  if (samples < 1) return fail(WM_ERR_INVALID_ARGUMENT, "samples must be positive");
  return makeReport(s, out, [&](const wm::WeierstrassData& w) {
    wm::InvariantsOptions opt;
    opt.samples = samples;
    opt.energy = energy != 0;
    return wm::invariantsSuite(w, opt);
  });
}

wm_status wm_adjoint(const wm_surface* s, wm_adjoint_mode mode, double g_re, double g_im, wm_report** out) {
  if (mode != WM_ADJOINT_DUAL && mode != WM_ADJOINT_RICCATI) return fail(WM_ERR_INVALID_ARGUMENT, "unknown mode");
  return makeReport(s, out, [&](const wm::WeierstrassData& w) {
    wm::AdjointOptions opt;
    opt.mode = mode == WM_ADJOINT_DUAL ? wm::AdjointMode::Dual : wm::AdjointMode::Riccati;
    opt.g = wm::cplx(g_re, g_im);
    return wm::adjointSuite(w, opt);
  });
}

wm_status wm_harmonic(const wm_surface* s, int max_steps, wm_report** out) {
  if (max_steps < 1) return fail(WM_ERR_INVALID_ARGUMENT, "max_steps must be positive");
  return makeReport(s, out, [&](const wm::WeierstrassData& w) { return wm::harmonicSuite(w, max_steps); });
}

wm_status wm_twistor(const wm_surface* s, wm_report** out) {
  return makeReport(s, out, [](const wm::WeierstrassData& w) { return wm::twistorSuite(w); });
}

wm_status wm_export_csv(const wm_surface* s, const char* path, wm_chart chart, int grid, wm_export_info* info) {
  if (!s) return nullArgument("surface");
  if (!path) return nullArgument("path");
  if (chart != WM_CHART_NORTH && chart != WM_CHART_SOUTH) return fail(WM_ERR_INVALID_ARGUMENT, "unknown chart");
  return guarded([&] {
    wm::ExportOptions opt;
    opt.chart = chart == WM_CHART_NORTH ? wm::Chart::North : wm::Chart::South;
    opt.gridN = grid;
    const wm::ExportResult r = wm::exportPointCloud(s->data, opt);
    wm::writeFileAtomic(path, r.csv);
    if (info) {
      info->rows = r.rows;
      info->masked_nodes = r.maskedNodes;
      info->masked_poles = r.maskedPoles;
    }
  });
}

int wm_report_passed(const wm_report* r) { return r && r->report.passed() ? 1 : 0; }

wm_status wm_report_json(const wm_report* r, int include_timing, char** out) {
  if (!r) return nullArgument("report");
  if (!out) return nullArgument("output");
  return guarded([&] { *out = copyString(wm::reportJson(r->report, include_timing != 0)); });
}

wm_status wm_report_save(const wm_report* r, const char* path, int include_timing) {
  if (!r) return nullArgument("report");
  if (!path) return nullArgument("path");
  return guarded([&] { wm::writeFileAtomic(path, wm::reportJson(r->report, include_timing != 0)); });
}

wm_status wm_report_summary(const wm_report* r, char** out) {
  if (!r) return nullArgument("report");
  if (!out) return nullArgument("output");
  return guarded([&] { *out = copyString(wm::reportSummary(r->report)); });
}

void wm_report_free(wm_report* r) { delete r; }

}  // extern "C"
