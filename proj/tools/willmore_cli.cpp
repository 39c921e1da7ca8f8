// Command-line front end. Links only the C library interface.
//
// Exit codes: 0 when every check passes, 1 when a check fails or a
// computation cannot be completed, 2 on usage errors and unreadable input.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "willmore/willmore_c.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct SurfaceDeleter {
  void operator()(wm_surface* s) const { wm_surface_free(s); }
};
struct ReportDeleter {
  void operator()(wm_report* r) const { wm_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { wm_string_free(s); }
};
using SurfacePtr = std::unique_ptr<wm_surface, SurfaceDeleter>;
using ReportPtr = std::unique_ptr<wm_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Problems with the input itself are usage errors.
int exitFor(wm_status st) {
  switch (st) {
    case WM_ERR_IO:
    case WM_ERR_PARSE:
    case WM_ERR_SCHEMA:
    case WM_ERR_INVALID_ARGUMENT:
    case WM_ERR_PARAMETER_DOMAIN:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

int reportError(wm_status st) {
  std::cerr << "error: " << wm_last_error() << "\n";
  return exitFor(st);
}

struct Common {
  std::string input;
  std::string reportPath;
  bool timing = false;
};

void addCommon(CLI::App* sub, Common& c) {
  sub->add_option("FILE", c.input, "surface document (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--report", c.reportPath, "write the JSON report to this path");
}

// Loads the input and prints the summary of one suite.
template <typename Run>
int runSuite(const Common& c, Run&& run) {
  const auto t0 = std::chrono::steady_clock::now();
  wm_surface* raw = nullptr;
  wm_status st = wm_surface_load(c.input.c_str(), &raw);
  if (st != WM_OK) return reportError(st);
  const SurfacePtr surface(raw);

  wm_report* rep = nullptr;
  st = run(surface.get(), &rep);
  if (st != WM_OK) return reportError(st);
  const ReportPtr report(rep);

  char* text = nullptr;
  if ((st = wm_report_summary(report.get(), &text)) != WM_OK) return reportError(st);
  std::cout << StringPtr(text).get();
  if (!c.reportPath.empty()) {
    if ((st = wm_report_save(report.get(), c.reportPath.c_str(), c.timing ? 1 : 0)) != WM_OK) return reportError(st);
  }
  if (c.timing) {
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "wall time: %.3f s\n", dt);
  }
  return wm_report_passed(report.get()) ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotropic Willmore surfaces with planar ends: generation and numerical certification"};
  app.require_subcommand(1);
  app.fallthrough();
  bool timing = false;
  app.add_flag("--timing", timing, "include wall-clock times (off by default so output is reproducible)");

  // generate
  int genK = 0, genM = 0;
  uint64_t seed = 0;
  std::string genOut;
  CLI::App* gen = app.add_subcommand("generate", "build a k-isotropic minimal surface with planar ends");
  gen->add_option("--k", genK, "isotropy order")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--m", genM, "parameter m (2m + 2 planar ends)")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "seed for the free parameters");
  gen->add_option("-o,--output", genOut, "output document")->required();

  Common verifyOpts;
  CLI::App* verify = app.add_subcommand("verify", "exact checks on the rational data");
  addCommon(verify, verifyOpts);

  Common invOpts;
  int samples = 50;
  bool energy = false;
  CLI::App* inv = app.add_subcommand("invariants", "Willmore, integrability, chi0 and dual-point residuals");
  addCommon(inv, invOpts);
  inv->add_option("--samples", samples, "number of sample points")->check(CLI::PositiveNumber);
  inv->add_flag("--energy", energy, "also integrate the Willmore energy (slow)");

  Common adjOpts;
  std::string mode = "riccati";
  std::vector<std::string> init;
  CLI::App* adj = app.add_subcommand("adjoint", "adjoint transform identities on a grid");
  addCommon(adj, adjOpts);
  adj->add_option("--mode", mode, "dual or riccati")->check(CLI::IsMember({"dual", "riccati"}));
  adj->add_option("--init", init, "Riccati initial value: g-const RE,IM")->expected(2);

  Common harmOpts;
  int maxSteps = 6;
  CLI::App* harm = app.add_subcommand("harmonic", "bundle, Frenet, phi and Q-chain checks");
  addCommon(harm, harmOpts);
  harm->add_option("--max-steps", maxSteps, "recursion depth")->check(CLI::PositiveNumber);

  Common twOpts;
  CLI::App* tw = app.add_subcommand("twistor", "adapted frames and twistor-lift conditions");
  addCommon(tw, twOpts);

  std::string expIn, expOut, chart = "north";
  int grid = 101;
  CLI::App* exp = app.add_subcommand("export", "CSV point cloud on a chart grid");
  exp->add_option("FILE", expIn, "surface document (JSON)")->required()->check(CLI::ExistingFile);
  exp->add_option("--csv", expOut, "output CSV")->required();
  exp->add_option("--chart", chart, "north or south")->check(CLI::IsMember({"north", "south"}));
  exp->add_option("--grid", grid, "nodes per side")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  for (Common* c : {&verifyOpts, &invOpts, &adjOpts, &harmOpts, &twOpts}) c->timing = timing;

  if (gen->parsed()) {
    wm_surface* raw = nullptr;
    const wm_status st = wm_generate(genK, genM, seed, &raw);
    if (st != WM_OK) return reportError(st);
    const SurfacePtr surface(raw);
    if (const wm_status s2 = wm_surface_save(surface.get(), genOut.c_str()); s2 != WM_OK) return reportError(s2);
    wm_surface_info info{};
    wm_surface_get_info(surface.get(), &info);
    std::cout << "wrote " << genOut << ": k=" << info.k << " m=" << info.m << " ambient dimension "
              << info.ambient_dim << ", poles z^2(z^" << info.n << "-1)^2\n";
    return kExitPass;
  }
  if (verify->parsed()) return runSuite(verifyOpts, [](const wm_surface* s, wm_report** r) { return wm_verify(s, r); });
  if (inv->parsed()) {
    return runSuite(invOpts, [&](const wm_surface* s, wm_report** r) {
      return wm_invariants(s, samples, energy ? 1 : 0, r);
    });
  }
  if (adj->parsed()) {
    double gRe = 1.0, gIm = 0.0;
    if (!init.empty()) {
      if (mode != "riccati") {
        std::cerr << "error: --init only applies to --mode riccati\n";
        return kExitUsage;
      }
      char tail = 0;
      if (init[0] != "g-const" || std::sscanf(init[1].c_str(), "%lf,%lf%c", &gRe, &gIm, &tail) != 2) {
        std::cerr << "error: --init expects 'g-const RE,IM'\n";
        return kExitUsage;
      }
    }
    const wm_adjoint_mode m = mode == "dual" ? WM_ADJOINT_DUAL : WM_ADJOINT_RICCATI;
    return runSuite(adjOpts, [&](const wm_surface* s, wm_report** r) { return wm_adjoint(s, m, gRe, gIm, r); });
  }
  if (harm->parsed()) {
    return runSuite(harmOpts, [&](const wm_surface* s, wm_report** r) { return wm_harmonic(s, maxSteps, r); });
  }
  if (tw->parsed()) return runSuite(twOpts, [](const wm_surface* s, wm_report** r) { return wm_twistor(s, r); });

  // export
  wm_surface* raw = nullptr;
  wm_status st = wm_surface_load(expIn.c_str(), &raw);
  if (st != WM_OK) return reportError(st);
  const SurfacePtr surface(raw);
  wm_export_info info{};
  st = wm_export_csv(surface.get(), expOut.c_str(), chart == "north" ? WM_CHART_NORTH : WM_CHART_SOUTH, grid, &info);
  if (st != WM_OK) return reportError(st);
  std::cout << "wrote " << expOut << ": " << info.rows << " rows, " << info.masked_nodes << " masked nodes around "
            << info.masked_poles << " poles\n";
  return kExitPass;
}
