// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// all of them pass. Not registered with ctest because the bare adjoint
// metric identity (criterion 9) is expected to fail; see README.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "willmore/documents.hpp"
#include "willmore/pipelines.hpp"

using namespace wm;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Case {
  int k, m;
};
const std::vector<Case> kCases = {{0, 4}, {1, 4}, {2, 7}};

std::string label(const Case& c) { return "(" + std::to_string(c.k) + "," + std::to_string(c.m) + ")"; }

const WeierstrassData& data(const Case& c) {
  static std::map<std::pair<int, int>, WeierstrassData> cache;
  auto it = cache.find({c.k, c.m});
  if (it == cache.end()) it = cache.emplace(std::pair{c.k, c.m}, generate(c.k, c.m)).first;
  return it->second;
}

const CheckResult* find(const Report& r, const std::string& name) {
  for (const CheckResult& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool passed(const Report& r, const std::string& name) {
  const CheckResult* c = find(r, name);
  return c && c->status == CheckStatus::Pass;
}

double maxOf(const Report& r, const std::string& name) {
  const CheckResult* c = find(r, name);
  if (!c) return std::numeric_limits<double>::quiet_NaN();
  if (c->stats) return c->stats->max;
  return c->witnesses.empty() ? 0.0 : c->witnesses.front().value;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

int failures = 0;

void line(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("%s %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Reports computed once and shared by several criteria.
struct Runs {
  std::map<std::pair<int, int>, Report> invariants;
  Report adjoint, harmonic, twistor;
};

}  // namespace

int main() {
  Runs runs;

  {  // 1. exact conformality, each generation under 10 s
    bool ok = true;
    std::string detail;
    for (const Case& c : kCases) {
      const auto t0 = Clock::now();
      const WeierstrassData w = generate(c.k, c.m);
      const double dt = since(t0);
      data(c);
      const ConformalReport r = verifyConformal(w);
      ok = ok && r.pass && !r.degenerate && dt < 10.0;
      detail += label(c) + (r.pass ? " exact" : " nonzero") + " " + sci(dt) + "s  ";
    }
    line(1, "exact conformality", ok, detail);
  }

  {  // 2. isotropy order exactly k, with <x^(k+2), x^(k+2)> != 0
    bool ok = true;
    std::string detail;
    for (const Case& c : kCases) {
      const IsotropyResult iso = isotropyOrder(data(c));
      ok = ok && !iso.total && iso.order == c.k && iso.firstNonvanishing == c.k + 2;
      detail += label(c) + " order " + (iso.total ? "total" : std::to_string(iso.order)) + " first nonzero " +
                std::to_string(iso.firstNonvanishing) + "  ";
    }
    line(2, "isotropy order", ok, detail);
  }

  {  // 3. planar ends: residues < 1e-10, contour cross-check < 1e-9, 2m + 2 ends
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const Case& c : kCases) {
      const WeierstrassData& w = data(c);
      const EndReport er = verifyPlanarEnds(w);
      std::vector<cplx> finite;
      for (const EndInfo& e : er.ends)
        if (!e.atInfinity && e.cls != EndClass::Regular) finite.push_back(e.location);
      double maxRes = 0.0, maxContour = 0.0;
      int planar = 0;
      for (const EndInfo& e : er.ends) {
        if (e.cls == EndClass::Regular) continue;
        maxRes = std::max(maxRes, e.residue);
        if (e.cls == EndClass::PlanarEnd) ++planar;
        if (e.atInfinity) continue;
        double gap = 1.0;
        for (const cplx p : finite)
          if (p != e.location) gap = std::min(gap, std::abs(p - e.location));
        const Eigen::VectorXcd res = oracle::contourResidue(
            [&](cplx z) { return Eigen::VectorXcd(w.xz.eval(z)); }, e.location, 0.4 * gap, 512);
        maxContour = std::max(maxContour, res.norm());
      }
      ok = ok && maxRes < 1e-10 && maxContour < 1e-9 && planar == 2 * c.m + 2 && er.planarCount == 2 * c.m + 2;
      detail += label(c) + " " + std::to_string(planar) + " ends res " + sci(maxRes) + " contour " +
                sci(maxContour) + "  ";
    }
    const double dt = since(t0);
    ok = ok && dt < 20.0;
    line(3, "planar ends", ok, detail + sci(dt) + "s");
  }

  {  // 4. lambda relations of the k = 0, m = 4 example (tau0 = 2m = 8)
    const int m = 4, n = 2 * m + 1, l = (n + 1) / 2;
    const GaussRat tau0(2 * m);
    const LambdaTable lt = lambdaTable(data({0, 4}));
    const GaussRat want4 = GaussRat(mpq_class(-(m + 1) * (m + 1), 2 * m * m)) * tau0;
    const bool ok = lt.at(l, l) == tau0 && lt.at(0, 2 * l) == GaussRat(-4) && lt.at(n, 2 * l) == GaussRat(-10) &&
                    lt.at(2 * l, 2 * n) == want4 && want4 == GaussRat::ratio(-25, 4);
    line(4, "closed-form lambda relations", ok,
         "lambda(l,l)=" + formatGaussRat(lt.at(l, l)) + " lambda(0,2l)=" + formatGaussRat(lt.at(0, 2 * l)) +
             " lambda(n,2l)=" + formatGaussRat(lt.at(n, 2 * l)) + " lambda(2l,2n)=" +
             formatGaussRat(lt.at(2 * l, 2 * n)));
  }

  for (const Case& c : kCases) {
    InvariantsOptions opt;
    opt.samples = 50;
    runs.invariants[{c.k, c.m}] = invariantsSuite(data(c), opt);
  }
  auto invariantLine = [&](int id, const std::string& title, const std::vector<std::string>& names) {
    bool ok = true;
    std::string detail;
    for (const Case& c : kCases) {
      const Report& r = runs.invariants.at({c.k, c.m});
      detail += label(c);
      for (const std::string& n : names) {
        const CheckResult* cr = find(r, n);
        ok = ok && passed(r, n) && cr->samples >= 50;
        detail += " " + n + " " + sci(maxOf(r, n));
      }
      detail += "  ";
    }
    line(id, title, ok, detail);
  };
  invariantLine(5, "Willmore residual", {"willmore"});
  invariantLine(6, "integrability", {"gauss", "codazzi", "ricci"});
  invariantLine(7, "chi0 and Theta0 identity", {"chi0", "theta0-identity"});
  invariantLine(8, "dual point (rho = 0)", {"dual-point"});

  {  // 9 and 10. Riccati-extended adjoint of the (1,4) example on the 41 x 41 grid
    const auto t0 = Clock::now();
    runs.adjoint = adjointSuite(data({1, 4}));
    const double dt = since(t0);
    const Report& r = runs.adjoint;
    bool ok = dt < 60.0;
    std::string detail;
    for (const char* n : {"co-touch", "lightlike", "conformal", "metric-identity"}) {
      ok = ok && passed(r, n);
      detail += std::string(n) + " " + sci(maxOf(r, n)) + " ";
    }
    detail += "(eta-corrected identity " + sci(maxOf(r, "metric-identity-eta")) + ") " + sci(dt) + "s";
    line(9, "adjoint identities", ok, detail);
    line(10, "adjoint Willmore residual", passed(r, "adjoint-willmore"),
         "max " + sci(maxOf(r, "adjoint-willmore")) + " over " +
             std::to_string(find(r, "adjoint-willmore") ? find(r, "adjoint-willmore")->samples : 0) + " points");
  }

  {  // 11 and 12. bundle suite on (1,4)
    runs.harmonic = harmonicSuite(data({1, 4}));
    const Report& r = runs.harmonic;
    bool ok = true;
    std::string detail;
    for (const char* n : {"pi0-isotropy", "pi0-holomorphicity", "rank-dfk", "frenet", "phi-sequence"}) {
      ok = ok && passed(r, n);
      if (find(r, n) && find(r, n)->stats) detail += std::string(n) + " " + sci(maxOf(r, n)) + " ";
    }
    if (const CheckResult* c = find(r, "rank-dfk")) detail += "ranks " + c->notes.at("ranks") + " ";
    if (const CheckResult* c = find(r, "frenet")) detail += "rank dh " + c->notes.at("rankDh");
    line(11, "bundle suite", ok, detail);
    const CheckResult* q = find(r, "q-chain-isotropy");
    line(12, "Q-chain isotropy", q && q->status == CheckStatus::Pass,
         q ? "max " + sci(maxOf(r, "q-chain-isotropy")) + " terminal steps " + q->notes.at("terminalStep")
           : "not computed");
  }

  {  // 13. twistor suite on the totally isotropic example
    const WeierstrassData ex = buildTotallyIsotropicExample();
    runs.twistor = twistorSuite(ex);
    const Report& r = runs.twistor;
    const bool ok = r.passed() && passed(r, "total-isotropy") && passed(r, "conformal") &&
                    passed(r, "j-holomorphic") && passed(r, "normal-horizontal") && passed(r, "isotropy-transfer");
    line(13, "twistor suite", ok,
         "J-holomorphic " + sci(maxOf(r, "j-holomorphic")) + " normal-horizontal " +
             sci(maxOf(r, "normal-horizontal")) + " transfer " +
             (find(r, "isotropy-transfer") ? find(r, "isotropy-transfer")->notes.at("bound") : "n/a"));
  }

  {  // 14. W / 4 pi near an integer
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const Case& c : {Case{0, 4}, Case{1, 4}}) {
      InvariantsOptions opt;
      opt.samples = 1;
      opt.energy = true;
      const Report r = invariantsSuite(data(c), opt);
      const CheckResult* e = find(r, "energy");
      ok = ok && e && e->status == CheckStatus::Pass;
      detail += label(c) + (e ? " W/4pi " + e->notes.at("W/4pi") + " -> " + e->notes.at("integer") : " error") + "  ";
    }
    const double dt = since(t0);
    line(14, "energy quantization", ok && dt < 120.0, detail + sci(dt) + "s");
  }

  {  // 15. rerun the pipeline and compare bytes
    bool ok = true;
    int compared = 0;
    auto same = [&](const std::string& a, const std::string& b) {
      ++compared;
      ok = ok && a == b;
    };
    for (const Case& c : kCases) {
      const WeierstrassData w = generate(c.k, c.m);
      same(surfaceJson(w), surfaceJson(data(c)));
      same(surfaceJson(parseSurfaceJson(surfaceJson(w))), surfaceJson(w));
      same(reportJson(verifySuite(w)), reportJson(verifySuite(data(c))));
      InvariantsOptions opt;
      opt.samples = 50;
      same(reportJson(invariantsSuite(w, opt)), reportJson(runs.invariants.at({c.k, c.m})));
      same(exportPointCloud(w).csv, exportPointCloud(data(c)).csv);
    }
    same(reportJson(adjointSuite(generate(1, 4))), reportJson(runs.adjoint));
    same(reportJson(harmonicSuite(generate(1, 4))), reportJson(runs.harmonic));
    same(reportJson(twistorSuite(buildTotallyIsotropicExample())), reportJson(runs.twistor));
    line(15, "determinism", ok, std::to_string(compared) + " documents compared byte for byte");
  }

  std::printf("%d of 15 criteria passed\n", 15 - failures);
  return failures == 0 ? 0 : 1;
}
