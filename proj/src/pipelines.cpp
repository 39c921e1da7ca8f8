#include "willmore/pipelines.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "willmore/adjoint.hpp"
#include "willmore/error.hpp"
#include "willmore/harmonic.hpp"
#include "willmore/moebius.hpp"
#include "willmore/twistor.hpp"

namespace wm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

std::map<std::string, std::string> describe(const WeierstrassData& w) {
  return {{"kind", w.kind},
          {"k", std::to_string(w.k)},
          {"m", std::to_string(w.m)},
          {"ambientDim", std::to_string(w.ambientDim)},
          {"generator", w.generator}};
}

// A check computed from a single number (grid maxima and the like).
CheckResult scalarCheck(const std::string& name, double value, double tol, int samples, const std::string& label) {
  CheckResult c = sampledCheck(name, {}, {value}, tol);
  c.samples = samples;
  c.witnesses.front().label = label;
  return c;
}

CheckResult failedWith(const std::string& name, const Error& e) {
  CheckResult c;
  c.name = name;
  c.status = CheckStatus::Fail;
  Witness w;
  w.label = e.what();
  w.value = static_cast<double>(static_cast<int>(e.code()));
  c.witnesses.push_back(w);
  return c;
}

// Runs fn, timing it and turning a library error into a failed check.
void run(Report& r, const std::string& name, const std::function<void(Report&)>& fn) {
  const auto t0 = Clock::now();
  const size_t before = r.checks.size();
  try {
    fn(r);
  } catch (const Error& e) {
    r.checks.resize(before);
    r.checks.push_back(failedWith(name, e));
  }
  const double dt = seconds(t0);
  for (size_t i = before; i < r.checks.size(); ++i) r.checks[i].wallSeconds = dt;
}

std::string joinInts(const std::vector<int>& v) {
  std::ostringstream s;
  for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

Surface surfaceOf(const WeierstrassData& w) { return surfaceFromData(w); }

VRatFn primitiveOf(const WeierstrassData& w) { return w.primitive ? *w.primitive : integratePrimitive(w); }

}  // namespace

// ------------------------------------------------------------ verify

Report verifySuite(const WeierstrassData& w) {
  Report r;
  r.command = "verify";
  r.input = describe(w);
  const auto t0 = Clock::now();

  run(r, "conformal", [&](Report& rep) {
    const ConformalReport cr = verifyConformal(w);
    CheckResult c;
    c.name = "conformal";
    c.tolerances["exact"] = 0.0;
    c.status = cr.pass ? CheckStatus::Pass : CheckStatus::Fail;
    c.notes["degenerate"] = cr.degenerate ? "true" : "false";
    for (int p : cr.offendingPowers) {
      Witness wt;
      wt.label = "coefficient of z^" + std::to_string(p) + " in <P,P>";
      wt.value = std::abs(cr.pairing.num.coeff(p).toComplex());
      c.witnesses.push_back(wt);
    }
    rep.checks.push_back(c);
  });

  run(r, "isotropy-order", [&](Report& rep) {
    const IsotropyResult iso = isotropyOrder(w);
    CheckResult c;
    c.name = "isotropy-order";
    c.tolerances["exact"] = 0.0;
    c.notes["order"] = iso.total ? "total" : std::to_string(iso.order);
    c.notes["firstNonvanishing"] = std::to_string(iso.firstNonvanishing);
    if (w.k >= 0) {
      c.notes["target"] = std::to_string(w.k);
      if (iso.total || iso.order != w.k) {
        c.status = CheckStatus::Fail;
        Witness wt;
        wt.label = "isotropy order";
        wt.value = iso.order;
        c.witnesses.push_back(wt);
      }
    }
    rep.checks.push_back(c);
  });

  run(r, "planar-ends", [&](Report& rep) {
    const EndReport er = verifyPlanarEnds(w);
    const double tol = 1e-10;
    CheckResult c;
    c.name = "planar-ends";
    c.tolerances["residue"] = tol;
    std::vector<double> residues;
    bool ok = true;
    for (size_t i = 0; i < er.ends.size(); ++i) {
      const EndInfo& e = er.ends[i];
      if (e.cls == EndClass::Regular) continue;
      residues.push_back(e.residue);
      if (e.cls != EndClass::PlanarEnd || !(e.residue < tol)) {
        ok = false;
        Witness wt;
        if (!e.atInfinity) wt.point = e.location;
        wt.label = std::string(e.atInfinity ? "end at infinity" : "end") + " (" + endClassName(e.cls) + ")";
        wt.value = e.residue;
        c.witnesses.push_back(wt);
      }
    }
    c.samples = static_cast<int>(residues.size());
    c.stats = residualStats(residues);
    c.notes["planarCount"] = std::to_string(er.planarCount);
    if (w.k >= 0 && w.n > 0) {
      c.notes["expected"] = std::to_string(2 * w.m + 2);
      if (er.planarCount != 2 * w.m + 2) {
        ok = false;
        Witness wt;
        wt.label = "planar end count";
        wt.value = er.planarCount;
        c.witnesses.push_back(wt);
      }
    }
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    rep.checks.push_back(c);
  });

  r.wallSeconds = seconds(t0);
  return r;
}

// ------------------------------------------------------------ invariants

Report invariantsSuite(const WeierstrassData& w, const InvariantsOptions& opt) {
  Report r;
  r.command = "invariants";
  r.input = describe(w);
  r.input["samples"] = std::to_string(opt.samples);
  const auto t0 = Clock::now();
  const Surface s = surfaceOf(w);
  const std::vector<cplx> pts = interiorSamples(s, opt.samples, 1);

  std::vector<MoebiusFrame> frames;
  std::vector<cplx> used;
  int skipped = 0;
  for (const cplx z : pts) {
    try {
      frames.push_back(frameAt(s, z, 6));
      used.push_back(z);
    } catch (const Error&) {
      ++skipped;
    }
  }
  double rms = 0.0;
  for (const MoebiusFrame& f : frames) rms += values(f.kappa).squaredNorm();
  rms = frames.empty() ? 0.0 : std::sqrt(rms / static_cast<double>(frames.size()));

  auto sampled = [&](const std::string& name, double tol, const std::function<double(const MoebiusFrame&)>& fn) {
    run(r, name, [&](Report& rep) {
      std::vector<double> v;
      for (const MoebiusFrame& f : frames) v.push_back(fn(f));
      CheckResult c = sampledCheck(name, used, v, tol);
      c.masked = skipped;
      rep.checks.push_back(c);
    });
  };

  sampled("willmore", 1e-6, [&](const MoebiusFrame& f) {
    const double n = willmoreVector(f).norm();
    return rms > 0.0 ? n / rms : n;
  });
  sampled("gauss", 1e-6, [](const MoebiusFrame& f) { return integrabilityResiduals(f).gauss; });
  sampled("codazzi", 1e-6, [](const MoebiusFrame& f) { return integrabilityResiduals(f).codazzi; });
  sampled("ricci", 1e-6, [](const MoebiusFrame& f) { return integrabilityResiduals(f).ricci; });
  sampled("chi0", 1e-8, [](const MoebiusFrame& f) { return chi0theta0(f).chi0Norm; });
  sampled("theta0-identity", 1e-10, [](const MoebiusFrame& f) {
    const Chi0Theta0 c = chi0theta0(f);
    return std::abs(c.theta0 - c.wedgePairing) / std::max(1.0, std::abs(c.theta0));
  });
  sampled("dual-point", 1e-6, [](const MoebiusFrame& f) { return std::abs(dualRho(f)); });
  if (!r.checks.empty()) r.checks.front().notes["kappaRms"] = std::to_string(rms);

  if (opt.energy) {
    run(r, "energy", [&](Report& rep) {
      const EnergyResult e = willmoreEnergy(w);
      CheckResult c = scalarCheck("energy", e.integerDistance, 0.01, e.evaluations, "|W/4pi - n| / max(1, n)");
      std::ostringstream norm;
      norm.precision(10);
      norm << e.normalized;
      c.notes["W/4pi"] = norm.str();
      c.notes["integer"] = std::to_string(e.nearestInteger);
      rep.checks.push_back(c);
    });
  }
  r.wallSeconds = seconds(t0);
  return r;
}

// ------------------------------------------------------------ adjoint

Report adjointSuite(const WeierstrassData& w, const AdjointOptions& opt) {
  Report r;
  r.command = "adjoint";
  r.input = describe(w);
  r.input["mode"] = opt.mode == AdjointMode::Dual ? "dual" : "riccati";
  if (opt.mode == AdjointMode::Riccati) {
    std::ostringstream g;
    g.precision(17);
    g << opt.g.real() << "," << opt.g.imag();
    r.input["g"] = g.str();
  }
  const auto t0 = Clock::now();

  if (opt.mode == AdjointMode::Riccati) {
    // Riccati extension is only valid where <kappa, kappa> vanishes identically.
    bool ok = false;
    run(r, "isotropic-input", [&](Report& rep) {
      const IsotropyResult iso = isotropyOrder(w);
      ok = iso.total || iso.order >= 1;
      CheckResult c;
      c.name = "isotropic-input";
      c.notes["order"] = iso.total ? "total" : std::to_string(iso.order);
      if (!ok) {
        c.status = CheckStatus::Fail;
        c.witnesses.push_back({std::nullopt, "<kappa, kappa> is not identically zero", 0.0});
      }
      rep.checks.push_back(c);
    });
    if (!ok) {
      r.wallSeconds = seconds(t0);
      return r;
    }
  }

  run(r, "adjoint", [&](Report& rep) {
    GridSpec g;
    g.center = 2.0;
    g.side = 0.5;
    const Surface s = surfaceOf(w);
    const PolarizedMu mu0 = polarizedDualMu(primitiveOf(w));
    const FrameField ff = frameField(s, g);
    RiccatiInit init;
    if (opt.mode == AdjointMode::Dual) {
      init.infinite = true;
    } else {
      const cplx gv = opt.g;
      init.g = [gv](cplx) { return gv; };
    }
    const RiccatiField rf = riccatiExtend(mu0, g, init);
    const int n = g.interior * g.interior;
    const std::string where = "max over interior grid";

    const ScalarSummary t = coTouchResidual(rf.mu, ff.s, g);
    CheckResult theta = scalarCheck("co-touch", t.max, 1e-5, n, where);
    theta.masked = t.masked;
    theta.notes["blowUps"] = std::to_string(rf.blowUpCount);
    rep.checks.push_back(theta);

    const VecField yh = adjointLiftField(rf.mu, ff);
    const RhoMetric rm = rhoAndMetric(rf.mu, ff, yh);
    rep.checks.push_back(scalarCheck("lightlike", rm.maxLightlike, 1e-10, n, where));
    rep.checks.push_back(scalarCheck("normalization", rm.maxNormalization, 1e-10, n, where));
    rep.checks.push_back(scalarCheck("conformal", rm.maxConformal, 1e-5, n, where));
    CheckResult ident = scalarCheck("metric-identity", rm.maxIdentity, 1e-5, n, where);
    ident.notes["branchPoints"] = std::to_string(rm.branchCount);
    rep.checks.push_back(ident);
    rep.checks.push_back(scalarCheck("metric-identity-eta", rm.maxEtaIdentity, 1e-5, n, where));
    rep.checks.push_back(scalarCheck("eta-conformal", rm.maxEtaPairing, 1e-10, n, where));

    if (opt.mode == AdjointMode::Dual) {
      rep.checks.push_back(scalarCheck("rho", rm.rho.cwiseAbs().maxCoeff(), 1e-6, n, where));
      // The dual of a minimal surface is a single point.
      CheckResult deg;
      deg.name = "dual-degenerate";
      try {
        adjointWillmoreResidual(yh, g);
        deg.status = CheckStatus::Fail;
        deg.notes["immersed"] = "true";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotImmersed) throw;
        deg.notes["immersed"] = "false";
      }
      rep.checks.push_back(deg);
    } else {
      const AdjointWillmoreReport aw = adjointWillmoreResidual(yh, g);
      CheckResult c = scalarCheck("adjoint-willmore", aw.maxResidual, 1e-3, aw.evaluated, "max over fitted points");
      c.masked = aw.skipped;
      rep.checks.push_back(c);
    }
  });
  r.wallSeconds = seconds(t0);
  return r;
}

// ------------------------------------------------------------ harmonic

Report harmonicSuite(const WeierstrassData& w, int maxSteps) {
  Report r;
  r.command = "harmonic";
  r.input = describe(w);
  r.input["maxSteps"] = std::to_string(maxSteps);
  const auto t0 = Clock::now();
  const Surface s = surfaceOf(w);

  int k = w.k;
  if (k < 0) {
    const IsotropyResult iso = isotropyOrder(w);
    k = iso.total ? -1 : iso.order;
  }
  r.input["isotropyOrder"] = k >= 0 ? std::to_string(k) : "total";
  const std::vector<cplx> pts = interiorSamples(s, 8, 5);
  std::vector<MoebiusFrame> frames;
  for (const cplx z : pts) frames.push_back(frameAt(s, z, 12));

  run(r, "pi0", [&](Report& rep) {
    std::vector<double> iso, holo, second;
    for (const MoebiusFrame& f : frames) {
      const BundleResidualReport b = bundleResiduals(piBundles(f, 0)[0], f);
      iso.push_back(b.isotropy);
      holo.push_back(b.holomorphicity);
      second.push_back(b.secondOrder);
    }
    // Pi_0 = span{kappa, D_zbar kappa} is isotropic only on isotropic surfaces.
    if (k >= 1 || k < 0) rep.checks.push_back(sampledCheck("pi0-isotropy", pts, iso, 1e-8));
    rep.checks.push_back(sampledCheck("pi0-holomorphicity", pts, holo, 1e-8));
    rep.checks.push_back(sampledCheck("pi0-second-order", pts, second, 1e-8));
  });

  if (k < 0) {
    // Totally isotropic data: the f^k_k bundles are not defined.
    r.wallSeconds = seconds(t0);
    return r;
  }

  std::vector<IsotropicBundles> bundles;
  run(r, "rank-dfk", [&](Report& rep) {
    std::vector<int> ranks;
    bool ok = true;
    for (const MoebiusFrame& f : frames) {
      bundles.push_back(isotropicBundles(f, k));
      const RankGap& g = bundles.back().dfk.rank;
      ranks.push_back(g.rank);
      if (g.ambiguous || (g.rank != 1 && g.rank != 2)) ok = false;
    }
    CheckResult c;
    c.name = "rank-dfk";
    c.samples = static_cast<int>(ranks.size());
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.notes["ranks"] = joinInts(ranks);
    c.notes["k"] = std::to_string(k);
    rep.checks.push_back(c);
  });

  run(r, "frenet", [&](Report& rep) {
    std::vector<double> res;
    std::vector<int> dh;
    for (size_t i = 0; i < bundles.size(); ++i) {
      const IsotropicBundles& b = bundles[i];
      const FrenetReport fr = frenetCheck(b.f0, b.pi, complementSections(b.fk));
      res.push_back(std::max({fr.a, fr.b, fr.c}));
      dh.push_back(fr.dh.rank);
    }
    CheckResult c = sampledCheck("frenet", pts, res, 1e-6);
    c.notes["rankDh"] = joinInts(dh);
    if (std::any_of(dh.begin(), dh.end(), [](int v) { return v != 1; })) {
      c.status = CheckStatus::Fail;
      Witness wt;
      wt.label = "Rank d h0 != 1";
      c.witnesses.push_back(wt);
    }
    rep.checks.push_back(c);
  });

  run(r, "phi-sequence", [&](Report& rep) {
    std::vector<double> pair;
    std::vector<int> collapsed;
    for (const MoebiusFrame& f : frames) {
      const PhiSequence p = phiSequence(f, k, maxSteps);
      pair.push_back(p.maxPairing);
      collapsed.push_back(p.collapsedAt);
    }
    CheckResult c = sampledCheck("phi-sequence", pts, pair, 1e-8);
    c.notes["collapsedAt"] = joinInts(collapsed);
    rep.checks.push_back(c);
  });

  run(r, "q-chain", [&](Report& rep) {
    const bool rankOne = !bundles.empty() && std::all_of(bundles.begin(), bundles.end(), [](const IsotropicBundles& b) {
      return b.dfk.rank.rank == 1;
    });
    if (!rankOne) {
      CheckResult c;
      c.name = "q-chain";
      c.status = CheckStatus::Skipped;
      c.notes["reason"] = "d f^k_k does not have rank 1";
      rep.checks.push_back(c);
      return;
    }
    std::vector<double> iso, structure;
    std::vector<int> terminal;
    for (const MoebiusFrame& f : frames) {
      const QSequence q = qSequence(f, k, maxSteps);
      iso.push_back(q.maxIsotropy);
      structure.push_back(q.maxStructure);
      terminal.push_back(q.terminalStep);
    }
    CheckResult c = sampledCheck("q-chain-isotropy", pts, iso, 1e-8);
    c.notes["terminalStep"] = joinInts(terminal);
    rep.checks.push_back(c);
    rep.checks.push_back(sampledCheck("q-chain-structure", pts, structure, 1e-5));
  });

  run(r, "harmonicity", [&](Report& rep) {
    GridSpec g;
    g.center = cplx(2.0, 0.3);
    g.nodes = 9;
    g.interior = 5;
    g.side = 8.0 / 64.0;
    const SubbundleSamples b =
        sampleBundle(s, g, "f0", [](const MoebiusFrame& f) { return values(frameSections(f)); });
    const ProjectorField p = projectorField(b);
    const ScalarSummary h = harmonicityResidual(p);
    const int n = g.interior * g.interior;
    rep.checks.push_back(scalarCheck("harmonicity", h.max, 1e-6, n, "max over interior grid"));
    rep.checks.push_back(scalarCheck("projector-defect", projectorDefect(p), 1e-10, g.nodes * g.nodes, "max over grid"));
  });

  r.wallSeconds = seconds(t0);
  return r;
}

// ------------------------------------------------------------ twistor

Report twistorSuite(const WeierstrassData& w) {
  Report r;
  r.command = "twistor";
  r.input = describe(w);
  const auto t0 = Clock::now();

  bool total = false;
  run(r, "total-isotropy", [&](Report& rep) {
    const IsotropyResult iso = isotropyOrder(w);
    total = iso.total;
    CheckResult c;
    c.name = "total-isotropy";
    c.tolerances["exact"] = 0.0;
    c.notes["order"] = iso.total ? "total" : std::to_string(iso.order);
    if (!iso.total) {
      c.status = CheckStatus::Fail;
      Witness wt;
      wt.label = "first nonvanishing <x^(j), x^(j)>";
      wt.value = iso.firstNonvanishing;
      c.witnesses.push_back(wt);
    }
    rep.checks.push_back(c);
  });
  run(r, "conformal", [&](Report& rep) {
    CheckResult c;
    c.name = "conformal";
    c.tolerances["exact"] = 0.0;
    c.status = verifyConformal(w).pass ? CheckStatus::Pass : CheckStatus::Fail;
    if (c.status == CheckStatus::Fail) c.witnesses.push_back({std::nullopt, "<x_z, x_z> numerator", 1.0});
    rep.checks.push_back(c);
  });
  if (!total) {
    r.wallSeconds = seconds(t0);
    return r;
  }

  run(r, "frames", [&](Report& rep) {
    const Surface s = surfaceOf(w);
    const std::vector<cplx> pts = interiorSamples(s, 12, 3);
    const TwistorField field = adaptedFrameField(s, pts);
    std::vector<double> orth, jhol, nh, iso, ratio;
    bool holds = true;
    for (const TwistorFrame& t : field.frames) {
      const Eigen::Index d = t.F.rows();
      orth.push_back(t.complete ? (t.F.transpose() * t.F - Eigen::MatrixXd::Identity(d, d)).norm() : 0.0);
      const JHolomorphicReport j = jHolomorphicCheck(t);
      jhol.push_back(std::min(j.holomorphic, j.antiHolomorphic));
      nh.push_back(normalHorizontalCheck(t));
      const TransferReport tr = isotropyTransfer(t);
      iso.push_back(tr.isotropy);
      holds = holds && tr.holds;
    }
    CheckResult o = sampledCheck("orthonormality", pts, orth, 1e-10);
    o.notes["det"] = std::to_string(field.det);
    o.notes["signChanges"] = std::to_string(field.signChanges);
    o.notes["case"] = field.frames.empty() ? "none"
                      : field.frames.front().holomorphic ? "holomorphic"
                                                         : "anti-holomorphic";
    if (field.signChanges != 0) o.status = CheckStatus::Fail;
    rep.checks.push_back(o);
    rep.checks.push_back(sampledCheck("j-holomorphic", pts, jhol, 1e-6));
    rep.checks.push_back(sampledCheck("normal-horizontal", pts, nh, 1e-6));
    CheckResult tc = sampledCheck("isotropy-transfer", pts, iso, 1e-6);
    tc.tolerances["C"] = 100.0;
    tc.notes["bound"] = holds ? "holds" : "violated";
    tc.status = holds ? CheckStatus::Pass : CheckStatus::Fail;
    rep.checks.push_back(tc);
  });

  r.wallSeconds = seconds(t0);
  return r;
}

}  // namespace wm
