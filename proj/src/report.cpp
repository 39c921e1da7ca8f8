#include "willmore/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace wm {

const char* checkStatusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

ResidualStats residualStats(std::vector<double> values) {
  ResidualStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto rank = [&](double q) {
    const size_t idx = static_cast<size_t>(std::ceil(q * static_cast<double>(values.size())));
    return values[std::min(values.size() - 1, idx == 0 ? 0 : idx - 1)];
  };
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.p50 = rank(0.5);
  s.p90 = rank(0.9);
  s.p99 = rank(0.99);
  return s;
}

CheckResult sampledCheck(const std::string& name, const std::vector<cplx>& points, const std::vector<double>& values,
                         double tol, const std::string& tolName) {
  CheckResult c;
  c.name = name;
  c.samples = static_cast<int>(values.size());
  c.tolerances[tolName] = tol;
  c.stats = residualStats(values);
  bool ok = true;
  size_t worst = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    // NaN never passes.
    if (!(values[i] < tol)) ok = false;
    if (!std::isnan(values[worst]) && (std::isnan(values[i]) || values[i] > values[worst])) worst = i;
  }
  c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  if (values.empty()) return c;
  auto witness = [&](size_t i) {
    Witness w;
    if (i < points.size()) w.point = points[i];
    w.value = values[i];
    return w;
  };
  c.witnesses.push_back(witness(worst));
  if (!ok) {
    for (size_t i = 0; i < values.size() && c.witnesses.size() < 8; ++i) {
      if (i != worst && !(values[i] < tol)) c.witnesses.push_back(witness(i));
    }
  }
  return c;
}

bool Report::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

namespace {

// Non-finite doubles are not valid JSON numbers.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

std::string reportJson(const Report& r, bool includeTiming) {
  nlohmann::json j;
  j["schemaVersion"] = 1;
  j["command"] = r.command;
  j["input"] = r.input;
  j["passed"] = r.passed();
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["status"] = checkStatusName(c.status);
    cj["samples"] = c.samples;
    cj["masked"] = c.masked;
    nlohmann::json tol = nlohmann::json::object();
    for (const auto& [k, v] : c.tolerances) tol[k] = number(v);
    cj["tolerances"] = tol;
    if (c.stats) {
      cj["statistics"] = {{"max", number(c.stats->max)}, {"mean", number(c.stats->mean)},
                          {"p50", number(c.stats->p50)}, {"p90", number(c.stats->p90)},
                          {"p99", number(c.stats->p99)}};
    } else {
      cj["statistics"] = nullptr;
    }
    nlohmann::json ws = nlohmann::json::array();
    for (const Witness& w : c.witnesses) {
      nlohmann::json wj;
      if (w.point) wj["point"] = {w.point->real(), w.point->imag()};
      if (!w.label.empty()) wj["label"] = w.label;
      wj["value"] = number(w.value);
      ws.push_back(wj);
    }
    cj["witnesses"] = ws;
    cj["notes"] = c.notes;
    if (includeTiming) cj["wallSeconds"] = c.wallSeconds;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  if (includeTiming) j["wallSeconds"] = r.wallSeconds;
  return j.dump(2) + "\n";
}

std::string reportSummary(const Report& r) {
  std::ostringstream out;
  for (const CheckResult& c : r.checks) {
    char buf[64] = "";
    if (c.stats) std::snprintf(buf, sizeof buf, "  max=%.3e", c.stats->max);
    out << (c.status == CheckStatus::Pass ? "PASS " : c.status == CheckStatus::Fail ? "FAIL " : "SKIP ") << c.name
        << buf;
    for (const auto& [k, v] : c.notes) out << "  " << k << "=" << v;
    out << "\n";
  }
  out << (r.passed() ? "all checks passed" : "some checks failed") << "\n";
  return out.str();
}

}  // namespace wm
