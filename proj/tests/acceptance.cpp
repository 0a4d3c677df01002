// Prints one line per acceptance criterion and exits nonzero if any fails.
#include <chrono>
#include <cstdio>

#include "hbundle/report.hpp"
#include "hbundle/suite.hpp"

using namespace hbundle;

int main() {
  const SuiteConfig cfg;
  bool all = true;
  auto line = [&](int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("criterion %2d %s: %s (%s)\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
    all = all && pass;
  };

  for (int id = 1; id <= kNumCriteria; ++id) {
    const auto out = run_criterion(id, cfg);
    const bool in_time = out.time_limit <= 0.0 || out.seconds < out.time_limit;
    int failed = 0;
    for (const auto& r : out.records) failed += r.verdict != Verdict::Pass;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%zu checks, %d failing, %.2f s%s", out.records.size(), failed, out.seconds,
                  out.time_limit > 0.0 ? (in_time ? " within limit" : " over limit") : "");
    line(id, out.title, out.pass && in_time, detail);
    for (const auto& r : out.records)
      if (r.verdict != Verdict::Pass) std::printf("  %s: %s\n", r.name.c_str(), dump(r.values).c_str());
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto first = run_suite(cfg);
  const auto second = run_suite(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 2.0;
  const std::string a = dump(first.report.to_json()), b = dump(second.report.to_json());
  bool tables_equal = first.criteria.size() == second.criteria.size();
  for (size_t i = 0; tables_equal && i < first.criteria.size(); ++i)
    tables_equal = first.criteria[i].tables == second.criteria[i].tables;
  char detail[160];
  std::snprintf(detail, sizeof detail, "%d/%zu checks pass, %.1f s per run, reports %s", first.report.count(Verdict::Pass),
                first.report.checks.size(), seconds, a == b && tables_equal ? "byte-identical" : "differ");
  line(13, "full suite", first.report.passed() && seconds < 300.0 && a == b && tables_equal, detail);

  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
