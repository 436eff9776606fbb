// Identity-verification suites: each check pins one algebraic identity of the
// engine and reports pass/fail with a counterexample rendering on failure.
// The CLI and the acceptance harness share these implementations.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kstab/tableio.hpp"

namespace kstab {

struct CheckResult {
  std::string id;        // stable identifier, e.g. "hecke.braid.tau-"
  std::string identity;  // human rendering of the verified identity
  bool pass = false;
  double seconds = 0.0;
  std::string detail;          // extra rendering (e.g. both sides of a formula)
  std::string counterexample;  // filled when pass == false
};

struct SuiteReport {
  std::string type_label;
  std::string suite;
  uint64_t seed = 1;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct SuiteOptions {
  uint64_t seed = 1;
  int jobs = 1;
  bool progress = false;                 // per-row liveness on long suites
  std::optional<std::vector<int>> mu;    // overrides the default test coweight
  std::vector<std::string> filter;       // run only checks whose id starts with one
};

const std::vector<std::string>& all_suite_names();

// Throws std::runtime_error on an unknown suite name.
SuiteReport run_one_suite(const std::string& type_label, const std::string& suite,
                          const SuiteOptions& opts);

// Canonical rendering (byte-stable across runs; excludes wall-clock times).
std::string render_report_canonical(const SuiteReport& r);
// Console rendering with timings.
std::string render_report_text(const SuiteReport& r);
std::string report_to_json(const SuiteReport& r);

}  // namespace kstab
