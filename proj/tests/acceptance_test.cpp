// Acceptance harness: runs every acceptance criterion with its stated scope
// and prints one pass/fail line per criterion.  The process exits nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "kstab/suites.hpp"

using namespace kstab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
  int number;
  std::string description;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

bool run_filtered(const std::string& type, const std::string& suite,
                  const std::vector<std::string>& filter, int jobs, std::string* why) {
  SuiteOptions opts;
  opts.seed = 20240501;
  opts.jobs = jobs;
  opts.filter = filter;
  SuiteReport rep = run_one_suite(type, suite, opts);
  if (rep.checks.empty()) {
    *why = "no checks executed (" + type + "/" + suite + ")";
    return false;
  }
  for (const auto& c : rep.checks)
    if (!c.pass) {
      *why = type + ": " + c.id + ": " + c.counterexample;
      return false;
    }
  return true;
}

void report(Criterion& c, const std::function<void(Criterion&)>& body) {
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", c.pass ? "PASS" : "FAIL", c.number,
              c.description.c_str(), c.seconds, c.detail.empty() ? "" : " -- ",
              c.detail.c_str());
  std::fflush(stdout);
  if (!c.pass) ++g_failures;
}

}  // namespace

int main() {
  int jobs = 2;

  {
    Criterion c{1, "quadratic and braid relations for tau+- and Y in A1, A2, B2, G2"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A1", "A2", "B2", "G2"}) {
        std::string why;
        if (!run_filtered(t, "hecke", {"hecke.quadratic", "hecke.braid"}, 1, &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{2, "reduced-word independence of tau+-_w and Y_w (A2, B2 all w; A3 w0)"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A2", "B2", "A3"}) {
        std::string why;
        if (!run_filtered(t, "hecke", {"hecke.words"}, 1, &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{3,
                "restriction cross-validation (recursive = closed, denominator-free) in "
                "A2, B2, A3"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A2", "B2", "A3"}) {
        std::string why;
        if (!run_filtered(t, "stable",
                          {"stable.restriction_cross", "stable.restriction_in_S"}, jobs,
                          &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{4, "duality tables and the pairing normalization in A2, B2, A3"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A2", "B2", "A3"}) {
        std::string why;
        if (!run_filtered(t, "stable", {"stable.duality", "stable.duality_pairing"}, jobs,
                          &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{5, "root-polynomial bridge to the triangular coefficients in A2, B2"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A2", "B2"}) {
        std::string why;
        if (!run_filtered(t, "rootpoly", {"rootpoly.bridge"}, 1, &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{6, "specific rank-one stable values"};
    report(c, [&](Criterion& cr) {
      std::string why;
      if (!run_filtered("A1", "stable", {"stable.values.A1"}, 1, &why)) {
        cr.pass = false;
        cr.detail = why;
      }
    });
  }
  {
    Criterion c{7, "parabolic families: closed sums, duality, top coefficient (A2, B2)"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A2", "B2"}) {
        std::string why;
        if (!run_filtered(t, "parabolic", {}, 1, &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{8, "principal-series dictionary (A1, A2, B2)"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A1", "A2", "B2"}) {
        std::string why;
        if (!run_filtered(t, "padic", {}, 1, &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{9, "degree-axiom hull containment at lambda = rho/7 (A1, A2)"};
    report(c, [&](Criterion& cr) {
      for (const char* t : {"A1", "A2"}) {
        std::string why;
        if (!run_filtered(t, "degree", {}, 1, &why)) {
          cr.pass = false;
          cr.detail = why;
          return;
        }
      }
    });
  }
  {
    Criterion c{10, "determinism: reports and exports are byte-identical across runs"};
    report(c, [&](Criterion& cr) {
      SuiteOptions opts;
      opts.seed = 99;
      SuiteReport r1 = run_one_suite("A1", "stable", opts);
      SuiteReport r2 = run_one_suite("A1", "stable", opts);
      if (render_report_canonical(r1) != render_report_canonical(r2)) {
        cr.pass = false;
        cr.detail = "canonical reports differ across runs";
        return;
      }
      Table t1 = build_table("A2", "restrictions-", nullptr);
      Table t2 = build_table("A2", "restrictions-", nullptr);
      if (to_csv(t1) != to_csv(t2) || to_json(t1) != to_json(t2)) {
        cr.pass = false;
        cr.detail = "exported tables differ across runs";
      }
    });
  }

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria PASS\n");
  return 0;
}
