#include "kstab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kstab/suites.hpp"

namespace kstab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

// "alpha1=3/2,alpha2=5,q=9"
CharacterAssignment parse_tau(const std::string& spec, int rank) {
  std::vector<Rat> vals(rank, Rat(0));
  Rat q(0);
  for (const auto& item : split(spec, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad --tau entry: " + item);
    std::string key = item.substr(0, eq);
    Rat val = parse_rat(item.substr(eq + 1));
    if (key == "q") {
      q = val;
    } else if (key.rfind("alpha", 0) == 0) {
      int idx = std::stoi(key.substr(5)) - 1;
      if (idx < 0 || idx >= rank) throw std::runtime_error("bad --tau root index: " + key);
      vals[idx] = val;
    } else {
      throw std::runtime_error("bad --tau key: " + key);
    }
  }
  if (q == 0) throw std::runtime_error("--tau must assign q");
  for (const Rat& v : vals)
    if (v == 0) throw std::runtime_error("--tau must assign every simple root");
  return CharacterAssignment(vals, q);
}

std::vector<int> parse_mu(const std::string& spec) {
  std::vector<int> mu;
  for (const auto& item : split(spec, ',')) mu.push_back(std::stoi(item));
  return mu;
}

bool write_file(const std::string& path, const std::string& content, std::string* err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    *err = "cannot open " + path + " for writing";
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    *err = "write failed for " + path;
    return false;
  }
  return true;
}

// plain key=value defaults, applied before flag parsing
void apply_config(const std::string& path, std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::string line;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    extra.push_back("--" + line.substr(0, eq));
    extra.push_back(line.substr(eq + 1));
  }
  // config entries have lower precedence: prepend them
  args.insert(args.begin(), extra.begin(), extra.end());
}

int run_command(const std::string& type, std::string suites_arg, uint64_t seed, int jobs,
                const std::string& format, const std::string& out,
                const std::string& mu_arg, bool progress) {
  SuiteOptions opts;
  opts.seed = seed;
  opts.jobs = jobs;
  opts.progress = progress;
  if (!mu_arg.empty()) opts.mu = parse_mu(mu_arg);

  std::vector<std::string> suites;
  if (suites_arg.empty() || suites_arg == "all")
    suites = all_suite_names();
  else
    suites = split(suites_arg, ',');
  for (const auto& s : suites) {
    const auto& names = all_suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      std::cerr << "unknown suite: " << s << "\n";
      return 2;
    }
  }
  try {
    RootSystem::from_spec(type);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  bool all_pass = true;
  std::string canonical, json_all = "[";
  for (size_t k = 0; k < suites.size(); ++k) {
    SuiteReport rep = run_one_suite(type, suites[k], opts);
    all_pass = all_pass && rep.all_pass();
    std::cout << render_report_text(rep);
    canonical += render_report_canonical(rep);
    if (k) json_all += ",";
    std::string j = report_to_json(rep);
    if (!j.empty() && j.back() == '\n') j.pop_back();
    json_all += j;
  }
  json_all += "]\n";
  if (!out.empty()) {
    std::string err;
    if (!write_file(out, format == "json" ? json_all : canonical, &err)) {
      std::cerr << err << "\n";
      return 1;
    }
  }
  return all_pass ? 0 : 1;
}

int export_command(const std::string& type, const std::string& what,
                   const std::string& format, const std::string& out,
                   const std::string& tau_arg) {
  std::shared_ptr<const RootSystem> rs;
  try {
    rs = RootSystem::from_spec(type);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  std::optional<CharacterAssignment> tau;
  if (!tau_arg.empty()) tau = parse_tau(tau_arg, rs->rank());
  Table t;
  try {
    t = build_table(type, what, tau ? &*tau : nullptr);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    std::string msg = e.what();
    return msg.rfind("unknown", 0) == 0 ? 2 : 1;
  }
  std::string rendered;
  if (format == "csv") rendered = to_csv(t);
  else if (format == "json") rendered = to_json(t);
  else if (format == "latex") rendered = to_latex(t);
  else {
    std::cerr << "unknown format: " << format << "\n";
    return 2;
  }
  if (out.empty()) {
    std::cout << rendered;
  } else {
    std::string err;
    if (!write_file(out, rendered, &err)) {
      std::cerr << err << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"exact stable-basis engine: identity suites and table export"};
  app.require_subcommand(1);

  std::string config;

  auto* run = app.add_subcommand("run", "run identity-verification suites");
  std::string r_type, r_suites = "all", r_format = "text", r_out, r_mu;
  uint64_t r_seed = 1;
  int r_jobs = 1;
  bool r_progress = true;
  run->add_option("--type", r_type,
                  "Cartan type label (A1..A4, B2..B4, C2..C4, D4, G2) or file:<path> "
                  "with integer Cartan-matrix rows")
      ->required();
  run->add_option("--suite", r_suites, "comma-separated suites or 'all'");
  run->add_option("--seed", r_seed, "seed for randomized checks");
  run->add_option("--jobs", r_jobs, "worker threads for the heavy pair loops");
  run->add_option("--format", r_format, "report file format: text|json");
  run->add_option("--out", r_out, "write the canonical report to this path");
  run->add_option("--mu", r_mu, "override the dominant coweight, e.g. '1,1'");
  run->add_flag("--progress,!--no-progress", r_progress,
                "per-row liveness on long suites (stderr)");

  auto* exp = app.add_subcommand("export", "export a coefficient table");
  std::string e_type, e_what, e_format = "csv", e_out, e_tau;
  exp->add_option("--type", e_type, "Cartan type label")->required();
  exp->add_option("--what", e_what,
                  "restrictions+|restrictions-|K|a+|a-|b+|b-|d+|d-|padic-a|padic-b")
      ->required();
  exp->add_option("--format", e_format, "csv|json|latex");
  exp->add_option("--out", e_out, "output path (stdout when omitted)");
  exp->add_option("--tau", e_tau, "character values, e.g. 'alpha1=3/2,alpha2=5,q=9'");

  app.add_option("--config", config, "plain key=value file with default options");

  std::vector<std::string> args(argv + 1, argv + argc);
  // --config must be handled before regular parsing
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") {
      try {
        std::string path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
        // insert after the subcommand name so CLI11 scopes the options
        std::vector<std::string> rest(args.begin() + 1, args.end());
        apply_config(path, rest);
        args.erase(args.begin() + 1, args.end());
        args.insert(args.end(), rest.begin(), rest.end());
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      break;
    }

  try {
    std::vector<const char*> cargs{"kstab"};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(int(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return run_command(r_type, r_suites, r_seed, r_jobs, r_format, r_out, r_mu, r_progress);
    if (exp->parsed()) return export_command(e_type, e_what, e_format, e_out, e_tau);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace kstab
