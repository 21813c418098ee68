#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "hat/embedding.hpp"
#include "hat/matrix.hpp"
#include "hat/oracle.hpp"
#include "hat/runner.hpp"

namespace fs = std::filesystem;
using namespace hat;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNoProblems = 3;

struct Extras {
  bool oracle = false;
  bool axioms = false;
  bool matrix = false;
  bool any() const { return oracle || axioms || matrix; }
};

void print_oracle(const FormulaPtr& goal, double timeout) {
  if (is_propositional(goal)) {
    HTCheck c = ht_check_prop(goal);
    if (c.valid)
      std::cout << "% oracle: HT-valid\n";
    else
      std::cout << "% oracle: not HT-valid, countermodel " << to_string(*c.countermodel) << '\n';
    std::cout << "% oracle: classically " << (classical_valid_prop(goal) ? "valid" : "invalid") << '\n';
    return;
  }
  Deadline dl = timeout > 0 ? Deadline(timeout) : Deadline::never();
  try {
    if (auto m = find_fo_countermodel(goal, {}, dl))
      std::cout << "% oracle: not HT-valid, countermodel of domain size " << m->domain_size << '\n';
    else
      std::cout << "% oracle: no finite countermodel found\n";
  } catch (const TimeoutError&) {
    std::cout << "% oracle: countermodel search timed out\n";
  }
}

// Comment lines requested by --oracle, --emit-axioms and --emit-matrix.
void print_extras(const fs::path& path, const RunConfig& cfg, const Extras& x) {
  try {
    Problem p = load_problem(path, cfg.format.value_or(format_for(path)), cfg.axiom_root);
    FormulaPtr goal = prepare_goal(p, Backend::Lht);
    if (x.oracle) print_oracle(goal, cfg.timeout);
    if (x.axioms) {
      auto axioms = ht_axioms(goal);
      std::cout << "% ht axioms: " << axioms.size() << '\n';
      for (const auto& a : axioms) std::cout << "%   " << to_native(a) << '\n';
    }
    if (x.matrix) {
      FormulaPtr f = is_embedding(cfg.backend) ? embed(goal) : goal;
      std::cout << "% matrix: " << to_string(build_matrix(f)) << '\n';
    }
  } catch (const std::exception& e) {
    std::cout << "% " << path.string() << ": " << e.what() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theorem prover for the logic of here-and-there"};
  std::string backend = "lht";
  std::string format;
  std::string csv;
  std::vector<std::string> paths;
  RunConfig cfg;
  Extras extras;
  int jobs = 1;
  bool no_reg = false, no_rb = false, table = false;

  app.add_option("--backend", backend, "lht, lj, lj-ht, conn or conn-ht")
      ->check(CLI::IsMember({"lht", "lj", "lj-ht", "conn", "conn-ht"}));
  app.add_option("--timeout", cfg.timeout, "Seconds per problem, 0 for none")->capture_default_str();
  app.add_option("--format", format, "Input syntax, guessed from the extension by default")
      ->check(CLI::IsMember({"tptp", "native"}));
  app.add_option("--axiom-root", cfg.axiom_root, "Directory for TPTP include directives");
  app.add_flag("--oracle", extras.oracle, "Print the semantic check of each goal");
  app.add_flag("--emit-axioms", extras.axioms, "Print the HT axioms added by the embedding");
  app.add_flag("--emit-matrix", extras.matrix, "Print the prefixed matrix of the goal");
  app.add_option("--jobs", jobs, "Problems run in parallel")->check(CLI::PositiveNumber);
  app.add_flag("--no-reg", no_reg, "Connection backends: disable regularity");
  app.add_flag("--no-rb", no_rb, "Connection backends: disable restricted backtracking");
  app.add_option("--csv", csv, "Write a CSV report to this file, - for stdout");
  app.add_flag("--table", table, "Print a summary table after the status lines");
  app.add_option("PATH", paths, "Problem files or directories")->required();
  CLI11_PARSE(app, argc, argv);

  cfg.backend = *parse_backend(backend);
  if (!format.empty()) cfg.format = format == "tptp" ? Format::Tptp : Format::Native;
  cfg.regularity = !no_reg;
  cfg.restricted_backtracking = !no_rb;

  std::vector<fs::path> problems;
  for (const auto& p : paths) {
    std::error_code ec;
    if (!fs::exists(p, ec)) {
      std::cerr << "hatprove: no such file or directory: " << p << '\n';
      return kExitUsage;
    }
    auto found = collect_problems(p);
    problems.insert(problems.end(), found.begin(), found.end());
  }
  if (problems.empty()) {
    std::cerr << "hatprove: no problems found\n";
    return kExitNoProblems;
  }

  Report report = run_suite(problems, cfg, jobs);
  std::map<std::string, fs::path> by_name;
  for (const auto& p : problems) by_name.emplace(p.stem().string(), p);
  for (const auto& r : report.rows) {
    if (extras.any()) print_extras(by_name[r.problem], cfg, extras);
    if (r.verdict == Verdict::Error) std::cout << "% error: " << r.message << '\n';
    std::cout << szs_line(r) << '\n';
  }
  if (table) write_table(std::cout, report);
  if (csv == "-") {
    write_csv(std::cout, report);
  } else if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) {
      std::cerr << "hatprove: cannot write " << csv << '\n';
      return kExitUsage;
    }
    write_csv(out, report);
  }
  return 0;
}
