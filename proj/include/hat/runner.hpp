#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hat/formula.hpp"
#include "hat/parser.hpp"
#include "hat/verdict.hpp"

namespace hat {

enum class Backend { Lht, Lj, LjHt, Conn, ConnHt };

std::optional<Backend> parse_backend(std::string_view name);
const char* to_string(Backend b);
// Backends that prove the embedding of the goal into intuitionistic logic.
bool is_embedding(Backend b);

// SZS status of one run.
enum class Verdict { Theorem, NonTheorem, Timeout, GaveUp, Error };
const char* to_string(Verdict v);

struct RunConfig {
  Backend backend = Backend::Lht;
  double timeout = 10;           // seconds; <= 0 means no limit
  std::optional<Format> format;  // guessed from the extension when unset
  std::filesystem::path axiom_root;
  bool regularity = true;               // conn backends
  bool restricted_backtracking = true;  // conn backends
};

struct RunResult {
  std::string problem;
  Backend backend = Backend::Lht;
  Verdict verdict = Verdict::Error;
  double seconds = 0;
  Stats stats;
  std::string message;  // Error details
};

// The goal as the backend sees it: assembled, with equality axioms, and
// embedded for the *-ht backends.
FormulaPtr prepare_goal(const Problem& p, Backend b);

// Proves an already prepared goal under the configured deadline.
RunResult run_goal(const std::string& name, const FormulaPtr& goal, const RunConfig& cfg);

// Load, prepare and prove one problem file. Never throws.
RunResult run_problem(const std::filesystem::path& path, const RunConfig& cfg);

struct Summary {
  int proved = 0;
  int proved_1s = 0;   // within one second
  int proved_10s = 0;  // after one and within ten seconds
  int refuted = 0;
  int timeout = 0;
  int gave_up = 0;
  int error = 0;
  int total() const { return proved + refuted + timeout + gave_up + error; }
};

struct Report {
  std::vector<RunResult> rows;  // ordered by problem name
  Summary summary;
};

// Problem files of a directory (not recursive, .ax files and dotfiles
// skipped), or the path itself when it is a file.
std::vector<std::filesystem::path> collect_problems(const std::filesystem::path& path);

Report run_suite(const std::vector<std::filesystem::path>& problems, const RunConfig& cfg, int jobs = 1);
Summary summarize(const std::vector<RunResult>& rows);

std::string szs_line(const RunResult& r);
void write_csv(std::ostream& os, const Report& report);
void write_table(std::ostream& os, const Report& report);

}  // namespace hat
