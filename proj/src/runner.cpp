#include "hat/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <thread>

#include "hat/connection.hpp"
#include "hat/embedding.hpp"
#include "hat/lht.hpp"
#include "hat/lj.hpp"
#include "hat/stack.hpp"

namespace hat {

namespace fs = std::filesystem;

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "lht") return Backend::Lht;
  if (name == "lj") return Backend::Lj;
  if (name == "lj-ht") return Backend::LjHt;
  if (name == "conn") return Backend::Conn;
  if (name == "conn-ht") return Backend::ConnHt;
  return std::nullopt;
}

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Lht: return "lht";
    case Backend::Lj: return "lj";
    case Backend::LjHt: return "lj-ht";
    case Backend::Conn: return "conn";
    case Backend::ConnHt: return "conn-ht";
  }
  return "?";
}

bool is_embedding(Backend b) { return b == Backend::LjHt || b == Backend::ConnHt; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Theorem: return "Theorem";
    case Verdict::NonTheorem: return "Non-Theorem";
    case Verdict::Timeout: return "Timeout";
    case Verdict::GaveUp: return "GaveUp";
    case Verdict::Error: return "Error";
  }
  return "?";
}

FormulaPtr prepare_goal(const Problem& p, Backend b) {
  FormulaPtr goal = assemble_goal(p);
  if (uses_equality(goal)) goal = add_equality_axioms(goal);
  return is_embedding(b) ? embed(goal) : goal;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Verdict verdict_of(Status s, Backend b) {
  switch (s) {
    case Status::Proved: return Verdict::Theorem;
    // The embedding is not known to be complete, so a failed search there
    // says nothing about the input.
    case Status::Refuted: return is_embedding(b) ? Verdict::GaveUp : Verdict::NonTheorem;
    case Status::Timeout: return Verdict::Timeout;
    case Status::GaveUp: return Verdict::GaveUp;
  }
  return Verdict::Error;
}

Status prove(const FormulaPtr& goal, const RunConfig& cfg, Deadline& dl, Stats& stats) {
  switch (cfg.backend) {
    case Backend::Lht: {
      auto r = prove_lht(goal, {}, dl);
      stats = r.stats;
      return r.status;
    }
    case Backend::Lj:
    case Backend::LjHt: {
      auto r = prove_lj(goal, {}, dl);
      stats = r.stats;
      return r.status;
    }
    case Backend::Conn:
    case Backend::ConnHt: {
      ConnConfig cc;
      cc.regularity = cfg.regularity;
      cc.restricted_backtracking = cfg.restricted_backtracking;
      auto r = prove_connection(goal, cc, dl);
      stats = r.stats;
      return r.status;
    }
  }
  return Status::GaveUp;
}

RunResult finish(RunResult r, Status s, const RunConfig& cfg, Clock::time_point t0) {
  r.seconds = since(t0);
  r.verdict = verdict_of(s, cfg.backend);
  // A verdict reached after the limit does not count.
  if (cfg.timeout > 0 && r.seconds >= cfg.timeout) r.verdict = Verdict::Timeout;
  return r;
}

Deadline deadline_for(const RunConfig& cfg, Clock::time_point t0) {
  if (cfg.timeout <= 0) return Deadline::never();
  return Deadline(std::max(0.0, cfg.timeout - since(t0)));
}

}  // namespace

RunResult run_goal(const std::string& name, const FormulaPtr& goal, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  RunResult r;
  r.problem = name;
  r.backend = cfg.backend;
  try {
    Deadline dl = deadline_for(cfg, t0);
    Status s = Status::GaveUp;
    run_with_stack([&] { s = prove(goal, cfg, dl, r.stats); });
    return finish(std::move(r), s, cfg, t0);
  } catch (const std::exception& e) {
    r.verdict = Verdict::Error;
    r.message = e.what();
  }
  r.seconds = since(t0);
  return r;
}

RunResult run_problem(const fs::path& path, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  RunResult r;
  r.problem = path.stem().string();
  r.backend = cfg.backend;
  try {
    Problem p = load_problem(path, cfg.format.value_or(format_for(path)), cfg.axiom_root);
    FormulaPtr goal = prepare_goal(p, cfg.backend);
    Deadline dl = deadline_for(cfg, t0);
    Status s = Status::GaveUp;
    run_with_stack([&] { s = prove(goal, cfg, dl, r.stats); });
    return finish(std::move(r), s, cfg, t0);
  } catch (const std::exception& e) {
    r.verdict = Verdict::Error;
    r.message = e.what();
  }
  r.seconds = since(t0);
  return r;
}

std::vector<fs::path> collect_problems(const fs::path& path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    const std::string name = p.filename().string();
    if (name.empty() || name[0] == '.' || p.extension() == ".ax") continue;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Summary summarize(const std::vector<RunResult>& rows) {
  Summary s;
  for (const auto& r : rows) {
    switch (r.verdict) {
      case Verdict::Theorem:
        ++s.proved;
        if (r.seconds <= 1)
          ++s.proved_1s;
        else if (r.seconds <= 10)
          ++s.proved_10s;
        break;
      case Verdict::NonTheorem: ++s.refuted; break;
      case Verdict::Timeout: ++s.timeout; break;
      case Verdict::GaveUp: ++s.gave_up; break;
      case Verdict::Error: ++s.error; break;
    }
  }
  return s;
}

Report run_suite(const std::vector<fs::path>& problems, const RunConfig& cfg, int jobs) {
  Report report;
  report.rows.resize(problems.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < problems.size();) report.rows[i] = run_problem(problems[i], cfg);
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(problems.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const RunResult& a, const RunResult& b) { return a.problem < b.problem; });
  report.summary = summarize(report.rows);
  return report;
}

std::string szs_line(const RunResult& r) {
  return std::string("% SZS status ") + to_string(r.verdict) + " for " + r.problem;
}

void write_csv(std::ostream& os, const Report& report) {
  os << "problem,backend,status,seconds,rounds\n";
  for (const auto& r : report.rows)
    os << r.problem << ',' << to_string(r.backend) << ',' << to_string(r.verdict) << ',' << std::fixed
       << std::setprecision(3) << r.seconds << ',' << r.stats.rounds << '\n';
  os.unsetf(std::ios::floatfield);
}

void write_table(std::ostream& os, const Report& report) {
  std::size_t width = 7;
  for (const auto& r : report.rows) width = std::max(width, r.problem.size());
  os << std::left << std::setw(static_cast<int>(width)) << "problem" << "  " << std::setw(8) << "backend"
     << std::setw(12) << "status" << std::right << std::setw(9) << "seconds" << std::setw(8) << "rounds" << '\n';
  for (const auto& r : report.rows) {
    os << std::left << std::setw(static_cast<int>(width)) << r.problem << "  " << std::setw(8)
       << to_string(r.backend) << std::setw(12) << to_string(r.verdict) << std::right << std::fixed
       << std::setprecision(3) << std::setw(9) << r.seconds << std::setw(8) << r.stats.rounds << '\n';
  }
  os.unsetf(std::ios::floatfield);
  const Summary& s = report.summary;
  os << "proved " << s.proved << " (0-1s " << s.proved_1s << ", 1-10s " << s.proved_10s << "), refuted "
     << s.refuted << ", timeout " << s.timeout << ", gave up " << s.gave_up << ", error " << s.error << ", total "
     << s.total() << '\n';
}

}  // namespace hat
