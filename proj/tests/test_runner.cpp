#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "hat/runner.hpp"

using namespace hat;

namespace {

const std::filesystem::path kHt8 = HAT_SOURCE_DIR "/corpus/ht8";

}  // namespace

TEST_CASE("backend names") {
  for (const char* n : {"lht", "lj", "lj-ht", "conn", "conn-ht"}) {
    auto b = parse_backend(n);
    REQUIRE(b);
    CHECK(std::string(to_string(*b)) == n);
  }
  CHECK_FALSE(parse_backend("leancop"));
  CHECK(is_embedding(Backend::ConnHt));
  CHECK_FALSE(is_embedding(Backend::Conn));
}

TEST_CASE("ht8 corpus with lht: 5 Theorem, 3 Non-Theorem") {
  RunConfig cfg;
  cfg.timeout = 5;
  Report rep = run_suite(collect_problems(kHt8), cfg);
  CHECK(rep.summary.total() == 8);
  CHECK(rep.summary.proved == 5);
  CHECK(rep.summary.refuted == 3);
  CHECK(rep.summary.error == 0);
}

TEST_CASE("embedding backends never refute") {
  RunConfig cfg;
  cfg.backend = Backend::ConnHt;
  cfg.timeout = 1;
  Report rep = run_suite(collect_problems(kHt8), cfg);
  CHECK(rep.summary.refuted == 0);
  CHECK(rep.summary.proved >= 4);
}

TEST_CASE("empty directory gives an empty report") {
  auto dir = std::filesystem::temp_directory_path() / "hat_empty_dir_test";
  std::filesystem::create_directories(dir);
  Report rep = run_suite(collect_problems(dir), {});
  CHECK(rep.rows.empty());
  CHECK(rep.summary.total() == 0);
  std::filesystem::remove(dir);
}

TEST_CASE("collect_problems skips axiom files and sorts") {
  auto ps = collect_problems(HAT_SOURCE_DIR "/corpus/mini");
  CHECK(ps.size() == 30);
  CHECK(std::is_sorted(ps.begin(), ps.end()));
  for (const auto& p : ps) CHECK(p.extension() != ".ax");
}

TEST_CASE("errors are reported, not thrown") {
  RunResult r = run_problem(kHt8 / "does_not_exist.p", {});
  CHECK(r.verdict == Verdict::Error);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("SZS line and CSV") {
  RunResult r;
  r.problem = "SYN416+1";
  r.backend = Backend::Lht;
  r.verdict = Verdict::NonTheorem;
  r.seconds = 0.25;
  r.stats.rounds = 2;
  CHECK(szs_line(r) == "% SZS status Non-Theorem for SYN416+1");
  Report rep;
  rep.rows = {r};
  rep.summary = summarize(rep.rows);
  std::ostringstream os;
  write_csv(os, rep);
  CHECK(os.str() == "problem,backend,status,seconds,rounds\nSYN416+1,lht,Non-Theorem,0.250,2\n");
}

TEST_CASE("summary buckets proof times") {
  std::vector<RunResult> rows(3);
  rows[0].verdict = Verdict::Theorem;
  rows[0].seconds = 0.5;
  rows[1].verdict = Verdict::Theorem;
  rows[1].seconds = 3;
  rows[2].verdict = Verdict::Timeout;
  Summary s = summarize(rows);
  CHECK(s.proved == 2);
  CHECK(s.proved_1s == 1);
  CHECK(s.proved_10s == 1);
  CHECK(s.timeout == 1);
}
