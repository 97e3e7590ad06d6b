#include "doctest.h"
#include "dani/errors.hpp"
#include "dani/harness.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace dani;

TEST_CASE("task lists") {
  CHECK(parse_task_list("3") == std::vector<int>{3});
  CHECK(parse_task_list("1-4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_task_list("1,4,7-9,4") == std::vector<int>{1, 4, 7, 8, 9});
  CHECK(parse_task_list("1-20").size() == 20);
  for (const char* bad : {"", "0", "21", "5-3", "x", "1-", "2,,3", "1.5"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_task_list(bad), ConfigError);
  }
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(check_config(c, 1));
  CHECK_THROWS_AS(check_config(c, 0), ConfigError);
  CHECK_THROWS_AS(check_config(c, 21), ConfigError);
  c.mode = Mode::kWeak;
  CHECK_NOTHROW(check_config(c, 19));
  CHECK_THROWS_AS(check_config(c, 1), ConfigError);
  c.allow_weak_any_task = true;
  CHECK_NOTHROW(check_config(c, 1));
  c.train_story_limit = 0;
  CHECK_THROWS_AS(check_config(c, 19), ConfigError);
}

TEST_CASE("data directory resolution") {
  RunConfig c;
  c.data_dir = "/some/where";
  CHECK(resolve_data_dir(c) == "/some/where");
  c.data_dir.clear();
  const char* old = std::getenv("DANI_DATA_DIR");
  std::string saved = old ? old : "";
  setenv("DANI_DATA_DIR", "/from/env", 1);
  CHECK(resolve_data_dir(c) == "/from/env");
  unsetenv("DANI_DATA_DIR");
  CHECK_THROWS_AS(resolve_data_dir(c), ConfigError);
  if (old) setenv("DANI_DATA_DIR", saved.c_str(), 1);
}

TEST_CASE("answer comparison") {
  using V = std::vector<std::string>;
  CHECK(answers_match(8, V{"milk", "apple"}, V{"apple", "milk"}));
  CHECK_FALSE(answers_match(8, V{"milk"}, V{"apple", "milk"}));
  CHECK_FALSE(answers_match(19, V{"s", "n"}, V{"n", "s"}));
  CHECK(answers_match(19, V{"n", "s"}, V{"n", "s"}));
}

TEST_CASE("report format") {
  TaskResult a;
  a.task_id = 1;
  a.n_train = 200;
  a.n_questions = 100;
  a.n_errors = 0;
  a.train_s = 0.5;
  a.test_s = 0.25;
  TaskResult b = a;
  b.task_id = 3;
  b.n_errors = 5;
  b.train_s = 1.5;
  const auto text = format_report({a, b});
  CHECK(text ==
        "task\tmode\tn_train\terror_rate\ttrain_s\ttest_s\n"
        "1\ts\t200\t0.00\t0.500\t0.250\n"
        "3\ts\t200\t5.00\t1.500\t0.250\n"
        "mean\ts\t-\t2.50\t1.000\t0.250\n");
  CHECK(format_report({}) == "task\tmode\tn_train\terror_rate\ttrain_s\ttest_s\n");

  auto dir = fixtures::scratch_dir("report");
  write_report({a}, dir / "r.tsv");
  std::ifstream in(dir / "r.tsv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == format_report({a}));
  CHECK_THROWS_AS(write_report({a}, dir / "missing" / "r.tsv"), IoError);
}

TEST_CASE("train and evaluate on the corpus") {
  RunConfig c;
  c.data_dir = fixtures::corpus().dir;
  c.task_ids = {1, 8};
  c.trace = true;
  auto results = run_suite(c);
  REQUIRE(results.size() == 2);
  for (const auto& r : results) {
    INFO("task " << r.task_id);
    CHECK(r.n_questions > 0);
    CHECK(r.n_train > 0);
    CHECK(r.trace.size() == r.n_questions);
    CHECK(r.error_rate() >= 0.0);
  }
  auto first = results.front().trace.front();
  CHECK(std::count(first.begin(), first.end(), '\t') == 6);

  c.train_story_limit = 5;
  auto t = train_task(c, 1);
  CHECK(t.n_stories == 5);
  CHECK(t.n_train >= 5);
  CHECK(t.model.is_frozen());

  auto again = attach_model(c, 1, t.model);
  CHECK(again.model == t.model);
  CHECK(evaluate_task(c, again).n_errors == evaluate_task(c, t).n_errors);

  c.data_dir = fixtures::scratch_dir("empty_data");
  CHECK_THROWS_AS(train_task(c, 1), IoError);
}

TEST_CASE("weak training on path finding") {
  RunConfig c;
  c.data_dir = fixtures::corpus().dir;
  c.mode = Mode::kWeak;
  c.train_story_limit = 50;
  auto t = train_task(c, 19);
  CHECK(t.n_stories == 50);
  CHECK(t.n_train == 50);  // one question per path-finding story
  CHECK(t.model.event_count() > 0);
  for (const auto& v : t.model.vertices()) {
    if (v == "unknown") continue;
    bool oriented = v.ends_with(":fwd") || v.ends_with(":rev");
    bool token = v.size() == 1;
    CHECK((oriented || token));
  }
}
