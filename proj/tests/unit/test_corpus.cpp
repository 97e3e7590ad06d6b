#include <fstream>

#include "doctest.h"
#include "dani/corpus.hpp"
#include "dani/errors.hpp"
#include "fixtures.hpp"

using namespace dani;

TEST_CASE("statement and question lines") {
  auto s = parse_line("3 Mary moved to the bathroom.");
  REQUIRE(s);
  CHECK(s->line_id == 3);
  CHECK(s->kind == LineKind::kStatement);
  CHECK(s->body == "Mary moved to the bathroom.");

  auto q = parse_line("4 Where is Mary? \tbathroom\t3");
  REQUIRE(q);
  CHECK(q->kind == LineKind::kQuestion);

  CHECK_FALSE(parse_line(""));
  CHECK_FALSE(parse_line("   \r"));
}

TEST_CASE("malformed lines carry their line number") {
  try {
    parse_line("x Mary moved.", 17);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 17);
  }
  CHECK_THROWS_AS(parse_line("0 bad id"), ParseError);
  CHECK_THROWS_AS(parse_line("nospace"), ParseError);
  CHECK_THROWS_AS(parse_line("2 Where is Mary?\t\t1"), ParseError);
}

TEST_CASE("tokenize lowercases and strips terminal punctuation") {
  CHECK(tokenize("Where is the Football?") == std::vector<std::string>{"where", "is", "the", "football"});
  CHECK(tokenize("Mary  went to the office.") ==
        std::vector<std::string>{"mary", "went", "to", "the", "office"});
  CHECK(tokenize("  ").empty());
}

TEST_CASE("stories restart at id 1") {
  const char* text =
      "1 Mary moved to the bathroom.\n"
      "2 John went to the hallway.\n"
      "3 Where is Mary? \tbathroom\t1\n"
      "1 Sandra journeyed to the garden.\n"
      "2 Where is Sandra?\tgarden\t1\n";
  auto set = parse_task(text, 1, Split::kTrain);
  REQUIRE(set.stories.size() == 2);
  CHECK(set.stories[0].items.size() == 3);
  CHECK(set.question_count() == 2);
  const auto& q = std::get<Question>(set.stories[0].items[2]);
  CHECK(q.gold_answer == std::vector<std::string>{"bathroom"});
  CHECK(q.support_ids == std::vector<int>{1});
}

TEST_CASE("comma answers split into tokens") {
  auto set = parse_task("1 John took the milk.\n2 What is John carrying?\tmilk,apple\t1\n", 8,
                        Split::kTest);
  const auto& q = std::get<Question>(set.stories[0].items[1]);
  CHECK(q.gold_answer == std::vector<std::string>{"milk", "apple"});
}

TEST_CASE("non-increasing ids are rejected with the file line") {
  try {
    parse_task("1 A went to the office.\n\n3 B went to the office.\n2 C went to the office.\n", 1,
               Split::kTrain);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_task("2 Starts late.\n", 1, Split::kTrain), ParseError);
}

TEST_CASE("task id range") {
  CHECK_THROWS_AS(parse_task("1 A.\n", 0, Split::kTrain), ConfigError);
  CHECK_THROWS_AS(parse_task("1 A.\n", 21, Split::kTrain), ConfigError);
}

TEST_CASE("serialize_story reproduces the source lines") {
  const std::string text =
      "1 The kitchen is north of the hallway.\n"
      "2 How do you go from the hallway to the kitchen?\tn\t1\n";
  auto set = parse_task(text, 19, Split::kTrain);
  CHECK(serialize_story(set.stories[0]) == text);
}

TEST_CASE("task files are located under the usual layouts") {
  auto root = fixtures::scratch_dir("corpus_layout");
  std::filesystem::create_directories(root / "tasks_1-20_v1-2" / "en");
  std::ofstream(root / "tasks_1-20_v1-2" / "en" / "qa7_counting_test.txt") << "1 A.\n";
  CHECK(find_task_file(root, 7, Split::kTest).filename() == "qa7_counting_test.txt");
  CHECK_THROWS_AS(find_task_file(root, 7, Split::kTrain), IoError);
  CHECK_THROWS_AS(find_task_file(root / "missing", 7, Split::kTest), IoError);
}

TEST_CASE("the generated corpus parses for every task") {
  auto c = fixtures::corpus();
  for (int t = 1; t <= 20; ++t) {
    for (auto split : {Split::kTrain, Split::kTest}) {
      auto set = load_task(find_task_file(c.dir, t, split), t, split);
      CHECK(set.question_count() == 1000);
    }
  }
}
