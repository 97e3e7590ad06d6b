#include "doctest.h"
#include "dani/attribute_model.hpp"
#include "dani/errors.hpp"
#include "fixtures.hpp"

using namespace dani;

TEST_CASE("jaccard coefficient") {
  CHECK(jaccard({0, 0, 0, 9}) == 0.0);
  CHECK(jaccard({2, 1, 1, 100}) == doctest::Approx(0.5));
  CHECK(jaccard({3, 0, 0, 0}) == 1.0);
}

TEST_CASE("a fresh model holds only the null class") {
  AttributeModel m;
  CHECK(m.vertices() == std::vector<std::string>{"unknown"});
  CHECK(m.event_count() == 0);
  CHECK(m.weight("unknown", "unknown") == 0.0);
  CHECK_THROWS_AS(m.weight("north", "unknown"), UnknownAttributeError);
}

TEST_CASE("contingency counts") {
  AttributeModel m;
  m.observe_event({"north:rev", "n"});
  m.observe_event({"north:rev", "n"});
  m.observe_event({"south:rev", "s"});
  auto t = m.table("north:rev", "n");
  CHECK(t == ContingencyTable{2, 0, 0, 1});
  CHECK(m.weight("north:rev", "n") == 1.0);
  CHECK(m.weight("north:rev", "s") == 0.0);
  auto u = m.table("n", "s");
  CHECK(u.a + u.b + u.c + u.d == m.event_count());
  CHECK(m.table("s", "n") == ContingencyTable{u.a, u.c, u.b, u.d});
}

TEST_CASE("null class marks novelty") {
  AttributeModel m;
  m.observe_event({"a", "b"});  // new tokens
  m.observe_event({"a", "b"});  // seen pair
  m.observe_event({"a", "c"});  // new token c
  m.observe_event({"b", "c"});  // new pair
  m.observe_event({"b", "c"});
  CHECK(m.occurrences("unknown") == 3);
  CHECK(m.table("unknown", "a").a == 2);
  m.observe_event({"unknown", "a"});  // explicit null
  CHECK(m.occurrences("unknown") == 4);
}

TEST_CASE("frozen models reject updates") {
  AttributeModel m;
  m.observe_event({"x", "y"});
  const double w = m.weight("x", "y");
  m.freeze();
  CHECK(m.is_frozen());
  CHECK_THROWS_AS(m.observe_event({"x"}), FrozenError);
  CHECK_THROWS_AS(m.add_attribute("z"), FrozenError);
  CHECK(m.weight("x", "y") == w);
}

TEST_CASE("serialization round trip is bit exact") {
  AttributeModel m;
  m.observe_event({"north:fwd", "s"});
  m.observe_event({"east:rev", "e"});
  m.observe_event({"north:fwd", "s"});
  for (bool freeze : {false, true}) {
    if (freeze) m.freeze();
    auto text = m.serialize();
    CHECK(text.rfind(std::string("DANI-M v1 frozen=") + (freeze ? "1" : "0") + " events=3\n", 0) == 0);
    auto back = AttributeModel::parse(text);
    CHECK(back == m);
    CHECK(back.serialize() == text);
  }
  auto dir = fixtures::scratch_dir("model_io");
  m.save(dir / "m.txt");
  auto loaded = AttributeModel::load(dir / "m.txt");
  CHECK(loaded == m);
  CHECK(loaded.serialize() == m.serialize());
  CHECK_THROWS_AS(AttributeModel::load(dir / "missing.txt"), IoError);
}

TEST_CASE("malformed model files") {
  AttributeModel m;
  m.observe_event({"a", "b"});
  const auto good = m.serialize();
  auto with = [&](const std::string& from, const std::string& to) {
    auto s = good;
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
  };
  CHECK_THROWS_AS(AttributeModel::parse("hello\n"), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(with("v1", "v9")), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(good.substr(0, good.size() / 2)), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(good + "extra\n"), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(with("a\tb\t1\t0\t0\t0", "a\tb\t1\t0\t0\t5")), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(with("a\t1\nb\t1\n", "b\t1\na\t1\n")), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(with("unknown\t1", "unknowm\t1")), FormatError);
  CHECK_THROWS_AS(AttributeModel::parse(with("events=1", "events=x")), FormatError);
}
