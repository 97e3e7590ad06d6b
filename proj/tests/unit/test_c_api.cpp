#include "doctest.h"
#include "dani/dani.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  dani_string_free(s);
  return out;
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("dani_capi_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

dani_options options(dani_mode mode = DANI_MODE_SUPERVISED) {
  static const std::string dir = DANI_TEST_CORPUS_DIR;
  dani_options o;
  dani_options_init(&o);
  o.data_dir = dir.c_str();
  o.mode = mode;
  return o;
}

}  // namespace

TEST_CASE("status names and defaults") {
  CHECK(std::strcmp(dani_status_name(DANI_OK), "ok") == 0);
  CHECK(std::strcmp(dani_status_name(DANI_E_CONFIG), "config") == 0);
  dani_options o;
  std::memset(&o, 0xff, sizeof o);
  dani_options_init(&o);
  CHECK(o.data_dir == nullptr);
  CHECK(o.mode == DANI_MODE_SUPERVISED);
  CHECK(o.limit_stories == 0);
  CHECK(o.trace == 0);
}

TEST_CASE("model lifecycle through opaque handles") {
  dani_model* m = nullptr;
  REQUIRE(dani_model_new(&m) == DANI_OK);
  const char* ev[] = {"north:rev", "n"};
  CHECK(dani_model_observe(m, ev, 2) == DANI_OK);
  CHECK(dani_model_observe(m, ev, 2) == DANI_OK);
  uint64_t events = 0;
  CHECK(dani_model_event_count(m, &events) == DANI_OK);
  CHECK(events == 2);
  double w = -1;
  CHECK(dani_model_weight(m, "north:rev", "n", &w) == DANI_OK);
  CHECK(w == 1.0);
  uint64_t t[4] = {};
  CHECK(dani_model_table(m, "north:rev", "n", t) == DANI_OK);
  CHECK(t[0] == 2);
  CHECK(dani_model_weight(m, "nope", "n", &w) == DANI_E_UNKNOWN_ATTRIBUTE);
  CHECK(std::strlen(dani_last_error()) > 0);

  CHECK(dani_model_freeze(m) == DANI_OK);
  int frozen = 0;
  CHECK(dani_model_is_frozen(m, &frozen) == DANI_OK);
  CHECK(frozen == 1);
  CHECK(dani_model_observe(m, ev, 2) == DANI_E_FROZEN);

  char* text = nullptr;
  REQUIRE(dani_model_serialize(m, &text) == DANI_OK);
  std::string s = take(text);
  CHECK(s.rfind("DANI-M v1 frozen=1 events=2\n", 0) == 0);
  dani_model* back = nullptr;
  REQUIRE(dani_model_parse(s.c_str(), &back) == DANI_OK);
  CHECK(dani_model_equal(m, back));

  auto dir = scratch("model");
  const auto path = (dir / "m.txt").string();
  CHECK(dani_model_save(m, path.c_str()) == DANI_OK);
  dani_model* loaded = nullptr;
  REQUIRE(dani_model_load(path.c_str(), &loaded) == DANI_OK);
  CHECK(dani_model_equal(m, loaded));

  dani_model* bad = nullptr;
  CHECK(dani_model_parse("garbage", &bad) == DANI_E_FORMAT);
  CHECK(bad == nullptr);
  CHECK(dani_model_load((dir / "none").string().c_str(), &bad) == DANI_E_IO);

  dani_model_free(m);
  dani_model_free(back);
  dani_model_free(loaded);
  dani_model_free(nullptr);
}

TEST_CASE("null arguments are rejected") {
  CHECK(dani_model_new(nullptr) == DANI_E_CONFIG);
  double w;
  CHECK(dani_model_weight(nullptr, "a", "b", &w) == DANI_E_CONFIG);
  CHECK(dani_train(1, nullptr, nullptr) == DANI_E_CONFIG);
}

TEST_CASE("train, evaluate and suite") {
  auto o = options();
  dani_model* m = nullptr;
  REQUIRE(dani_train(1, &o, &m) == DANI_OK);
  auto dir = scratch("eval");
  const auto report = (dir / "r.tsv").string();
  const auto trace = (dir / "t.tsv").string();
  double err = -1;
  CHECK(dani_evaluate(1, &o, m, report.c_str(), trace.c_str(), &err) == DANI_OK);
  CHECK(err >= 0.0);
  CHECK(fs::file_size(report) > 0);
  CHECK(fs::file_size(trace) > 0);
  dani_model_free(m);

  double mean = -1;
  CHECK(dani_run_suite("1,2", &o, report.c_str(), &mean) == DANI_OK);
  CHECK(mean >= 0.0);
  CHECK(dani_run_suite("0", &o, report.c_str(), &mean) == DANI_E_CONFIG);

  auto w = options(DANI_MODE_WEAK);
  CHECK(dani_train(1, &w, &m) == DANI_E_CONFIG);
  w.limit_stories = 3;
  REQUIRE(dani_train(19, &w, &m) == DANI_OK);
  dani_model_free(m);

  auto missing = options();
  const std::string nowhere = (dir / "nowhere").string();
  missing.data_dir = nowhere.c_str();
  CHECK(dani_train(1, &missing, &m) == DANI_E_IO);
}

TEST_CASE("graph dump") {
  auto o = options();
  char* out = nullptr;
  REQUIRE(dani_dump_graph(1, 1, &o, &out) == DANI_OK);
  auto s = take(out);
  CHECK(s.find("\tat\t") != std::string::npos);
  CHECK(dani_dump_graph(1, 0, &o, &out) == DANI_E_CONFIG);
  CHECK(dani_dump_graph(1, 1000000, &o, &out) == DANI_E_CONFIG);
}
