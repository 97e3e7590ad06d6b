#pragma once
// Structural property checks shared by the unit tests and the acceptance
// binary. Each returns ok plus a short reason on failure.

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dani/attribute_model.hpp"
#include "dani/corpus.hpp"
#include "dani/errors.hpp"
#include "dani/harness.hpp"

namespace props {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

inline dani::AttributeModel random_model(std::mt19937_64& rng, std::size_t events,
                                         std::size_t attributes) {
  dani::AttributeModel m;
  std::uniform_int_distribution<std::size_t> pick(0, attributes - 1), size(1, 4);
  for (std::size_t e = 0; e < events; ++e) {
    std::set<std::string> ev;
    for (std::size_t k = size(rng); k > 0; --k) ev.insert("a" + std::to_string(pick(rng)));
    m.observe_event(ev);
  }
  return m;
}

// weight(a,b) == weight(b,a) and table(b,a) is table(a,b) transposed.
inline Check symmetry(const dani::AttributeModel& m) {
  Check c;
  const auto v = m.vertices();
  for (const auto& a : v) {
    for (const auto& b : v) {
      if (m.weight(a, b) != m.weight(b, a)) c.fail("weight asymmetric for " + a + "," + b);
      auto t = m.table(a, b), u = m.table(b, a);
      if (!(u == dani::ContingencyTable{t.a, t.c, t.b, t.d})) c.fail("table not transposed for " + a + "," + b);
    }
  }
  return c;
}

inline Check round_trip(const dani::AttributeModel& m, const std::filesystem::path& scratch) {
  Check c;
  const auto text = m.serialize();
  auto back = dani::AttributeModel::parse(text);
  if (!(back == m)) c.fail("parsed model differs");
  if (back.serialize() != text) c.fail("re-serialized text differs");
  m.save(scratch / "model.txt");
  auto loaded = dani::AttributeModel::load(scratch / "model.txt");
  if (!(loaded == m) || loaded.serialize() != text) c.fail("saved model differs after load");
  return c;
}

// The null class exists from the start, never loses count, and survives
// freezing and round trips.
inline Check null_persistence(std::mt19937_64& rng) {
  Check c;
  dani::AttributeModel m;
  auto has_null = [](const dani::AttributeModel& x) {
    for (const auto& v : x.vertices()) {
      if (v == "unknown") return true;
    }
    return false;
  };
  if (!has_null(m)) c.fail("fresh model lacks the null class");
  std::uint64_t last = 0;
  std::uniform_int_distribution<int> pick(0, 15);
  for (int e = 0; e < 500; ++e) {
    m.observe_event({"a" + std::to_string(pick(rng)), "b" + std::to_string(pick(rng))});
    auto now = m.occurrences("unknown");
    if (now < last) c.fail("null count decreased");
    last = now;
  }
  if (last == 0) c.fail("novel events never marked null");
  m.freeze();
  if (!has_null(m) || m.occurrences("unknown") != last) c.fail("freeze changed the null class");
  auto back = dani::AttributeModel::parse(m.serialize());
  if (!has_null(back) || back.occurrences("unknown") != last) c.fail("round trip lost the null class");
  return c;
}

// Evaluating never changes the model, and a frozen model refuses updates.
inline Check frozen_purity(const dani::RunConfig& config, const dani::TrainedTask& trained) {
  Check c;
  const auto before = trained.model.serialize();
  dani::evaluate_task(config, trained);
  if (trained.model.serialize() != before) c.fail("evaluation mutated the model");
  auto copy = trained.model;
  try {
    copy.observe_event({"probe"});
    c.fail("frozen model accepted an event");
  } catch (const dani::FrozenError&) {
  }
  if (copy.serialize() != before) c.fail("rejected update left a trace");
  return c;
}

// Training twice and evaluating twice give identical models and traces.
inline Check replay_determinism(const dani::RunConfig& config, int task) {
  Check c;
  auto cfg = config;
  cfg.trace = true;
  auto a = dani::train_task(cfg, task);
  auto b = dani::train_task(cfg, task);
  if (a.model.serialize() != b.model.serialize()) c.fail("training is not deterministic");
  auto ra = dani::evaluate_task(cfg, a);
  auto rb = dani::evaluate_task(cfg, b);
  if (ra.trace != rb.trace || ra.n_errors != rb.n_errors) c.fail("evaluation is not deterministic");
  return c;
}

// Answers to a story do not depend on which stories came before it: the
// test split is evaluated forwards and reversed and compared per story.
inline Check story_isolation(const dani::RunConfig& config, int task,
                             const std::filesystem::path& scratch) {
  namespace fs = std::filesystem;
  Check c;
  const auto dir = dani::resolve_data_dir(config);
  const auto train_path = dani::find_task_file(dir, task, dani::Split::kTrain);
  const auto test_path = dani::find_task_file(dir, task, dani::Split::kTest);
  fs::create_directories(scratch);
  fs::copy_file(train_path, scratch / train_path.filename(), fs::copy_options::overwrite_existing);
  auto test = dani::load_task(test_path, task, dani::Split::kTest);
  {
    std::ofstream out(scratch / test_path.filename(), std::ios::binary | std::ios::trunc);
    for (auto it = test.stories.rbegin(); it != test.stories.rend(); ++it) {
      out << dani::serialize_story(*it);
    }
  }

  auto by_story = [](const dani::TaskResult& r, std::size_t n, bool reversed) {
    std::map<std::size_t, std::vector<std::string>> out;
    for (const auto& line : r.trace) {
      auto tab = line.find('\t');
      std::size_t s = std::stoul(line.substr(0, tab));
      out[reversed ? n + 1 - s : s].push_back(line.substr(tab + 1));
    }
    return out;
  };

  auto cfg = config;
  cfg.trace = true;
  auto trained = dani::train_task(cfg, task);
  auto forward = dani::evaluate_task(cfg, trained);
  auto rcfg = cfg;
  rcfg.data_dir = scratch;
  auto backward = dani::evaluate_task(rcfg, trained);
  const auto n = test.stories.size();
  if (forward.n_questions != backward.n_questions) c.fail("question counts differ after reordering");
  if (by_story(forward, n, false) != by_story(backward, n, true)) {
    c.fail("answers changed when stories were reordered");
  }
  return c;
}

}  // namespace props
