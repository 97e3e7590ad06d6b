#include "dani/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dani/decoder.hpp"
#include "dani/errors.hpp"
#include "dani/inference.hpp"
#include "dani/world_graph.hpp"

namespace dani {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

TaskSet load_split(const RunConfig& config, int task_id, Split split) {
  const auto dir = resolve_data_dir(config);
  return load_task(find_task_file(dir, task_id, split), task_id, split);
}

std::size_t story_budget(const RunConfig& config, const TaskSet& train) {
  return std::min(train.stories.size(), config.train_story_limit.value_or(train.stories.size()));
}

std::size_t questions_in(const TaskSet& set, std::size_t stories) {
  std::size_t n = 0;
  for (std::size_t s = 0; s < stories; ++s) n += set.stories[s].question_count();
  return n;
}

Lexicon lexicon_for(const RunConfig& config, const TaskSet& train) {
  if (config.mode == Mode::kWeak) return build_lexicon_weak();
  TaskSet limited{train.task_id, train.split, {}};
  limited.stories.assign(train.stories.begin(),
                         train.stories.begin() +
                             static_cast<std::ptrdiff_t>(story_budget(config, train)));
  return build_lexicon_supervised(limited);
}

}  // namespace

std::vector<int> parse_task_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream in(spec);
  std::string part;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad task list '" + spec + "'");
    }
  };
  while (std::getline(in, part, ',')) {
    auto dash = part.find('-');
    int lo = number(part.substr(0, dash));
    int hi = dash == std::string::npos ? lo : number(part.substr(dash + 1));
    if (lo < 1 || hi > 20 || lo > hi) throw ConfigError("task range out of 1..20: '" + part + "'");
    for (int t = lo; t <= hi; ++t) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  }
  if (out.empty()) throw ConfigError("empty task list");
  return out;
}

std::filesystem::path resolve_data_dir(const RunConfig& config) {
  if (!config.data_dir.empty()) return config.data_dir;
  if (const char* env = std::getenv("DANI_DATA_DIR"); env && *env) return env;
  throw ConfigError("no data directory: pass --data-dir or set DANI_DATA_DIR");
}

void check_config(const RunConfig& config, int task_id) {
  if (task_id < 1 || task_id > 20) {
    throw ConfigError("task must be in 1..20, got " + std::to_string(task_id));
  }
  if (config.mode == Mode::kWeak && task_id != 19 && !config.allow_weak_any_task) {
    throw ConfigError("weak mode is only defined for task 19");
  }
  if (config.train_story_limit && *config.train_story_limit == 0) {
    throw ConfigError("story limit must be at least 1");
  }
}

TrainedTask train_task(const RunConfig& config, int task_id) {
  check_config(config, task_id);
  const auto start = Clock::now();
  const auto train = load_split(config, task_id, Split::kTrain);
  if (train.stories.empty()) throw TrainDataError("training split is empty");

  TrainedTask out;
  out.task_id = task_id;
  out.mode = config.mode;
  out.lexicon = lexicon_for(config, train);
  out.n_stories = story_budget(config, train);
  out.n_train = questions_in(train, out.n_stories);

  if (config.mode == Mode::kWeak) {
    train_weak_paths(train, out.model, out.n_stories);
  } else {
    WorldGraph graph;
    for (std::size_t s = 0; s < out.n_stories; ++s) {
      graph.clear();
      CorefContext ctx;
      for (const auto& item : train.stories[s].items) {
        try {
          if (const auto* st = std::get_if<Statement>(&item)) {
            graph.apply(decode_statement(*st, out.lexicon, ctx));
            continue;
          }
          const auto& q = std::get<Question>(item);
          auto query = decode_question(q, out.lexicon, ctx);
          auto event = context_attributes(query, graph);
          if (event.empty()) continue;
          event.insert(q.gold_answer.begin(), q.gold_answer.end());
          out.model.observe_event(event);
        } catch (const DecodeError&) {
          ++out.decode_failures;
        }
      }
    }
  }
  out.model.freeze();
  out.seconds = seconds_since(start);
  return out;
}

TrainedTask attach_model(const RunConfig& config, int task_id, AttributeModel model) {
  check_config(config, task_id);
  TrainedTask out;
  out.task_id = task_id;
  out.mode = config.mode;
  const auto train = load_split(config, task_id, Split::kTrain);
  out.lexicon = lexicon_for(config, train);
  out.n_stories = story_budget(config, train);
  out.n_train = questions_in(train, out.n_stories);
  model.freeze();
  out.model = std::move(model);
  return out;
}

bool answers_match(int task_id, const std::vector<std::string>& predicted,
                   const std::vector<std::string>& gold) {
  if (task_id == 8) {
    std::vector<std::string> a = predicted, b = gold;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }
  return predicted == gold;
}

TaskResult evaluate_task(const RunConfig& config, const TrainedTask& trained) {
  const auto start = Clock::now();
  const auto test = load_split(config, trained.task_id, Split::kTest);

  TaskResult r;
  r.task_id = trained.task_id;
  r.mode = trained.mode;
  r.n_train = trained.n_train;
  r.train_s = trained.seconds;

  WorldGraph graph;
  for (std::size_t s = 0; s < test.stories.size(); ++s) {
    graph.clear();
    CorefContext ctx;
    for (const auto& item : test.stories[s].items) {
      if (const auto* st = std::get_if<Statement>(&item)) {
        try {
          graph.apply(decode_statement(*st, trained.lexicon, ctx));
        } catch (const DecodeError&) {
          ++r.decode_failures;
        }
        continue;
      }
      const auto& q = std::get<Question>(item);
      ++r.n_questions;
      std::vector<std::string> predicted;
      std::string detail;
      try {
        auto query = decode_question(q, trained.lexicon, ctx);
        auto a = answer(query, graph, trained.model, trained.mode);
        predicted = std::move(a.tokens);
        detail = describe(query) + (a.trace.empty() ? "" : " " + a.trace);
      } catch (const DecodeError& e) {
        ++r.decode_failures;
        detail = std::string("decode: ") + e.what();
      } catch (const Error& e) {
        detail = std::string("unresolved: ") + e.what();
      }
      const bool ok = !predicted.empty() && answers_match(trained.task_id, predicted, q.gold_answer);
      if (!ok) ++r.n_errors;
      if (config.trace) {
        std::vector<std::string> question_text = q.tokens;
        r.trace.push_back(std::to_string(s + 1) + "\t" + std::to_string(q.line_id) + "\t" +
                          join(question_text, " ") + "\t" + join(q.gold_answer, ",") + "\t" +
                          (predicted.empty() ? "-" : join(predicted, ",")) + "\t" +
                          (ok ? "ok" : "wrong") + "\t" + detail);
      }
    }
  }
  r.test_s = seconds_since(start);
  return r;
}

std::vector<TaskResult> run_suite(const RunConfig& config) {
  if (config.task_ids.empty()) throw ConfigError("no tasks selected");
  for (int t : config.task_ids) check_config(config, t);
  std::vector<TaskResult> out;
  for (int t : config.task_ids) out.push_back(evaluate_task(config, train_task(config, t)));
  return out;
}

std::string format_report(const std::vector<TaskResult>& results) {
  std::string out = "task\tmode\tn_train\terror_rate\ttrain_s\ttest_s\n";
  char buf[160];
  double err = 0.0, train = 0.0, test = 0.0;
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%d\t%s\t%zu\t%.2f\t%.3f\t%.3f\n", r.task_id,
                  std::string(mode_name(r.mode)).c_str(), r.n_train, r.error_rate(), r.train_s,
                  r.test_s);
    out += buf;
    err += r.error_rate();
    train += r.train_s;
    test += r.test_s;
  }
  if (!results.empty()) {
    const auto n = static_cast<double>(results.size());
    std::snprintf(buf, sizeof buf, "mean\t%s\t-\t%.2f\t%.3f\t%.3f\n",
                  std::string(mode_name(results.front().mode)).c_str(), err / n, train / n,
                  test / n);
    out += buf;
  }
  return out;
}

void write_report(const std::vector<TaskResult>& results, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report " + path.string());
  out << format_report(results);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace dani
