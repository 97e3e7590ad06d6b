// Command-line front end; talks to the library only through dani.h.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "dani/dani.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitInternal = 2;

int exit_code(dani_status s) {
  switch (s) {
    case DANI_OK: return kExitOk;
    case DANI_E_CONFIG:
    case DANI_E_IO:
    case DANI_E_PARSE:
    case DANI_E_FORMAT:
    case DANI_E_FETCH:
    case DANI_E_INTEGRITY:
    case DANI_E_TRAIN_DATA:
    case DANI_E_DECODE: return kExitData;
    default: return kExitInternal;
  }
}

int report(dani_status s) {
  if (s != DANI_OK) {
    std::fprintf(stderr, "dani: %s error: %s\n", dani_status_name(s), dani_last_error());
  }
  return exit_code(s);
}

dani_mode parse_mode(const std::string& m) {
  return m == "ws" ? DANI_MODE_WEAK : DANI_MODE_SUPERVISED;
}

struct Common {
  std::string data_dir;
  std::string mode = "s";
  std::size_t limit = 0;
  bool any_task = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data-dir", data_dir, "task files directory (default $DANI_DATA_DIR)");
    cmd->add_option("--mode", mode, "s (supervised) or ws (weak)")
        ->check(CLI::IsMember({"s", "ws"}));
    cmd->add_option("--limit-stories", limit, "use only the first K training stories")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--weak-any-task", any_task, "allow weak mode outside task 19");
  }

  dani_options options() const {
    dani_options o;
    dani_options_init(&o);
    o.data_dir = data_dir.empty() ? nullptr : data_dir.c_str();
    o.mode = parse_mode(mode);
    o.limit_stories = limit;
    o.allow_weak_any_task = any_task ? 1 : 0;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dani: graph-memory question answering over bAbI tasks"};
  app.require_subcommand(1);

  std::string url, dest, sha;
  auto* fetch = app.add_subcommand("fetch-data", "download and unpack the task corpus");
  fetch->add_option("--url", url, "archive URL (http, https, file)")->required();
  fetch->add_option("--dest", dest, "destination directory")->required();
  fetch->add_option("--sha256", sha, "expected archive checksum");

  std::uint64_t seed = 1;
  std::size_t per_split = 1000;
  auto* synth = app.add_subcommand("synth-data", "generate a corpus from the task templates");
  synth->add_option("--dest", dest, "destination directory")->required();
  synth->add_option("--seed", seed, "generator seed");
  synth->add_option("--questions", per_split, "questions per split")->check(CLI::PositiveNumber);

  int task = 0;
  std::string model_path, report_path;
  Common train_opts;
  auto* train = app.add_subcommand("train", "train one task and save the model");
  train->add_option("--task", task, "task id 1-20")->required()->check(CLI::Range(1, 20));
  train->add_option("--model-out", model_path, "model file")->required();
  train_opts.attach(train);

  Common test_opts;
  bool trace = false;
  auto* test = app.add_subcommand("test", "score a saved model on the test split");
  test->add_option("--task", task, "task id 1-20")->required()->check(CLI::Range(1, 20));
  test->add_option("--model", model_path, "model file")->required();
  test->add_option("--report", report_path, "TSV report")->required();
  test->add_flag("--trace", trace, "write per-question traces to <report>.trace.tsv");
  test_opts.attach(test);

  std::string tasks = "1-20";
  Common suite_opts;
  auto* suite = app.add_subcommand("run-suite", "train and test a range of tasks");
  suite->add_option("--tasks", tasks, "e.g. 1-20 or 1,4,7-9");
  suite->add_option("--report", report_path, "TSV report")->required();
  suite_opts.attach(suite);

  std::size_t story = 1;
  Common dump_opts;
  auto* dump = app.add_subcommand("dump-graph", "print the story graph of a test story");
  dump->add_option("--task", task, "task id 1-20")->default_val(1)->check(CLI::Range(1, 20));
  dump->add_option("--story", story, "1-based test story index")->required();
  dump_opts.attach(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitData;
  }

  if (*fetch) return report(dani_fetch(url.c_str(), dest.c_str(), sha.empty() ? nullptr : sha.c_str()));

  if (*synth) return report(dani_synthesize(dest.c_str(), seed, per_split));

  if (*train) {
    auto o = train_opts.options();
    dani_model* m = nullptr;
    auto s = dani_train(task, &o, &m);
    if (s == DANI_OK) s = dani_model_save(m, model_path.c_str());
    if (s == DANI_OK) {
      std::uint64_t events = 0;
      dani_model_event_count(m, &events);
      std::printf("task %d mode %s: %llu training events -> %s\n", task, train_opts.mode.c_str(),
                  static_cast<unsigned long long>(events), model_path.c_str());
    }
    dani_model_free(m);
    return report(s);
  }

  if (*test) {
    auto o = test_opts.options();
    dani_model* m = nullptr;
    auto s = dani_model_load(model_path.c_str(), &m);
    double err = 0.0;
    const std::string trace_path = report_path + ".trace.tsv";
    if (s == DANI_OK) {
      s = dani_evaluate(task, &o, m, report_path.c_str(), trace ? trace_path.c_str() : nullptr,
                        &err);
    }
    if (s == DANI_OK) std::printf("task %d mode %s: error %.2f%%\n", task, test_opts.mode.c_str(), err);
    dani_model_free(m);
    return report(s);
  }

  if (*suite) {
    auto o = suite_opts.options();
    double mean = 0.0;
    auto s = dani_run_suite(tasks.c_str(), &o, report_path.c_str(), &mean);
    if (s == DANI_OK) std::printf("tasks %s mode %s: mean error %.2f%%\n", tasks.c_str(),
                                  suite_opts.mode.c_str(), mean);
    return report(s);
  }

  if (*dump) {
    auto o = dump_opts.options();
    char* text = nullptr;
    auto s = dani_dump_graph(task, story, &o, &text);
    if (s == DANI_OK) std::fputs(text, stdout);
    dani_string_free(text);
    return report(s);
  }
  return kExitInternal;
}
