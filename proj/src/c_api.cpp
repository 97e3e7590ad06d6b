#include "dani/dani.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <set>
#include <string>

#include "dani/attribute_model.hpp"
#include "dani/decoder.hpp"
#include "dani/errors.hpp"
#include "dani/fetch.hpp"
#include "dani/harness.hpp"
#include "dani/synth.hpp"
#include "dani/world_graph.hpp"

struct dani_model {
  dani::AttributeModel model;
  int task = 0;
  std::size_t n_train = 0;
  double train_s = 0.0;
};

namespace {

thread_local std::string g_last_error;

template <class F>
dani_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return DANI_OK;
  } catch (const dani::Error& e) {
    g_last_error = e.what();
    return static_cast<dani_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return DANI_E_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw dani::ConfigError(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dani::RunConfig to_config(const dani_options* opts) {
  dani::RunConfig c;
  if (!opts) return c;
  if (opts->data_dir && *opts->data_dir) c.data_dir = opts->data_dir;
  c.mode = opts->mode == DANI_MODE_WEAK ? dani::Mode::kWeak : dani::Mode::kSupervised;
  if (opts->limit_stories) c.train_story_limit = opts->limit_stories;
  c.trace = opts->trace != 0;
  c.allow_weak_any_task = opts->allow_weak_any_task != 0;
  return c;
}

void write_trace(const dani::TaskResult& r, const char* path) {
  if (!path) return;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw dani::IoError(std::string("cannot write trace ") + path);
  out << "story\tline\tquestion\tgold\tpredicted\tverdict\tdetail\n";
  for (const auto& line : r.trace) out << line << '\n';
}

}  // namespace

extern "C" {

void dani_options_init(dani_options* opts) {
  if (!opts) return;
  opts->data_dir = nullptr;
  opts->mode = DANI_MODE_SUPERVISED;
  opts->limit_stories = 0;
  opts->trace = 0;
  opts->allow_weak_any_task = 0;
}

const char* dani_last_error(void) { return g_last_error.c_str(); }

const char* dani_status_name(dani_status status) {
  switch (status) {
    case DANI_OK: return "ok";
    case DANI_E_CONFIG: return "config";
    case DANI_E_IO: return "io";
    case DANI_E_PARSE: return "parse";
    case DANI_E_FORMAT: return "format";
    case DANI_E_FROZEN: return "frozen";
    case DANI_E_FETCH: return "fetch";
    case DANI_E_INTEGRITY: return "integrity";
    case DANI_E_TRAIN_DATA: return "train-data";
    case DANI_E_DECODE: return "decode";
    case DANI_E_UNKNOWN_ATTRIBUTE: return "unknown-attribute";
    case DANI_E_UNRESOLVED: return "unresolved";
    case DANI_E_NO_PATH: return "no-path";
    case DANI_E_INTERNAL: return "internal";
  }
  return "invalid";
}

void dani_string_free(char* s) { std::free(s); }

dani_status dani_fetch(const char* url, const char* dest, const char* sha256) {
  return guard([&] {
    need(url, "url");
    need(dest, "dest");
    dani::FetchOptions o;
    if (sha256) o.sha256 = sha256;
    dani::fetch_dataset(url, dest, o);
  });
}

dani_status dani_synthesize(const char* dest, uint64_t seed, size_t questions_per_split) {
  return guard([&] {
    need(dest, "dest");
    if (questions_per_split == 0) throw dani::ConfigError("questions_per_split must be positive");
    dani::synthesize_corpus(dest, {seed, questions_per_split});
  });
}

dani_status dani_model_new(dani_model** out) {
  return guard([&] {
    need(out, "out");
    *out = new dani_model();
  });
}

void dani_model_free(dani_model* model) { delete model; }

dani_status dani_model_observe(dani_model* model, const char* const* tokens, size_t n) {
  return guard([&] {
    need(model, "model");
    if (n) need(tokens, "tokens");
    std::set<std::string> event;
    for (size_t i = 0; i < n; ++i) {
      need(tokens[i], "token");
      event.insert(tokens[i]);
    }
    model->model.observe_event(event);
  });
}

dani_status dani_model_freeze(dani_model* model) {
  return guard([&] {
    need(model, "model");
    model->model.freeze();
  });
}

dani_status dani_model_is_frozen(const dani_model* model, int* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = model->model.is_frozen() ? 1 : 0;
  });
}

dani_status dani_model_event_count(const dani_model* model, uint64_t* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = model->model.event_count();
  });
}

dani_status dani_model_weight(const dani_model* model, const char* a, const char* b, double* out) {
  return guard([&] {
    need(model, "model");
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = model->model.weight(a, b);
  });
}

dani_status dani_model_table(const dani_model* model, const char* a, const char* b,
                             uint64_t out[4]) {
  return guard([&] {
    need(model, "model");
    need(a, "a");
    need(b, "b");
    need(out, "out");
    auto t = model->model.table(a, b);
    out[0] = t.a;
    out[1] = t.b;
    out[2] = t.c;
    out[3] = t.d;
  });
}

dani_status dani_model_serialize(const dani_model* model, char** out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = dup(model->model.serialize());
  });
}

dani_status dani_model_parse(const char* text, dani_model** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    auto m = std::make_unique<dani_model>();
    m->model = dani::AttributeModel::parse(text);
    *out = m.release();
  });
}

dani_status dani_model_save(const dani_model* model, const char* path) {
  return guard([&] {
    need(model, "model");
    need(path, "path");
    model->model.save(path);
  });
}

dani_status dani_model_load(const char* path, dani_model** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto m = std::make_unique<dani_model>();
    m->model = dani::AttributeModel::load(path);
    *out = m.release();
  });
}

int dani_model_equal(const dani_model* a, const dani_model* b) {
  if (!a || !b) return 0;
  return a->model == b->model ? 1 : 0;
}

dani_status dani_train(int task, const dani_options* opts, dani_model** out) {
  return guard([&] {
    need(out, "out");
    auto trained = dani::train_task(to_config(opts), task);
    auto m = std::make_unique<dani_model>();
    m->model = std::move(trained.model);
    m->task = task;
    m->n_train = trained.n_train;
    m->train_s = trained.seconds;
    *out = m.release();
  });
}

dani_status dani_evaluate(int task, const dani_options* opts, const dani_model* model,
                          const char* report_path, const char* trace_path, double* error_rate) {
  return guard([&] {
    need(model, "model");
    auto config = to_config(opts);
    if (trace_path) config.trace = true;
    auto trained = dani::attach_model(config, task, model->model);
    if (model->task == task) {
      trained.n_train = model->n_train;
      trained.seconds = model->train_s;
    }
    auto result = dani::evaluate_task(config, trained);
    if (report_path) dani::write_report({result}, report_path);
    write_trace(result, trace_path);
    if (error_rate) *error_rate = result.error_rate();
  });
}

dani_status dani_run_suite(const char* tasks, const dani_options* opts, const char* report_path,
                           double* mean_error_rate) {
  return guard([&] {
    need(tasks, "tasks");
    auto config = to_config(opts);
    config.task_ids = dani::parse_task_list(tasks);
    auto results = dani::run_suite(config);
    if (report_path) dani::write_report(results, report_path);
    if (mean_error_rate) {
      double sum = 0.0;
      for (const auto& r : results) sum += r.error_rate();
      *mean_error_rate = sum / static_cast<double>(results.size());
    }
  });
}

dani_status dani_dump_graph(int task, size_t story, const dani_options* opts, char** out) {
  return guard([&] {
    need(out, "out");
    auto config = to_config(opts);
    dani::check_config(config, task);
    auto dir = dani::resolve_data_dir(config);
    auto test = dani::load_task(dani::find_task_file(dir, task, dani::Split::kTest), task,
                                dani::Split::kTest);
    if (story < 1 || story > test.stories.size()) {
      throw dani::ConfigError("story must be in 1.." + std::to_string(test.stories.size()));
    }
    dani::Lexicon lex = config.mode == dani::Mode::kWeak
                            ? dani::build_lexicon_weak()
                            : dani::build_lexicon_supervised(dani::load_task(
                                  dani::find_task_file(dir, task, dani::Split::kTrain), task,
                                  dani::Split::kTrain));
    dani::WorldGraph graph;
    dani::CorefContext ctx;
    std::string frames;
    for (const auto& item : test.stories[story - 1].items) {
      if (const auto* st = std::get_if<dani::Statement>(&item)) {
        auto f = dani::decode_statement(*st, lex, ctx);
        frames += "# " + std::to_string(st->line_id) + " " + dani::describe(f) + "\n";
        graph.apply(f);
      }
    }
    *out = dup(frames + graph.dump());
  });
}

}  // extern "C"
