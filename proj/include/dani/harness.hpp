#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dani/attribute_model.hpp"
#include "dani/corpus.hpp"
#include "dani/lexicon.hpp"

namespace dani {

struct RunConfig {
  std::vector<int> task_ids;
  Mode mode = Mode::kSupervised;
  std::filesystem::path data_dir;  // empty: $DANI_DATA_DIR
  std::optional<std::size_t> train_story_limit;
  bool trace = false;
  // Weak mode is defined for path finding; other tasks need this set.
  bool allow_weak_any_task = false;
};

struct TrainedTask {
  int task_id = 0;
  Mode mode = Mode::kSupervised;
  Lexicon lexicon;
  AttributeModel model;
  std::size_t n_stories = 0;        // training stories consumed
  std::size_t n_train = 0;          // questions in those stories
  std::size_t decode_failures = 0;  // statements/questions skipped
  double seconds = 0.0;
};

struct TaskResult {
  int task_id = 0;
  Mode mode = Mode::kSupervised;
  std::size_t n_train = 0;  // training questions
  std::size_t n_questions = 0;
  std::size_t n_errors = 0;
  std::size_t decode_failures = 0;
  double train_s = 0.0;
  double test_s = 0.0;
  std::vector<std::string> trace;  // one line per test question when tracing

  double error_rate() const {
    return n_questions == 0 ? 0.0 : 100.0 * static_cast<double>(n_errors) /
                                        static_cast<double>(n_questions);
  }
};

/// Parses "1-20", "3", "1,4,7-9".
std::vector<int> parse_task_list(const std::string& spec);

/// config.data_dir, else $DANI_DATA_DIR; ConfigError when neither is set.
std::filesystem::path resolve_data_dir(const RunConfig& config);

/// Validates the config for one task (range, weak-mode scope, limit).
void check_config(const RunConfig& config, int task_id);

/// Trains on the task's training split. The returned model is frozen.
TrainedTask train_task(const RunConfig& config, int task_id);

/// Rebuilds the lexicon a supervised model was trained with (it is a pure
/// function of the training split) around an already trained model.
TrainedTask attach_model(const RunConfig& config, int task_id, AttributeModel model);

/// Scores the test split against a trained task.
TaskResult evaluate_task(const RunConfig& config, const TrainedTask& trained);

/// Train then test each configured task.
std::vector<TaskResult> run_suite(const RunConfig& config);

/// True when the predicted tokens match; task 8 compares as sets.
bool answers_match(int task_id, const std::vector<std::string>& predicted,
                   const std::vector<std::string>& gold);

/// `task mode n_train error_rate train_s test_s` rows plus a mean footer.
std::string format_report(const std::vector<TaskResult>& results);
void write_report(const std::vector<TaskResult>& results, const std::filesystem::path& path);

}  // namespace dani
