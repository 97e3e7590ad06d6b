#pragma once

// bAbI task files: `id body` statement lines and
// `id question\tanswer\tsupports` question lines, stories delimited by the
// line id restarting at 1.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dani {

enum class LineKind { kStatement, kQuestion };

struct RawLine {
  int line_id = 0;
  std::string body;  // verbatim, after the id and its separating space
  LineKind kind = LineKind::kStatement;
};

struct Statement {
  int line_id = 0;
  std::vector<std::string> tokens;
};

struct Question {
  int line_id = 0;
  std::vector<std::string> tokens;
  std::vector<std::string> gold_answer;
  // Evaluation metadata only; nothing in training reads this.
  std::vector<int> support_ids;
};

using StoryItem = std::variant<Statement, Question>;

struct Story {
  std::vector<StoryItem> items;
  // Verbatim source lines, kept so a story re-serializes exactly.
  std::vector<RawLine> raw;

  std::size_t question_count() const;
};

enum class Split { kTrain, kTest };

std::string_view split_name(Split split);

struct TaskSet {
  int task_id = 0;
  Split split = Split::kTrain;
  std::vector<Story> stories;

  std::size_t question_count() const;
};

/// Parses one line. Returns nullopt for blank lines. `file_line` is only
/// used for error context.
std::optional<RawLine> parse_line(std::string_view text, std::size_t file_line = 0);

/// Splits file-ordered lines into stories. A story starts wherever the id
/// resets to 1; otherwise ids must strictly increase (gaps are fine).
std::vector<Story> segment_stories(const std::vector<RawLine>& lines);

/// Lowercases, splits on whitespace and strips one terminal '.' or '?'.
std::vector<std::string> tokenize(std::string_view text);

/// Parses the whole contents of a task file.
TaskSet parse_task(std::string_view contents, int task_id, Split split);

TaskSet load_task(const std::filesystem::path& path, int task_id, Split split);

/// Locates `qa<task>_*_<split>.txt` under `data_dir`, checking the
/// directory itself, `en/` and `tasks_1-20_v1-2/en/` in that order.
std::filesystem::path find_task_file(const std::filesystem::path& data_dir, int task_id,
                                     Split split);

/// Writes the story back out as `id body` lines.
std::string serialize_story(const Story& story);

}  // namespace dani
