#include "dani/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dani/errors.hpp"

namespace dani {

namespace {

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Question make_question(const RawLine& line, std::size_t file_line) {
  auto fields = split_on(line.body, '\t');
  Question q;
  q.line_id = line.line_id;
  q.tokens = tokenize(fields[0]);
  if (fields.size() < 2 || trim(fields[1]).empty()) {
    throw ParseError(file_line, "question without answer field");
  }
  for (auto part : split_on(trim(fields[1]), ',')) {
    auto tok = tokenize(part);
    q.gold_answer.insert(q.gold_answer.end(), tok.begin(), tok.end());
  }
  if (fields.size() >= 3) {
    std::istringstream in{std::string(fields[2])};
    int id = 0;
    while (in >> id) q.support_ids.push_back(id);
  }
  return q;
}

}  // namespace

std::size_t Story::question_count() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const auto& it) {
    return std::holds_alternative<Question>(it);
  }));
}

std::size_t TaskSet::question_count() const {
  std::size_t n = 0;
  for (const auto& s : stories) n += s.question_count();
  return n;
}

std::string_view split_name(Split split) { return split == Split::kTrain ? "train" : "test"; }

std::optional<RawLine> parse_line(std::string_view text, std::size_t file_line) {
  text = trim_right(text);
  if (trim(text).empty()) return std::nullopt;

  auto space = text.find(' ');
  if (space == std::string_view::npos || space == 0) {
    throw ParseError(file_line, "expected `<id> <body>`");
  }
  int id = 0;
  auto digits = text.substr(0, space);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || id < 1) {
    throw ParseError(file_line, "malformed line id '" + std::string(digits) + "'");
  }

  RawLine line;
  line.line_id = id;
  line.body = std::string(text.substr(space + 1));
  line.kind = line.body.find('\t') != std::string::npos ? LineKind::kQuestion
                                                         : LineKind::kStatement;
  if (line.kind == LineKind::kQuestion) {
    auto fields = split_on(line.body, '\t');
    if (fields.size() < 2 || trim(fields[1]).empty()) {
      throw ParseError(file_line, "question without answer field");
    }
  }
  return line;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  flush();
  if (!tokens.empty()) {
    auto& last = tokens.back();
    if (!last.empty() && (last.back() == '.' || last.back() == '?')) last.pop_back();
    if (last.empty()) tokens.pop_back();
  }
  return tokens;
}

std::vector<Story> segment_stories(const std::vector<RawLine>& lines) {
  std::vector<Story> stories;
  int previous = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.line_id == 1) {
      stories.emplace_back();
    } else if (stories.empty() || line.line_id <= previous) {
      throw ParseError(i + 1, "line id " + std::to_string(line.line_id) +
                                  " does not increase and does not restart at 1");
    }
    auto& story = stories.back();
    story.raw.push_back(line);
    if (line.kind == LineKind::kQuestion) {
      story.items.emplace_back(make_question(line, i + 1));
    } else {
      Statement s{line.line_id, tokenize(line.body)};
      if (s.tokens.empty()) throw ParseError(i + 1, "empty statement");
      story.items.emplace_back(std::move(s));
    }
    previous = line.line_id;
  }
  return stories;
}

TaskSet parse_task(std::string_view contents, int task_id, Split split) {
  if (task_id < 1 || task_id > 20) {
    throw ConfigError("task id must be in 1..20, got " + std::to_string(task_id));
  }
  std::vector<RawLine> lines;
  std::vector<std::size_t> file_lines;
  std::size_t file_line = 0;
  std::size_t start = 0;
  while (start <= contents.size()) {
    auto end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    ++file_line;
    if (auto line = parse_line(contents.substr(start, end - start), file_line)) {
      lines.push_back(std::move(*line));
      file_lines.push_back(file_line);
    }
    start = end + 1;
  }

  TaskSet set;
  set.task_id = task_id;
  set.split = split;
  try {
    set.stories = segment_stories(lines);
  } catch (const ParseError& e) {
    // Map the index within non-blank lines back to the file line.
    auto idx = e.line() ? e.line() - 1 : 0;
    throw ParseError(idx < file_lines.size() ? file_lines[idx] : 0, e.reason());
  }
  return set;
}

TaskSet load_task(const std::filesystem::path& path, int task_id, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  try {
    return parse_task(buf.str(), task_id, split);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.reason());
  }
}

std::filesystem::path find_task_file(const std::filesystem::path& data_dir, int task_id,
                                     Split split) {
  namespace fs = std::filesystem;
  const std::string prefix = "qa" + std::to_string(task_id) + "_";
  const std::string suffix = "_" + std::string(split_name(split)) + ".txt";
  for (const auto& dir : {data_dir, data_dir / "en", data_dir / "tasks_1-20_v1-2" / "en"}) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) continue;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      auto name = entry.path().filename().string();
      if (name.size() > prefix.size() + suffix.size() && name.starts_with(prefix) &&
          name.ends_with(suffix)) {
        return entry.path();
      }
    }
  }
  throw IoError("no " + std::string(split_name(split)) + " file for task " +
                std::to_string(task_id) + " under " + data_dir.string());
}

std::string serialize_story(const Story& story) {
  std::string out;
  for (const auto& line : story.raw) {
    out += std::to_string(line.line_id);
    out += ' ';
    out += line.body;
    out += '\n';
  }
  return out;
}

}  // namespace dani
