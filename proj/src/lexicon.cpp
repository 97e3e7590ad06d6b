#include "dani/lexicon.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "dani/errors.hpp"

namespace dani {

// Generated from data/lexicon.tsv at configure time.
extern const char* const kBundledLexicon;

namespace {

constexpr std::array<std::pair<WordClass, std::string_view>, 18> kClassNames{{
    {WordClass::kName, "name"},
    {WordClass::kItem, "item"},
    {WordClass::kPlace, "place"},
    {WordClass::kDirection, "direction"},
    {WordClass::kShape, "shape"},
    {WordClass::kColour, "colour"},
    {WordClass::kAnimal, "animal"},
    {WordClass::kMotive, "motive"},
    {WordClass::kTime, "time"},
    {WordClass::kPronoun, "pronoun"},
    {WordClass::kVerbMove, "verb_move"},
    {WordClass::kVerbTake, "verb_take"},
    {WordClass::kVerbDrop, "verb_drop"},
    {WordClass::kVerbGive, "verb_give"},
    {WordClass::kRelation, "relation"},
    {WordClass::kQualifier, "qualifier"},
    {WordClass::kFunction, "function"},
    {WordClass::kUnknown, "unknown"},
}};

}  // namespace

Primitives builtin_primitives() {
  Primitives p;
  p.terms_ = {"to", "from", "of", "the",                // grammatical terms
              "and", "no", "not", "either", "or",       // conjunction / negation
              "is", "went", "back"};
  return p;
}

std::string_view word_class_name(WordClass c) {
  for (const auto& [cls, name] : kClassNames) {
    if (cls == c) return name;
  }
  return "unknown";
}

std::optional<WordClass> parse_word_class(std::string_view name) {
  for (const auto& [cls, n] : kClassNames) {
    if (n == name) return cls;
  }
  return std::nullopt;
}

std::string_view mode_name(Mode mode) { return mode == Mode::kSupervised ? "s" : "ws"; }

ClassificationTable ClassificationTable::parse(std::string_view text) {
  ClassificationTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 2 || cols[0].empty()) {
      throw ParseError(lineno, "expected word<TAB>class");
    }
    auto cls = parse_word_class(cols[1]);
    if (!cls) throw ParseError(lineno, "unknown word class '" + cols[1] + "'");
    Entry e{*cls, cols.size() >= 3 ? cols[2] : std::string()};
    table.entries_[cols[0]] = std::move(e);
  }
  return table;
}

ClassificationTable ClassificationTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open classification table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ClassificationTable& ClassificationTable::bundled() {
  static const ClassificationTable table = parse(kBundledLexicon);
  return table;
}

const ClassificationTable::Entry* ClassificationTable::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

WordClass Lexicon::classify(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? WordClass::kUnknown : it->second.word_class;
}

std::string Lexicon::canonical(std::string_view word) const {
  auto it = entries_.find(word);
  if (it == entries_.end() || it->second.canonical.empty()) return std::string(word);
  return it->second.canonical;
}

void Lexicon::assign(const std::string& word, WordClass c, std::string canonical) {
  entries_[word] = ClassificationTable::Entry{c, std::move(canonical)};
}

Lexicon build_lexicon_supervised(const TaskSet& train, const ClassificationTable& table) {
  if (train.split != Split::kTrain) {
    throw ConfigError("lexicon must be built from the train split");
  }
  Lexicon lex(Mode::kSupervised);
  auto add = [&](const std::string& word) {
    if (lex.contains(word)) return;
    if (const auto* e = table.find(word)) {
      lex.assign(word, e->word_class, e->canonical);
    } else {
      lex.assign(word, WordClass::kUnknown);
      lex.note_unclassified(word);
    }
  };
  for (const auto& story : train.stories) {
    for (const auto& item : story.items) {
      std::visit(
          [&](const auto& line) {
            for (const auto& w : line.tokens) add(w);
          },
          item);
      if (const auto* q = std::get_if<Question>(&item)) {
        for (const auto& w : q->gold_answer) add(w);
      }
    }
  }
  return lex;
}

Lexicon build_lexicon_weak() { return Lexicon(Mode::kWeak); }

}  // namespace dani
