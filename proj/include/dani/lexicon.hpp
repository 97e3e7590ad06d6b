#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dani/corpus.hpp"

namespace dani {

/// Grammatical terms both operating modes start from.
class Primitives {
 public:
  bool contains(std::string_view word) const { return terms_.count(std::string(word)) > 0; }
  const std::set<std::string>& terms() const { return terms_; }

 private:
  friend Primitives builtin_primitives();
  std::set<std::string> terms_;
};

Primitives builtin_primitives();

enum class WordClass {
  kName,
  kItem,
  kPlace,
  kDirection,
  kShape,
  kColour,
  kAnimal,
  kMotive,
  kTime,
  kPronoun,
  kVerbMove,
  kVerbTake,
  kVerbDrop,
  kVerbGive,
  kRelation,
  kQualifier,
  kFunction,
  kUnknown,
};

std::string_view word_class_name(WordClass c);
std::optional<WordClass> parse_word_class(std::string_view name);

enum class Mode { kSupervised, kWeak };

std::string_view mode_name(Mode mode);

/// The bundled word-classification table: `word<TAB>class[<TAB>canonical]`.
/// The optional third column maps inflected forms (plurals) to the
/// singular used in answers.
class ClassificationTable {
 public:
  struct Entry {
    WordClass word_class = WordClass::kUnknown;
    std::string canonical;
  };

  static ClassificationTable parse(std::string_view text);
  static ClassificationTable load(const std::filesystem::path& path);
  static const ClassificationTable& bundled();

  const Entry* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

class Lexicon {
 public:
  explicit Lexicon(Mode mode = Mode::kSupervised) : mode_(mode) {}

  Mode mode() const { return mode_; }
  WordClass classify(std::string_view word) const;
  /// Singular/canonical spelling; the word itself when none is recorded.
  std::string canonical(std::string_view word) const;

  void assign(const std::string& word, WordClass c, std::string canonical = {});
  bool contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& unclassified() const { return unclassified_; }
  void note_unclassified(const std::string& word) { unclassified_.push_back(word); }

 private:
  Mode mode_;
  std::map<std::string, ClassificationTable::Entry, std::less<>> entries_;
  std::vector<std::string> unclassified_;
};

/// Assigns every word appearing in the training split a class from
/// `table`; words the table lacks become kUnknown and are listed in
/// Lexicon::unclassified().
Lexicon build_lexicon_supervised(const TaskSet& train,
                                 const ClassificationTable& table = ClassificationTable::bundled());

/// Weak mode carries no vocabulary beyond the primitives.
Lexicon build_lexicon_weak();

}  // namespace dani
