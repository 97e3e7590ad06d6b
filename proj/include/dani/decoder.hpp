#pragma once

#include <string>
#include <vector>

#include "dani/corpus.hpp"
#include "dani/frames.hpp"
#include "dani/lexicon.hpp"

namespace dani {

/// Per-story decoding state: pronoun antecedents and the statement counter.
/// Confined to one story; reset at story boundaries.
struct CorefContext {
  std::vector<std::string> last_actors;  // most recent actor set (for "they")
  std::string last_singleton;            // most recent single actor (he/she/it)
  int event_counter = 0;

  void reset() { *this = CorefContext{}; }
};

/// Decodes one statement. Supervised lexicons drive decoding by word class;
/// weak lexicons use only the primitives and token positions. On success
/// the context receives the frame's actors and the counter advances; on
/// DecodeError the context is left unchanged.
Frame decode_statement(const std::vector<std::string>& tokens, const Lexicon& lex,
                       CorefContext& ctx);

inline Frame decode_statement(const Statement& s, const Lexicon& lex, CorefContext& ctx) {
  return decode_statement(s.tokens, lex, ctx);
}

QueryFrame decode_question(const std::vector<std::string>& tokens, const Lexicon& lex,
                           const CorefContext& ctx);

inline QueryFrame decode_question(const Question& q, const Lexicon& lex, const CorefContext& ctx) {
  return decode_question(q.tokens, lex, ctx);
}

bool is_pronoun(const std::string& word);

}  // namespace dani
