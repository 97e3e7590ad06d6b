#include "dani/decoder.hpp"

#include <algorithm>
#include <sstream>

#include "dani/errors.hpp"

namespace dani {

namespace {

std::string join(const std::vector<std::string>& tokens, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

[[noreturn]] void fail(const std::vector<std::string>& tokens, const std::string& why) {
  throw DecodeError("cannot decode [" + join(tokens) + "]: " + why);
}

class Cursor {
 public:
  Cursor(const std::vector<std::string>& tokens, const Lexicon& lex)
      : tokens_(tokens), lex_(lex) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek(std::size_t ahead = 0) const {
    static const std::string kEmpty;
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : kEmpty;
  }
  WordClass peek_class(std::size_t ahead = 0) const { return lex_.classify(peek(ahead)); }
  std::string next() {
    if (done()) fail(tokens_, "unexpected end");
    return tokens_[pos_++];
  }
  bool accept(std::string_view word) {
    if (!done() && tokens_[pos_] == word) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view word) {
    if (!accept(word)) fail(tokens_, "expected '" + std::string(word) + "' at position " +
                                         std::to_string(pos_));
  }
  void expect_end() {
    if (!done()) fail(tokens_, "trailing tokens from '" + peek() + "'");
  }
  [[noreturn]] void error(const std::string& why) const { fail(tokens_, why); }

  // "the" followed by a noun phrase: colour/shape/item/place words and the
  // "box of chocolates" form. Multi-word phrases join with '_'.
  std::string noun_phrase() {
    expect("the");
    return bare_noun_phrase();
  }

  std::string bare_noun_phrase() {
    std::vector<std::string> words;
    while (!done()) {
      auto c = peek_class();
      if (c == WordClass::kColour || c == WordClass::kShape || c == WordClass::kItem ||
          c == WordClass::kPlace) {
        words.push_back(next());
      } else if (peek() == "of" && !words.empty() && peek_class(1) == WordClass::kItem) {
        words.push_back(next());
        words.push_back(next());
      } else {
        break;
      }
    }
    if (words.empty()) error("expected a noun phrase at '" + peek() + "'");
    return join(words, "_");
  }

  std::string name() {
    if (peek_class() != WordClass::kName) error("expected a name at '" + peek() + "'");
    return next();
  }

  // Name or "the" noun phrase.
  std::string entity() {
    if (peek() == "the") return noun_phrase();
    return name();
  }

 private:
  const std::vector<std::string>& tokens_;
  const Lexicon& lex_;
  std::size_t pos_ = 0;
};

std::optional<int> time_rank(const std::string& word) {
  if (word == "yesterday") return 0;
  if (word == "morning") return 1;
  if (word == "afternoon") return 2;
  if (word == "evening") return 3;
  return std::nullopt;
}

// Removes a leading or trailing time marker ("yesterday", "this morning").
std::optional<int> strip_time(std::vector<std::string>& tokens, const Lexicon& lex) {
  auto is_time = [&](const std::string& w) { return lex.classify(w) == WordClass::kTime; };
  if (!tokens.empty() && is_time(tokens.front())) {
    auto r = time_rank(tokens.front());
    tokens.erase(tokens.begin());
    return r;
  }
  if (tokens.size() >= 2 && tokens[0] == "this" && is_time(tokens[1])) {
    auto r = time_rank(tokens[1]);
    tokens.erase(tokens.begin(), tokens.begin() + 2);
    return r;
  }
  if (!tokens.empty() && is_time(tokens.back())) {
    auto r = time_rank(tokens.back());
    tokens.pop_back();
    if (!tokens.empty() && tokens.back() == "this") tokens.pop_back();
    return r;
  }
  return std::nullopt;
}

bool starts_subject(const std::string& word, WordClass c) {
  return word == "the" || c == WordClass::kName || c == WordClass::kPronoun ||
         c == WordClass::kAnimal;
}

std::vector<std::string> resolve_pronoun(const std::string& pronoun, const CorefContext& ctx,
                                         const std::vector<std::string>& tokens) {
  if (pronoun == "they") {
    if (ctx.last_actors.empty()) fail(tokens, "'they' without antecedent");
    return ctx.last_actors;
  }
  if (ctx.last_singleton.empty()) fail(tokens, "'" + pronoun + "' without antecedent");
  return {ctx.last_singleton};
}

const std::string& single(const std::vector<std::string>& actors,
                          const std::vector<std::string>& tokens) {
  if (actors.size() != 1) fail(tokens, "expected a single actor");
  return actors.front();
}

Frame decode_supervised(const std::vector<std::string>& original, const Lexicon& lex,
                        const CorefContext& ctx, std::vector<std::string>& actors_out) {
  auto tokens = original;
  Frame frame;
  frame.time_slot = strip_time(tokens, lex);

  // Discourse connectives ("then", "after that", "following that", ...).
  std::size_t skip = 0;
  while (skip < tokens.size() && !starts_subject(tokens[skip], lex.classify(tokens[skip]))) ++skip;
  tokens.erase(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(skip));
  if (tokens.empty()) fail(original, "no subject");

  Cursor cur(tokens, lex);

  // Subject.
  std::vector<std::string> actors;
  std::string subject;
  bool named_subject = false;
  auto first_class = cur.peek_class();
  if (cur.peek() == "the") {
    subject = cur.noun_phrase();
  } else if (first_class == WordClass::kPronoun) {
    actors = resolve_pronoun(cur.next(), ctx, original);
    named_subject = true;
  } else if (first_class == WordClass::kAnimal) {
    subject = lex.canonical(cur.next());
  } else {
    actors.push_back(cur.name());
    while (cur.accept("and")) actors.push_back(cur.name());
    named_subject = true;
  }
  if (named_subject && actors.size() == 1) subject = actors.front();

  auto verb_class = cur.peek_class();
  if (verb_class == WordClass::kVerbMove) {
    cur.next();
    cur.accept("back");
    cur.expect("to");
    auto place = cur.noun_phrase();
    cur.expect_end();
    if (!named_subject) cur.error("move without actor");
    frame.body = Move{actors, place, std::nullopt};
  } else if (verb_class == WordClass::kVerbTake) {
    cur.next();
    cur.accept("up");
    auto item = cur.noun_phrase();
    cur.accept("there");
    cur.expect_end();
    frame.body = Take{single(actors, original), item};
  } else if (verb_class == WordClass::kVerbDrop) {
    cur.next();
    cur.accept("down");
    auto item = cur.noun_phrase();
    cur.accept("there");
    cur.expect_end();
    frame.body = Drop{single(actors, original), item};
  } else if (verb_class == WordClass::kVerbGive) {
    cur.next();
    auto item = cur.noun_phrase();
    cur.expect("to");
    auto receiver = cur.name();
    cur.expect_end();
    frame.body = Give{single(actors, original), receiver, item};
  } else if (cur.accept("is")) {
    if (subject.empty()) cur.error("'is' needs a single subject");
    if (cur.accept("in")) {
      auto place = cur.noun_phrase();
      cur.expect_end();
      frame.body = Move{{subject}, place, std::nullopt};
    } else if (cur.peek() == "no" || cur.peek() == "not") {
      if (cur.accept("no")) cur.expect("longer");
      else cur.expect("not");
      cur.expect("in");
      auto place = cur.noun_phrase();
      cur.expect_end();
      Frame inner;
      inner.body = Move{{subject}, place, std::nullopt};
      frame.body = Negation{std::make_shared<const Frame>(std::move(inner))};
    } else if (cur.accept("either")) {
      cur.expect("in");
      std::vector<std::string> alts{cur.noun_phrase()};
      while (cur.accept("or")) alts.push_back(cur.noun_phrase());
      cur.expect_end();
      frame.body = Indefinite{subject, alts};
    } else if (cur.accept("a") || cur.accept("an")) {
      if (cur.peek_class() != WordClass::kAnimal) cur.error("expected a species");
      auto species = lex.canonical(cur.next());
      cur.expect_end();
      frame.body = Property{subject, "species", species};
    } else if (cur.peek_class() == WordClass::kColour) {
      auto colour = cur.next();
      cur.expect_end();
      frame.body = Property{subject, "colour", colour};
    } else if (cur.peek_class() == WordClass::kMotive) {
      auto reason = cur.next();
      cur.expect_end();
      frame.body = Motive{subject, reason};
    } else if (cur.peek_class() == WordClass::kDirection) {
      auto dir = cur.next();
      cur.expect("of");
      auto object = cur.noun_phrase();
      cur.expect_end();
      frame.body = Relation{subject, dir, object};
    } else if (cur.accept("to")) {
      cur.expect("the");
      auto side = cur.next();  // left | right
      cur.expect("of");
      auto object = cur.noun_phrase();
      cur.expect_end();
      frame.body = Relation{subject, side, object};
    } else if (cur.peek() == "above" || cur.peek() == "below") {
      auto rel = cur.next();
      auto object = cur.noun_phrase();
      cur.expect_end();
      frame.body = Relation{subject, rel, object};
    } else if (cur.accept("bigger")) {
      cur.expect("than");
      auto object = cur.noun_phrase();
      cur.expect_end();
      frame.body = Relation{subject, "bigger", object};
    } else {
      cur.error("unrecognised 'is' predicate");
    }
  } else if (cur.accept("are")) {
    cur.expect("afraid");
    cur.expect("of");
    if (cur.peek_class() != WordClass::kAnimal) cur.error("expected a species");
    auto object = lex.canonical(cur.next());
    cur.expect_end();
    frame.body = Relation{subject, "afraid", object};
  } else if (cur.accept("fits")) {
    if (!cur.accept("inside")) cur.expect("in");
    auto container = cur.noun_phrase();
    cur.expect_end();
    // A fits in B  ==  B is bigger than A.
    frame.body = Relation{container, "bigger", subject};
  } else {
    cur.error("no predicate at '" + cur.peek() + "'");
  }

  if (named_subject) actors_out = actors;
  return frame;
}

// Weak mode: primitives plus positions only. The lexicon is not consulted.
Frame decode_weak(const std::vector<std::string>& tokens, std::vector<std::string>& actors_out) {
  auto find = [&](std::string_view w, std::size_t from = 0) -> std::size_t {
    for (std::size_t i = from; i < tokens.size(); ++i) {
      if (tokens[i] == w) return i;
    }
    return tokens.size();
  };
  auto span = [&](std::size_t b, std::size_t e) {
    std::vector<std::string> words(tokens.begin() + static_cast<std::ptrdiff_t>(b),
                                   tokens.begin() + static_cast<std::ptrdiff_t>(e));
    if (words.empty()) fail(tokens, "empty slot");
    return join(words, "_");
  };

  Frame frame;
  const auto n = tokens.size();
  // the X is R of the Y
  if (n >= 7 && tokens[0] == "the") {
    auto is = find("is", 1);
    auto of = find("of", is);
    if (is < n && of + 1 < n && tokens[of + 1] == "the" && of > is + 1) {
      frame.body = Relation{span(1, is), span(is + 1, of), span(of + 2, n)};
      return frame;
    }
  }
  // A (and B)* <verb> [back] to the P
  auto to = find("to");
  if (to + 2 < n && tokens[to + 1] == "the" && to >= 2) {
    std::vector<std::string> actors{tokens[0]};
    std::size_t i = 1;
    while (i + 1 < to && tokens[i] == "and") {
      actors.push_back(tokens[i + 1]);
      i += 2;
    }
    if (i < to) {
      frame.body = Move{actors, span(to + 2, n), std::nullopt};
      actors_out = actors;
      return frame;
    }
  }
  fail(tokens, "no positional pattern matches");
}

}  // namespace

bool is_pronoun(const std::string& word) {
  return word == "he" || word == "she" || word == "it" || word == "they";
}

Frame decode_statement(const std::vector<std::string>& tokens, const Lexicon& lex,
                       CorefContext& ctx) {
  if (tokens.empty()) throw DecodeError("empty statement");
  std::vector<std::string> actors;
  Frame frame = lex.mode() == Mode::kWeak ? decode_weak(tokens, actors)
                                          : decode_supervised(tokens, lex, ctx, actors);
  frame.event_index = ++ctx.event_counter;
  if (!actors.empty()) {
    ctx.last_actors = actors;
    if (actors.size() == 1) ctx.last_singleton = actors.front();
  }
  return frame;
}

namespace {

QueryFrame question_weak(const std::vector<std::string>& tokens) {
  // ... from the A to the B
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i] != "from" || tokens[i + 1] != "the") continue;
    for (std::size_t j = i + 2; j + 1 < tokens.size(); ++j) {
      if (tokens[j] == "to" && tokens[j + 1] == "the" && j > i + 2 && j + 2 < tokens.size()) {
        std::vector<std::string> a(tokens.begin() + static_cast<std::ptrdiff_t>(i + 2),
                                   tokens.begin() + static_cast<std::ptrdiff_t>(j));
        std::vector<std::string> b(tokens.begin() + static_cast<std::ptrdiff_t>(j + 2),
                                   tokens.end());
        return PathQuery{join(a, "_"), join(b, "_")};
      }
    }
  }
  fail(tokens, "no positional question pattern matches");
}

QueryFrame question_supervised(const std::vector<std::string>& tokens, const Lexicon& lex) {
  Cursor cur(tokens, lex);
  auto wh = cur.next();
  if (wh == "where") {
    if (cur.accept("is")) {
      auto e = cur.entity();
      cur.expect_end();
      return WhereEntity{e};
    }
    if (cur.accept("was")) {
      auto e = cur.entity();
      cur.expect("before");
      auto place = cur.noun_phrase();
      cur.expect_end();
      return WhereHistorical{e, place};
    }
    if (cur.accept("will")) {
      auto e = cur.name();
      cur.expect("go");
      cur.expect_end();
      return PropertyQ{e, "goal"};
    }
  } else if (wh == "what") {
    if (cur.accept("is")) {
      if (cur.peek_class() == WordClass::kDirection) {
        auto dir = cur.next();
        cur.expect("of");
        auto anchor = cur.noun_phrase();
        cur.expect_end();
        return WhatRelation{dir, anchor, true};
      }
      if (cur.peek() == "the") {
        auto anchor = cur.noun_phrase();
        if (cur.peek_class() != WordClass::kDirection) cur.error("expected a direction");
        auto dir = cur.next();
        cur.expect("of");
        cur.expect_end();
        return WhatRelation{dir, anchor, false};
      }
      auto e = cur.name();
      if (cur.accept("carrying")) {
        cur.expect_end();
        return ListHeld{e};
      }
      cur.expect("afraid");
      cur.expect("of");
      cur.expect_end();
      return DeduceQ{e};
    }
    if (cur.accept("did")) {
      auto giver = cur.name();
      cur.expect("give");
      cur.expect("to");
      auto receiver = cur.name();
      cur.expect_end();
      return GiveQuery{giver, receiver, std::nullopt, GiveSlot::kItem};
    }
    if (cur.accept("color") || cur.accept("colour")) {
      cur.expect("is");
      auto e = cur.name();
      cur.expect_end();
      return InductionQ{e, "colour"};
    }
  } else if (wh == "who") {
    if (cur.accept("gave")) {
      auto item = cur.noun_phrase();
      std::optional<std::string> receiver;
      if (cur.accept("to")) receiver = cur.name();
      cur.expect_end();
      return GiveQuery{std::nullopt, receiver, item, GiveSlot::kGiver};
    }
    if (cur.accept("received")) {
      auto item = cur.noun_phrase();
      cur.expect_end();
      return GiveQuery{std::nullopt, std::nullopt, item, GiveSlot::kReceiver};
    }
    if (cur.accept("did")) {
      auto giver = cur.name();
      cur.expect("give");
      auto item = cur.noun_phrase();
      cur.expect("to");
      cur.expect_end();
      return GiveQuery{giver, std::nullopt, item, GiveSlot::kReceiver};
    }
  } else if (wh == "is") {
    auto subject = cur.entity();
    if (cur.accept("in")) {
      auto place = cur.noun_phrase();
      cur.expect_end();
      return YesNo{subject, "in", place};
    }
    if (cur.accept("to")) {
      cur.expect("the");
      auto side = cur.next();
      cur.expect("of");
      auto object = cur.noun_phrase();
      cur.expect_end();
      return YesNo{subject, side, object};
    }
    if (cur.peek() == "above" || cur.peek() == "below") {
      auto rel = cur.next();
      auto object = cur.noun_phrase();
      cur.expect_end();
      return YesNo{subject, rel, object};
    }
    if (cur.accept("bigger")) {
      cur.expect("than");
      auto object = cur.noun_phrase();
      cur.expect_end();
      return YesNo{subject, "bigger", object};
    }
  } else if (wh == "does") {
    auto subject = cur.noun_phrase();
    cur.expect("fit");
    if (!cur.accept("inside")) cur.expect("in");
    auto container = cur.noun_phrase();
    cur.expect_end();
    return YesNo{container, "bigger", subject};
  } else if (wh == "how") {
    if (cur.accept("many")) {
      cur.expect("objects");
      cur.expect("is");
      auto e = cur.name();
      cur.expect("carrying");
      cur.expect_end();
      return Count{e};
    }
    if (cur.accept("do")) {
      cur.expect("you");
      cur.expect("go");
      cur.expect("from");
      auto from = cur.noun_phrase();
      cur.expect("to");
      auto to = cur.noun_phrase();
      cur.expect_end();
      return PathQuery{from, to};
    }
  } else if (wh == "why") {
    cur.expect("did");
    auto actor = cur.name();
    if (cur.accept("go")) {
      cur.expect("to");
      auto place = cur.noun_phrase();
      cur.expect_end();
      return WhyQ{actor, place};
    }
    cur.expect("get");
    auto item = cur.noun_phrase();
    cur.expect_end();
    return WhyQ{actor, item};
  }
  fail(tokens, "unrecognised question form");
}

}  // namespace

QueryFrame decode_question(const std::vector<std::string>& tokens, const Lexicon& lex,
                           const CorefContext& /*ctx*/) {
  if (tokens.empty()) throw DecodeError("empty question");
  return lex.mode() == Mode::kWeak ? question_weak(tokens) : question_supervised(tokens, lex);
}

// ---- describe -------------------------------------------------------------

namespace {

struct FrameDescriber {
  std::string operator()(const Move& m) const {
    return "Move{" + join(m.actors, ",") + " -> " + m.destination + "}";
  }
  std::string operator()(const Take& t) const { return "Take{" + t.actor + ", " + t.item + "}"; }
  std::string operator()(const Drop& d) const { return "Drop{" + d.actor + ", " + d.item + "}"; }
  std::string operator()(const Give& g) const {
    return "Give{" + g.giver + " -> " + g.receiver + ", " + g.item + "}";
  }
  std::string operator()(const Relation& r) const {
    return "Relation{" + r.subject + " " + r.attribute + " " + r.object + "}";
  }
  std::string operator()(const Property& p) const {
    return "Property{" + p.entity + " " + p.kind + "=" + p.value + "}";
  }
  std::string operator()(const Negation& n) const {
    return "Negation{" + (n.inner ? describe(*n.inner) : std::string("?")) + "}";
  }
  std::string operator()(const Indefinite& i) const {
    return "Indefinite{" + i.actor + " in " + join(i.alternatives, "|") + "}";
  }
  std::string operator()(const Motive& m) const {
    return "Motive{" + m.actor + " " + m.reason + "}";
  }
};

struct QueryDescriber {
  std::string operator()(const WhereEntity& q) const { return "WhereEntity{" + q.entity + "}"; }
  std::string operator()(const WhereHistorical& q) const {
    return "WhereHistorical{" + q.entity + " before " + q.before + "}";
  }
  std::string operator()(const WhatRelation& q) const {
    return "WhatRelation{" + q.relation + (q.anchor_is_object ? " of " : " from ") + q.anchor + "}";
  }
  std::string operator()(const GiveQuery& q) const {
    static const char* slots[] = {"giver", "receiver", "item"};
    return std::string("GiveQuery{") + slots[static_cast<int>(q.asked)] + " giver=" +
           q.giver.value_or("?") + " receiver=" + q.receiver.value_or("?") +
           " item=" + q.item.value_or("?") + "}";
  }
  std::string operator()(const YesNo& q) const {
    return "YesNo{" + q.subject + " " + q.relation + " " + q.object + "}";
  }
  std::string operator()(const Count& q) const { return "Count{" + q.actor + "}"; }
  std::string operator()(const ListHeld& q) const { return "ListHeld{" + q.actor + "}"; }
  std::string operator()(const PathQuery& q) const {
    return "PathQuery{" + q.from + " -> " + q.to + "}";
  }
  std::string operator()(const PropertyQ& q) const {
    return "PropertyQ{" + q.entity + " " + q.kind + "}";
  }
  std::string operator()(const WhyQ& q) const { return "WhyQ{" + q.actor + " " + q.context + "}"; }
  std::string operator()(const InductionQ& q) const {
    return "InductionQ{" + q.entity + " " + q.kind + "}";
  }
  std::string operator()(const DeduceQ& q) const { return "DeduceQ{" + q.entity + "}"; }
};

}  // namespace

std::string describe(const Frame& frame) {
  auto s = std::visit(FrameDescriber{}, frame.body);
  s += "@" + std::to_string(frame.event_index);
  if (frame.time_slot) s += " t" + std::to_string(*frame.time_slot);
  return s;
}

std::string describe(const QueryFrame& query) { return std::visit(QueryDescriber{}, query); }

}  // namespace dani
