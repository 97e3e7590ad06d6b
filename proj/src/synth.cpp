#include "dani/synth.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "dani/errors.hpp"

namespace dani {

namespace {

using Strings = std::vector<std::string>;

// mt19937_64 is specified bit-exactly; the modulo mapping keeps draws
// portable across standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, int task, Split split) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(split)};
    gen_.seed(seq);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool coin(double p = 0.5) { return static_cast<double>(gen_() % 1000000) < p * 1e6; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

class StoryBuilder {
 public:
  int say(const std::string& sentence) {
    lines_.push_back(sentence);
    return static_cast<int>(lines_.size());
  }
  void ask(const std::string& question, const std::string& answer, std::vector<int> supports) {
    std::string s = question + "\t" + answer + "\t";
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    for (std::size_t i = 0; i < supports.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(supports[i]);
    }
    lines_.push_back(s);
    ++questions_;
  }
  std::size_t questions() const { return questions_; }
  const Strings& lines() const { return lines_; }

 private:
  Strings lines_;
  std::size_t questions_ = 0;
};

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string capital(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

const Strings kPeople{"Mary", "John", "Sandra", "Daniel"};
const Strings kRooms{"bathroom", "hallway", "garden", "office", "kitchen", "bedroom"};
const Strings kItems{"football", "apple", "milk"};
const Strings kMoveVerbs{"moved to", "went to", "journeyed to", "travelled to", "went back to"};
const Strings kTakeVerbs{"picked up", "got", "grabbed", "took"};
const Strings kDropVerbs{"dropped", "discarded", "put down", "left"};
const Strings kGiveVerbs{"gave", "passed", "handed"};
const Strings kConnectives{"Then", "After that", "Following that", "Afterwards"};

std::string move_sentence(Rng& rng, const std::string& who, const std::string& place) {
  return who + " " + rng.pick(kMoveVerbs) + " the " + place + ".";
}

std::string other_than(Rng& rng, const Strings& pool, const std::string& avoid) {
  while (true) {
    const auto& p = rng.pick(pool);
    if (p != avoid) return p;
  }
}

// ---- actors, places and carried items -------------------------------------

struct ObjectWorld {
  std::map<std::string, std::string> at;
  std::map<std::string, int> at_line;
  std::map<std::string, std::string> holder;
  std::map<std::string, std::string> dropped_at;
  std::map<std::string, int> item_line;
  std::map<std::string, Strings> held;
  std::map<std::string, Strings> trail;  // distinct consecutive places of each item
  struct GiveEvent {
    std::string giver, receiver, item;
    int line;
  };
  std::vector<GiveEvent> gives;

  void settle(const std::string& item, const std::string& place) {
    auto& t = trail[item];
    if (t.empty() || t.back() != place) t.push_back(place);
  }

  std::optional<std::string> item_place(const std::string& item) const {
    if (auto h = holder.find(item); h != holder.end()) {
      if (auto a = at.find(h->second); a != at.end()) return a->second;
      return std::nullopt;
    }
    if (auto d = dropped_at.find(item); d != dropped_at.end()) return d->second;
    return std::nullopt;
  }

  void move(StoryBuilder& sb, Rng& rng, const std::string& who, const std::string& place) {
    at_line[who] = sb.say(move_sentence(rng, who, place));
    at[who] = place;
    for (const auto& item : held[who]) settle(item, place);
  }

  bool can_take(const std::string& who, const std::string& item) const {
    if (!at.count(who) || holder.count(item)) return false;
    auto d = dropped_at.find(item);
    return d == dropped_at.end() || d->second == at.at(who);
  }

  void take(StoryBuilder& sb, Rng& rng, const std::string& who, const std::string& item) {
    item_line[item] =
        sb.say(who + " " + rng.pick(kTakeVerbs) + " the " + item + (rng.coin(0.3) ? " there." : "."));
    holder[item] = who;
    dropped_at.erase(item);
    held[who].push_back(item);
    settle(item, at[who]);
  }

  void drop(StoryBuilder& sb, Rng& rng, const std::string& who, std::string item) {
    item_line[item] = sb.say(who + " " + rng.pick(kDropVerbs) + " the " + item + ".");
    holder.erase(item);
    dropped_at[item] = at[who];
    auto& h = held[who];
    h.erase(std::find(h.begin(), h.end(), item));
  }

  void give(StoryBuilder& sb, Rng& rng, const std::string& giver, const std::string& receiver,
            std::string item) {
    int line = sb.say(giver + " " + rng.pick(kGiveVerbs) + " the " + item + " to " + receiver + ".");
    item_line[item] = line;
    holder[item] = receiver;
    auto& h = held[giver];
    h.erase(std::find(h.begin(), h.end(), item));
    held[receiver].push_back(item);
    gives.push_back({giver, receiver, item, line});
  }

  // One random action; `give_rate` 0 disables transfers.
  void step(StoryBuilder& sb, Rng& rng, const Strings& people, const Strings& places,
            double give_rate) {
    const auto& who = rng.pick(people);
    const double r = static_cast<double>(rng.below(1000)) / 1000.0;
    if (r < give_rate && !held[who].empty() && at.count(who)) {
      auto receiver = other_than(rng, people, who);
      if (!at.count(receiver) || at[receiver] != at[who]) move(sb, rng, receiver, at[who]);
      give(sb, rng, who, receiver, rng.pick(held[who]));
      return;
    }
    if (r < give_rate + 0.25 && at.count(who)) {
      Strings options;
      for (const auto& i : kItems) {
        if (can_take(who, i)) options.push_back(i);
      }
      if (!options.empty()) {
        take(sb, rng, who, rng.pick(options));
        return;
      }
    }
    if (r < give_rate + 0.4 && !held[who].empty()) {
      drop(sb, rng, who, rng.pick(held[who]));
      return;
    }
    move(sb, rng, who, other_than(rng, places, at.count(who) ? at[who] : std::string()));
  }
};

// ---- per-task generators ----------------------------------------------------

void task_single_fact(Rng& rng, StoryBuilder& sb) {
  ObjectWorld w;
  for (int q = 0; q < 5; ++q) {
    for (int k = 0; k < 2; ++k) {
      const auto& who = rng.pick(kPeople);
      w.move(sb, rng, who, other_than(rng, kRooms, w.at.count(who) ? w.at[who] : ""));
    }
    Strings known;
    for (const auto& [who, _] : w.at) known.push_back(who);
    const auto& who = rng.pick(known);
    sb.ask("Where is " + who + "?", w.at[who], {w.at_line[who]});
  }
}

void task_item_location(Rng& rng, StoryBuilder& sb) {
  ObjectWorld w;
  int steps = 0;
  while (sb.questions() < 5 && steps < 80) {
    w.step(sb, rng, kPeople, kRooms, 0.0);
    ++steps;
    if (steps % 3 != 0) continue;
    Strings located;
    for (const auto& i : kItems) {
      if (w.item_place(i)) located.push_back(i);
    }
    if (located.empty()) continue;
    const auto& item = rng.pick(located);
    std::vector<int> sup{w.item_line[item]};
    if (w.holder.count(item)) sup.push_back(w.at_line[w.holder[item]]);
    sb.ask("Where is the " + item + "?", *w.item_place(item), sup);
  }
}

void task_item_history(Rng& rng, StoryBuilder& sb) {
  ObjectWorld w;
  int steps = 0;
  while (sb.questions() < 5 && steps < 120) {
    w.step(sb, rng, kPeople, kRooms, 0.0);
    ++steps;
    if (steps % 4 != 0) continue;
    Strings ready;
    for (const auto& i : kItems) {
      auto place = w.item_place(i);
      if (place && w.trail[i].size() >= 2 && w.trail[i].back() == *place) ready.push_back(i);
    }
    if (ready.empty()) continue;
    const auto& item = rng.pick(ready);
    const auto& t = w.trail[item];
    sb.ask("Where was the " + item + " before the " + t.back() + "?", t[t.size() - 2],
           {w.item_line[item]});
  }
}

const Strings kCompass{"north", "south", "east", "west"};

std::string inverse_of(const std::string& d) {
  static const std::map<std::string, std::string> inv{
      {"north", "south"}, {"south", "north"}, {"east", "west"},  {"west", "east"},
      {"left", "right"},  {"right", "left"},  {"above", "below"}, {"below", "above"}};
  return inv.at(d);
}

void task_two_arg(Rng& rng, StoryBuilder& sb) {
  Strings rooms = kRooms;
  rng.shuffle(rooms);
  const auto& a = rooms[0];
  const auto& b = rooms[1];
  const auto& c = rooms[2];
  auto d1 = rng.pick(kCompass);
  std::string d2;
  do d2 = rng.pick(kCompass);
  while (d2 == inverse_of(d1));
  struct Fact {
    std::string s, r, o;
    int line;
  };
  std::vector<Fact> facts;
  facts.push_back({a, d1, b, sb.say("The " + a + " is " + d1 + " of the " + b + ".")});
  facts.push_back({c, d2, a, sb.say("The " + c + " is " + d2 + " of the " + a + ".")});
  const auto& f = rng.pick(facts);
  switch (rng.below(4)) {
    case 0: sb.ask("What is " + f.r + " of the " + f.o + "?", f.s, {f.line}); break;
    case 1: sb.ask("What is the " + f.s + " " + f.r + " of?", f.o, {f.line}); break;
    case 2: sb.ask("What is " + inverse_of(f.r) + " of the " + f.s + "?", f.o, {f.line}); break;
    default: sb.ask("What is the " + f.o + " " + inverse_of(f.r) + " of?", f.s, {f.line}); break;
  }
}

void task_three_arg(Rng& rng, StoryBuilder& sb) {
  static const Strings people{"Fred", "Bill", "Jeff", "Mary"};
  ObjectWorld w;
  int steps = 0;
  std::size_t seen_gives = 0;
  while (sb.questions() < 5 && steps < 80) {
    w.step(sb, rng, people, kRooms, 0.35);
    ++steps;
    if (w.gives.size() == seen_gives || !rng.coin(0.7)) continue;
    seen_gives = w.gives.size();
    const auto g = w.gives.back();
    const auto item = "the " + g.item;
    switch (rng.below(5)) {
      case 0: sb.ask("Who gave " + item + "?", lower(g.giver), {g.line}); break;
      case 1:
        sb.ask("Who gave " + item + " to " + g.receiver + "?", lower(g.giver), {g.line});
        break;
      case 2:
        sb.ask("What did " + g.giver + " give to " + g.receiver + "?", g.item, {g.line});
        break;
      case 3:
        sb.ask("Who did " + g.giver + " give " + item + " to?", lower(g.receiver), {g.line});
        break;
      default: sb.ask("Who received " + item + "?", lower(g.receiver), {g.line}); break;
    }
  }
}

void task_yes_no(Rng& rng, StoryBuilder& sb) {
  ObjectWorld w;
  for (int q = 0; q < 5; ++q) {
    for (int k = 0; k < 2; ++k) {
      const auto& who = rng.pick(kPeople);
      w.move(sb, rng, who, other_than(rng, kRooms, w.at.count(who) ? w.at[who] : ""));
    }
    Strings known;
    for (const auto& [who, _] : w.at) known.push_back(who);
    const auto& who = rng.pick(known);
    const bool yes = rng.coin();
    const auto place = yes ? w.at[who] : other_than(rng, kRooms, w.at[who]);
    sb.ask("Is " + who + " in the " + place + "?", yes ? "yes" : "no", {w.at_line[who]});
  }
}

std::string number_name(std::size_t n) {
  static const std::array<const char*, 4> kWords{"none", "one", "two", "three"};
  return kWords.at(n);
}

void task_holdings(Rng& rng, StoryBuilder& sb, bool as_list) {
  ObjectWorld w;
  int steps = 0;
  while (sb.questions() < 5 && steps < 60) {
    w.step(sb, rng, kPeople, kRooms, 0.15);
    ++steps;
    if (steps % 3 != 0) continue;
    Strings candidates;
    for (const auto& p : kPeople) {
      if (w.at.count(p)) candidates.push_back(p);
    }
    if (candidates.empty()) continue;
    const auto& who = rng.pick(candidates);
    const auto& held = w.held[who];
    std::vector<int> sup;
    for (const auto& i : held) sup.push_back(w.item_line[i]);
    if (as_list) {
      std::string ans;
      for (const auto& i : held) ans += (ans.empty() ? "" : ",") + i;
      sb.ask("What is " + who + " carrying?", held.empty() ? "nothing" : ans, sup);
    } else {
      sb.ask("How many objects is " + who + " carrying?", number_name(held.size()), sup);
    }
  }
}

struct Belief {
  enum Kind { kAt, kNotAt, kEither } kind = kAt;
  Strings places;
  int line = 0;
};

void task_negation(Rng& rng, StoryBuilder& sb, bool indefinite) {
  std::map<std::string, Belief> state;
  for (int q = 0; q < 5; ++q) {
    for (int k = 0; k < 2; ++k) {
      const auto& who = rng.pick(kPeople);
      Belief b;
      const std::size_t form = rng.below(indefinite ? 3 : 4);
      if (form == 0) {
        b.places = {rng.pick(kRooms)};
        b.line = sb.say(move_sentence(rng, who, b.places[0]));
      } else if (form == 1) {
        b.places = {rng.pick(kRooms)};
        b.line = sb.say(who + " is in the " + b.places[0] + ".");
      } else if (indefinite) {
        Strings rooms = kRooms;
        rng.shuffle(rooms);
        b.kind = Belief::kEither;
        b.places = {rooms[0], rooms[1]};
        b.line = sb.say(who + " is either in the " + rooms[0] + " or the " + rooms[1] + ".");
      } else {
        auto it = state.find(who);
        b.kind = Belief::kNotAt;
        if (form == 2 && it != state.end() && it->second.kind == Belief::kAt) {
          b.places = it->second.places;
          b.line = sb.say(who + " is no longer in the " + b.places[0] + ".");
        } else {
          b.places = {rng.pick(kRooms)};
          b.line = sb.say(who + " is not in the " + b.places[0] + ".");
        }
      }
      state[who] = b;
    }
    Strings known;
    for (const auto& [who, _] : state) known.push_back(who);
    const auto& who = rng.pick(known);
    const auto& b = state[who];
    std::string place;
    std::string answer;
    switch (b.kind) {
      case Belief::kAt:
        place = rng.coin() ? b.places[0] : other_than(rng, kRooms, b.places[0]);
        answer = place == b.places[0] ? "yes" : "no";
        break;
      case Belief::kNotAt:
        place = b.places[0];
        answer = "no";
        break;
      case Belief::kEither:
        if (rng.coin()) {
          place = rng.pick(b.places);
          answer = "maybe";
        } else {
          do place = rng.pick(kRooms);
          while (place == b.places[0] || place == b.places[1]);
          answer = "no";
        }
        break;
    }
    sb.ask("Is " + who + " in the " + place + "?", answer, {b.line});
  }
}

void task_coreference(Rng& rng, StoryBuilder& sb) {
  static const std::map<std::string, std::string> pronoun{
      {"Mary", "she"}, {"Sandra", "she"}, {"John", "he"}, {"Daniel", "he"}};
  std::map<std::string, std::string> at;
  std::map<std::string, int> line_of;
  std::string last;
  for (int q = 0; q < 5; ++q) {
    for (int k = 0; k < 2; ++k) {
      std::string who;
      std::string sentence;
      if (!last.empty() && rng.coin(0.5)) {
        who = last;
        auto place = other_than(rng, kRooms, at[who]);
        sentence = rng.pick(kConnectives) + " " + pronoun.at(who) + " " + rng.pick(kMoveVerbs) +
                   " the " + place + ".";
        at[who] = place;
      } else {
        who = rng.pick(kPeople);
        at[who] = other_than(rng, kRooms, at.count(who) ? at[who] : "");
        sentence = move_sentence(rng, who, at[who]);
      }
      line_of[who] = sb.say(sentence);
      last = who;
    }
    Strings known;
    for (const auto& [who, _] : at) known.push_back(who);
    const auto& who = rng.pick(known);
    sb.ask("Where is " + who + "?", at[who], {line_of[who]});
  }
}

void task_conjunction(Rng& rng, StoryBuilder& sb, bool with_they) {
  std::map<std::string, std::string> at;
  std::map<std::string, int> line_of;
  Strings last_group;
  for (int q = 0; q < 5; ++q) {
    for (int k = 0; k < 2; ++k) {
      Strings group;
      std::string sentence;
      const auto place = rng.pick(kRooms);
      if (with_they && last_group.size() == 2 && rng.coin(0.5)) {
        group = last_group;
        sentence = rng.pick(kConnectives) + " they " + rng.pick(kMoveVerbs) + " the " + place + ".";
      } else if (rng.coin(with_they ? 0.7 : 0.5)) {
        Strings people = kPeople;
        rng.shuffle(people);
        group = {people[0], people[1]};
        sentence = group[0] + " and " + group[1] + " " + rng.pick(kMoveVerbs) + " the " + place + ".";
      } else {
        group = {rng.pick(kPeople)};
        sentence = move_sentence(rng, group[0], place);
      }
      const int line = sb.say(sentence);
      for (const auto& who : group) {
        at[who] = place;
        line_of[who] = line;
      }
      last_group = group;
    }
    Strings known;
    for (const auto& [who, _] : at) known.push_back(who);
    const auto& who = rng.pick(known);
    sb.ask("Where is " + who + "?", at[who], {line_of[who]});
  }
}

void task_time(Rng& rng, StoryBuilder& sb) {
  static const Strings people{"Bill", "Fred", "Julie", "Mary"};
  static const Strings places{"school", "park", "office", "kitchen", "bedroom", "cinema"};
  static const std::array<const char*, 4> kLead{"Yesterday", "This morning", "This afternoon",
                                                "This evening"};
  static const std::array<const char*, 4> kTail{"yesterday", "this morning", "this afternoon",
                                                "this evening"};
  struct Fact {
    std::string who, place;
    int slot;
  };
  std::vector<Fact> facts;
  std::map<std::string, Strings> timeline;
  Strings cast = people;
  rng.shuffle(cast);
  cast.resize(2 + rng.below(2));
  for (const auto& who : cast) {
    Strings pool = places;
    rng.shuffle(pool);
    const std::size_t slots = 2 + rng.below(3);
    for (std::size_t s = 0; s < slots; ++s) {
      facts.push_back({who, pool[s], static_cast<int>(s)});
      timeline[who].push_back(pool[s]);
    }
  }
  rng.shuffle(facts);
  std::map<std::pair<std::string, int>, int> line_of;
  for (const auto& f : facts) {
    std::string sentence;
    if (rng.coin()) {
      sentence = std::string(kLead[f.slot]) + " " + f.who + " " + rng.pick(kMoveVerbs) + " the " +
                 f.place + ".";
    } else {
      sentence = f.who + " " + rng.pick(kMoveVerbs) + " the " + f.place + " " + kTail[f.slot] + ".";
    }
    line_of[{f.who, f.slot}] = sb.say(sentence);
  }
  for (int q = 0; q < 2; ++q) {
    const auto& who = rng.pick(cast);
    const auto& t = timeline[who];
    const int k = 1 + static_cast<int>(rng.below(t.size() - 1));
    sb.ask("Where was " + who + " before the " + t[k] + "?", t[k - 1],
           {line_of[{who, k}], line_of[{who, k - 1}]});
  }
}

void task_deduction(Rng& rng, StoryBuilder& sb) {
  struct Species {
    std::string singular, plural;
  };
  static const std::vector<Species> species{
      {"mouse", "Mice"}, {"sheep", "Sheep"}, {"wolf", "Wolves"}, {"cat", "Cats"}};
  static const Strings people{"Gertrude", "Winona", "Jessica", "Emily"};
  std::vector<std::size_t> fears(species.size());
  for (std::size_t s = 0; s < species.size(); ++s) {
    do fears[s] = rng.below(species.size());
    while (fears[s] == s);
  }
  std::map<std::string, std::size_t> kind;
  for (const auto& p : people) kind[p] = rng.below(species.size());
  std::vector<std::function<int()>> emit;
  std::map<std::size_t, int> fear_line;
  std::map<std::string, int> kind_line;
  for (std::size_t s = 0; s < species.size(); ++s) {
    emit.push_back([&, s] {
      std::string obj = lower(species[fears[s]].plural);
      return fear_line[s] = sb.say(species[s].plural + " are afraid of " + obj + ".");
    });
  }
  for (const auto& p : people) {
    emit.push_back([&, p] {
      const auto& sp = species[kind[p]].singular;
      return kind_line[p] = sb.say(p + " is a " + sp + ".");
    });
  }
  rng.shuffle(emit);
  for (auto& e : emit) e();
  Strings asked = people;
  rng.shuffle(asked);
  for (int q = 0; q < 3; ++q) {
    const auto& p = asked[q];
    sb.ask("What is " + p + " afraid of?", species[fears[kind[p]]].singular,
           {kind_line[p], fear_line[kind[p]]});
  }
}

void task_induction(Rng& rng, StoryBuilder& sb) {
  static const Strings names{"Lily", "Bernhard", "Greg", "Julius", "Brian"};
  static const Strings animals{"swan", "lion", "frog", "rhino"};
  static const Strings colours{"white", "yellow", "gray", "green"};
  Strings cast = names;
  rng.shuffle(cast);
  std::map<std::string, std::string> colour_of;
  std::map<std::string, int> colour_line;
  Strings used;
  for (int i = 0; i < 4; ++i) {
    const auto& sp = rng.pick(animals);
    if (!colour_of.count(sp)) colour_of[sp] = rng.pick(colours);
    used.push_back(sp);
    if (rng.coin()) {
      sb.say(cast[i] + " is a " + sp + ".");
      colour_line[sp] = sb.say(cast[i] + " is " + colour_of[sp] + ".");
    } else {
      colour_line[sp] = sb.say(cast[i] + " is " + colour_of[sp] + ".");
      sb.say(cast[i] + " is a " + sp + ".");
    }
  }
  const auto& sp = rng.pick(used);
  const int line = sb.say(cast[4] + " is a " + sp + ".");
  sb.ask("What color is " + cast[4] + "?", colour_of[sp], {line, colour_line[sp]});
}

void task_positional(Rng& rng, StoryBuilder& sb) {
  static const Strings shapes{"triangle",   "red square", "blue square",
                              "pink rectangle", "red sphere", "yellow square"};
  static const Strings relations{"above", "below", "left", "right"};
  auto offset = [](const std::string& r) -> std::pair<int, int> {
    if (r == "above") return {0, 1};
    if (r == "below") return {0, -1};
    if (r == "left") return {-1, 0};
    return {1, 0};
  };
  auto phrase = [](const std::string& r) {
    return (r == "left" || r == "right") ? "to the " + r + " of" : r;
  };
  Strings cast = shapes;
  rng.shuffle(cast);
  cast.resize(3);
  std::map<std::string, std::pair<int, int>> pos;
  pos[cast[1]] = {0, 0};
  const auto r1 = rng.pick(relations);
  pos[cast[0]] = offset(r1);
  const auto& anchor = cast[rng.below(2)];
  const auto r2 = rng.pick(relations);
  const auto o2 = offset(r2);
  pos[cast[2]] = {pos[anchor].first + o2.first, pos[anchor].second + o2.second};
  const int l1 = sb.say("The " + cast[0] + " is " + phrase(r1) + " the " + cast[1] + ".");
  const int l2 = sb.say("The " + cast[2] + " is " + phrase(r2) + " the " + anchor + ".");
  for (int q = 0; q < 8; ++q) {
    const auto& s = cast[rng.below(3)];
    std::string o;
    do o = cast[rng.below(3)];
    while (o == s);
    const auto& r = rng.pick(relations);
    const int dx = pos[s].first - pos[o].first;
    const int dy = pos[s].second - pos[o].second;
    const auto want = offset(r);
    const bool yes = (want.first != 0 && dx * want.first > 0) ||
                     (want.second != 0 && dy * want.second > 0);
    sb.ask("Is the " + s + " " + phrase(r) + " the " + o + "?", yes ? "yes" : "no", {l1, l2});
  }
}

void task_size(Rng& rng, StoryBuilder& sb) {
  static const Strings objects{"box",       "box of chocolates", "chocolate", "chest",
                               "container", "football",          "suitcase"};
  Strings cast = objects;
  rng.shuffle(cast);
  cast.resize(4 + rng.below(2));
  // cast[i] is bigger than cast[j] iff i < j.
  std::vector<std::pair<std::size_t, std::size_t>> facts;
  for (std::size_t i = 0; i + 1 < cast.size(); ++i) facts.push_back({i, i + 1});
  rng.shuffle(facts);
  std::map<std::pair<std::size_t, std::size_t>, int> line_of;
  for (const auto& [big, small] : facts) {
    std::string s;
    if (rng.coin()) {
      s = "The " + cast[big] + " is bigger than the " + cast[small] + ".";
    } else {
      s = "The " + cast[small] + (rng.coin() ? " fits inside the " : " fits in the ") + cast[big] +
          ".";
    }
    line_of[{big, small}] = sb.say(capital(s));
  }
  for (int q = 0; q < 2; ++q) {
    std::size_t x = rng.below(cast.size());
    std::size_t y;
    do y = rng.below(cast.size());
    while (y == x);
    std::vector<int> sup;
    for (std::size_t k = std::min(x, y); k < std::max(x, y); ++k) sup.push_back(line_of[{k, k + 1}]);
    if (rng.coin()) {
      sb.ask("Is the " + cast[x] + " bigger than the " + cast[y] + "?", x < y ? "yes" : "no", sup);
    } else {
      sb.ask("Does the " + cast[x] + " fit in the " + cast[y] + "?", y < x ? "yes" : "no", sup);
    }
  }
}

void task_path(Rng& rng, StoryBuilder& sb) {
  static const std::map<std::string, std::pair<int, int>> step{
      {"north", {0, 1}}, {"south", {0, -1}}, {"east", {1, 0}}, {"west", {-1, 0}}};
  Strings rooms = kRooms;
  rng.shuffle(rooms);
  std::map<std::string, std::pair<int, int>> cell;
  std::set<std::pair<int, int>> taken;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> adj;  // room -> (next, dir)
  struct Fact {
    std::string text;
  };
  std::vector<Fact> facts;
  cell[rooms[0]] = {0, 0};
  taken.insert({0, 0});
  for (std::size_t i = 1; i < rooms.size(); ++i) {
    while (true) {
      const auto& base = rooms[rng.below(i)];
      const auto& dir = rng.pick(kCompass);
      const auto d = step.at(dir);
      std::pair<int, int> c{cell[base].first + d.first, cell[base].second + d.second};
      if (taken.count(c)) continue;
      cell[rooms[i]] = c;
      taken.insert(c);
      adj[base].push_back({rooms[i], dir});
      adj[rooms[i]].push_back({base, inverse_of(dir)});
      // rooms[i] is `dir` of base.
      facts.push_back({rng.coin() ? "The " + rooms[i] + " is " + dir + " of the " + base + "."
                                  : "The " + base + " is " + inverse_of(dir) + " of the " +
                                        rooms[i] + "."});
      break;
    }
  }
  rng.shuffle(facts);
  std::vector<int> lines;
  for (const auto& f : facts) lines.push_back(sb.say(f.text));
  std::vector<std::tuple<std::string, std::string, std::string>> two_step;  // from, to, answer
  for (const auto& a : rooms) {
    for (const auto& [mid, d1] : adj[a]) {
      for (const auto& [b, d2] : adj[mid]) {
        if (b == a) continue;
        two_step.emplace_back(a, b, d1.substr(0, 1) + "," + d2.substr(0, 1));
      }
    }
  }
  const auto& [from, to, ans] = rng.pick(two_step);
  sb.ask("How do you go from the " + from + " to the " + to + "?", ans, lines);
}

void task_motivation(Rng& rng, StoryBuilder& sb) {
  static const Strings people{"Antoine", "Jason", "Sumit", "Yann"};
  struct Drive {
    std::string motive, place, item;
  };
  static const std::vector<Drive> drives{{"hungry", "kitchen", "apple"},
                                         {"thirsty", "kitchen", "milk"},
                                         {"tired", "bedroom", "pajamas"},
                                         {"bored", "garden", "football"}};
  Strings cast = people;
  rng.shuffle(cast);
  cast.resize(2 + rng.below(2));
  std::map<std::string, Drive> drive_of;
  std::map<std::string, int> stage;
  std::map<std::string, int> motive_line;
  for (const auto& who : cast) drive_of[who] = rng.pick(drives);
  while (true) {
    Strings pending;
    for (const auto& who : cast) {
      if (stage[who] < 3) pending.push_back(who);
    }
    if (pending.empty()) break;
    const auto& who = rng.pick(pending);
    const auto& d = drive_of[who];
    const auto lw = lower(who);
    switch (stage[who]++) {
      case 0:
        motive_line[who] = sb.say(who + " is " + d.motive + ".");
        if (rng.coin(0.6)) sb.ask("Where will " + lw + " go?", d.place, {motive_line[who]});
        break;
      case 1: {
        const int l = sb.say(move_sentence(rng, who, d.place));
        if (rng.coin(0.6)) {
          sb.ask("Why did " + lw + " go to the " + d.place + "?", d.motive, {motive_line[who], l});
        }
        break;
      }
      default: {
        const int l = sb.say(who + " " + rng.pick(kTakeVerbs) + " the " + d.item + " there.");
        if (rng.coin(0.6)) {
          sb.ask("Why did " + lw + " get the " + d.item + "?", d.motive, {motive_line[who], l});
        }
        break;
      }
    }
  }
}

void generate_story(int task, Rng& rng, StoryBuilder& sb) {
  switch (task) {
    case 1: return task_single_fact(rng, sb);
    case 2: return task_item_location(rng, sb);
    case 3: return task_item_history(rng, sb);
    case 4: return task_two_arg(rng, sb);
    case 5: return task_three_arg(rng, sb);
    case 6: return task_yes_no(rng, sb);
    case 7: return task_holdings(rng, sb, false);
    case 8: return task_holdings(rng, sb, true);
    case 9: return task_negation(rng, sb, false);
    case 10: return task_negation(rng, sb, true);
    case 11: return task_coreference(rng, sb);
    case 12: return task_conjunction(rng, sb, false);
    case 13: return task_conjunction(rng, sb, true);
    case 14: return task_time(rng, sb);
    case 15: return task_deduction(rng, sb);
    case 16: return task_induction(rng, sb);
    case 17: return task_positional(rng, sb);
    case 18: return task_size(rng, sb);
    case 19: return task_path(rng, sb);
    case 20: return task_motivation(rng, sb);
    default: throw ConfigError("task must be in 1..20, got " + std::to_string(task));
  }
}

}  // namespace

std::string_view task_file_stem(int task_id) {
  static const std::array<std::string_view, 20> kStems{
      "qa1_single-supporting-fact", "qa2_two-supporting-facts", "qa3_three-supporting-facts",
      "qa4_two-arg-relations",      "qa5_three-arg-relations",  "qa6_yes-no-questions",
      "qa7_counting",               "qa8_lists-sets",           "qa9_simple-negation",
      "qa10_indefinite-knowledge",  "qa11_basic-coreference",   "qa12_conjunction",
      "qa13_compound-coreference",  "qa14_time-reasoning",      "qa15_basic-deduction",
      "qa16_basic-induction",       "qa17_positional-reasoning", "qa18_size-reasoning",
      "qa19_path-finding",          "qa20_agents-motivations"};
  if (task_id < 1 || task_id > 20) {
    throw ConfigError("task must be in 1..20, got " + std::to_string(task_id));
  }
  return kStems[static_cast<std::size_t>(task_id - 1)];
}

std::string synthesize_task(int task_id, Split split, const SynthOptions& options) {
  task_file_stem(task_id);
  Rng rng(options.seed, task_id, split);
  std::ostringstream out;
  std::size_t total = 0;
  while (total < options.questions_per_split) {
    StoryBuilder sb;
    generate_story(task_id, rng, sb);
    int id = 0;
    for (const auto& line : sb.lines()) {
      out << ++id << ' ' << line << '\n';
      if (line.find('\t') != std::string::npos && ++total == options.questions_per_split) break;
    }
  }
  return out.str();
}

void synthesize_corpus(const std::filesystem::path& dest, const SynthOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(dest, ec);
  if (ec) throw IoError("cannot create " + dest.string() + ": " + ec.message());
  for (int task = 1; task <= 20; ++task) {
    for (auto split : {Split::kTrain, Split::kTest}) {
      auto path = dest / (std::string(task_file_stem(task)) + "_" + std::string(split_name(split)) +
                          ".txt");
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + path.string());
      out << synthesize_task(task, split, options);
    }
  }
  std::ofstream marker(dest / "SYNTHETIC", std::ios::trunc);
  marker << "generated corpus seed=" << options.seed
         << " questions_per_split=" << options.questions_per_split << '\n';
}

}  // namespace dani
