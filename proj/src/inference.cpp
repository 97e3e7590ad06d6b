#include "dani/inference.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "dani/decoder.hpp"
#include "dani/errors.hpp"

namespace dani {

namespace {

struct Offset {
  int dx;
  int dy;
};

// Position of a relation's subject relative to its object.
std::optional<Offset> relation_offset(const std::string& rel) {
  if (rel == "north" || rel == "above") return Offset{0, 1};
  if (rel == "south" || rel == "below") return Offset{0, -1};
  if (rel == "east" || rel == "right") return Offset{1, 0};
  if (rel == "west" || rel == "left") return Offset{-1, 0};
  return std::nullopt;
}

std::optional<std::string> inverse_relation(const std::string& rel) {
  static const std::array<std::pair<const char*, const char*>, 4> kPairs{{
      {"north", "south"}, {"east", "west"}, {"left", "right"}, {"above", "below"}}};
  for (const auto& [a, b] : kPairs) {
    if (rel == a) return std::string(b);
    if (rel == b) return std::string(a);
  }
  return std::nullopt;
}

std::string movement_token(Offset step) {
  if (step.dx == 0 && step.dy == 1) return "n";
  if (step.dx == 0 && step.dy == -1) return "s";
  if (step.dx == 1 && step.dy == 0) return "e";
  if (step.dx == -1 && step.dy == 0) return "w";
  throw UnresolvedError("no movement token for step");
}

// Displacement when traversing `hop`.
Offset hop_step(const PathHop& hop) {
  auto off = relation_offset(hop.attribute);
  if (!off) throw UnresolvedError("relation '" + hop.attribute + "' has no spatial reading");
  // Forward = subject -> object, i.e. against the subject's offset.
  return hop.forward ? Offset{-off->dx, -off->dy} : *off;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

bool is_answer_token(const std::string& v) {
  return v != AttributeModel::kUnknown && v.find(':') == std::string::npos;
}

double safe_weight(const AttributeModel& model, const std::string& a, const std::string& b) {
  if (!model.has_attribute(a) || !model.has_attribute(b)) return 0.0;
  return model.weight(a, b);
}

// Long-term generation: score every answer token in the model against the
// context attributes and refine. Returns nullopt when the null class wins.
std::optional<std::string> generate(const std::set<std::string>& context,
                                    const AttributeModel& model, std::string* trace) {
  std::vector<AnswerCandidate> cands;
  double null_score = 0.0;
  for (const auto& ctx : context) {
    null_score = std::max(null_score, model.has_attribute(ctx)
                                          ? model.weight(AttributeModel::kUnknown, ctx)
                                          : 1.0);
  }
  for (const auto& v : model.vertices()) {
    if (!is_answer_token(v)) continue;
    double s = 0.0;
    for (const auto& ctx : context) s += safe_weight(model, ctx, v);
    s /= static_cast<double>(std::max<std::size_t>(context.size(), 1));
    cands.push_back(AnswerCandidate{{v}, s, Source::kLongTerm});
  }
  cands.push_back(AnswerCandidate::null(null_score));
  auto chosen = refine_candidates(cands, model);
  if (trace) {
    std::ostringstream t;
    t << "[" << join({context.begin(), context.end()}, ",") << "]";
    for (const auto& c : cands) {
      t << ' ' << (c.is_null() ? std::string("<null>") : c.tokens[0]) << '=' << c.score;
    }
    t << " -> " << (chosen.is_null() ? std::string("<null>") : chosen.tokens[0]);
    if (!trace->empty()) *trace += "; ";
    *trace += t.str();
  }
  if (chosen.is_null()) return std::nullopt;
  return chosen.tokens.front();
}

}  // namespace

std::string number_word(std::size_t n) {
  static const std::array<const char*, 11> kWords{"none", "one", "two",   "three", "four", "five",
                                                  "six",  "seven", "eight", "nine", "ten"};
  return n < kWords.size() ? kWords[n] : std::to_string(n);
}

AnswerCandidate refine_candidates(std::vector<AnswerCandidate> cands, const AttributeModel& model) {
  if (cands.empty()) return AnswerCandidate::null(0.0);

  std::vector<double> effective;
  for (const auto& c : cands) effective.push_back(c.score);
  std::vector<std::size_t> active(cands.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

  auto ranks_before = [&](std::size_t x, std::size_t y) {
    if (effective[x] != effective[y]) return effective[x] > effective[y];
    // Real candidates outrank the null sentinel on equal score; tokens
    // break remaining ties.
    if (cands[x].is_null() != cands[y].is_null()) return !cands[x].is_null();
    return cands[x].tokens < cands[y].tokens;
  };

  double max_rejected = -std::numeric_limits<double>::infinity();
  std::optional<std::size_t> first_rejected;
  const std::size_t rounds = cands.size();
  for (std::size_t round = 0; round < rounds && !active.empty(); ++round) {
    std::sort(active.begin(), active.end(), ranks_before);
    const std::size_t top = active.front();
    if (cands[top].is_null()) break;
    const double runner_up = active.size() > 1 ? effective[active[1]]
                                               : -std::numeric_limits<double>::infinity();
    if (effective[top] > runner_up && effective[top] > max_rejected) return cands[top];

    max_rejected = std::max(max_rejected, cands[top].score);
    if (!first_rejected) first_rejected = top;
    active.erase(active.begin());
    for (auto i : active) {
      if (cands[i].is_null()) continue;
      // Damp by similarity to the rejected candidate; proportional, so
      // scaling every score leaves the ranking unchanged.
      effective[i] *= 1.0 - safe_weight(model, cands[i].tokens[0], cands[top].tokens[0]);
    }
  }
  if (first_rejected && cands[*first_rejected].score > 0.0) return cands[*first_rejected];
  for (const auto& c : cands) {
    if (c.is_null()) return c;
  }
  return AnswerCandidate::null(0.0);
}

std::string oriented_attribute(const PathHop& hop) {
  return hop.attribute + (hop.forward ? ":fwd" : ":rev");
}

std::vector<std::string> path_to_directions(const PathResult& path, const AttributeModel& model,
                                            Mode mode, std::string* trace) {
  std::vector<std::string> out;
  for (const auto& hop : path.hops) {
    if (hop.attribute.empty()) throw UnresolvedError("hop without relation attribute");
    if (mode == Mode::kSupervised) {
      out.push_back(movement_token(hop_step(hop)));
      continue;
    }
    auto token = generate({oriented_attribute(hop)}, model, trace);
    if (!token) throw UnresolvedError("no learned direction for " + oriented_attribute(hop));
    out.push_back(*token);
  }
  return out;
}

std::set<std::string> context_attributes(const QueryFrame& query, const WorldGraph& graph) {
  if (const auto* q = std::get_if<PropertyQ>(&query)) {
    if (auto m = graph.motive(q->entity)) return {*m + ":motive"};
  } else if (const auto* q = std::get_if<InductionQ>(&query)) {
    if (auto s = graph.property(q->entity, "species")) return {*s + ":species"};
  }
  return {};
}

namespace {

class Answerer {
 public:
  Answerer(const WorldGraph& g, const AttributeModel& m, Mode mode, std::string& trace)
      : g_(g), m_(m), mode_(mode), trace_(trace) {}

  std::vector<std::string> operator()(const WhereEntity& q) const {
    if (g_.vertex_attribute(q.entity, "role") == "item") return {g_.item_location(q.entity)};
    auto place = g_.locate(q.entity);
    if (!place) throw UnresolvedError("location of " + q.entity + " unknown");
    return {*place};
  }

  std::vector<std::string> operator()(const WhereHistorical& q) const {
    if (g_.vertex_attribute(q.entity, "role") == "item") {
      return {g_.item_location_before(q.entity, q.before)};
    }
    return {g_.actor_location_before(q.entity, q.before)};
  }

  std::vector<std::string> operator()(const WhatRelation& q) const {
    auto inverse = inverse_relation(q.relation);
    std::optional<std::pair<int, std::string>> best;
    for (const auto& n : g_.neighbors(q.anchor)) {
      for (const auto& a : g_.edge(q.anchor, n)->annotations) {
        if (a.kind != AnnotationKind::kRelation) continue;
        // Wanted: `answer rel anchor` (anchor is object) or `anchor rel answer`.
        const std::string& subject_side = q.anchor_is_object ? n : q.anchor;
        bool match = (a.attribute == q.relation && a.stored_from == subject_side) ||
                     (inverse && a.attribute == *inverse && a.stored_from != subject_side);
        if (match && (!best || a.opened_at > best->first)) best = {a.opened_at, n};
      }
    }
    if (!best) throw UnresolvedError("nothing is " + q.relation + " of " + q.anchor);
    return {best->second};
  }

  std::vector<std::string> operator()(const GiveQuery& q) const {
    const auto& h = g_.history();
    for (auto it = h.rbegin(); it != h.rend(); ++it) {
      const auto* give = std::get_if<Give>(&it->frame.body);
      if (!give) continue;
      if (q.giver && *q.giver != give->giver) continue;
      if (q.receiver && *q.receiver != give->receiver) continue;
      if (q.item && *q.item != give->item) continue;
      switch (q.asked) {
        case GiveSlot::kGiver: return {give->giver};
        case GiveSlot::kReceiver: return {give->receiver};
        case GiveSlot::kItem: return {give->item};
      }
    }
    throw UnresolvedError("no matching give event");
  }

  std::vector<std::string> operator()(const YesNo& q) const {
    if (q.relation == "in") return {std::string(truth_word(g_.truth_query(q.subject, q.object)))};
    if (q.relation == "bigger") {
      return {g_.relation_chain(q.subject, "bigger", q.object) ? "yes" : "no"};
    }
    auto want = relation_offset(q.relation);
    if (!want) throw UnresolvedError("unsupported relation " + q.relation);
    auto path = g_.path_query(q.object, q.subject);
    Offset total{0, 0};
    for (const auto& hop : path.hops) {
      auto step = hop_step(hop);
      total.dx += step.dx;
      total.dy += step.dy;
    }
    trace_ += "path " + join(path.vertices, ">") + " d=(" + std::to_string(total.dx) + "," +
              std::to_string(total.dy) + ")";
    bool holds = (want->dx != 0 && total.dx * want->dx > 0) ||
                 (want->dy != 0 && total.dy * want->dy > 0);
    return {holds ? "yes" : "no"};
  }

  std::vector<std::string> operator()(const Count& q) const {
    return {number_word(g_.holdings(q.actor).size())};
  }

  std::vector<std::string> operator()(const ListHeld& q) const {
    auto held = g_.holdings(q.actor);
    if (held.empty()) return {"nothing"};
    return held;
  }

  std::vector<std::string> operator()(const PathQuery& q) const {
    auto path = g_.path_query(q.from, q.to);
    trace_ += "path " + join(path.vertices, ">");
    for (const auto& hop : path.hops) trace_ += " " + oriented_attribute(hop);
    std::string weights;
    auto dirs = path_to_directions(path, m_, mode_, &weights);
    if (!weights.empty()) trace_ += " | " + weights;
    return dirs;
  }

  std::vector<std::string> operator()(const PropertyQ& q) const {
    auto ctx = context_attributes(q, g_);
    if (ctx.empty()) throw UnresolvedError("no context for " + q.entity);
    auto token = generate(ctx, m_, &trace_);
    if (!token) throw UnresolvedError("model has no answer for " + q.entity);
    return {*token};
  }

  std::vector<std::string> operator()(const WhyQ& q) const {
    if (auto m = g_.motive(q.actor)) return {*m};
    throw UnresolvedError("no motive recorded for " + q.actor);
  }

  std::vector<std::string> operator()(const InductionQ& q) const {
    auto species = g_.property(q.entity, "species");
    if (species) {
      for (const auto& other : g_.entities_with("species", *species)) {
        if (other == q.entity) continue;
        if (auto value = g_.property(other, q.kind)) {
          trace_ += other + " is a " + *species + " and " + *value;
          return {*value};
        }
      }
    }
    auto ctx = context_attributes(q, g_);
    if (ctx.empty()) throw UnresolvedError("no evidence for " + q.entity);
    auto token = generate(ctx, m_, &trace_);
    if (!token) throw UnresolvedError("model has no " + q.kind + " for " + q.entity);
    return {*token};
  }

  std::vector<std::string> operator()(const DeduceQ& q) const {
    auto species = g_.property(q.entity, "species");
    if (!species) throw UnresolvedError("species of " + q.entity + " unknown");
    std::optional<std::pair<int, std::string>> best;
    for (const auto& n : g_.neighbors(*species)) {
      for (const auto& a : g_.edge(*species, n)->annotations) {
        if (a.kind == AnnotationKind::kRelation && a.attribute == "afraid" &&
            a.stored_from == *species && (!best || a.opened_at > best->first)) {
          best = {a.opened_at, n};
        }
      }
    }
    if (!best) throw UnresolvedError(*species + " fears nothing known");
    return {best->second};
  }

 private:
  const WorldGraph& g_;
  const AttributeModel& m_;
  Mode mode_;
  std::string& trace_;
};

}  // namespace

Answer answer(const QueryFrame& query, const WorldGraph& graph, const AttributeModel& model,
              Mode mode) {
  Answer out;
  out.tokens = std::visit(Answerer(graph, model, mode, out.trace), query);
  return out;
}

void train_weak_paths(const TaskSet& train, AttributeModel& model,
                      std::optional<std::size_t> story_limit) {
  const auto lex = build_lexicon_weak();
  WorldGraph graph;
  std::size_t consumed = 0;
  for (const auto& story : train.stories) {
    if (story_limit && consumed >= *story_limit) break;
    ++consumed;
    graph.clear();
    CorefContext ctx;
    for (const auto& item : story.items) {
      if (const auto* s = std::get_if<Statement>(&item)) {
        graph.apply(decode_statement(*s, lex, ctx));
        continue;
      }
      const auto& q = std::get<Question>(item);
      auto query = decode_question(q, lex, ctx);
      const auto* pq = std::get_if<PathQuery>(&query);
      if (!pq) continue;
      auto path = graph.path_query(pq->from, pq->to);
      if (path.hops.size() != q.gold_answer.size()) {
        throw TrainDataError("story " + std::to_string(consumed) + " line " +
                             std::to_string(q.line_id) + ": answer has " +
                             std::to_string(q.gold_answer.size()) + " tokens but the path has " +
                             std::to_string(path.hops.size()) + " hops");
      }
      for (std::size_t i = 0; i < path.hops.size(); ++i) {
        model.observe_event({oriented_attribute(path.hops[i]), q.gold_answer[i]});
      }
    }
  }
}

}  // namespace dani
