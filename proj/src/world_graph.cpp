#include "dani/world_graph.hpp"

#include <algorithm>
#include <climits>
#include <deque>

#include "dani/errors.hpp"

namespace dani {

std::string_view truth_word(Truth t) {
  switch (t) {
    case Truth::kYes: return "yes";
    case Truth::kNo: return "no";
    case Truth::kMaybe: return "maybe";
  }
  return "maybe";
}

void WorldGraph::touch(const std::string& v, const std::string& role) {
  auto& vertex = vertices_[v];
  vertex.attributes.try_emplace("role", role);
}

Edge& WorldGraph::edge_for(const std::string& a, const std::string& b) {
  vertices_[a].neighbors.insert(b);
  vertices_[b].neighbors.insert(a);
  return edges_[key(a, b)];
}

Annotation& WorldGraph::annotate(const std::string& from, const std::string& to,
                                 AnnotationKind kind, std::string attribute,
                                 std::optional<int> slot) {
  auto& e = edge_for(from, to);
  Annotation a;
  a.kind = kind;
  a.attribute = std::move(attribute);
  a.stored_from = from;
  a.opened_at = clock_;
  a.time_slot = slot;
  e.annotations.push_back(std::move(a));
  return e.annotations.back();
}

// Closes every open annotation of `kind` that `v` owns.
void WorldGraph::close_open(const std::string& v, AnnotationKind kind, int event) {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) return;
  for (const auto& n : it->second.neighbors) {
    for (auto& a : edges_[key(v, n)].annotations) {
      if (a.kind == kind && a.stored_from == v && a.open()) a.closed_at = event;
    }
  }
}

void WorldGraph::apply_move(const Move& m, const Frame& f) {
  touch(m.destination, "place");
  for (const auto& actor : m.actors) {
    touch(actor, "actor");
    close_open(actor, AnnotationKind::kLocation, clock_);
    close_open(actor, AnnotationKind::kMaybe, clock_);
    annotate(actor, m.destination, AnnotationKind::kLocation, "at", f.time_slot);
  }
}

void WorldGraph::apply(const Frame& frame) {
  ++clock_;
  const int now = clock_;
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Move>) {
          apply_move(body, frame);
        } else if constexpr (std::is_same_v<T, Take>) {
          touch(body.actor, "actor");
          touch(body.item, "item");
          if (auto prev = holder_of(body.item)) {
            for (auto& a : edges_[key(*prev, body.item)].annotations) {
              if (a.kind == AnnotationKind::kHeld && a.open()) a.closed_at = now;
            }
          }
          close_open(body.item, AnnotationKind::kItemAt, now);
          annotate(body.actor, body.item, AnnotationKind::kHeld, "holds");
        } else if constexpr (std::is_same_v<T, Drop>) {
          touch(body.actor, "actor");
          touch(body.item, "item");
          if (auto e = edges_.find(key(body.actor, body.item)); e != edges_.end()) {
            for (auto& a : e->second.annotations) {
              if (a.kind == AnnotationKind::kHeld && a.open()) a.closed_at = now;
            }
          }
          if (auto place = locate(body.actor)) {
            annotate(body.item, *place, AnnotationKind::kItemAt, "at");
          }
        } else if constexpr (std::is_same_v<T, Give>) {
          touch(body.giver, "actor");
          touch(body.receiver, "actor");
          touch(body.item, "item");
          if (auto prev = holder_of(body.item)) {
            for (auto& a : edges_[key(*prev, body.item)].annotations) {
              if (a.kind == AnnotationKind::kHeld && a.open()) a.closed_at = now;
            }
          }
          close_open(body.item, AnnotationKind::kItemAt, now);
          annotate(body.receiver, body.item, AnnotationKind::kHeld, "holds");
        } else if constexpr (std::is_same_v<T, Relation>) {
          touch(body.subject, "entity");
          touch(body.object, "entity");
          annotate(body.subject, body.object, AnnotationKind::kRelation, body.attribute);
        } else if constexpr (std::is_same_v<T, Property>) {
          touch(body.entity, "entity");
          touch(body.value, body.kind);
          annotate(body.entity, body.value, AnnotationKind::kProperty, body.kind);
        } else if constexpr (std::is_same_v<T, Negation>) {
          if (body.inner) {
            if (const auto* m = std::get_if<Move>(&body.inner->body)) {
              touch(m->destination, "place");
              for (const auto& actor : m->actors) {
                touch(actor, "actor");
                close_open(actor, AnnotationKind::kLocation, now);
                close_open(actor, AnnotationKind::kMaybe, now);
                annotate(actor, m->destination, AnnotationKind::kNegative, "not_at");
              }
            }
          }
        } else if constexpr (std::is_same_v<T, Indefinite>) {
          touch(body.actor, "actor");
          close_open(body.actor, AnnotationKind::kLocation, now);
          close_open(body.actor, AnnotationKind::kMaybe, now);
          const int group = ++next_group_;
          for (const auto& place : body.alternatives) {
            touch(place, "place");
            annotate(body.actor, place, AnnotationKind::kMaybe, "maybe_at").group = group;
          }
        } else if constexpr (std::is_same_v<T, Motive>) {
          touch(body.actor, "actor");
          touch(body.reason, "motive");
          annotate(body.actor, body.reason, AnnotationKind::kMotive, "motive");
        }
      },
      frame.body);
  history_.push_back(HistoryEntry{now, frame});
}

void WorldGraph::clear() {
  vertices_.clear();
  edges_.clear();
  history_.clear();
  clock_ = 0;
  next_group_ = 0;
}

std::optional<std::string> WorldGraph::vertex_attribute(const std::string& v,
                                                        const std::string& key) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) return std::nullopt;
  auto a = it->second.attributes.find(key);
  if (a == it->second.attributes.end()) return std::nullopt;
  return a->second;
}

const Edge* WorldGraph::edge(const std::string& a, const std::string& b) const {
  auto it = edges_.find(key(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<std::string> WorldGraph::neighbors(const std::string& v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) return {};
  return {it->second.neighbors.begin(), it->second.neighbors.end()};
}

std::optional<std::string> WorldGraph::holder_of(const std::string& item) const {
  auto it = vertices_.find(item);
  if (it == vertices_.end()) return std::nullopt;
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(item, n)).annotations) {
      if (a.kind == AnnotationKind::kHeld && a.open() && a.stored_from == n) return n;
    }
  }
  return std::nullopt;
}

std::optional<std::string> WorldGraph::locate(const std::string& entity,
                                              std::optional<int> at_event) const {
  auto it = vertices_.find(entity);
  if (it == vertices_.end()) return std::nullopt;
  if (vertex_attribute(entity, "role") == "item") {
    try {
      return item_location(entity);
    } catch (const UnresolvedError&) {
      return std::nullopt;
    }
  }
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(entity, n)).annotations) {
      if (a.kind != AnnotationKind::kLocation || a.stored_from != entity) continue;
      if (at_event ? a.open_at(*at_event) : a.open()) return n;
    }
  }
  return std::nullopt;
}

std::vector<std::string> WorldGraph::holdings(const std::string& actor) const {
  std::vector<std::pair<int, std::string>> held;
  auto it = vertices_.find(actor);
  if (it == vertices_.end()) return {};
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(actor, n)).annotations) {
      if (a.kind == AnnotationKind::kHeld && a.stored_from == actor && a.open()) {
        held.emplace_back(a.opened_at, n);
      }
    }
  }
  std::sort(held.begin(), held.end());
  std::vector<std::string> out;
  for (auto& [_, item] : held) out.push_back(item);
  return out;
}

std::string WorldGraph::item_location(const std::string& item) const {
  if (!has_vertex(item)) throw UnresolvedError("unknown item " + item);
  if (auto holder = holder_of(item)) {
    if (auto place = locate(*holder)) return *place;
    throw UnresolvedError(item + " is held by " + *holder + " whose location is unknown");
  }
  for (const auto& n : vertices_.at(item).neighbors) {
    for (const auto& a : edges_.at(key(item, n)).annotations) {
      if (a.kind == AnnotationKind::kItemAt && a.open()) return n;
    }
  }
  throw UnresolvedError("no location recorded for " + item);
}

std::string WorldGraph::item_location_before(const std::string& item,
                                             const std::string& place) const {
  std::map<std::string, std::string> where;  // actor -> place
  std::optional<std::string> holder;
  std::vector<std::string> timeline;
  auto settle = [&](const std::string& p) {
    if (timeline.empty() || timeline.back() != p) timeline.push_back(p);
  };
  for (const auto& entry : history_) {
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, Move>) {
            for (const auto& a : body.actors) {
              where[a] = body.destination;
              if (holder == a) settle(body.destination);
            }
          } else if constexpr (std::is_same_v<T, Take>) {
            if (body.item == item) {
              holder = body.actor;
              if (auto w = where.find(body.actor); w != where.end()) settle(w->second);
            }
          } else if constexpr (std::is_same_v<T, Drop>) {
            if (body.item == item && holder == body.actor) holder.reset();
          } else if constexpr (std::is_same_v<T, Give>) {
            if (body.item == item) {
              holder = body.receiver;
              if (auto w = where.find(body.receiver); w != where.end()) settle(w->second);
            }
          } else if constexpr (std::is_same_v<T, Negation>) {
            if (body.inner) {
              if (const auto* m = std::get_if<Move>(&body.inner->body)) {
                for (const auto& a : m->actors) where.erase(a);
              }
            }
          } else if constexpr (std::is_same_v<T, Indefinite>) {
            where.erase(body.actor);
          }
        },
        entry.frame.body);
  }
  auto last = std::find(timeline.rbegin(), timeline.rend(), place);
  if (last == timeline.rend() || std::next(last) == timeline.rend()) {
    throw UnresolvedError("no place recorded for " + item + " before " + place);
  }
  return *std::next(last);
}

std::string WorldGraph::actor_location_before(const std::string& actor,
                                              const std::string& place) const {
  struct Visit {
    int slot;
    int event;
    std::string place;
  };
  std::vector<Visit> visits;
  auto it = vertices_.find(actor);
  if (it == vertices_.end()) throw UnresolvedError("unknown actor " + actor);
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(actor, n)).annotations) {
      if (a.kind == AnnotationKind::kLocation && a.stored_from == actor) {
        visits.push_back({a.time_slot.value_or(INT_MAX), a.opened_at, n});
      }
    }
  }
  std::sort(visits.begin(), visits.end(), [](const Visit& x, const Visit& y) {
    return std::tie(x.slot, x.event) < std::tie(y.slot, y.event);
  });
  for (std::size_t i = visits.size(); i-- > 0;) {
    if (visits[i].place != place) continue;
    if (i == 0) break;
    return visits[i - 1].place;
  }
  throw UnresolvedError("no place recorded for " + actor + " before " + place);
}

Truth WorldGraph::truth_query(const std::string& subject, const std::string& place) const {
  auto it = vertices_.find(subject);
  if (it == vertices_.end()) return Truth::kMaybe;
  const Annotation* latest = nullptr;
  std::string latest_place;
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(subject, n)).annotations) {
      if (a.stored_from != subject) continue;
      if (a.kind != AnnotationKind::kLocation && a.kind != AnnotationKind::kNegative &&
          a.kind != AnnotationKind::kMaybe) {
        continue;
      }
      if (!latest || a.opened_at > latest->opened_at) {
        latest = &a;
        latest_place = n;
      }
    }
  }
  if (!latest) return Truth::kMaybe;
  switch (latest->kind) {
    case AnnotationKind::kLocation:
      return latest_place == place ? Truth::kYes : Truth::kNo;
    case AnnotationKind::kNegative:
      return latest_place == place ? Truth::kNo : Truth::kMaybe;
    default: {
      // Alternatives of the same either/or claim share the event stamp.
      const Edge* e = edge(subject, place);
      if (e) {
        for (const auto& a : e->annotations) {
          if (a.kind == AnnotationKind::kMaybe && a.group == latest->group) return Truth::kMaybe;
        }
      }
      return Truth::kNo;
    }
  }
}

bool WorldGraph::relation_chain(const std::string& from, const std::string& attribute,
                                const std::string& to) const {
  if (!has_vertex(from) || !has_vertex(to)) return false;
  std::set<std::string> seen{from};
  std::deque<std::string> frontier{from};
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop_front();
    for (const auto& n : vertices_.at(v).neighbors) {
      bool step = false;
      for (const auto& a : edges_.at(key(v, n)).annotations) {
        if (a.kind == AnnotationKind::kRelation && a.attribute == attribute && a.stored_from == v) {
          step = true;
        }
      }
      if (!step || seen.count(n)) continue;
      if (n == to) return true;
      seen.insert(n);
      frontier.push_back(n);
    }
  }
  return false;
}

PathResult WorldGraph::path_query(const std::string& from, const std::string& to) const {
  if (!has_vertex(from) || !has_vertex(to)) {
    throw NoPathError("no path from " + from + " to " + to + ": unknown vertex");
  }
  auto relation_of = [&](const std::string& a, const std::string& b) -> const Annotation* {
    for (const auto& ann : edges_.at(key(a, b)).annotations) {
      if (ann.kind == AnnotationKind::kRelation) return &ann;
    }
    return nullptr;
  };

  std::map<std::string, std::string> parent;
  std::deque<std::string> frontier{from};
  parent[from] = from;
  while (!frontier.empty() && !parent.count(to)) {
    auto v = frontier.front();
    frontier.pop_front();
    for (const auto& n : vertices_.at(v).neighbors) {  // std::set: lexicographic
      if (parent.count(n) || !relation_of(v, n)) continue;
      parent[n] = v;
      frontier.push_back(n);
    }
  }
  if (!parent.count(to)) throw NoPathError("no path from " + from + " to " + to);

  PathResult result;
  for (std::string v = to; v != from; v = parent[v]) result.vertices.push_back(v);
  result.vertices.push_back(from);
  std::reverse(result.vertices.begin(), result.vertices.end());
  for (std::size_t i = 0; i + 1 < result.vertices.size(); ++i) {
    const auto& a = result.vertices[i];
    const auto& b = result.vertices[i + 1];
    const auto* ann = relation_of(a, b);
    result.hops.push_back(PathHop{a, b, ann->attribute, ann->stored_from == a});
  }
  return result;
}

std::optional<std::string> WorldGraph::property(const std::string& entity,
                                                const std::string& kind) const {
  auto it = vertices_.find(entity);
  if (it == vertices_.end()) return std::nullopt;
  const Annotation* best = nullptr;
  std::string value;
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(entity, n)).annotations) {
      if (a.kind == AnnotationKind::kProperty && a.attribute == kind && a.stored_from == entity &&
          (!best || a.opened_at > best->opened_at)) {
        best = &a;
        value = n;
      }
    }
  }
  if (!best) return std::nullopt;
  return value;
}

std::vector<std::string> WorldGraph::entities_with(const std::string& kind,
                                                   const std::string& value) const {
  std::vector<std::pair<int, std::string>> found;
  auto it = vertices_.find(value);
  if (it == vertices_.end()) return {};
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(value, n)).annotations) {
      if (a.kind == AnnotationKind::kProperty && a.attribute == kind && a.stored_from == n) {
        found.emplace_back(a.opened_at, n);
      }
    }
  }
  std::sort(found.begin(), found.end(), std::greater<>());
  std::vector<std::string> out;
  for (auto& [_, e] : found) out.push_back(e);
  return out;
}

std::optional<std::string> WorldGraph::motive(const std::string& actor) const {
  auto it = vertices_.find(actor);
  if (it == vertices_.end()) return std::nullopt;
  const Annotation* best = nullptr;
  std::string reason;
  for (const auto& n : it->second.neighbors) {
    for (const auto& a : edges_.at(key(actor, n)).annotations) {
      if (a.kind == AnnotationKind::kMotive && a.stored_from == actor &&
          (!best || a.opened_at > best->opened_at)) {
        best = &a;
        reason = n;
      }
    }
  }
  if (!best) return std::nullopt;
  return reason;
}

std::string WorldGraph::dump() const {
  std::string out;
  for (const auto& [k, e] : edges_) {
    for (const auto& a : e.annotations) {
      const auto& other = a.stored_from == k.first ? k.second : k.first;
      out += a.stored_from + '\t' + other + '\t' + a.attribute + '\t' +
             std::to_string(a.opened_at);
      if (a.closed_at) out += '-' + std::to_string(*a.closed_at);
      out += '\n';
    }
  }
  return out;
}

}  // namespace dani
