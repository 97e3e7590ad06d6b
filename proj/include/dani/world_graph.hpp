#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dani/frames.hpp"

namespace dani {

enum class AnnotationKind {
  kLocation,  // actor -- place
  kHeld,      // actor -- item
  kItemAt,    // item -- place, after a drop
  kRelation,  // subject -- object, attribute = relation token
  kProperty,  // entity -- value, attribute = property kind
  kNegative,  // actor -- place, "no longer in" / "not in"
  kMaybe,     // actor -- place, one alternative of an either/or claim
  kMotive,    // actor -- reason
};

struct Annotation {
  AnnotationKind kind = AnnotationKind::kRelation;
  std::string attribute;
  // Endpoint the statement named first (relation subject, holder, actor).
  std::string stored_from;
  int opened_at = 0;
  std::optional<int> closed_at;
  std::optional<int> time_slot;
  int group = 0;  // shared by the alternatives of one either/or claim

  bool open() const { return !closed_at.has_value(); }
  bool open_at(int event) const {
    return opened_at <= event && (!closed_at || *closed_at > event);
  }
  bool operator==(const Annotation&) const = default;
};

struct Edge {
  std::vector<Annotation> annotations;
  bool operator==(const Edge&) const = default;
};

struct HistoryEntry {
  int event_index = 0;
  Frame frame;
  bool operator==(const HistoryEntry&) const = default;
};

struct PathHop {
  std::string from;
  std::string to;
  std::string attribute;
  // True when the hop goes from the stored subject to the stored object.
  bool forward = true;
  bool operator==(const PathHop&) const = default;
};

struct PathResult {
  std::vector<std::string> vertices;
  std::vector<PathHop> hops;
};

enum class Truth { kYes, kNo, kMaybe };

std::string_view truth_word(Truth t);

/// Per-story undirected property graph: vertices with an attribute map,
/// unordered-pair edges carrying event-stamped annotations, and the
/// append-only log of applied frames.
class WorldGraph {
 public:
  void apply(const Frame& frame);
  void clear();

  bool empty() const { return vertices_.empty(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  int event_clock() const { return clock_; }
  const std::vector<HistoryEntry>& history() const { return history_; }

  bool has_vertex(const std::string& v) const { return vertices_.count(v) > 0; }
  /// Vertex attribute, e.g. role = actor | item | place | entity.
  std::optional<std::string> vertex_attribute(const std::string& v, const std::string& key) const;
  /// The edge between a and b in either argument order, or null.
  const Edge* edge(const std::string& a, const std::string& b) const;
  std::vector<std::string> neighbors(const std::string& v) const;

  /// Current place of an actor (or, with `at_event`, its place as of that
  /// event). Items resolve through their holder or drop site.
  std::optional<std::string> locate(const std::string& entity,
                                    std::optional<int> at_event = std::nullopt) const;

  /// Items currently held, in pickup order.
  std::vector<std::string> holdings(const std::string& actor) const;

  /// Current place of an item. Throws UnresolvedError when unknown.
  std::string item_location(const std::string& item) const;

  /// Place the item occupied immediately before its most recent arrival at
  /// `place`, reconstructed from the history log.
  std::string item_location_before(const std::string& item, const std::string& place) const;

  /// Place an actor occupied immediately before its latest visit to
  /// `place`, ordering visits by time marker and then by event.
  std::string actor_location_before(const std::string& actor, const std::string& place) const;

  /// Location claim "subject is in place".
  Truth truth_query(const std::string& subject, const std::string& place) const;

  /// Directed reachability along relation annotations `attribute`
  /// (stored subject to object), e.g. transitive "bigger".
  bool relation_chain(const std::string& from, const std::string& attribute,
                      const std::string& to) const;

  /// Shortest simple path over relation edges; BFS with neighbours visited
  /// in lexicographic order. Throws NoPathError when disconnected.
  PathResult path_query(const std::string& from, const std::string& to) const;

  /// Open property annotations of `entity`: kind -> value.
  std::optional<std::string> property(const std::string& entity, const std::string& kind) const;
  /// Entities carrying property kind=value, most recent first.
  std::vector<std::string> entities_with(const std::string& kind, const std::string& value) const;
  std::optional<std::string> motive(const std::string& actor) const;

  /// `v1<TAB>v2<TAB>attr<TAB>event` lines, one per annotation.
  std::string dump() const;

  bool operator==(const WorldGraph&) const = default;

 private:
  struct Vertex {
    std::map<std::string, std::string> attributes;
    std::set<std::string> neighbors;
    bool operator==(const Vertex&) const = default;
  };
  using EdgeKey = std::pair<std::string, std::string>;

  static EdgeKey key(const std::string& a, const std::string& b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
  }
  void touch(const std::string& v, const std::string& role);
  Edge& edge_for(const std::string& a, const std::string& b);
  Annotation& annotate(const std::string& from, const std::string& to, AnnotationKind kind,
                       std::string attribute, std::optional<int> slot = std::nullopt);
  void close_open(const std::string& v, AnnotationKind kind, int event);
  std::optional<std::string> holder_of(const std::string& item) const;

  void apply_move(const Move& m, const Frame& f);

  std::map<std::string, Vertex> vertices_;
  std::map<EdgeKey, Edge> edges_;
  std::vector<HistoryEntry> history_;
  int clock_ = 0;
  int next_group_ = 0;
};

}  // namespace dani
