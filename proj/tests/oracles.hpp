#pragma once

// Independent reference implementations used by the property and
// acceptance tests. Nothing here calls into the code under test.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---- co-occurrence ----------------------------------------------------------

// Events as bit masks over attribute ids; bit `null_bit` is the null
// class, filled in by apply_null_rule.
struct BitEvents {
  int n_attributes = 0;
  int null_bit = 0;
  std::vector<std::uint32_t> masks;
};

// The null class is present in an event exactly when some present
// attribute never appeared before, or some present pair never appeared
// together before.
inline void apply_null_rule(BitEvents& ev) {
  std::uint32_t seen = 0;
  std::set<std::pair<int, int>> seen_pairs;
  for (auto& m : ev.masks) {
    bool novel = (m & ~seen) != 0;
    std::vector<int> bits;
    for (int i = 0; i < ev.n_attributes; ++i) {
      if (m & (1u << i)) bits.push_back(i);
    }
    for (std::size_t x = 0; x < bits.size() && !novel; ++x) {
      for (std::size_t y = x + 1; y < bits.size() && !novel; ++y) {
        if (!seen_pairs.count({bits[x], bits[y]})) novel = true;
      }
    }
    seen |= m;
    for (std::size_t x = 0; x < bits.size(); ++x) {
      for (std::size_t y = x + 1; y < bits.size(); ++y) seen_pairs.insert({bits[x], bits[y]});
    }
    if (novel) m |= 1u << ev.null_bit;
  }
}

struct Counts {
  std::uint64_t both = 0, only_x = 0, only_y = 0, neither = 0;
};

inline Counts count_pair(const BitEvents& ev, int x, int y) {
  Counts c;
  const std::uint32_t bx = 1u << x, by = 1u << y;
  for (auto m : ev.masks) {
    const bool px = m & bx, py = m & by;
    if (px && py) ++c.both;
    else if (px) ++c.only_x;
    else if (py) ++c.only_y;
    else ++c.neither;
  }
  return c;
}

// |x ∩ y| / |x ∪ y| over event index sets; 0 when the union is empty.
inline double jaccard(const BitEvents& ev, int x, int y) {
  auto c = count_pair(ev, x, y);
  const auto uni = c.both + c.only_x + c.only_y;
  return uni == 0 ? 0.0 : static_cast<double>(c.both) / static_cast<double>(uni);
}

// All pair counts in one pass: joint[x][y] events holding both, and
// joint[x][x] events holding x.
inline std::vector<std::vector<std::uint64_t>> joint_counts(const BitEvents& ev) {
  const int n = std::max(ev.n_attributes, ev.null_bit + 1);
  std::vector<std::vector<std::uint64_t>> joint(n, std::vector<std::uint64_t>(n, 0));
  std::vector<int> bits;
  for (auto m : ev.masks) {
    bits.clear();
    for (int i = 0; i < n; ++i) {
      if (m & (1u << i)) bits.push_back(i);
    }
    for (int x : bits) {
      for (int y : bits) ++joint[x][y];
    }
  }
  return joint;
}

inline Counts counts_from(const std::vector<std::vector<std::uint64_t>>& joint, std::uint64_t total,
                          int x, int y) {
  Counts c;
  c.both = joint[x][y];
  c.only_x = joint[x][x] - c.both;
  c.only_y = joint[y][y] - c.both;
  c.neither = total - c.both - c.only_x - c.only_y;
  return c;
}

// ---- shortest paths ---------------------------------------------------------

using Adjacency = std::map<std::string, std::set<std::string>>;

// Plain BFS; neighbours in lexicographic order, so the returned path is the
// lexicographically-first shortest path by discovery.
inline std::optional<std::vector<std::string>> bfs(const Adjacency& g, const std::string& from,
                                                   const std::string& to) {
  std::map<std::string, std::string> parent;
  std::deque<std::string> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (v == to) break;
    auto it = g.find(v);
    if (it == g.end()) continue;
    for (const auto& n : it->second) {
      if (parent.count(n)) continue;
      parent[n] = v;
      queue.push_back(n);
    }
  }
  if (!parent.count(to)) return std::nullopt;
  std::vector<std::string> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  return std::vector<std::string>(path.rbegin(), path.rend());
}

struct RandomGraph {
  std::vector<std::string> vertices;
  // (subject, relation, object) triples; every edge appears once.
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  Adjacency adjacency;
};

// Connected: a random spanning tree plus a few extra edges.
inline RandomGraph random_connected_graph(std::mt19937_64& rng, int max_vertices = 12) {
  static const char* kRel[] = {"north", "south", "east", "west"};
  RandomGraph g;
  const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vertices - 1));
  for (int i = 0; i < n; ++i) g.vertices.push_back("room" + std::to_string(i));
  std::set<std::pair<int, int>> used;
  auto connect = [&](int a, int b) {
    if (a == b || used.count({std::min(a, b), std::max(a, b)})) return;
    used.insert({std::min(a, b), std::max(a, b)});
    g.edges.emplace_back(g.vertices[a], kRel[rng() % 4], g.vertices[b]);
    g.adjacency[g.vertices[a]].insert(g.vertices[b]);
    g.adjacency[g.vertices[b]].insert(g.vertices[a]);
  };
  for (int i = 1; i < n; ++i) connect(i, static_cast<int>(rng() % static_cast<std::uint64_t>(i)));
  const int extra = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  for (int k = 0; k < extra; ++k) {
    connect(static_cast<int>(rng() % static_cast<std::uint64_t>(n)),
            static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
  }
  return g;
}

// ---- task 19 direction simulator ---------------------------------------------

// Reads "The A is <dir> of the B." sentences and walks the emitted moves
// (n/s/e/w) from `from`. Returns the room reached, or nullopt when a move
// leads nowhere.
class DirectionSimulator {
 public:
  explicit DirectionSimulator(const std::vector<std::string>& sentences) {
    static const std::regex kFact(R"(the (\w+) is (north|south|east|west) of the (\w+))",
                                  std::regex::icase);
    for (const auto& s : sentences) {
      std::smatch m;
      if (!std::regex_search(s, m, kFact)) continue;
      const auto a = lower(m[1]), dir = lower(m[2]), b = lower(m[3]);
      // Standing in b and moving `dir` reaches a; the reverse move undoes it.
      next_[{b, dir.substr(0, 1)}] = a;
      next_[{a, opposite(dir.substr(0, 1))}] = b;
    }
  }

  std::optional<std::string> walk(const std::string& from,
                                  const std::vector<std::string>& moves) const {
    std::string at = from;
    for (const auto& mv : moves) {
      auto it = next_.find({at, mv});
      if (it == next_.end()) return std::nullopt;
      at = it->second;
    }
    return at;
  }

 private:
  static std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }
  static std::string opposite(const std::string& d) {
    if (d == "n") return "s";
    if (d == "s") return "n";
    if (d == "e") return "w";
    return "e";
  }
  std::map<std::pair<std::string, std::string>, std::string> next_;
};

}  // namespace oracle
