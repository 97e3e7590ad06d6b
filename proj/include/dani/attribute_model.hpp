#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dani {

/// 2x2 co-occurrence counts for an attribute pair over observation events:
/// a = both present, b = first only, c = second only, d = neither.
struct ContingencyTable {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  bool operator==(const ContingencyTable&) const = default;
};

/// Jaccard coefficient a / (a + b + c). Joint absence (d) never enters;
/// an all-zero table scores 0.
double jaccard(const ContingencyTable& t);

/// Long-term memory: attribute vertices (always including the null class
/// "unknown") and per-pair co-occurrence tables whose Jaccard weights form
/// the symmetric edge weights.
///
/// Storage keeps, per vertex, the number of events it was present in and,
/// per unordered pair, the joint count; b, c and d follow from those and
/// the event total, so a + b + c + d always equals event_count().
class AttributeModel {
 public:
  static constexpr std::string_view kUnknown = "unknown";

  AttributeModel();

  /// Idempotent. Throws FrozenError once frozen.
  void add_attribute(const std::string& token);

  /// Records one event. Unseen tokens are added first. The null class is
  /// marked present when the event contains a token never observed before
  /// or a pair that has never co-occurred.
  void observe_event(const std::set<std::string>& present);

  bool has_attribute(std::string_view token) const;
  /// Sorted attribute tokens.
  std::vector<std::string> vertices() const;
  std::uint64_t event_count() const { return events_; }
  std::uint64_t occurrences(std::string_view token) const;

  /// Throws UnknownAttributeError when either token is absent.
  ContingencyTable table(std::string_view alpha, std::string_view beta) const;
  double weight(std::string_view alpha, std::string_view beta) const;

  void freeze();
  bool is_frozen() const { return frozen_; }

  /// Versioned text form; see save().
  std::string serialize() const;
  static AttributeModel parse(std::string_view text);

  /// Writes:
  ///   DANI-M v1 frozen=<0|1> events=<n>
  ///   vertices <k>
  ///   <token>\t<occurrences>            (k lines, sorted)
  ///   pairs <m>
  ///   <alpha>\t<beta>\t<a>\t<b>\t<c>\t<d> (m lines, alpha < beta, sorted)
  void save(const std::filesystem::path& path) const;
  static AttributeModel load(const std::filesystem::path& path);

  bool operator==(const AttributeModel& other) const;

 private:
  std::size_t index_of(std::string_view token) const;
  std::size_t intern(const std::string& token);
  std::uint64_t joint(std::size_t i, std::size_t j) const;

  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::uint64_t> occurrences_;
  std::vector<std::vector<std::uint64_t>> joint_;  // symmetric, diagonal unused
  std::uint64_t events_ = 0;
  bool frozen_ = false;
  std::vector<std::vector<double>> weight_cache_;  // filled by freeze()
};

}  // namespace dani
