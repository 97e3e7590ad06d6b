#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dani {

struct Frame;

struct Move {
  std::vector<std::string> actors;
  std::string destination;
  std::optional<std::string> departure;
  bool operator==(const Move&) const = default;
};

struct Take {
  std::string actor;
  std::string item;
  bool operator==(const Take&) const = default;
};

struct Drop {
  std::string actor;
  std::string item;
  bool operator==(const Drop&) const = default;
};

struct Give {
  std::string giver;
  std::string receiver;
  std::string item;
  bool operator==(const Give&) const = default;
};

// `subject attribute object`, e.g. office north garden, box bigger chest.
struct Relation {
  std::string subject;
  std::string attribute;
  std::string object;
  bool operator==(const Relation&) const = default;
};

// entity has `value` for attribute `kind` ("species", "colour").
struct Property {
  std::string entity;
  std::string kind;
  std::string value;
  bool operator==(const Property&) const = default;
};

// Only location claims are ever negated in bAbI, so the inner frame is a
// Move; kept behind a pointer so Frame stays a plain recursive value.
struct Negation {
  std::shared_ptr<const Frame> inner;
  bool operator==(const Negation& other) const;
};

// "X is either in the A or the B".
struct Indefinite {
  std::string actor;
  std::vector<std::string> alternatives;
  bool operator==(const Indefinite&) const = default;
};

struct Motive {
  std::string actor;
  std::string reason;
  bool operator==(const Motive&) const = default;
};

using FrameBody =
    std::variant<Move, Take, Drop, Give, Relation, Property, Negation, Indefinite, Motive>;

struct Frame {
  FrameBody body;
  int event_index = 0;
  // 0 = yesterday .. 3 = this evening; absent when the statement has no
  // time marker.
  std::optional<int> time_slot;
  bool operator==(const Frame&) const = default;
};

inline bool Negation::operator==(const Negation& other) const {
  if (!inner || !other.inner) return inner == other.inner;
  return *inner == *other.inner;
}

// ---- questions ------------------------------------------------------------

struct WhereEntity {
  std::string entity;
  bool operator==(const WhereEntity&) const = default;
};

// "where was E before the P" for items (episodic chain) and actors (time
// markers).
struct WhereHistorical {
  std::string entity;
  std::string before;
  bool operator==(const WhereHistorical&) const = default;
};

// "what is north of the A" (anchor is the object) or "what is the A north
// of" (anchor is the subject).
struct WhatRelation {
  std::string relation;
  std::string anchor;
  bool anchor_is_object = true;
  bool operator==(const WhatRelation&) const = default;
};

enum class GiveSlot { kGiver, kReceiver, kItem };

struct GiveQuery {
  std::optional<std::string> giver;
  std::optional<std::string> receiver;
  std::optional<std::string> item;
  GiveSlot asked = GiveSlot::kItem;
  bool operator==(const GiveQuery&) const = default;
};

// Proposition `subject relation object`; relation "in" is a location claim.
struct YesNo {
  std::string subject;
  std::string relation;
  std::string object;
  bool operator==(const YesNo&) const = default;
};

struct Count {
  std::string actor;
  bool operator==(const Count&) const = default;
};

struct ListHeld {
  std::string actor;
  bool operator==(const ListHeld&) const = default;
};

struct PathQuery {
  std::string from;
  std::string to;
  bool operator==(const PathQuery&) const = default;
};

// "where will X go": kind "goal".
struct PropertyQ {
  std::string entity;
  std::string kind;
  bool operator==(const PropertyQ&) const = default;
};

// "why did X go to the P" / "why did X get the O"; context is P or O.
struct WhyQ {
  std::string actor;
  std::string context;
  bool operator==(const WhyQ&) const = default;
};

struct InductionQ {
  std::string entity;
  std::string kind;
  bool operator==(const InductionQ&) const = default;
};

struct DeduceQ {
  std::string entity;
  bool operator==(const DeduceQ&) const = default;
};

using QueryFrame = std::variant<WhereEntity, WhereHistorical, WhatRelation, GiveQuery, YesNo,
                                Count, ListHeld, PathQuery, PropertyQ, WhyQ, InductionQ, DeduceQ>;

std::string describe(const Frame& frame);
std::string describe(const QueryFrame& query);

}  // namespace dani
