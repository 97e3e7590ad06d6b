#include "doctest.h"
#include "dani/errors.hpp"
#include "dani/world_graph.hpp"

using namespace dani;

namespace {

Frame frame(FrameBody body, std::optional<int> slot = std::nullopt) {
  return Frame{std::move(body), 0, slot};
}

Frame negation(const std::string& actor, const std::string& place) {
  Frame inner{Move{{actor}, place, {}}, 0, {}};
  return frame(Negation{std::make_shared<const Frame>(inner)});
}

}  // namespace

TEST_CASE("moves supersede the previous location") {
  WorldGraph g;
  g.apply(frame(Move{{"mary"}, "kitchen", {}}));
  g.apply(frame(Move{{"mary"}, "garden", {}}));
  CHECK(g.locate("mary") == "garden");
  CHECK(g.locate("mary", 1) == "kitchen");
  CHECK(g.event_clock() == 2);
  CHECK(g.history().size() == 2);
  CHECK(g.vertex_attribute("mary", "role") == "actor");
  CHECK(g.vertex_attribute("garden", "role") == "place");
  CHECK_FALSE(g.locate("john"));
}

TEST_CASE("items follow their holder and stay where dropped") {
  WorldGraph g;
  g.apply(frame(Move{{"john"}, "office", {}}));
  g.apply(frame(Take{"john", "milk"}));
  CHECK(g.item_location("milk") == "office");
  g.apply(frame(Move{{"john"}, "hallway", {}}));
  CHECK(g.item_location("milk") == "hallway");
  CHECK(g.holdings("john") == std::vector<std::string>{"milk"});
  g.apply(frame(Drop{"john", "milk"}));
  g.apply(frame(Move{{"john"}, "garden", {}}));
  CHECK(g.item_location("milk") == "hallway");
  CHECK(g.holdings("john").empty());
  CHECK_THROWS_AS(g.item_location("apple"), UnresolvedError);
}

TEST_CASE("holdings keep pickup order and transfer on give") {
  WorldGraph g;
  g.apply(frame(Move{{"fred"}, "park", {}}));
  g.apply(frame(Move{{"bill"}, "park", {}}));
  g.apply(frame(Take{"fred", "apple"}));
  g.apply(frame(Take{"fred", "football"}));
  CHECK(g.holdings("fred") == std::vector<std::string>{"apple", "football"});
  g.apply(frame(Give{"fred", "bill", "apple"}));
  CHECK(g.holdings("fred") == std::vector<std::string>{"football"});
  CHECK(g.holdings("bill") == std::vector<std::string>{"apple"});
}

TEST_CASE("dropping an item never held adds no holder edge") {
  WorldGraph g;
  g.apply(frame(Move{{"mary"}, "park", {}}));
  g.apply(frame(Drop{"mary", "apple"}));
  CHECK(g.edge("mary", "apple") == nullptr);
}

TEST_CASE("item history replays the episodic log") {
  WorldGraph g;
  g.apply(frame(Move{{"mary"}, "kitchen", {}}));
  g.apply(frame(Take{"mary", "football"}));
  g.apply(frame(Move{{"mary"}, "office", {}}));
  g.apply(frame(Move{{"mary"}, "garden", {}}));
  g.apply(frame(Move{{"mary"}, "office", {}}));
  CHECK(g.item_location_before("football", "garden") == "office");
  // Most recent arrival at the office came from the garden.
  CHECK(g.item_location_before("football", "office") == "garden");
  CHECK_THROWS_AS(g.item_location_before("football", "kitchen"), UnresolvedError);
}

TEST_CASE("actor history orders by time marker before event order") {
  WorldGraph g;
  g.apply(frame(Move{{"julie"}, "school", {}}, 2));
  g.apply(frame(Move{{"julie"}, "park", {}}, 0));
  g.apply(frame(Move{{"julie"}, "cinema", {}}, 1));
  CHECK(g.actor_location_before("julie", "school") == "cinema");
  CHECK(g.actor_location_before("julie", "cinema") == "park");
  CHECK_THROWS_AS(g.actor_location_before("julie", "park"), UnresolvedError);
}

TEST_CASE("truth values for location claims") {
  WorldGraph g;
  g.apply(frame(Move{{"mary"}, "kitchen", {}}));
  CHECK(g.truth_query("mary", "kitchen") == Truth::kYes);
  CHECK(g.truth_query("mary", "office") == Truth::kNo);
  g.apply(negation("mary", "kitchen"));
  CHECK(g.truth_query("mary", "kitchen") == Truth::kNo);
  CHECK(g.truth_query("mary", "office") == Truth::kMaybe);
  CHECK_FALSE(g.locate("mary"));
  g.apply(frame(Indefinite{"mary", {"park", "school"}}));
  CHECK(g.truth_query("mary", "park") == Truth::kMaybe);
  CHECK(g.truth_query("mary", "school") == Truth::kMaybe);
  CHECK(g.truth_query("mary", "office") == Truth::kNo);
  g.apply(frame(Move{{"mary"}, "park", {}}));
  CHECK(g.truth_query("mary", "park") == Truth::kYes);
  CHECK(g.truth_query("mary", "school") == Truth::kNo);
  CHECK(g.truth_query("nobody", "park") == Truth::kMaybe);
  CHECK(truth_word(Truth::kMaybe) == "maybe");
}

TEST_CASE("directed relation chains") {
  WorldGraph g;
  g.apply(frame(Relation{"chest", "bigger", "box"}));
  g.apply(frame(Relation{"box", "bigger", "chocolate"}));
  CHECK(g.relation_chain("chest", "bigger", "chocolate"));
  CHECK_FALSE(g.relation_chain("chocolate", "bigger", "chest"));
  CHECK_FALSE(g.relation_chain("chest", "bigger", "suitcase"));
}

TEST_CASE("path query over relation edges") {
  WorldGraph g;
  g.apply(frame(Relation{"kitchen", "north", "hallway"}));
  g.apply(frame(Relation{"garden", "east", "kitchen"}));
  g.apply(frame(Move{{"mary"}, "hallway", {}}));
  auto p = g.path_query("hallway", "garden");
  CHECK(p.vertices == std::vector<std::string>{"hallway", "kitchen", "garden"});
  REQUIRE(p.hops.size() == 2);
  CHECK(p.hops[0] == PathHop{"hallway", "kitchen", "north", false});
  CHECK(p.hops[1] == PathHop{"kitchen", "garden", "east", false});
  auto back = g.path_query("garden", "hallway");
  CHECK(back.hops[0].forward);
  // Location edges are not traversable.
  CHECK_THROWS_AS(g.path_query("mary", "garden"), NoPathError);
  CHECK_THROWS_AS(g.path_query("hallway", "attic"), NoPathError);
  CHECK(g.path_query("kitchen", "kitchen").hops.empty());
}

TEST_CASE("properties, induction lookups and motives") {
  WorldGraph g;
  g.apply(frame(Property{"lily", "species", "swan"}));
  g.apply(frame(Property{"lily", "colour", "white"}));
  g.apply(frame(Property{"greg", "species", "swan"}));
  CHECK(g.property("lily", "colour") == "white");
  CHECK_FALSE(g.property("greg", "colour"));
  CHECK(g.entities_with("species", "swan") == std::vector<std::string>{"greg", "lily"});
  g.apply(frame(Motive{"yann", "hungry"}));
  CHECK(g.motive("yann") == "hungry");
  CHECK_FALSE(g.motive("lily"));
}

TEST_CASE("dump and clear") {
  WorldGraph g;
  g.apply(frame(Move{{"mary"}, "kitchen", {}}));
  g.apply(frame(Move{{"mary"}, "garden", {}}));
  CHECK(g.dump() == "mary\tgarden\tat\t2\nmary\tkitchen\tat\t1-2\n");
  g.clear();
  CHECK(g.empty());
  CHECK(g.dump().empty());
  CHECK(g == WorldGraph{});
}
