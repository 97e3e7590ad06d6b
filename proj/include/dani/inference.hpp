#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dani/attribute_model.hpp"
#include "dani/corpus.hpp"
#include "dani/frames.hpp"
#include "dani/lexicon.hpp"
#include "dani/world_graph.hpp"

namespace dani {

enum class Source { kShortTerm, kLongTerm };

struct AnswerCandidate {
  std::vector<std::string> tokens;  // empty for the null sentinel
  double score = 0.0;
  Source source = Source::kLongTerm;

  bool is_null() const { return tokens.empty(); }
  static AnswerCandidate null(double score) { return AnswerCandidate{{}, score, Source::kLongTerm}; }
};

struct Answer {
  std::vector<std::string> tokens;
  std::string trace;
};

/// Selects among scored candidates (the null sentinel included). The top
/// candidate is accepted only when it strictly beats the runner-up and
/// every rejected candidate; otherwise it is rejected and the remainder
/// are scaled by (1 - weight to it). Ties at the top therefore fall
/// back to the first rejected candidate (lexicographically smallest), and
/// the null sentinel reaching the top ends the search. At most
/// cands.size() rounds.
AnswerCandidate refine_candidates(std::vector<AnswerCandidate> cands, const AttributeModel& model);

/// "north:fwd" when the hop runs from the stored subject to the object,
/// "north:rev" otherwise.
std::string oriented_attribute(const PathHop& hop);

/// Movement token for each hop. Supervised mode reads the fixed
/// relation/orientation table; weak mode generates from the model.
/// Throws UnresolvedError when a hop cannot be converted.
std::vector<std::string> path_to_directions(const PathResult& path, const AttributeModel& model,
                                            Mode mode, std::string* trace = nullptr);

/// Answers against the story graph and the frozen model. Resolution
/// failures surface as UnresolvedError / NoPathError; callers score them
/// as wrong.
Answer answer(const QueryFrame& query, const WorldGraph& graph, const AttributeModel& model,
              Mode mode);

/// Context attributes a training answer is associated with in the model,
/// e.g. {"hungry:motive"} for "where will X go". Empty for questions that
/// are answered from the story graph alone.
std::set<std::string> context_attributes(const QueryFrame& query, const WorldGraph& graph);

/// Weakly supervised path-finding training: for each training question,
/// align the gold direction tokens with the BFS path hops and record one
/// event {oriented relation attribute, token} per hop. `story_limit`
/// caps the stories consumed.
void train_weak_paths(const TaskSet& train, AttributeModel& model,
                      std::optional<std::size_t> story_limit = std::nullopt);

std::string number_word(std::size_t n);

}  // namespace dani
