#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drs/referee.hpp"
#include "drs/types.hpp"

namespace drs {

enum class SearchMode { HillClimb, Exhaustive };

struct MatchConfig {
  int restarts = 10;
  std::uint64_t seed = 1;
  SearchMode search = SearchMode::HillClimb;
  bool include_ref = false;  // keep redundant REF clauses when true
  bool smart_init = true;    // seed restart 0 from co-occurring predicates
  int exhaustive_bound = 10; // max variables per kind on the smaller side
};

// Injective partial map from system variables to gold variables.
using VariableMapping = std::map<std::string, std::string>;

struct MatchResult {
  VariableMapping mapping;
  long matched = 0;
  long produced = 0;
  long gold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Fills precision/recall/f1 from the counts (f1 == 2m/(p+g)).
void finish_scores(MatchResult& result);

// Removes REF clauses whose referent occurs with a concept predicate in some
// basic condition; all other clauses are preserved in order.
ClausalForm strip_redundant_refs(const ClausalForm& form);

// Best injective kind-preserving variable mapping between the two forms and
// the clause counts under it. Redundant REFs are stripped from both sides
// unless config.include_ref. Deterministic for a fixed seed.
MatchResult match_score(const ClausalForm& system, const ClausalForm& gold,
                        const MatchConfig& config = {});

// Scores a fixed mapping without searching. Pairs naming unknown variables
// are ignored; non-injective mappings are rejected (InvalidConfig).
MatchResult evaluate_mapping(const ClausalForm& system, const ClausalForm& gold,
                             const VariableMapping& mapping, bool include_ref = false);

// Like evaluate_mapping but reports which clauses matched. Flag vectors are
// aligned with the stripped clause lists (see strip_redundant_refs).
struct MappingEvaluation {
  long matched = 0;
  std::vector<bool> system_matched;
  std::vector<bool> gold_matched;
};
MappingEvaluation evaluate_mapping_detailed(const ClausalForm& system, const ClausalForm& gold,
                                            const VariableMapping& mapping,
                                            bool include_ref = false);

// Sums matched/produced/gold over the results and recomputes P/R/F.
MatchResult micro_average(const std::vector<MatchResult>& results);

}  // namespace drs
