#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drs/counter.hpp"
#include "drs/synset.hpp"
#include "drs/types.hpp"

namespace drs {

struct DocScore {
  std::string doc_id;
  MatchResult result;
  bool valid = true;
};

struct CorpusScore {
  std::vector<DocScore> per_doc;
  MatchResult micro;
  int perfect_count = 0;
  int ill_formed_count = 0;
};

// Scores a system corpus against gold. System documents that fail validation
// are replaced by a single clause that matches nothing (matched 0,
// produced 1). When a synset map is supplied both sides are normalized before
// matching. Documents are paired by doc_id when ids are unique on both sides,
// positionally otherwise.
CorpusScore score_corpus(const std::vector<ClausalForm>& system,
                         const std::vector<ClausalForm>& gold, const MatchConfig& config = {},
                         const SynsetMap* synsets = nullptr);

// The single-clause stand-in for an ill-formed document.
ClausalForm replacement_form(const std::string& doc_id, const std::string& raw_text);

// Per-category counts under a previously computed mapping (no re-search).
// Operators/roles/synsets partition the clauses; synsets_by_pos refines the
// synsets row (keys n, v, a, r).
struct CategoryScores {
  MatchResult operators;
  MatchResult roles;
  MatchResult synsets;
  std::map<std::string, MatchResult> synsets_by_pos;
};
CategoryScores fine_grained(const ClausalForm& system, const ClausalForm& gold,
                            const MatchResult& result, bool include_ref = false);

enum class OracleMode { Senses, Synsets, Roles };

// Rewrites system concept senses / full synsets / role names from the gold
// side (greedy, each gold clause usable once); other clauses are unchanged.
ClausalForm oracle_transform(const ClausalForm& system, const ClausalForm& gold, OracleMode mode);

// cell (i, j) = micro F of outputs[i] scored with outputs[j] as gold.
// Diagonal cells are left as NaN.
std::vector<std::vector<double>> pairwise_matrix(
    const std::vector<std::vector<ClausalForm>>& outputs, const MatchConfig& config = {},
    const SynsetMap* synsets = nullptr);

// Per document keeps the system output with the highest f1 (ties: lowest
// system index) and micro-averages the kept results.
MatchResult ensemble_oracle(const std::vector<std::vector<ClausalForm>>& outputs,
                            const std::vector<ClausalForm>& gold, const MatchConfig& config = {},
                            const SynsetMap* synsets = nullptr);

struct SignificanceResult {
  double observed_delta = 0.0;  // micro F(A) - micro F(B)
  double p_value = 1.0;
  int rounds = 0;
  double alpha = 0.05;
  bool significant = false;
};

// Paired approximate randomization over per-document counts: each round swaps
// every document's A/B triples with probability 1/2 and recomputes the micro
// F difference; p = (#rounds with |delta| >= |observed| + 1) / (R + 1).
SignificanceResult approx_randomization(const std::vector<MatchResult>& system_a,
                                        const std::vector<MatchResult>& system_b, int rounds,
                                        double alpha, std::uint64_t seed);

struct LengthBucket {
  int min_tokens = 0;
  int max_tokens = 0;
  int doc_count = 0;
  MatchResult micro;
};

// Buckets documents by exact token count; buckets with fewer than
// min_bucket_docs documents are merged upward, a short final bucket into the
// previous one.
std::vector<LengthBucket> length_breakdown(const std::vector<MatchResult>& per_doc,
                                           const std::vector<int>& token_counts,
                                           int min_bucket_docs = 5);

int whitespace_token_count(const std::string& text);

}  // namespace drs
