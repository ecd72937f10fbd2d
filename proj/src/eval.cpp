#include "drs/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace drs {

namespace {

double micro_f(long matched, long produced, long gold) {
  long denom = produced + gold;
  return denom > 0 ? 2.0 * matched / denom : 0.0;
}

struct Triple {
  long matched = 0;
  long produced = 0;
  long gold = 0;
};

// Pairs system documents with gold documents: by doc_id when ids are unique
// on both sides, positionally otherwise. Returns system indices in gold order.
std::vector<int> pair_documents(const std::vector<ClausalForm>& system,
                                const std::vector<ClausalForm>& gold) {
  if (system.size() != gold.size())
    throw DrsError(ErrorCode::LengthMismatch,
                   std::to_string(system.size()) + " system documents vs " +
                       std::to_string(gold.size()) + " gold documents");

  std::map<std::string, int> by_id;
  bool unique = true;
  for (std::size_t i = 0; i < system.size() && unique; ++i)
    unique = by_id.emplace(system[i].doc_id, static_cast<int>(i)).second;
  if (unique) {
    std::set<std::string> gold_ids;
    for (const ClausalForm& g : gold) unique = unique && gold_ids.insert(g.doc_id).second;
    if (unique) {
      std::vector<int> order;
      for (const ClausalForm& g : gold) {
        auto it = by_id.find(g.doc_id);
        if (it == by_id.end())
          throw DrsError(ErrorCode::UnpairedDocument,
                         "no system document with id " + g.doc_id);
        order.push_back(it->second);
      }
      return order;
    }
  }
  std::vector<int> order(system.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return order;
}

void add_to(MatchResult& total, const MatchResult& r) {
  total.matched += r.matched;
  total.produced += r.produced;
  total.gold += r.gold;
}

}  // namespace

ClausalForm replacement_form(const std::string& doc_id, const std::string& raw_text) {
  ClausalForm form;
  form.doc_id = doc_id;
  form.raw_text = raw_text;
  Clause clause;
  clause.box = Term::variable("b0");
  clause.tag = OperatorTag::concept_of("concept", "n", "99");
  clause.args = {Term::constant("n.99"), Term::variable("x0")};
  form.clauses.push_back(std::move(clause));
  return form;
}

CorpusScore score_corpus(const std::vector<ClausalForm>& system,
                         const std::vector<ClausalForm>& gold, const MatchConfig& config,
                         const SynsetMap* synsets) {
  std::vector<int> order = pair_documents(system, gold);

  CorpusScore score;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    const ClausalForm& gold_doc = gold[d];
    const ClausalForm* sys_doc = &system[order[d]];
    DocScore doc;
    doc.doc_id = gold_doc.doc_id;
    doc.valid = validate(*sys_doc).valid;

    ClausalForm replaced;
    if (!doc.valid) {
      replaced = replacement_form(sys_doc->doc_id, sys_doc->raw_text);
      sys_doc = &replaced;
      ++score.ill_formed_count;
    }

    if (synsets != nullptr) {
      doc.result = match_score(normalize_senses(*sys_doc, *synsets),
                               normalize_senses(gold_doc, *synsets), config);
    } else {
      doc.result = match_score(*sys_doc, gold_doc, config);
    }
    if (doc.result.matched == doc.result.produced && doc.result.matched == doc.result.gold &&
        doc.result.gold > 0)
      ++score.perfect_count;
    score.per_doc.push_back(std::move(doc));
  }

  std::vector<MatchResult> results;
  results.reserve(score.per_doc.size());
  for (const DocScore& doc : score.per_doc) results.push_back(doc.result);
  score.micro = micro_average(results);
  return score;
}

namespace {

enum class Category { Operators, Roles, Synsets };

Category category_of(const OperatorTag& tag) {
  switch (tag.kind) {
    case OperatorKind::Role: return Category::Roles;
    case OperatorKind::Concept: return Category::Synsets;
    default: return Category::Operators;
  }
}

}  // namespace

CategoryScores fine_grained(const ClausalForm& system, const ClausalForm& gold,
                            const MatchResult& result, bool include_ref) {
  ClausalForm sys_form = include_ref ? system : strip_redundant_refs(system);
  ClausalForm gold_form = include_ref ? gold : strip_redundant_refs(gold);
  MappingEvaluation eval = evaluate_mapping_detailed(sys_form, gold_form, result.mapping, true);

  CategoryScores scores;
  for (const std::string& pos : {"n", "v", "a", "r"}) scores.synsets_by_pos[pos] = MatchResult{};

  auto bucket = [&](const OperatorTag& tag) -> MatchResult& {
    switch (category_of(tag)) {
      case Category::Roles: return scores.roles;
      case Category::Synsets: return scores.synsets;
      default: return scores.operators;
    }
  };

  for (std::size_t c = 0; c < sys_form.clauses.size(); ++c) {
    const OperatorTag& tag = sys_form.clauses[c].tag;
    MatchResult& row = bucket(tag);
    ++row.produced;
    if (eval.system_matched[c]) ++row.matched;
    if (tag.kind == OperatorKind::Concept) {
      auto it = scores.synsets_by_pos.find(tag.pos);
      if (it != scores.synsets_by_pos.end()) {
        ++it->second.produced;
        if (eval.system_matched[c]) ++it->second.matched;
      }
    }
  }
  for (std::size_t c = 0; c < gold_form.clauses.size(); ++c) {
    const OperatorTag& tag = gold_form.clauses[c].tag;
    ++bucket(tag).gold;
    if (tag.kind == OperatorKind::Concept) {
      auto it = scores.synsets_by_pos.find(tag.pos);
      if (it != scores.synsets_by_pos.end()) ++it->second.gold;
    }
  }

  finish_scores(scores.operators);
  finish_scores(scores.roles);
  finish_scores(scores.synsets);
  for (auto& [pos, row] : scores.synsets_by_pos) finish_scores(row);
  return scores;
}

ClausalForm oracle_transform(const ClausalForm& system, const ClausalForm& gold,
                             OracleMode mode) {
  ClausalForm out = system;

  if (mode == OracleMode::Senses) {
    // Gold concept clauses by (lemma, pos), each usable once, in gold order.
    std::map<std::pair<std::string, std::string>, std::vector<const Clause*>> pool;
    for (const Clause& g : gold.clauses)
      if (g.tag.kind == OperatorKind::Concept) pool[{g.tag.name, g.tag.pos}].push_back(&g);
    std::map<std::pair<std::string, std::string>, std::size_t> next;
    for (Clause& clause : out.clauses) {
      if (clause.tag.kind != OperatorKind::Concept) continue;
      auto key = std::make_pair(clause.tag.name, clause.tag.pos);
      auto it = pool.find(key);
      if (it == pool.end() || next[key] >= it->second.size()) continue;
      const Clause* donor = it->second[next[key]++];
      clause.tag.sense = donor->tag.sense;
      clause.args[0] = Term::constant(clause.tag.pos + '.' + clause.tag.sense);
    }
    return out;
  }

  // Synsets and Roles: greedy pairing in clause order, each gold clause once.
  OperatorKind target = mode == OracleMode::Synsets ? OperatorKind::Concept : OperatorKind::Role;
  std::vector<const Clause*> donors;
  for (const Clause& g : gold.clauses)
    if (g.tag.kind == target) donors.push_back(&g);
  std::size_t next = 0;
  for (Clause& clause : out.clauses) {
    if (clause.tag.kind != target || next >= donors.size()) continue;
    const Clause* donor = donors[next++];
    if (target == OperatorKind::Concept) {
      clause.tag.name = donor->tag.name;
      clause.tag.pos = donor->tag.pos;
      clause.tag.sense = donor->tag.sense;
      clause.args[0] = Term::constant(clause.tag.pos + '.' + clause.tag.sense);
    } else {
      clause.tag.name = donor->tag.name;
    }
  }
  return out;
}

std::vector<std::vector<double>> pairwise_matrix(
    const std::vector<std::vector<ClausalForm>>& outputs, const MatchConfig& config,
    const SynsetMap* synsets) {
  const std::size_t n = outputs.size();
  for (const auto& corpus : outputs) {
    if (corpus.size() != outputs[0].size())
      throw DrsError(ErrorCode::LengthMismatch, "corpora differ in length");
  }
  std::vector<std::vector<double>> matrix(
      n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      matrix[i][j] = score_corpus(outputs[i], outputs[j], config, synsets).micro.f1;
    }
  }
  return matrix;
}

MatchResult ensemble_oracle(const std::vector<std::vector<ClausalForm>>& outputs,
                            const std::vector<ClausalForm>& gold, const MatchConfig& config,
                            const SynsetMap* synsets) {
  if (outputs.empty())
    throw DrsError(ErrorCode::EmptyTraining, "no system outputs to combine");
  std::vector<CorpusScore> scores;
  scores.reserve(outputs.size());
  for (const auto& corpus : outputs) scores.push_back(score_corpus(corpus, gold, config, synsets));

  std::vector<MatchResult> kept;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    int best = 0;
    for (std::size_t s = 1; s < scores.size(); ++s) {
      if (scores[s].per_doc[d].result.f1 > scores[best].per_doc[d].result.f1)
        best = static_cast<int>(s);
    }
    kept.push_back(scores[best].per_doc[d].result);
  }
  return micro_average(kept);
}

SignificanceResult approx_randomization(const std::vector<MatchResult>& system_a,
                                        const std::vector<MatchResult>& system_b, int rounds,
                                        double alpha, std::uint64_t seed) {
  if (system_a.size() != system_b.size())
    throw DrsError(ErrorCode::LengthMismatch, "per-document score lists differ in length");
  if (rounds < 1)
    throw DrsError(ErrorCode::InvalidConfig, "R must be at least 1");

  Triple ta, tb;
  for (const MatchResult& r : system_a) {
    ta.matched += r.matched;
    ta.produced += r.produced;
    ta.gold += r.gold;
  }
  for (const MatchResult& r : system_b) {
    tb.matched += r.matched;
    tb.produced += r.produced;
    tb.gold += r.gold;
  }
  double observed = micro_f(ta.matched, ta.produced, ta.gold) -
                    micro_f(tb.matched, tb.produced, tb.gold);

  std::mt19937_64 engine(seed);
  int at_least = 0;
  for (int r = 0; r < rounds; ++r) {
    Triple ra = ta, rb = tb;
    for (std::size_t d = 0; d < system_a.size(); ++d) {
      if ((engine() & 1) == 0) continue;
      const MatchResult& a = system_a[d];
      const MatchResult& b = system_b[d];
      ra.matched += b.matched - a.matched;
      ra.produced += b.produced - a.produced;
      ra.gold += b.gold - a.gold;
      rb.matched += a.matched - b.matched;
      rb.produced += a.produced - b.produced;
      rb.gold += a.gold - b.gold;
    }
    double delta = micro_f(ra.matched, ra.produced, ra.gold) -
                   micro_f(rb.matched, rb.produced, rb.gold);
    if (std::fabs(delta) >= std::fabs(observed)) ++at_least;
  }

  SignificanceResult result;
  result.observed_delta = observed;
  result.rounds = rounds;
  result.alpha = alpha;
  result.p_value = static_cast<double>(at_least + 1) / (rounds + 1);
  result.significant = result.p_value < alpha;
  return result;
}

std::vector<LengthBucket> length_breakdown(const std::vector<MatchResult>& per_doc,
                                           const std::vector<int>& token_counts,
                                           int min_bucket_docs) {
  if (per_doc.size() != token_counts.size())
    throw DrsError(ErrorCode::LengthMismatch, "scores and token counts differ in length");

  std::map<int, std::vector<std::size_t>> by_length;
  for (std::size_t d = 0; d < per_doc.size(); ++d) by_length[token_counts[d]].push_back(d);

  std::vector<LengthBucket> buckets;
  LengthBucket acc;
  bool open = false;
  for (const auto& [length, docs] : by_length) {
    if (!open) {
      acc = LengthBucket{};
      acc.min_tokens = length;
      open = true;
    }
    acc.max_tokens = length;
    for (std::size_t d : docs) {
      add_to(acc.micro, per_doc[d]);
      ++acc.doc_count;
    }
    if (acc.doc_count >= min_bucket_docs) {
      finish_scores(acc.micro);
      buckets.push_back(acc);
      open = false;
    }
  }
  if (open) {
    // A short leftover bucket joins the previous one.
    if (!buckets.empty()) {
      LengthBucket& last = buckets.back();
      last.max_tokens = acc.max_tokens;
      last.doc_count += acc.doc_count;
      add_to(last.micro, acc.micro);
      finish_scores(last.micro);
    } else {
      finish_scores(acc.micro);
      buckets.push_back(acc);
    }
  }
  return buckets;
}

int whitespace_token_count(const std::string& text) {
  int count = 0;
  bool in_token = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

}  // namespace drs
