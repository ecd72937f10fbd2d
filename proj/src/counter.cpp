#include "drs/counter.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <unordered_map>

namespace drs {

namespace {

// A clause instantiated under a variable mapping is a 4-token key: operator,
// box, and up to two arguments. Tokens carry a 2-bit tag so that gold
// variables, unmapped system variables and fixed tokens can never collide.
using Key = std::array<std::uint32_t, 4>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t v : k) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::uint32_t kAbsent = 3;

std::uint32_t fixed_code(std::uint32_t id) { return id << 2; }
std::uint32_t gold_code(int g) { return (static_cast<std::uint32_t>(g) << 2) | 1; }
std::uint32_t unmapped_code(int s) { return (static_cast<std::uint32_t>(s) << 2) | 2; }

using KeyCount = std::unordered_map<Key, int, KeyHash>;

struct VarSide {
  std::vector<std::string> names;  // first-occurrence order
  std::vector<VariableKind> kinds;
  std::unordered_map<std::string, int> index;
};

VarSide build_side(const ClausalForm& form) {
  std::vector<Violation> ignored;
  VariableTyping typing = infer_variable_types(form, ignored);
  VarSide side;
  auto add = [&](const Term& t) {
    if (!t.is_variable()) return;
    if (side.index.emplace(t.text, static_cast<int>(side.names.size())).second) {
      side.names.push_back(t.text);
      side.kinds.push_back(typing.kind_of(t.text));
    }
  };
  for (const Clause& clause : form.clauses) {
    add(clause.box);
    for (const Term& arg : clause.args) add(arg);
  }
  return side;
}

struct Slot {
  int var = -1;                   // side-local variable index, -1 for fixed
  std::uint32_t fixed = kAbsent;  // fixed token code when var == -1
};

struct EncodedClause {
  std::uint32_t op = 0;
  Slot box;
  Slot args[2];
};

struct Rng {
  std::mt19937_64 engine;
  std::uint64_t below(std::uint64_t n) { return n ? engine() % n : 0; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
};

Rng restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  Rng rng;
  rng.engine.seed(seq);
  return rng;
}

// Smart-init anchors: concept lemmas and role/comparison names.
struct Anchor {
  std::string key;  // empty when the clause is not an anchor
  int vars[3] = {-1, -1, -1};
};

class MatchInstance {
 public:
  MatchInstance(const ClausalForm& system, const ClausalForm& gold)
      : sys_(build_side(system)), gold_(build_side(gold)) {
    encode(system, sys_, sys_clauses_, sys_anchors_);
    encode(gold, gold_, gold_clauses_, gold_anchors_);

    clauses_of_var_.resize(sys_.names.size());
    for (std::size_t c = 0; c < sys_clauses_.size(); ++c) {
      std::set<int> vars;
      const EncodedClause& e = sys_clauses_[c];
      if (e.box.var >= 0) vars.insert(e.box.var);
      for (const Slot& s : e.args)
        if (s.var >= 0) vars.insert(s.var);
      for (int v : vars) clauses_of_var_[v].push_back(static_cast<int>(c));
    }

    gold_keys_.reserve(gold_clauses_.size());
    for (const EncodedClause& e : gold_clauses_) {
      Key k = gold_key(e);
      gold_keys_.push_back(k);
      ++gold_count_[k];
    }
    reset();
  }

  int sys_var_count() const { return static_cast<int>(sys_.names.size()); }
  int gold_var_count() const { return static_cast<int>(gold_.names.size()); }
  const VarSide& sys_side() const { return sys_; }
  const VarSide& gold_side() const { return gold_; }
  int matched() const { return matched_; }
  int image_of(int s) const { return mapping_[s]; }
  int owner_of(int g) const { return owner_[g]; }

  int kind_count(const VarSide& side, VariableKind kind) const {
    return static_cast<int>(std::count(side.kinds.begin(), side.kinds.end(), kind));
  }

  void reset() {
    mapping_.assign(sys_.names.size(), -1);
    owner_.assign(gold_.names.size(), -1);
    sys_count_.clear();
    matched_ = 0;
    cur_key_.resize(sys_clauses_.size());
    for (std::size_t c = 0; c < sys_clauses_.size(); ++c) {
      cur_key_[c] = system_key(sys_clauses_[c]);
      matched_ += add_key(cur_key_[c]);
    }
  }

  // Remaps s to g (-1 unmaps); g must be free. Returns the matched delta.
  int assign(int s, int g) {
    int delta = 0;
    for (int c : clauses_of_var_[s]) delta += remove_key(cur_key_[c]);
    if (mapping_[s] >= 0) owner_[mapping_[s]] = -1;
    mapping_[s] = g;
    if (g >= 0) owner_[g] = s;
    for (int c : clauses_of_var_[s]) {
      cur_key_[c] = system_key(sys_clauses_[c]);
      delta += add_key(cur_key_[c]);
    }
    matched_ += delta;
    return delta;
  }

  int swap_images(int s1, int s2) {
    touched_.clear();
    for (int c : clauses_of_var_[s1]) touched_.push_back(c);
    for (int c : clauses_of_var_[s2]) touched_.push_back(c);
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());

    int delta = 0;
    for (int c : touched_) delta += remove_key(cur_key_[c]);
    int g1 = mapping_[s1], g2 = mapping_[s2];
    mapping_[s1] = g2;
    mapping_[s2] = g1;
    if (g1 >= 0) owner_[g1] = s2;
    if (g2 >= 0) owner_[g2] = s1;
    for (int c : touched_) {
      cur_key_[c] = system_key(sys_clauses_[c]);
      delta += add_key(cur_key_[c]);
    }
    matched_ += delta;
    return delta;
  }

  // Pairs variables that co-occur in concept clauses with the same lemma and
  // in role/comparison clauses with the same name, scanning both sides in
  // clause order. A gold clause is consumed by the first system clause whose
  // variables do not contradict the pairs made so far.
  void smart_init() {
    std::vector<bool> consumed(gold_clauses_.size(), false);
    for (std::size_t i = 0; i < sys_anchors_.size(); ++i) {
      const Anchor& sa = sys_anchors_[i];
      if (sa.key.empty()) continue;
      for (std::size_t j = 0; j < gold_anchors_.size(); ++j) {
        if (consumed[j]) continue;
        const Anchor& ga = gold_anchors_[j];
        if (ga.key != sa.key) continue;
        bool contradicts = false;
        for (int p = 0; p < 3 && !contradicts; ++p) {
          int sv = sa.vars[p], gv = ga.vars[p];
          if (sv < 0 || gv < 0) continue;
          if (mapping_[sv] >= 0 && mapping_[sv] != gv) contradicts = true;
          else if (owner_[gv] >= 0 && owner_[gv] != sv) contradicts = true;
        }
        if (contradicts) continue;
        for (int p = 0; p < 3; ++p) {
          int sv = sa.vars[p], gv = ga.vars[p];
          if (sv >= 0 && gv >= 0 && sys_.kinds[sv] == gold_.kinds[gv] && mapping_[sv] < 0 &&
              owner_[gv] < 0)
            assign(sv, gv);
        }
        consumed[j] = true;
        break;
      }
    }
  }

  void random_init(Rng& rng) {
    for (VariableKind kind : {VariableKind::BoxLabel, VariableKind::Referent}) {
      std::vector<int> sys_vars = vars_of_kind(sys_, kind);
      std::vector<int> gold_vars = vars_of_kind(gold_, kind);
      rng.shuffle(sys_vars);
      rng.shuffle(gold_vars);
      std::size_t m = std::min(sys_vars.size(), gold_vars.size());
      for (std::size_t t = 0; t < m; ++t) assign(sys_vars[t], gold_vars[t]);
    }
  }

  // Applies the single best gain move (remap, unmap or swap) until no move
  // increases the matched count. Ties take the first move in enumeration
  // order: system variables in first-occurrence order, gold candidates
  // likewise, swaps last.
  void climb() {
    const int ns = sys_var_count();
    while (true) {
      int best_delta = 0;
      int best_kind = -1;  // 0 assign, 1 swap
      int best_a = -1, best_b = -1;
      for (int s = 0; s < ns; ++s) {
        int old = mapping_[s];
        for (int g = 0; g < gold_var_count(); ++g) {
          if (gold_.kinds[g] != sys_.kinds[s] || owner_[g] >= 0 || g == old) continue;
          int d = assign(s, g);
          if (d > best_delta) {
            best_delta = d;
            best_kind = 0;
            best_a = s;
            best_b = g;
          }
          assign(s, old);
        }
        if (old >= 0) {
          int d = assign(s, -1);
          if (d > best_delta) {
            best_delta = d;
            best_kind = 0;
            best_a = s;
            best_b = -1;
          }
          assign(s, old);
        }
      }
      for (int s1 = 0; s1 < ns; ++s1) {
        for (int s2 = s1 + 1; s2 < ns; ++s2) {
          if (sys_.kinds[s1] != sys_.kinds[s2]) continue;
          if (mapping_[s1] < 0 && mapping_[s2] < 0) continue;
          int d = swap_images(s1, s2);
          if (d > best_delta) {
            best_delta = d;
            best_kind = 1;
            best_a = s1;
            best_b = s2;
          }
          swap_images(s1, s2);
        }
      }
      if (best_delta <= 0) break;
      if (best_kind == 0) assign(best_a, best_b);
      else swap_images(best_a, best_b);
    }
  }

  // Exhaustive search over all maximal kind-preserving injections, seeded and
  // pruned with the current mapping as a lower bound.
  void exhaustive() {
    order_.clear();
    for (int s = 0; s < sys_var_count(); ++s) order_.push_back(s);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return clauses_of_var_[a].size() > clauses_of_var_[b].size();
    });

    best_matched_ = matched_;
    best_mapping_ = mapping_;

    for (VariableKind kind : {VariableKind::BoxLabel, VariableKind::Referent}) {
      int idx = kind == VariableKind::BoxLabel ? 0 : 1;
      skips_left_[idx] =
          std::max(0, kind_count(sys_, kind) - kind_count(gold_, kind));
    }

    cnt_undecided_.assign(sys_clauses_.size(), 0);
    pending_ = 0;
    for (std::size_t c = 0; c < sys_clauses_.size(); ++c) {
      std::set<int> vars;
      const EncodedClause& e = sys_clauses_[c];
      if (e.box.var >= 0) vars.insert(e.box.var);
      for (const Slot& s : e.args)
        if (s.var >= 0) vars.insert(s.var);
      cnt_undecided_[c] = static_cast<int>(vars.size());
      if (cnt_undecided_[c] > 0) ++pending_;
    }

    for (int s = 0; s < sys_var_count(); ++s)
      if (mapping_[s] >= 0) assign(s, -1);

    dfs(0);

    // Restore the best mapping found.
    for (int s = 0; s < sys_var_count(); ++s)
      if (mapping_[s] >= 0) assign(s, -1);
    for (int s = 0; s < sys_var_count(); ++s)
      if (best_mapping_[s] >= 0) assign(s, best_mapping_[s]);
  }

  VariableMapping mapping_names() const {
    VariableMapping names;
    for (int s = 0; s < sys_var_count(); ++s)
      if (mapping_[s] >= 0) names[sys_.names[s]] = gold_.names[mapping_[s]];
    return names;
  }

  // Marks, per key, the first min(system, gold) clauses on each side.
  MappingEvaluation detailed() const {
    MappingEvaluation eval;
    eval.matched = matched_;
    eval.system_matched.assign(sys_clauses_.size(), false);
    eval.gold_matched.assign(gold_clauses_.size(), false);
    KeyCount quota;
    for (const auto& [key, count] : sys_count_) {
      auto it = gold_count_.find(key);
      if (it != gold_count_.end()) quota[key] = std::min(count, it->second);
    }
    KeyCount used = quota;
    for (std::size_t c = 0; c < sys_clauses_.size(); ++c) {
      auto it = used.find(cur_key_[c]);
      if (it != used.end() && it->second > 0) {
        --it->second;
        eval.system_matched[c] = true;
      }
    }
    used = quota;
    for (std::size_t c = 0; c < gold_keys_.size(); ++c) {
      auto it = used.find(gold_keys_[c]);
      if (it != used.end() && it->second > 0) {
        --it->second;
        eval.gold_matched[c] = true;
      }
    }
    return eval;
  }

  std::vector<int> vars_of_kind(const VarSide& side, VariableKind kind) const {
    std::vector<int> out;
    for (std::size_t v = 0; v < side.kinds.size(); ++v)
      if (side.kinds[v] == kind) out.push_back(static_cast<int>(v));
    return out;
  }

 private:
  void encode(const ClausalForm& form, const VarSide& side, std::vector<EncodedClause>& out,
              std::vector<Anchor>& anchors) {
    for (const Clause& clause : form.clauses) {
      EncodedClause e;
      e.op = intern(clause.tag.token() + "/" + std::to_string(clause.args.size()));
      e.box = encode_slot(clause.box, side);
      for (std::size_t a = 0; a < clause.args.size() && a < 2; ++a)
        e.args[a] = encode_slot(clause.args[a], side);
      out.push_back(e);

      Anchor anchor;
      switch (clause.tag.kind) {
        case OperatorKind::Concept: anchor.key = "C " + clause.tag.name; break;
        case OperatorKind::Role: anchor.key = "R " + clause.tag.name; break;
        case OperatorKind::Comparison: anchor.key = "X " + clause.tag.name; break;
        default: break;
      }
      if (!anchor.key.empty()) {
        const Slot slots[3] = {e.box, e.args[0], e.args[1]};
        for (int p = 0; p < 3; ++p) {
          anchor.vars[p] = slots[p].var;
          anchor.consts[p] = slots[p].fixed;
        }
      }
      anchors.push_back(std::move(anchor));
    }
  }

  Slot encode_slot(const Term& term, const VarSide& side) {
    Slot slot;
    if (term.is_variable()) {
      slot.var = side.index.at(term.text);
    } else {
      slot.fixed = fixed_code(intern("\"" + term.text));
    }
    return slot;
  }

  std::uint32_t intern(const std::string& token) {
    auto [it, inserted] = interned_.emplace(token, static_cast<std::uint32_t>(interned_.size()));
    (void)inserted;
    return it->second;
  }

  std::uint32_t system_token(const Slot& slot) const {
    if (slot.var < 0) return slot.fixed;
    int g = mapping_[slot.var];
    return g >= 0 ? gold_code(g) : unmapped_code(slot.var);
  }

  Key system_key(const EncodedClause& e) const {
    return {e.op, system_token(e.box), system_token(e.args[0]), system_token(e.args[1])};
  }

  static std::uint32_t gold_token(const Slot& slot) {
    return slot.var < 0 ? slot.fixed : gold_code(slot.var);
  }

  static Key gold_key(const EncodedClause& e) {
    return {e.op, gold_token(e.box), gold_token(e.args[0]), gold_token(e.args[1])};
  }

  int add_key(const Key& key) {
    int& count = sys_count_[key];
    ++count;
    auto it = gold_count_.find(key);
    return (it != gold_count_.end() && count <= it->second) ? 1 : 0;
  }

  int remove_key(const Key& key) {
    auto it = sys_count_.find(key);
    int delta = 0;
    auto git = gold_count_.find(key);
    if (git != gold_count_.end() && it->second <= git->second) delta = -1;
    if (--it->second == 0) sys_count_.erase(it);
    return delta;
  }

  void decide(int s) {
    for (int c : clauses_of_var_[s])
      if (--cnt_undecided_[c] == 0) --pending_;
  }

  void undecide(int s) {
    for (int c : clauses_of_var_[s])
      if (cnt_undecided_[c]++ == 0) ++pending_;
  }

  void dfs(std::size_t depth) {
    if (matched_ + pending_ <= best_matched_) return;
    if (depth == order_.size()) {
      if (matched_ > best_matched_) {
        best_matched_ = matched_;
        best_mapping_ = mapping_;
      }
      return;
    }
    int s = order_[depth];
    int kind_idx = sys_.kinds[s] == VariableKind::BoxLabel ? 0 : 1;
    decide(s);
    for (int g = 0; g < gold_var_count(); ++g) {
      if (gold_.kinds[g] != sys_.kinds[s] || owner_[g] >= 0) continue;
      assign(s, g);
      dfs(depth + 1);
      assign(s, -1);
    }
    if (skips_left_[kind_idx] > 0) {
      --skips_left_[kind_idx];
      dfs(depth + 1);
      ++skips_left_[kind_idx];
    }
    undecide(s);
  }

  VarSide sys_;
  VarSide gold_;
  std::unordered_map<std::string, std::uint32_t> interned_;
  std::vector<EncodedClause> sys_clauses_;
  std::vector<EncodedClause> gold_clauses_;
  std::vector<Anchor> sys_anchors_;
  std::vector<Anchor> gold_anchors_;
  std::vector<std::vector<int>> clauses_of_var_;
  std::vector<Key> gold_keys_;
  KeyCount gold_count_;

  std::vector<int> mapping_;
  std::vector<int> owner_;
  std::vector<Key> cur_key_;
  KeyCount sys_count_;
  int matched_ = 0;
  std::vector<int> touched_;

  // exhaustive-search state
  std::vector<int> order_;
  std::vector<int> best_mapping_;
  int best_matched_ = 0;
  int skips_left_[2] = {0, 0};
  std::vector<int> cnt_undecided_;
  int pending_ = 0;
};

MatchResult result_from(const MatchInstance& inst, long produced, long gold) {
  MatchResult result;
  result.mapping = inst.mapping_names();
  result.matched = inst.matched();
  result.produced = produced;
  result.gold = gold;
  finish_scores(result);
  return result;
}

}  // namespace

void finish_scores(MatchResult& result) {
  result.precision =
      result.produced > 0 ? static_cast<double>(result.matched) / result.produced : 0.0;
  result.recall = result.gold > 0 ? static_cast<double>(result.matched) / result.gold : 0.0;
  long denom = result.produced + result.gold;
  result.f1 = denom > 0 ? 2.0 * result.matched / denom : 0.0;
}

ClausalForm strip_redundant_refs(const ClausalForm& form) {
  std::set<std::string> with_concept;
  for (const Clause& clause : form.clauses) {
    if (clause.tag.kind == OperatorKind::Concept && clause.args.size() == 2 &&
        clause.args[1].is_variable())
      with_concept.insert(clause.args[1].text);
  }
  ClausalForm out;
  out.doc_id = form.doc_id;
  out.raw_text = form.raw_text;
  for (const Clause& clause : form.clauses) {
    if (clause.tag.kind == OperatorKind::Ref && !clause.args.empty() &&
        clause.args[0].is_variable() && with_concept.count(clause.args[0].text))
      continue;
    out.clauses.push_back(clause);
  }
  return out;
}

MatchResult match_score(const ClausalForm& system, const ClausalForm& gold,
                        const MatchConfig& config) {
  if (config.restarts < 1)
    throw DrsError(ErrorCode::InvalidConfig, "restarts must be at least 1");

  ClausalForm sys_form = config.include_ref ? system : strip_redundant_refs(system);
  ClausalForm gold_form = config.include_ref ? gold : strip_redundant_refs(gold);
  const long produced = static_cast<long>(sys_form.clauses.size());
  const long gold_count = static_cast<long>(gold_form.clauses.size());

  MatchInstance inst(sys_form, gold_form);

  if (config.search == SearchMode::Exhaustive) {
    for (VariableKind kind : {VariableKind::BoxLabel, VariableKind::Referent}) {
      int smaller = std::min(inst.kind_count(inst.sys_side(), kind),
                             inst.kind_count(inst.gold_side(), kind));
      if (smaller > config.exhaustive_bound)
        throw DrsError(ErrorCode::SearchSpaceTooLarge,
                       std::to_string(smaller) + " variables of one kind exceed the bound of " +
                           std::to_string(config.exhaustive_bound));
    }
    inst.smart_init();
    inst.climb();
    inst.exhaustive();
    return result_from(inst, produced, gold_count);
  }

  int best_matched = -1;
  VariableMapping best_names;
  for (int r = 0; r < config.restarts; ++r) {
    inst.reset();
    if (r == 0 && config.smart_init) {
      inst.smart_init();
    } else {
      Rng rng = restart_rng(config.seed, r);
      inst.random_init(rng);
    }
    inst.climb();
    if (inst.matched() > best_matched) {
      best_matched = inst.matched();
      best_names = inst.mapping_names();
    }
  }

  MatchResult result;
  result.mapping = std::move(best_names);
  result.matched = best_matched;
  result.produced = produced;
  result.gold = gold_count;
  finish_scores(result);
  return result;
}

namespace {

void apply_named_mapping(MatchInstance& inst, const VariableMapping& mapping) {
  for (const auto& [sys_name, gold_name] : mapping) {
    auto sit = inst.sys_side().index.find(sys_name);
    auto git = inst.gold_side().index.find(gold_name);
    if (sit == inst.sys_side().index.end() || git == inst.gold_side().index.end()) continue;
    if (inst.owner_of(git->second) >= 0)
      throw DrsError(ErrorCode::InvalidConfig,
                     "mapping is not injective at " + gold_name);
    inst.assign(sit->second, git->second);
  }
}

}  // namespace

MatchResult evaluate_mapping(const ClausalForm& system, const ClausalForm& gold,
                             const VariableMapping& mapping, bool include_ref) {
  ClausalForm sys_form = include_ref ? system : strip_redundant_refs(system);
  ClausalForm gold_form = include_ref ? gold : strip_redundant_refs(gold);
  MatchInstance inst(sys_form, gold_form);
  apply_named_mapping(inst, mapping);
  MatchResult result = result_from(inst, static_cast<long>(sys_form.clauses.size()),
                                   static_cast<long>(gold_form.clauses.size()));
  result.mapping = mapping;
  return result;
}

MappingEvaluation evaluate_mapping_detailed(const ClausalForm& system, const ClausalForm& gold,
                                            const VariableMapping& mapping, bool include_ref) {
  ClausalForm sys_form = include_ref ? system : strip_redundant_refs(system);
  ClausalForm gold_form = include_ref ? gold : strip_redundant_refs(gold);
  MatchInstance inst(sys_form, gold_form);
  apply_named_mapping(inst, mapping);
  return inst.detailed();
}

MatchResult micro_average(const std::vector<MatchResult>& results) {
  MatchResult total;
  for (const MatchResult& r : results) {
    total.matched += r.matched;
    total.produced += r.produced;
    total.gold += r.gold;
  }
  finish_scores(total);
  return total;
}

}  // namespace drs
