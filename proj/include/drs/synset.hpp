#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <string>

#include "drs/types.hpp"

namespace drs {

struct Synset {
  std::string lemma;
  std::string pos;
  std::string sense;

  auto operator<=>(const Synset&) const = default;
};

// Maps word senses to canonical synset ids. Chains are resolved when the map
// is loaded, so resolution is idempotent; unknown keys resolve to themselves.
class SynsetMap {
 public:
  void insert(const Synset& from, const Synset& to);
  Synset resolve(const Synset& key) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // File format: one record per line, `lemma.pos.sense<TAB>lemma.pos.sense`.
  static SynsetMap load(std::istream& in);
  static SynsetMap load_file(const std::string& path);

 private:
  std::map<Synset, Synset> entries_;
};

// Rewrites every concept clause to the canonical synset of its
// (lemma, pos, sense); all other clauses and the clause order are preserved.
ClausalForm normalize_senses(const ClausalForm& form, const SynsetMap& map);

// Parses `lemma.pos.sense` (the lemma itself may contain dots).
Synset parse_synset(const std::string& text);

}  // namespace drs
