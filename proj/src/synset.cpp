#include "drs/synset.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace drs {

namespace {

std::string synset_text(const Synset& s) { return s.lemma + '.' + s.pos + '.' + s.sense; }

}  // namespace

Synset parse_synset(const std::string& text) {
  // sense is after the last dot, pos between the last two; the lemma may
  // itself contain dots.
  std::size_t last = text.rfind('.');
  if (last == std::string::npos || last == 0)
    throw DrsError(ErrorCode::BadFile, "bad synset '" + text + "'");
  std::size_t mid = text.rfind('.', last - 1);
  if (mid == std::string::npos || mid == 0)
    throw DrsError(ErrorCode::BadFile, "bad synset '" + text + "'");
  Synset s{text.substr(0, mid), text.substr(mid + 1, last - mid - 1), text.substr(last + 1)};
  if (s.pos.size() != 1 || s.sense.empty())
    throw DrsError(ErrorCode::BadFile, "bad synset '" + text + "'");
  return s;
}

void SynsetMap::insert(const Synset& from, const Synset& to) {
  if (from == to) return;
  // Resolve the target through existing entries and recompress anything that
  // pointed at the new key, keeping resolution idempotent.
  Synset target = to;
  std::size_t steps = 0;
  for (auto it = entries_.find(target); it != entries_.end(); it = entries_.find(target)) {
    target = it->second;
    if (++steps > entries_.size())
      throw DrsError(ErrorCode::BadFile, "synset map cycle at " + synset_text(from));
  }
  if (target == from)
    throw DrsError(ErrorCode::BadFile, "synset map cycle at " + synset_text(from));
  entries_[from] = target;
  for (auto& [key, value] : entries_) {
    if (value == from) value = target;
  }
}

Synset SynsetMap::resolve(const Synset& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? key : it->second;
}

SynsetMap SynsetMap::load(std::istream& in) {
  SynsetMap map;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw DrsError(ErrorCode::BadFile,
                     "synset map line " + std::to_string(line_no) + ": missing tab");
    map.insert(parse_synset(line.substr(0, tab)), parse_synset(line.substr(tab + 1)));
  }
  return map;
}

SynsetMap SynsetMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrsError(ErrorCode::BadFile, "cannot open " + path);
  return load(in);
}

ClausalForm normalize_senses(const ClausalForm& form, const SynsetMap& map) {
  ClausalForm out = form;
  for (Clause& clause : out.clauses) {
    if (clause.tag.kind != OperatorKind::Concept) continue;
    Synset canonical = map.resolve({clause.tag.name, clause.tag.pos, clause.tag.sense});
    clause.tag.name = canonical.lemma;
    clause.tag.pos = canonical.pos;
    clause.tag.sense = canonical.sense;
    clause.args[0] = Term::constant(canonical.pos + '.' + canonical.sense);
  }
  return out;
}

}  // namespace drs
