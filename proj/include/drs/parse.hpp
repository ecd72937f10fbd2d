#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "drs/types.hpp"

namespace drs {

// The set of all-caps comparison operator tokens. The built-in default covers
// the operators found in PMB-style data; callers may supply their own.
struct ComparisonInventory {
  std::vector<std::string> names;

  static const ComparisonInventory& defaults();
  bool contains(const std::string& token) const;
};

// Classifies an operator token given the observed arity and the raw argument
// tokens (still quoted where the input was quoted). Classification order:
// exact operator tokens, comparison inventory, all-caps discourse relations,
// capitalized roles, lowercase concept lemmas with a quoted "pos.sense"
// argument. Throws UnknownArity when the token is recognized but the arity is
// wrong, UnknownOperator when no rule applies.
OperatorTag classify_operator(
    const std::string& token, int arity, const std::vector<std::string>& raw_args,
    const ComparisonInventory& comparisons = ComparisonInventory::defaults());

// Parses one clause line `<box> <operator> <arg1> [<arg2>] [% tok [s...e] ...]`.
Clause parse_clause(const std::string& line,
                    const ComparisonInventory& comparisons = ComparisonInventory::defaults());

// Parses one document block: raw-text line(s), a blank line, one clause per
// line. Comment-only lines are ignored.
ClausalForm parse_document(const std::string& block, std::string doc_id = "0",
                           const ComparisonInventory& comparisons = ComparisonInventory::defaults());

// Reads a corpus of blank-line-separated documents. After a blank line, a
// line that does not parse as a clause starts the next document's raw text.
// Document ids are the zero-based indices.
std::vector<ClausalForm> read_corpus(
    std::istream& in, const ComparisonInventory& comparisons = ComparisonInventory::defaults());
std::vector<ClausalForm> parse_corpus(
    const std::string& text,
    const ComparisonInventory& comparisons = ComparisonInventory::defaults());
std::vector<ClausalForm> read_corpus_file(
    const std::string& path,
    const ComparisonInventory& comparisons = ComparisonInventory::defaults());

std::string serialize_clause(const Clause& clause);
std::string serialize_document(const ClausalForm& form);
std::string serialize_corpus(const std::vector<ClausalForm>& forms);

// Overrides document ids from a sidecar list (one id per line).
void apply_doc_ids(std::vector<ClausalForm>& forms, const std::vector<std::string>& ids);
std::vector<std::string> read_id_list(const std::string& path);

}  // namespace drs
