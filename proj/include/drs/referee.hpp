#pragma once

#include <map>
#include <string>
#include <vector>

#include "drs/types.hpp"

namespace drs {

enum class VariableKind { BoxLabel, Referent };

struct VariableTyping {
  std::map<std::string, VariableKind> kinds;

  VariableKind kind_of(const std::string& name) const;
  bool is_box(const std::string& name) const;
};

struct Violation {
  ErrorCode rule;
  std::string message;
  std::string subject;  // offending clause index or box label
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

// Assigns BoxLabel/Referent kinds from argument positions. The lenient
// overload records conflicts as violations and resolves them in favour of
// BoxLabel (independent of clause order); the strict overload throws
// TypeConflict.
VariableTyping infer_variable_types(const ClausalForm& form, std::vector<Violation>& out);
VariableTyping infer_variable_types(const ClausalForm& form);

struct Box {
  std::string label;
  bool segmented = false;
  std::vector<std::string> referents;  // first-REF order
  std::vector<Clause> conditions;      // simple or discourse conditions, clause order
  std::vector<std::string> members;    // segmented member labels, clause order
};

struct BoxStructure {
  std::vector<Box> boxes;  // declaration order
  std::vector<std::string> top_level;
  std::string main;                          // empty when none could be chosen
  std::vector<std::string> presuppositions;  // ascending label order
  std::map<std::string, std::vector<std::string>> subordinates;

  const Box* find(const std::string& label) const;
};

BoxStructure build_box_structure(const ClausalForm& form, const VariableTyping& typing,
                                 std::vector<Violation>& out);
BoxStructure build_box_structure(const ClausalForm& form, const VariableTyping& typing);

// Runs, in order: clause shape checks, variable typing, referent binding,
// box-structure checks. All failures are aggregated into the report.
ValidationReport validate(const ClausalForm& form);

// Clauses recoverable from a box structure (alignments dropped). For a
// structure built from a valid form this is the input clause multiset.
std::vector<Clause> clauses_of(const BoxStructure& structure);

// Orders box labels like b2 < b10 (common prefix, then numeric suffix).
bool natural_label_less(const std::string& a, const std::string& b);

}  // namespace drs
