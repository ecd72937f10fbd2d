#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace drs {

enum class ErrorCode {
  MalformedClause,
  UnknownArity,
  UnknownOperator,
  EmptyDocument,
  TypeConflict,
  UnboundReferent,
  DuplicateRef,
  CyclicSubordination,
  MixedBox,
  DanglingDiscourseRelation,
  NoMainBox,
  AmbiguousMainBox,
  SearchSpaceTooLarge,
  LengthMismatch,
  UnpairedDocument,
  EmptyTraining,
  InvalidConfig,
  BadFile,
};

const char* error_name(ErrorCode code);

class DrsError : public std::runtime_error {
 public:
  DrsError(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A clause argument: a variable name or a constant (stored without the
// surrounding double quotes, e.g. `now`, `tom`, `nick~leeson`).
struct Term {
  enum class Kind { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string text;

  static Term variable(std::string name);
  static Term constant(std::string text);

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  bool operator==(const Term&) const = default;
};

enum class OperatorKind {
  Ref,
  Concept,
  Role,
  Comparison,
  Not,
  Pos,
  Nec,
  Imp,
  Prp,
  DrsMember,
  DiscourseRelation,
};

// Number of arguments after the box label.
int operator_arity(OperatorKind kind);

struct OperatorTag {
  OperatorKind kind = OperatorKind::Ref;
  std::string name;   // Role/Comparison/DiscourseRelation name, Concept lemma
  std::string pos;    // Concept part of speech: n, v, a or r
  std::string sense;  // Concept sense number, e.g. "02"

  static OperatorTag ref();
  static OperatorTag concept_of(std::string lemma, std::string pos, std::string sense);
  static OperatorTag role(std::string name);
  static OperatorTag comparison(std::string name);
  static OperatorTag simple(OperatorKind kind);  // Not/Pos/Nec/Imp/Prp/DrsMember
  static OperatorTag discourse_relation(std::string name);

  // The operator token as it appears on a clause line (REF, NOT, the role
  // name, the concept lemma, ...).
  std::string token() const;
  int arity() const { return operator_arity(kind); }

  bool operator==(const OperatorTag&) const = default;
};

// One `token [start...end]` entry of a clause-token alignment comment.
struct TokenAlignment {
  std::string token;
  int start = 0;
  int end = 0;

  bool operator==(const TokenAlignment&) const = default;
};

struct Clause {
  Term box;  // always a variable
  OperatorTag tag;
  std::vector<Term> args;
  std::vector<TokenAlignment> alignment;  // empty when the line carries none

  bool operator==(const Clause&) const = default;
};

struct ClausalForm {
  std::string doc_id;
  std::string raw_text;
  std::vector<Clause> clauses;

  bool operator==(const ClausalForm&) const = default;
};

}  // namespace drs
