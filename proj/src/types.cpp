#include "drs/types.hpp"

namespace drs {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedClause: return "MalformedClause";
    case ErrorCode::UnknownArity: return "UnknownArity";
    case ErrorCode::UnknownOperator: return "UnknownOperator";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::TypeConflict: return "TypeConflict";
    case ErrorCode::UnboundReferent: return "UnboundReferent";
    case ErrorCode::DuplicateRef: return "DuplicateRef";
    case ErrorCode::CyclicSubordination: return "CyclicSubordination";
    case ErrorCode::MixedBox: return "MixedBox";
    case ErrorCode::DanglingDiscourseRelation: return "DanglingDiscourseRelation";
    case ErrorCode::NoMainBox: return "NoMainBox";
    case ErrorCode::AmbiguousMainBox: return "AmbiguousMainBox";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnpairedDocument: return "UnpairedDocument";
    case ErrorCode::EmptyTraining: return "EmptyTraining";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadFile: return "BadFile";
  }
  return "UnknownError";
}

DrsError::DrsError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

Term Term::variable(std::string name) {
  return Term{Kind::Variable, std::move(name)};
}

Term Term::constant(std::string text) {
  return Term{Kind::Constant, std::move(text)};
}

int operator_arity(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Ref:
    case OperatorKind::Not:
    case OperatorKind::Pos:
    case OperatorKind::Nec:
    case OperatorKind::DrsMember:
      return 1;
    case OperatorKind::Concept:
    case OperatorKind::Role:
    case OperatorKind::Comparison:
    case OperatorKind::Imp:
    case OperatorKind::Prp:
    case OperatorKind::DiscourseRelation:
      return 2;
  }
  return 0;
}

OperatorTag OperatorTag::ref() { return OperatorTag{OperatorKind::Ref, "", "", ""}; }

OperatorTag OperatorTag::concept_of(std::string lemma, std::string pos, std::string sense) {
  return OperatorTag{OperatorKind::Concept, std::move(lemma), std::move(pos), std::move(sense)};
}

OperatorTag OperatorTag::role(std::string name) {
  return OperatorTag{OperatorKind::Role, std::move(name), "", ""};
}

OperatorTag OperatorTag::comparison(std::string name) {
  return OperatorTag{OperatorKind::Comparison, std::move(name), "", ""};
}

OperatorTag OperatorTag::simple(OperatorKind kind) { return OperatorTag{kind, "", "", ""}; }

OperatorTag OperatorTag::discourse_relation(std::string name) {
  return OperatorTag{OperatorKind::DiscourseRelation, std::move(name), "", ""};
}

std::string OperatorTag::token() const {
  switch (kind) {
    case OperatorKind::Ref: return "REF";
    case OperatorKind::Not: return "NOT";
    case OperatorKind::Pos: return "POS";
    case OperatorKind::Nec: return "NEC";
    case OperatorKind::Imp: return "IMP";
    case OperatorKind::Prp: return "PRP";
    case OperatorKind::DrsMember: return "DRS";
    case OperatorKind::Concept:
    case OperatorKind::Role:
    case OperatorKind::Comparison:
    case OperatorKind::DiscourseRelation:
      return name;
  }
  return name;
}

}  // namespace drs
