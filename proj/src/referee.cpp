#include "drs/referee.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace drs {

namespace {

std::string clause_subject(std::size_t index) { return "clause " + std::to_string(index); }

// Argument positions that force a variable to BoxLabel kind.
void box_forcing_args(const Clause& clause, std::vector<const Term*>& out) {
  switch (clause.tag.kind) {
    case OperatorKind::Not:
    case OperatorKind::Pos:
    case OperatorKind::Nec:
    case OperatorKind::DrsMember:
      out.push_back(&clause.args[0]);
      break;
    case OperatorKind::Imp:
    case OperatorKind::DiscourseRelation:
      out.push_back(&clause.args[0]);
      out.push_back(&clause.args[1]);
      break;
    case OperatorKind::Prp:
      out.push_back(&clause.args[1]);
      break;
    default:
      break;
  }
}

// Argument positions that force Referent kind (uses and introductions).
void referent_forcing_args(const Clause& clause, std::vector<const Term*>& out) {
  switch (clause.tag.kind) {
    case OperatorKind::Ref:
      out.push_back(&clause.args[0]);
      break;
    case OperatorKind::Concept:
      out.push_back(&clause.args[1]);
      break;
    case OperatorKind::Role:
    case OperatorKind::Comparison:
      for (const Term& arg : clause.args)
        if (arg.is_variable()) out.push_back(&arg);
      break;
    case OperatorKind::Prp:
      out.push_back(&clause.args[0]);
      break;
    default:
      break;
  }
}

// Referent *uses*: occurrences in conditions, excluding REF introductions.
void referent_uses(const Clause& clause, std::vector<const Term*>& out) {
  if (clause.tag.kind == OperatorKind::Ref) return;
  referent_forcing_args(clause, out);
}

struct StructureBuilder {
  const ClausalForm& form;
  const VariableTyping& typing;
  std::vector<Violation>& out;
  BoxStructure structure;
  std::map<std::string, int> index;
  std::map<std::string, bool> has_simple;
  std::map<std::string, std::set<std::string>> member_sets;

  Box& ensure_box(const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return structure.boxes[it->second];
    index[label] = static_cast<int>(structure.boxes.size());
    structure.boxes.push_back(Box{label, false, {}, {}, {}});
    return structure.boxes.back();
  }

  void add_edge(const std::string& from, const std::string& to) {
    structure.subordinates[from].push_back(to);
  }
};

}  // namespace

VariableKind VariableTyping::kind_of(const std::string& name) const {
  auto it = kinds.find(name);
  return it == kinds.end() ? VariableKind::Referent : it->second;
}

bool VariableTyping::is_box(const std::string& name) const {
  return kind_of(name) == VariableKind::BoxLabel;
}

bool natural_label_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ia = i, jb = j;
      while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ++ia;
      while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) ++jb;
      long na = std::stol(a.substr(i, ia - i));
      long nb = std::stol(b.substr(j, jb - j));
      if (na != nb) return na < nb;
      i = ia;
      j = jb;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

VariableTyping infer_variable_types(const ClausalForm& form, std::vector<Violation>& out) {
  std::set<std::string> box_forced;
  std::set<std::string> ref_forced;
  std::vector<const Term*> terms;
  for (const Clause& clause : form.clauses) {
    if (clause.box.is_variable()) box_forced.insert(clause.box.text);
    terms.clear();
    box_forcing_args(clause, terms);
    for (const Term* t : terms)
      if (t->is_variable()) box_forced.insert(t->text);
    terms.clear();
    referent_forcing_args(clause, terms);
    for (const Term* t : terms)
      if (t->is_variable()) ref_forced.insert(t->text);
  }

  VariableTyping typing;
  for (const std::string& name : box_forced) typing.kinds[name] = VariableKind::BoxLabel;
  for (const std::string& name : ref_forced) {
    if (box_forced.count(name)) {
      out.push_back({ErrorCode::TypeConflict,
                     "variable " + name + " is used both as a box label and as a referent",
                     name});
    } else {
      typing.kinds[name] = VariableKind::Referent;
    }
  }
  return typing;
}

VariableTyping infer_variable_types(const ClausalForm& form) {
  std::vector<Violation> violations;
  VariableTyping typing = infer_variable_types(form, violations);
  if (!violations.empty())
    throw DrsError(violations[0].rule, violations[0].message);
  return typing;
}

BoxStructure build_box_structure(const ClausalForm& form, const VariableTyping& typing,
                                 std::vector<Violation>& out) {
  StructureBuilder b{form, typing, out, {}, {}, {}, {}};

  for (const Clause& clause : form.clauses) {
    const std::string& label = clause.box.text;
    Box& box = b.ensure_box(label);
    switch (clause.tag.kind) {
      case OperatorKind::Ref: {
        const std::string& ref = clause.args[0].text;
        if (std::find(box.referents.begin(), box.referents.end(), ref) == box.referents.end())
          b.ensure_box(label).referents.push_back(ref);
        b.has_simple[label] = true;
        break;
      }
      case OperatorKind::Concept:
      case OperatorKind::Role:
      case OperatorKind::Comparison:
        box.conditions.push_back(clause);
        b.has_simple[label] = true;
        break;
      case OperatorKind::Not:
      case OperatorKind::Pos:
      case OperatorKind::Nec: {
        box.conditions.push_back(clause);
        b.has_simple[label] = true;
        std::string target = clause.args[0].text;
        b.ensure_box(target);
        b.add_edge(label, target);
        break;
      }
      case OperatorKind::Imp: {
        box.conditions.push_back(clause);
        b.has_simple[label] = true;
        for (const Term& arg : clause.args) {
          b.ensure_box(arg.text);
          b.add_edge(label, arg.text);
        }
        break;
      }
      case OperatorKind::Prp: {
        box.conditions.push_back(clause);
        b.has_simple[label] = true;
        std::string target = clause.args[1].text;
        b.ensure_box(target);
        b.add_edge(label, target);
        break;
      }
      case OperatorKind::DrsMember: {
        std::string member = clause.args[0].text;
        Box& seg = b.ensure_box(label);
        seg.segmented = true;
        seg.members.push_back(member);
        b.member_sets[label].insert(member);
        b.ensure_box(member);
        b.add_edge(label, member);
        break;
      }
      case OperatorKind::DiscourseRelation: {
        Box& seg = b.ensure_box(label);
        seg.segmented = true;
        seg.conditions.push_back(clause);
        break;
      }
    }
  }

  BoxStructure& structure = b.structure;

  for (const Box& box : structure.boxes) {
    if (box.segmented && b.has_simple[box.label])
      out.push_back({ErrorCode::MixedBox,
                     "box " + box.label + " mixes simple conditions with segment membership",
                     box.label});
  }

  for (const Box& box : structure.boxes) {
    if (!box.segmented) continue;
    const std::set<std::string>& members = b.member_sets[box.label];
    for (const Clause& clause : box.conditions) {
      if (clause.tag.kind != OperatorKind::DiscourseRelation) continue;
      for (const Term& arg : clause.args) {
        if (!members.count(arg.text))
          out.push_back({ErrorCode::DanglingDiscourseRelation,
                         clause.tag.name + " relates " + arg.text +
                             " which is not a member of segmented box " + box.label,
                         box.label});
      }
    }
  }

  // Cycle detection over the subordination edges.
  std::map<std::string, int> state;  // 0 new, 1 open, 2 done
  bool cyclic = false;
  std::vector<std::pair<std::string, std::size_t>> stack;
  for (const Box& start : structure.boxes) {
    if (state[start.label]) continue;
    stack.push_back({start.label, 0});
    state[start.label] = 1;
    while (!stack.empty()) {
      auto& [label, next] = stack.back();
      const std::vector<std::string>& targets = structure.subordinates[label];
      if (next >= targets.size()) {
        state[label] = 2;
        stack.pop_back();
        continue;
      }
      const std::string& target = targets[next++];
      if (state[target] == 1) {
        if (!cyclic)
          out.push_back({ErrorCode::CyclicSubordination,
                         "subordination cycle through box " + target, target});
        cyclic = true;
      } else if (state[target] == 0) {
        state[target] = 1;
        stack.push_back({target, 0});
      }
    }
  }

  // Top-level boxes: never embedded under a complex condition or membership.
  std::set<std::string> embedded;
  for (const auto& [from, targets] : structure.subordinates)
    for (const std::string& t : targets) embedded.insert(t);
  for (const Box& box : structure.boxes)
    if (!embedded.count(box.label)) structure.top_level.push_back(box.label);
  std::sort(structure.top_level.begin(), structure.top_level.end(), natural_label_less);

  if (structure.boxes.empty() || (structure.top_level.empty() && !cyclic)) {
    out.push_back({ErrorCode::NoMainBox, "no top-level box", ""});
    return structure;
  }
  if (cyclic) return structure;

  // A top-level box is a presupposition when a referent it introduces is used
  // in a condition outside its own subordination subtree.
  std::map<std::string, std::set<std::string>> use_boxes;  // referent -> using boxes
  std::vector<const Term*> uses;
  for (const Clause& clause : form.clauses) {
    uses.clear();
    referent_uses(clause, uses);
    for (const Term* t : uses)
      if (t->is_variable()) use_boxes[t->text].insert(clause.box.text);
  }

  auto descendants = [&](const std::string& root) {
    std::set<std::string> seen{root};
    std::vector<std::string> todo{root};
    while (!todo.empty()) {
      std::string label = todo.back();
      todo.pop_back();
      for (const std::string& t : structure.subordinates[label])
        if (seen.insert(t).second) todo.push_back(t);
    }
    return seen;
  };

  std::vector<std::string> candidates;
  for (const std::string& label : structure.top_level) {
    std::set<std::string> subtree = descendants(label);
    const Box* box = structure.find(label);
    bool presupposes = false;
    for (const std::string& ref : box->referents) {
      for (const std::string& user : use_boxes[ref]) {
        if (!subtree.count(user)) {
          presupposes = true;
          break;
        }
      }
      if (presupposes) break;
    }
    if (!presupposes) candidates.push_back(label);
  }

  if (candidates.size() == 1) {
    structure.main = candidates[0];
    for (const std::string& label : structure.top_level)
      if (label != structure.main) structure.presuppositions.push_back(label);
  } else if (candidates.empty()) {
    out.push_back({ErrorCode::AmbiguousMainBox,
                   "all top-level boxes supply referents elsewhere", ""});
  } else {
    std::string names;
    for (const std::string& c : candidates) names += (names.empty() ? "" : ", ") + c;
    out.push_back({ErrorCode::AmbiguousMainBox, "multiple main box candidates: " + names, ""});
  }
  return structure;
}

BoxStructure build_box_structure(const ClausalForm& form, const VariableTyping& typing) {
  std::vector<Violation> violations;
  BoxStructure structure = build_box_structure(form, typing, violations);
  if (!violations.empty())
    throw DrsError(violations[0].rule, violations[0].message);
  return structure;
}

const Box* BoxStructure::find(const std::string& label) const {
  for (const Box& box : boxes)
    if (box.label == label) return &box;
  return nullptr;
}

ValidationReport validate(const ClausalForm& form) {
  ValidationReport report;
  auto& out = report.violations;

  if (form.clauses.empty()) {
    out.push_back({ErrorCode::EmptyDocument, "document has no clauses", ""});
    report.valid = false;
    return report;
  }

  // Shape checks; parsed forms satisfy these but constructed ones may not.
  for (std::size_t i = 0; i < form.clauses.size(); ++i) {
    const Clause& clause = form.clauses[i];
    if (!clause.box.is_variable())
      out.push_back({ErrorCode::MalformedClause, "box label is a constant", clause_subject(i)});
    if (static_cast<int>(clause.args.size()) != clause.tag.arity()) {
      out.push_back({ErrorCode::MalformedClause,
                     "operator " + clause.tag.token() + " expects " +
                         std::to_string(clause.tag.arity()) + " argument(s)",
                     clause_subject(i)});
      continue;
    }
    std::vector<const Term*> must_be_vars;
    box_forcing_args(clause, must_be_vars);
    if (clause.tag.kind == OperatorKind::Ref || clause.tag.kind == OperatorKind::Prp)
      must_be_vars.push_back(&clause.args[0]);
    if (clause.tag.kind == OperatorKind::Concept) must_be_vars.push_back(&clause.args[1]);
    for (const Term* t : must_be_vars) {
      if (!t->is_variable())
        out.push_back({ErrorCode::MalformedClause,
                       "constant \"" + t->text + "\" where a variable is required",
                       clause_subject(i)});
    }
  }

  VariableTyping typing = infer_variable_types(form, out);

  // Binding: every used referent is introduced by some REF clause, and by at
  // most one REF clause per box.
  std::set<std::string> introduced;
  std::map<std::pair<std::string, std::string>, int> ref_counts;
  for (const Clause& clause : form.clauses) {
    if (clause.tag.kind != OperatorKind::Ref || clause.args.empty() ||
        !clause.args[0].is_variable())
      continue;
    introduced.insert(clause.args[0].text);
    ++ref_counts[{clause.box.text, clause.args[0].text}];
  }
  for (const auto& [key, count] : ref_counts) {
    if (count > 1)
      out.push_back({ErrorCode::DuplicateRef,
                     key.second + " is introduced " + std::to_string(count) + " times in box " +
                         key.first,
                     key.first});
  }
  std::set<std::string> reported_unbound;
  std::vector<const Term*> uses;
  for (std::size_t i = 0; i < form.clauses.size(); ++i) {
    uses.clear();
    referent_uses(form.clauses[i], uses);
    for (const Term* t : uses) {
      if (!t->is_variable()) continue;
      if (typing.kind_of(t->text) != VariableKind::Referent) continue;  // conflicts reported above
      if (!introduced.count(t->text) && reported_unbound.insert(t->text).second)
        out.push_back({ErrorCode::UnboundReferent,
                       "referent " + t->text + " is used but never introduced by a REF clause",
                       t->text});
    }
  }

  build_box_structure(form, typing, out);

  report.valid = out.empty();
  return report;
}

std::vector<Clause> clauses_of(const BoxStructure& structure) {
  std::vector<Clause> out;
  for (const Box& box : structure.boxes) {
    for (const std::string& member : box.members) {
      Clause clause;
      clause.box = Term::variable(box.label);
      clause.tag = OperatorTag::simple(OperatorKind::DrsMember);
      clause.args = {Term::variable(member)};
      out.push_back(std::move(clause));
    }
    for (const std::string& ref : box.referents) {
      Clause clause;
      clause.box = Term::variable(box.label);
      clause.tag = OperatorTag::ref();
      clause.args = {Term::variable(ref)};
      out.push_back(std::move(clause));
    }
    for (const Clause& condition : box.conditions) {
      Clause clause = condition;
      clause.alignment.clear();
      out.push_back(std::move(clause));
    }
  }
  return out;
}

}  // namespace drs
