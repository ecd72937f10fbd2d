#include "drs/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace drs {

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

bool is_upper_token(const std::string& token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return c >= 'A' && c <= 'Z'; });
}

bool has_upper(const std::string& token) {
  return std::any_of(token.begin(), token.end(),
                     [](unsigned char c) { return c >= 'A' && c <= 'Z'; });
}

bool is_quoted(const std::string& token) {
  return token.size() >= 2 && token.front() == '"' && token.back() == '"';
}

// "n.02" (with the quotes): a pos letter, a dot, digits.
bool is_quoted_sense(const std::string& token) {
  if (!is_quoted(token)) return false;
  return [](const std::string& inner) {
    if (inner.size() < 3) return false;
    char pos = inner[0];
    if (pos != 'n' && pos != 'v' && pos != 'a' && pos != 'r') return false;
    if (inner[1] != '.') return false;
    return std::all_of(inner.begin() + 2, inner.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  }(token.substr(1, token.size() - 2));
}

bool is_bare_sense(const std::string& token) {
  return !is_quoted(token) && is_quoted_sense('"' + token + '"');
}

// Splits the clause part into tokens; a token starting with '"' runs to the
// matching closing quote.
std::vector<std::string> tokenize_clause(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == '"') {
      std::size_t close = text.find('"', i + 1);
      if (close == std::string::npos)
        throw DrsError(ErrorCode::MalformedClause, "unbalanced quote in '" + text + "'");
      if (close + 1 < text.size() && !std::isspace(static_cast<unsigned char>(text[close + 1])))
        throw DrsError(ErrorCode::MalformedClause,
                       "text after closing quote in '" + text + "'");
      tokens.push_back(text.substr(i, close - i + 1));
      i = close + 1;
    } else {
      std::size_t end = i;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
        if (text[end] == '"')
          throw DrsError(ErrorCode::MalformedClause, "quote inside token in '" + text + "'");
        ++end;
      }
      tokens.push_back(text.substr(i, end - i));
      i = end;
    }
  }
  return tokens;
}

// Position of the first '%' outside of quotes, npos when there is none.
std::size_t comment_start(const std::string& line) {
  bool in_quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    else if (line[i] == '%' && !in_quote) return i;
  }
  return std::string::npos;
}

bool parse_offset_pair(const std::string& token, int* start, int* end) {
  // expects [digits...digits]
  if (token.size() < 6 || token.front() != '[' || token.back() != ']') return false;
  std::size_t dots = token.find("...");
  if (dots == std::string::npos) return false;
  std::string lo = token.substr(1, dots - 1);
  std::string hi = token.substr(dots + 3, token.size() - dots - 4);
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
  };
  if (!all_digits(lo) || !all_digits(hi)) return false;
  *start = std::stoi(lo);
  *end = std::stoi(hi);
  return true;
}

// `token [start...end]` pairs; anything else means the comment is not an
// alignment and is discarded.
std::vector<TokenAlignment> parse_alignment(const std::string& comment) {
  std::vector<std::string> words;
  std::istringstream in(comment);
  std::string w;
  while (in >> w) words.push_back(w);
  if (words.empty() || words.size() % 2 != 0) return {};
  std::vector<TokenAlignment> out;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    TokenAlignment a;
    a.token = words[i];
    if (!parse_offset_pair(words[i + 1], &a.start, &a.end)) return {};
    out.push_back(std::move(a));
  }
  return out;
}

Term term_from_token(const std::string& token) {
  if (is_quoted(token)) return Term::constant(token.substr(1, token.size() - 2));
  if (token.find('"') != std::string::npos)
    throw DrsError(ErrorCode::MalformedClause, "stray quote in token '" + token + "'");
  if (token.empty())
    throw DrsError(ErrorCode::MalformedClause, "empty variable name");
  return Term::variable(token);
}

void require_variable(const Term& term, const std::string& role) {
  if (!term.is_variable())
    throw DrsError(ErrorCode::MalformedClause, role + " must be a variable, got \"" +
                                                   term.text + "\"");
}

std::string quote(const std::string& text) { return '"' + text + '"'; }

}  // namespace

const ComparisonInventory& ComparisonInventory::defaults() {
  static const ComparisonInventory inventory{{"EQU", "NEQ", "APX", "LES", "LEQ", "TPR", "TAB"}};
  return inventory;
}

bool ComparisonInventory::contains(const std::string& token) const {
  return std::find(names.begin(), names.end(), token) != names.end();
}

OperatorTag classify_operator(const std::string& token, int arity,
                              const std::vector<std::string>& raw_args,
                              const ComparisonInventory& comparisons) {
  auto check_arity = [&](int expected, OperatorTag tag) {
    if (arity != expected)
      throw DrsError(ErrorCode::UnknownArity,
                     "operator " + token + " takes " + std::to_string(expected) +
                         " argument(s), got " + std::to_string(arity));
    return tag;
  };

  if (token == "REF") return check_arity(1, OperatorTag::ref());
  if (token == "NOT") return check_arity(1, OperatorTag::simple(OperatorKind::Not));
  if (token == "POS") return check_arity(1, OperatorTag::simple(OperatorKind::Pos));
  if (token == "NEC") return check_arity(1, OperatorTag::simple(OperatorKind::Nec));
  if (token == "DRS") return check_arity(1, OperatorTag::simple(OperatorKind::DrsMember));
  if (token == "IMP") return check_arity(2, OperatorTag::simple(OperatorKind::Imp));
  if (token == "PRP") return check_arity(2, OperatorTag::simple(OperatorKind::Prp));

  if (comparisons.contains(token)) return check_arity(2, OperatorTag::comparison(token));

  if (is_upper_token(token) && token.size() >= 3)
    return check_arity(2, OperatorTag::discourse_relation(token));

  if (!token.empty() && token[0] >= 'A' && token[0] <= 'Z' &&
      std::any_of(token.begin() + 1, token.end(),
                  [](unsigned char c) { return c >= 'a' && c <= 'z'; }))
    return check_arity(2, OperatorTag::role(token));

  if (!token.empty() && !has_upper(token) && token.find('"') == std::string::npos &&
      !raw_args.empty() && is_quoted_sense(raw_args[0])) {
    if (arity != 2)
      throw DrsError(ErrorCode::UnknownArity,
                     "concept " + token + " takes 2 arguments, got " + std::to_string(arity));
    const std::string inner = raw_args[0].substr(1, raw_args[0].size() - 2);
    return OperatorTag::concept_of(token, inner.substr(0, 1), inner.substr(2));
  }

  throw DrsError(ErrorCode::UnknownOperator,
                 "cannot classify operator '" + token + "' at arity " + std::to_string(arity));
}

Clause parse_clause(const std::string& line, const ComparisonInventory& comparisons) {
  std::size_t cpos = comment_start(line);
  std::string clause_text = cpos == std::string::npos ? line : line.substr(0, cpos);
  std::string comment = cpos == std::string::npos ? "" : line.substr(cpos + 1);

  std::vector<std::string> tokens = tokenize_clause(clause_text);
  if (tokens.empty())
    throw DrsError(ErrorCode::MalformedClause, "empty clause line");
  if (tokens.size() < 3 || tokens.size() > 4)
    throw DrsError(ErrorCode::MalformedClause,
                   "expected 3 or 4 tokens, got " + std::to_string(tokens.size()) + " in '" +
                       clause_text + "'");

  if (is_quoted(tokens[0]))
    throw DrsError(ErrorCode::MalformedClause, "box label must not be quoted");
  if (is_quoted(tokens[1]))
    throw DrsError(ErrorCode::MalformedClause, "operator token must not be quoted");

  std::vector<std::string> raw_args(tokens.begin() + 2, tokens.end());
  int arity = static_cast<int>(raw_args.size());

  OperatorTag tag;
  try {
    tag = classify_operator(tokens[1], arity, raw_args, comparisons);
  } catch (const DrsError& e) {
    if (e.code() == ErrorCode::UnknownOperator && arity == 2 && is_bare_sense(raw_args[0]))
      throw DrsError(ErrorCode::MalformedClause,
                     "unquoted sense string '" + raw_args[0] + "' in '" + clause_text + "'");
    throw;
  }

  Clause clause;
  clause.box = term_from_token(tokens[0]);
  clause.tag = tag;
  for (const std::string& raw : raw_args) clause.args.push_back(term_from_token(raw));

  switch (tag.kind) {
    case OperatorKind::Ref:
      require_variable(clause.args[0], "REF argument");
      break;
    case OperatorKind::Concept:
      require_variable(clause.args[1], "concept referent");
      break;
    case OperatorKind::Not:
    case OperatorKind::Pos:
    case OperatorKind::Nec:
    case OperatorKind::DrsMember:
      require_variable(clause.args[0], "box argument");
      break;
    case OperatorKind::Imp:
    case OperatorKind::DiscourseRelation:
      require_variable(clause.args[0], "box argument");
      require_variable(clause.args[1], "box argument");
      break;
    case OperatorKind::Prp:
      require_variable(clause.args[0], "propositional referent");
      require_variable(clause.args[1], "box argument");
      break;
    case OperatorKind::Role:
    case OperatorKind::Comparison:
      break;
  }

  if (!comment.empty()) clause.alignment = parse_alignment(comment);
  return clause;
}

ClausalForm parse_document(const std::string& block, std::string doc_id,
                           const ComparisonInventory& comparisons) {
  std::vector<std::string> lines;
  {
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  ClausalForm form;
  form.doc_id = std::move(doc_id);

  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i])) ++i;
  std::vector<std::string> raw;
  while (i < lines.size() && !is_blank(lines[i])) raw.push_back(lines[i++]);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (k) form.raw_text += '\n';
    form.raw_text += raw[k];
  }

  for (; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    std::size_t cpos = comment_start(lines[i]);
    if (cpos != std::string::npos && is_blank(lines[i].substr(0, cpos))) continue;
    try {
      form.clauses.push_back(parse_clause(lines[i], comparisons));
    } catch (const DrsError& e) {
      throw DrsError(e.code(), "line " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  if (form.clauses.empty())
    throw DrsError(ErrorCode::EmptyDocument, "no clauses in document " + form.doc_id);
  return form;
}

std::vector<ClausalForm> read_corpus(std::istream& in, const ComparisonInventory& comparisons) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  auto comment_only = [](const std::string& l) {
    std::size_t cpos = comment_start(l);
    return cpos != std::string::npos && is_blank(l.substr(0, cpos));
  };
  auto parses_as_clause = [&](const std::string& l) {
    try {
      parse_clause(l, comparisons);
      return true;
    } catch (const DrsError&) {
      return false;
    }
  };

  std::vector<ClausalForm> docs;
  std::size_t i = 0;
  const std::size_t n = lines.size();
  while (true) {
    while (i < n && (is_blank(lines[i]) || comment_only(lines[i]))) ++i;
    if (i >= n) break;

    ClausalForm form;
    form.doc_id = std::to_string(docs.size());
    std::vector<std::string> raw;
    while (i < n && !is_blank(lines[i])) {
      if (!comment_only(lines[i])) raw.push_back(lines[i]);
      ++i;
    }
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (k) form.raw_text += '\n';
      form.raw_text += raw[k];
    }

    // Clause runs; after a blank line, a non-clause line starts the next
    // document's raw text.
    while (true) {
      while (i < n && (is_blank(lines[i]) || comment_only(lines[i]))) ++i;
      if (i >= n || !parses_as_clause(lines[i])) break;
      while (i < n && !is_blank(lines[i])) {
        if (comment_only(lines[i])) {
          ++i;
          continue;
        }
        try {
          form.clauses.push_back(parse_clause(lines[i], comparisons));
        } catch (const DrsError& e) {
          throw DrsError(e.code(), "document " + form.doc_id + ", line " +
                                       std::to_string(i + 1) + ": " + e.what());
        }
        ++i;
      }
    }

    if (form.clauses.empty())
      throw DrsError(ErrorCode::EmptyDocument,
                     "document " + form.doc_id + ": raw text without clauses");
    docs.push_back(std::move(form));
  }
  return docs;
}

std::vector<ClausalForm> parse_corpus(const std::string& text,
                                      const ComparisonInventory& comparisons) {
  std::istringstream in(text);
  return read_corpus(in, comparisons);
}

std::vector<ClausalForm> read_corpus_file(const std::string& path,
                                          const ComparisonInventory& comparisons) {
  std::ifstream in(path);
  if (!in) throw DrsError(ErrorCode::BadFile, "cannot open " + path);
  return read_corpus(in, comparisons);
}

std::string serialize_clause(const Clause& clause) {
  std::string out = clause.box.text + ' ' + clause.tag.token();
  for (const Term& arg : clause.args)
    out += ' ' + (arg.is_constant() ? quote(arg.text) : arg.text);
  if (!clause.alignment.empty()) {
    out += " %";
    for (const TokenAlignment& a : clause.alignment)
      out += ' ' + a.token + " [" + std::to_string(a.start) + "..." + std::to_string(a.end) + ']';
  }
  return out;
}

std::string serialize_document(const ClausalForm& form) {
  std::string out = form.raw_text;
  out += "\n\n";
  for (const Clause& clause : form.clauses) {
    out += serialize_clause(clause);
    out += '\n';
  }
  return out;
}

std::string serialize_corpus(const std::vector<ClausalForm>& forms) {
  std::string out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) out += '\n';
    out += serialize_document(forms[i]);
  }
  return out;
}

void apply_doc_ids(std::vector<ClausalForm>& forms, const std::vector<std::string>& ids) {
  if (ids.size() != forms.size())
    throw DrsError(ErrorCode::LengthMismatch,
                   "id list has " + std::to_string(ids.size()) + " entries for " +
                       std::to_string(forms.size()) + " documents");
  for (std::size_t i = 0; i < forms.size(); ++i) forms[i].doc_id = ids[i];
}

std::vector<std::string> read_id_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrsError(ErrorCode::BadFile, "cannot open " + path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!is_blank(line)) ids.push_back(line);
  }
  return ids;
}

}  // namespace drs
