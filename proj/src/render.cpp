#include "drs/render.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace drs {

namespace {

struct Glyphs {
  std::string h, v, tl, tr, bl, br, sep_l, sep_r;
  std::string neg, pos, nec, imp;
};

const Glyphs& glyphs_for(bool ascii) {
  static const Glyphs unicode{"─", "│", "┌", "┐", "└", "┘", "├", "┤",
                              "¬", "◇", "□", "⇒"};
  static const Glyphs plain{"-", "|", "+", "+", "+", "+", "+", "+",
                            "~", "<>", "[]", "=>"};
  return ascii ? plain : unicode;
}

// Display columns of a UTF-8 string; every glyph used here is single-width.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

std::string repeated(const std::string& piece, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += piece;
  return out;
}

std::string padded(const std::string& s, std::size_t width) {
  return s + std::string(width - std::min(width, display_width(s)), ' ');
}

struct Block {
  std::vector<std::string> lines;
  std::size_t width = 0;

  static Block from_line(std::string line) {
    Block b;
    b.width = display_width(line);
    b.lines.push_back(std::move(line));
    return b;
  }
};

Block hjoin(const std::vector<Block>& blocks, const std::string& sep) {
  std::size_t height = 0;
  for (const Block& b : blocks) height = std::max(height, b.lines.size());
  Block out;
  for (std::size_t row = 0; row < height; ++row) {
    std::string line;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i) line += sep;
      const Block& b = blocks[i];
      line += padded(row < b.lines.size() ? b.lines[row] : "", b.width);
    }
    out.lines.push_back(line);
    out.width = std::max(out.width, display_width(out.lines.back()));
  }
  return out;
}

Block vjoin(const std::vector<Block>& blocks) {
  Block out;
  for (const Block& b : blocks) {
    for (const std::string& line : b.lines) out.lines.push_back(line);
    out.width = std::max(out.width, b.width);
  }
  return out;
}

// Glyph on the first row, indentation below.
Block prefixed(const std::string& prefix, const Block& body) {
  Block out;
  std::size_t indent = display_width(prefix) + 1;
  for (std::size_t row = 0; row < body.lines.size(); ++row) {
    if (row == 0) out.lines.push_back(prefix + " " + body.lines[row]);
    else out.lines.push_back(std::string(indent, ' ') + body.lines[row]);
  }
  out.width = body.width + indent;
  return out;
}

std::string term_text(const Term& term) { return term.text; }

std::string comparison_symbol(const std::string& name) {
  if (name == "EQU") return "=";
  if (name == "TPR") return "<";
  return name;
}

class Renderer {
 public:
  Renderer(const BoxStructure& structure, const RenderOptions& options)
      : structure_(structure), glyphs_(glyphs_for(options.ascii)), options_(options) {}

  std::string run() const {
    std::vector<Block> sections;
    if (!structure_.main.empty()) {
      sections.push_back(box_block(structure_.main));
      for (const std::string& label : structure_.presuppositions)
        sections.push_back(box_block(label));
    } else {
      for (const std::string& label : structure_.top_level)
        sections.push_back(box_block(label));
    }
    std::string out;
    for (std::size_t i = 0; i < sections.size(); ++i) {
      if (i) out += '\n';
      for (const std::string& line : sections[i].lines) {
        out += line;
        out += '\n';
      }
    }
    return out;
  }

 private:
  bool fits(std::size_t width) const {
    return !options_.width || width <= static_cast<std::size_t>(*options_.width);
  }

  Block side_by_side(const Block& left, const std::string& middle, const Block& right) const {
    std::size_t height = std::max(left.lines.size(), right.lines.size());
    Block mid;
    for (std::size_t row = 0; row < height; ++row)
      mid.lines.push_back(row == height / 2 ? middle : "");
    mid.width = display_width(middle);
    Block joined = hjoin({left, mid, right}, " ");
    if (fits(joined.width)) return joined;
    return vjoin({left, Block::from_line(middle), right});
  }

  Block condition_block(const Clause& clause) const {
    switch (clause.tag.kind) {
      case OperatorKind::Concept:
        return Block::from_line(clause.tag.name + "." + clause.tag.pos + "." +
                                clause.tag.sense + "(" + term_text(clause.args[1]) + ")");
      case OperatorKind::Role:
        return Block::from_line(clause.tag.name + "(" + term_text(clause.args[0]) + ", " +
                                term_text(clause.args[1]) + ")");
      case OperatorKind::Comparison:
        return Block::from_line(term_text(clause.args[0]) + " " +
                                comparison_symbol(clause.tag.name) + " " +
                                term_text(clause.args[1]));
      case OperatorKind::Not:
        return prefixed(glyphs_.neg, box_block(clause.args[0].text));
      case OperatorKind::Pos:
        return prefixed(glyphs_.pos, box_block(clause.args[0].text));
      case OperatorKind::Nec:
        return prefixed(glyphs_.nec, box_block(clause.args[0].text));
      case OperatorKind::Imp:
        return side_by_side(box_block(clause.args[0].text), glyphs_.imp,
                            box_block(clause.args[1].text));
      case OperatorKind::Prp:
        return prefixed(term_text(clause.args[0]) + ":", box_block(clause.args[1].text));
      case OperatorKind::DiscourseRelation:
        return Block::from_line(clause.tag.name + "(" + term_text(clause.args[0]) + ", " +
                                term_text(clause.args[1]) + ")");
      default:
        return Block::from_line(serialize_placeholder(clause));
    }
  }

  static std::string serialize_placeholder(const Clause& clause) {
    std::string out = clause.tag.token();
    for (const Term& arg : clause.args) out += " " + arg.text;
    return out;
  }

  Block box_block(const std::string& label) const {
    const Box* box = structure_.find(label);

    std::vector<Block> body;
    std::string header;
    if (box != nullptr && box->segmented) {
      std::vector<Block> members;
      for (const std::string& member : box->members) members.push_back(box_block(member));
      if (!members.empty()) {
        Block joined = hjoin(members, "  ");
        if (fits(joined.width)) body.push_back(joined);
        else body.push_back(vjoin(members));
      }
      for (const Clause& clause : box->conditions) body.push_back(condition_block(clause));
    } else if (box != nullptr) {
      for (std::size_t i = 0; i < box->referents.size(); ++i) {
        if (i) header += "  ";
        header += box->referents[i];
      }
      for (const Clause& clause : box->conditions) body.push_back(condition_block(clause));
    }

    std::size_t inner = std::max(display_width(header), display_width(label) + 1);
    for (const Block& b : body) inner = std::max(inner, b.width);

    Block out;
    out.lines.push_back(glyphs_.tl + glyphs_.h + " " + label + " " +
                        repeated(glyphs_.h, inner - display_width(label) - 1) + glyphs_.tr);
    out.lines.push_back(glyphs_.v + " " + padded(header, inner) + " " + glyphs_.v);
    out.lines.push_back(glyphs_.sep_l + repeated(glyphs_.h, inner + 2) + glyphs_.sep_r);
    for (const Block& b : body)
      for (const std::string& line : b.lines)
        out.lines.push_back(glyphs_.v + " " + padded(line, inner) + " " + glyphs_.v);
    out.lines.push_back(glyphs_.bl + repeated(glyphs_.h, inner + 2) + glyphs_.br);
    out.width = inner + 4;
    return out;
  }

  const BoxStructure& structure_;
  const Glyphs& glyphs_;
  RenderOptions options_;
};

}  // namespace

std::string render_boxes(const BoxStructure& structure, const RenderOptions& options) {
  return Renderer(structure, options).run();
}

std::string render_document(const ClausalForm& form, const RenderOptions& options) {
  ValidationReport report = validate(form);
  if (!report.valid)
    throw DrsError(report.violations[0].rule, report.violations[0].message);
  VariableTyping typing = infer_variable_types(form);
  BoxStructure structure = build_box_structure(form, typing);
  return render_boxes(structure, options);
}

}  // namespace drs
