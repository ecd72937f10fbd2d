#pragma once

#include <optional>
#include <string>

#include "drs/referee.hpp"
#include "drs/types.hpp"

namespace drs {

struct RenderOptions {
  bool ascii = false;              // +-| borders and ASCII operator glyphs
  std::optional<int> width;        // soft column limit for side-by-side layout
};

// Draws the box notation: referent header row, one line per basic condition,
// nested boxes for complex conditions, member boxes side by side for
// segmented boxes, presupposition boxes after the main box.
std::string render_boxes(const BoxStructure& structure, const RenderOptions& options = {});

// Validates, builds the box structure and renders it. Throws DrsError with
// the first violation when the form is not well-formed.
std::string render_document(const ClausalForm& form, const RenderOptions& options = {});

}  // namespace drs
