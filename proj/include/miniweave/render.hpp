#ifndef MINIWEAVE_RENDER_HPP
#define MINIWEAVE_RENDER_HPP

#include <string>
#include <vector>

#include "miniweave/mini.hpp"
#include "miniweave/packer.hpp"
#include "miniweave/refsort.hpp"
#include "miniweave/source_model.hpp"

namespace miniweave {

enum class RenderMode { plain, html };

// Display text for type and identifier markup: \&{x} bold, \\{x} text
// italic, \|{x} math italic, $...$ math, \, thin space. Plain mode strips
// the delimiters; html mode wraps them in tags.
std::string render_markup(const std::string& markup, RenderMode mode);

// One display line per entry: "ident = rest, LOC" for macro-style meanings,
// "ident, LOC" for zip meanings, "ident: type, LOC" otherwise. LOC is "§n"
// inside program_name, "PROG §n" elsewhere, or the bare label.
std::string format_entry(const MiniEntry& e, const std::string& program_name,
                         RenderMode mode);

struct RenderedPage {
  int spread_number = 0;
  std::vector<std::string> lines;
};

// Lines a section occupies on the page: commentary, a blank separator, and
// the display form of its code. The packer works from this count.
int section_body_lines(const Section& section);

// Lays out each spread as one page: member sections separated by gaps, a
// rule, then the mini-index in row-major columns. Without sref the entries
// keep packer order (the preview pass); with sref they follow its sorted
// order, which must cover the same spreads with the same entry multisets.
std::vector<RenderedPage> render_document(const SourceDocument& doc,
                                          const PackResult& packed,
                                          const RefFile* sref,
                                          const LayoutConfig& cfg,
                                          RenderMode mode);

// Full output text: plain pages joined by form-feed lines, or a standalone
// html document.
std::string join_pages(const std::vector<RenderedPage>& pages, RenderMode mode,
                       const std::string& title = "");

// Raw mini-output listing per section, for debugging; no packing.
std::string dump_debug_minis(const std::vector<MiniOutput>& minis,
                             const std::string& program_name);

}  // namespace miniweave

#endif
