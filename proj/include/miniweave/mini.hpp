#ifndef MINIWEAVE_MINI_HPP
#define MINIWEAVE_MINI_HPP

#include <string>
#include <tuple>
#include <vector>

#include "miniweave/meaning.hpp"
#include "miniweave/origin.hpp"
#include "miniweave/source_model.hpp"

namespace miniweave {

// One mini-index line. The (origin, ident_markup, type_markup) triple is the
// entry's identity for all deduplication.
struct MiniEntry {
  Origin origin;
  std::string ident_markup;
  std::string type_markup;

  std::tuple<const Origin&, const std::string&, const std::string&> identity() const {
    return {origin, ident_markup, type_markup};
  }

  friend bool operator==(const MiniEntry& a, const MiniEntry& b) {
    return a.identity() == b.identity();
  }
  friend bool operator<(const MiniEntry& a, const MiniEntry& b) {
    return a.identity() < b.identity();
  }
};

struct MiniOutput {
  int section = 0;
  std::vector<MiniEntry> entries;
};

// \&{x} for typedef-style meanings, \|{x} for other single letters,
// \\{xxx} for other multi-letter identifiers.
std::string ident_markup_for(const std::string& ident, const std::string& type_markup);

// Identifiers referenced inside |...| spans of a commentary line, in order.
std::vector<std::string> span_identifiers(const std::string& text);

// Every identifier used in the section, in first-use order: text-part spans
// first, then code tokens, including spans inside comments. Reserved words
// are excluded; single-letter identifiers are included.
std::vector<std::string> collect_used_identifiers(const Section& section);

// The section's mini-output. Must run after process_section, with the state
// it produced: own-section and suppressed meanings are skipped, temporaries
// replace the current meaning of their identifier.
MiniOutput emit_section_minis(const MeaningTable& table,
                              const SectionIndexState& state,
                              const Section& section);

MiniEntry entry_for(const Meaning& m);

std::string serialize_mini_entry(const MiniEntry& e, const std::string& program_name);

// Inverse of serialize_mini_entry; `\[n` lines become origins in
// program_name.
MiniEntry parse_mini_entry(const std::string& line, const std::string& program_name);

// One line per entry, newline-terminated.
std::string serialize_mini_output(const MiniOutput& m, const std::string& program_name);

}  // namespace miniweave

#endif
