#ifndef MINIWEAVE_PACKER_HPP
#define MINIWEAVE_PACKER_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "miniweave/mini.hpp"

namespace miniweave {

inline constexpr int kSpreadWindow = 20;  // largest number of sections per spread

struct LayoutConfig {
  int mini_columns = 2;
  int mini_baseline = 1;   // lines per mini-index row
  int page_capacity = 42;  // lines per spread
  int section_gap = 1;     // blank lines between sections
  int rule_allowance = 1;  // lines for the separator rule
  int page_width = 80;     // display columns, plain mode
};

// Entries scheduled for an in-progress spread, bucketed by where their
// origins fall relative to the spread's base section r: before r, at offset
// r+i inside the window, at r+20 or beyond, or in another program entirely.
struct SpreadState {
  std::string program_name;
  int base = 0;  // 0 while empty
  int members = 0;
  int body_lines = 0;
  std::vector<MiniEntry> pre_spread;
  std::array<std::vector<MiniEntry>, kSpreadWindow> member_offset;
  std::vector<MiniEntry> far_forward;
  std::vector<MiniEntry> external;
  std::set<std::tuple<Origin, std::string, std::string>> identities;

  bool empty() const { return members == 0; }
  int entry_count() const;
};

struct Spread {
  int number = 0;
  std::vector<int> members;
  int body_lines = 0;
  bool oversized = false;
  std::vector<MiniEntry> entries;
};

int estimate_height(int body_lines, int n_entries, const LayoutConfig& cfg);

// Tentatively adds the section to the spread. Returns the grown state on a
// fit, or nothing on overflow; the caller's state is never modified, so
// every tentative discard rolls back by discarding the candidate. Throws
// when the spread would exceed the section window.
std::optional<SpreadState> try_append_section(const SpreadState& state,
                                              int section_no, int body_lines,
                                              const MiniOutput& minis,
                                              const LayoutConfig& cfg);

// Emits everything scheduled except the buckets of member sections, which
// are erased. Erased identities may reappear in later spreads.
Spread finalize_spread(const SpreadState& state);

struct SectionLayout {
  int number = 0;
  int body_lines = 0;
  MiniOutput minis;
};

struct PackResult {
  std::vector<Spread> spreads;
  std::vector<int> oversized_sections;
};

// Greedy longest-fit packing: append while the section fits, otherwise
// finalize and start a new spread. A section too tall for an empty spread
// occupies one alone and is flagged.
PackResult pack_document(const std::vector<SectionLayout>& sections,
                         const std::string& program_name,
                         const LayoutConfig& cfg);

}  // namespace miniweave

#endif
