#include "miniweave/packer.hpp"

#include "miniweave/errors.hpp"

namespace miniweave {

namespace {

// Places one entry according to where its origin falls, applying the two
// incoming-entry discards: origins inside the member range are dropped, as
// are identities already scheduled.
void place_entry(SpreadState& state, const MiniEntry& entry) {
  if (entry.origin.is_internal(state.program_name)) {
    int s = entry.origin.section;
    if (s >= state.base && s < state.base + state.members) return;
    if (!state.identities.insert(entry.identity()).second) return;
    if (s < state.base) {
      state.pre_spread.push_back(entry);
    } else if (s < state.base + kSpreadWindow) {
      state.member_offset[s - state.base].push_back(entry);
    } else {
      state.far_forward.push_back(entry);
    }
  } else {
    if (!state.identities.insert(entry.identity()).second) return;
    state.external.push_back(entry);
  }
}

// Grows the spread by one section without checking capacity. Entries that
// were scheduled against this section while it was still a forward
// reference are discarded before its own entries arrive.
void append_unchecked(SpreadState& state, int section_no, int body_lines,
                      const MiniOutput& minis, const LayoutConfig& cfg) {
  if (state.empty()) {
    state.base = section_no;
    state.members = 1;
    state.body_lines = body_lines;
  } else {
    int offset = section_no - state.base;
    if (offset < 0 || offset >= kSpreadWindow)
      throw Error(ErrorKind::window_exceeded,
                  "section " + std::to_string(section_no) +
                      " does not fit the spread window at base " +
                      std::to_string(state.base));
    auto& bucket = state.member_offset[offset];
    for (const auto& stale : bucket) state.identities.erase(stale.identity());
    bucket.clear();
    state.members = offset + 1;
    state.body_lines += cfg.section_gap + body_lines;
  }
  for (const auto& entry : minis.entries) place_entry(state, entry);
}

}  // namespace

int SpreadState::entry_count() const {
  std::size_t n = pre_spread.size() + far_forward.size() + external.size();
  for (const auto& bucket : member_offset) n += bucket.size();
  return static_cast<int>(n);
}

int estimate_height(int body_lines, int n_entries, const LayoutConfig& cfg) {
  int rows = (n_entries + cfg.mini_columns - 1) / cfg.mini_columns;
  return body_lines + rows * cfg.mini_baseline + cfg.rule_allowance;
}

std::optional<SpreadState> try_append_section(const SpreadState& state,
                                              int section_no, int body_lines,
                                              const MiniOutput& minis,
                                              const LayoutConfig& cfg) {
  SpreadState grown = state;
  append_unchecked(grown, section_no, body_lines, minis, cfg);
  if (estimate_height(grown.body_lines, grown.entry_count(), cfg) >
      cfg.page_capacity)
    return std::nullopt;
  return grown;
}

Spread finalize_spread(const SpreadState& state) {
  Spread spread;
  spread.body_lines = state.body_lines;
  for (int i = 0; i < state.members; i++)
    spread.members.push_back(state.base + i);
  spread.entries = state.pre_spread;
  for (int i = state.members; i < kSpreadWindow; i++)
    spread.entries.insert(spread.entries.end(),
                          state.member_offset[i].begin(),
                          state.member_offset[i].end());
  spread.entries.insert(spread.entries.end(), state.far_forward.begin(),
                        state.far_forward.end());
  spread.entries.insert(spread.entries.end(), state.external.begin(),
                        state.external.end());
  return spread;
}

PackResult pack_document(const std::vector<SectionLayout>& sections,
                         const std::string& program_name,
                         const LayoutConfig& cfg) {
  PackResult result;
  SpreadState cur;
  cur.program_name = program_name;

  auto close = [&](bool oversized) {
    Spread spread = finalize_spread(cur);
    spread.number = static_cast<int>(result.spreads.size()) + 1;
    spread.oversized = oversized;
    if (oversized) result.oversized_sections.push_back(spread.members.front());
    result.spreads.push_back(std::move(spread));
    cur = SpreadState{};
    cur.program_name = program_name;
  };

  for (const auto& sec : sections) {
    if (!cur.empty() && cur.members < kSpreadWindow) {
      auto grown =
          try_append_section(cur, sec.number, sec.body_lines, sec.minis, cfg);
      if (grown) {
        cur = std::move(*grown);
        continue;
      }
    }
    if (!cur.empty()) close(false);
    auto fresh =
        try_append_section(cur, sec.number, sec.body_lines, sec.minis, cfg);
    if (fresh) {
      cur = std::move(*fresh);
    } else {
      append_unchecked(cur, sec.number, sec.body_lines, sec.minis, cfg);
      close(true);
    }
  }
  if (!cur.empty()) close(false);
  return result;
}

}  // namespace miniweave
