// End-to-end acceptance checks, one numbered line of output each. The
// binary exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "miniweave/graph.hpp"
#include "miniweave/graph_oracle.hpp"
#include "miniweave/ham_corpus.hpp"
#include "miniweave/pipeline.hpp"
#include "miniweave/render.hpp"

using namespace miniweave;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& detail) {
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!pass) failures++;
}

void run(int number, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    report(number, pass, detail);
  } catch (const std::exception& e) {
    report(number, false, std::string("exception: ") + e.what());
  }
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.n = n;
  for (int v = 0; v < n; v++) g.names.push_back("v" + std::to_string(v));
  g.adjacency.resize(n);
  for (auto [u, v] : edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  return g;
}

WeaveInputs corpus_inputs() {
  WeaveInputs in;
  in.source_text = build_ham_corpus();
  in.program_name = "ham";
  in.system_bux = system_bux_text();
  in.bux = ham_bux_text();
  in.resolver = [](const std::string& name) -> std::optional<std::string> {
    if (name == "gb_graph.hux") return gb_graph_hux_text();
    if (name == "gb_save.hux") return gb_save_hux_text();
    return std::nullopt;
  };
  return in;
}

bool contains_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

std::set<MiniEntry> scheduled_entries(const SpreadState& st) {
  std::set<MiniEntry> all;
  auto take = [&all](const std::vector<MiniEntry>& v) {
    all.insert(v.begin(), v.end());
  };
  take(st.pre_spread);
  for (const auto& bucket : st.member_offset) take(bucket);
  take(st.far_forward);
  take(st.external);
  return all;
}

MiniEntry random_entry(std::mt19937_64& rng, int n_sections,
                       const std::string& program) {
  static const std::vector<std::string> names = {
      "a",   "i",    "t",   "deg",       "ark",      "vert",
      "Arc", "count", "tip", "not_taken", "nottaken", "Vertex"};
  static const std::vector<std::string> types = {
      "\\&{int}",     "\\&{register} \\&{int}", "=macro",
      "=\\&{struct}", "\\&{Vertex} $*$",        "\\zip"};
  MiniEntry e;
  e.type_markup = types[rng() % types.size()];
  e.ident_markup = ident_markup_for(names[rng() % names.size()], e.type_markup);
  switch (rng() % 5) {
    case 0:
    case 1:
    case 2:
      e.origin = Origin::section_of(
          program, 1 + static_cast<int>(rng() % (n_sections + 4)));
      break;
    case 3:
      e.origin =
          Origin::section_of("GB_GRAPH", 1 + static_cast<int>(rng() % 30));
      break;
    default:
      e.origin = Origin::literal(rng() % 2 ? "<stdio.h>" : "<ctype.h>");
      break;
  }
  return e;
}

std::vector<SectionLayout> random_layouts(std::mt19937_64& rng, int n_sections,
                                          int max_body,
                                          const std::string& program) {
  std::vector<SectionLayout> sections;
  for (int s = 1; s <= n_sections; s++) {
    SectionLayout layout;
    layout.number = s;
    layout.body_lines = 1 + static_cast<int>(rng() % max_body);
    layout.minis.section = s;
    int count = static_cast<int>(rng() % 7);
    for (int k = 0; k < count; k++)
      layout.minis.entries.push_back(random_entry(rng, n_sections, program));
    sections.push_back(std::move(layout));
  }
  return sections;
}

std::pair<bool, std::string> criterion_board_count() {
  auto start = std::chrono::steady_clock::now();
  long long count = enumerate_hamiltonian_cycles(knight_graph(6, 6));
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::ostringstream detail;
  detail << "count " << count << ", " << seconds << "s";
  return {count == 9862 && seconds < 60.0, detail.str()};
}

std::pair<bool, std::string> criterion_random_graphs() {
  std::mt19937_64 rng(98620301);
  const double probabilities[] = {0.3, 0.5, 0.8};
  std::uniform_int_distribution<int> size(3, 9);
  int agreements = 0;
  const int trials = 200;
  for (int t = 0; t < trials; t++) {
    int n = size(rng);
    std::bernoulli_distribution flip(probabilities[rng() % 3]);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; u++)
      for (int v = u + 1; v < n; v++)
        if (flip(rng)) edges.push_back({u, v});
    Graph g = graph_from_edges(n, edges);
    if (enumerate_hamiltonian_cycles(g) == brute_force_cycles(g)) agreements++;
  }
  return {agreements == trials,
          std::to_string(agreements) + "/" + std::to_string(trials) +
              " graphs agree"};
}

std::pair<bool, std::string> criterion_serialized_forms() {
  std::vector<Meaning> records = {
      {"deg", Origin::section_of("ham", 2), "=macro"},
      {"argc", Origin::section_of("ham", 2), "\\&{int}"},
      {"argv", Origin::section_of("ham", 2), "\\&{char} ${*}[\\,]$"},
      {"d", Origin::section_of("ham", 8), "\\&{register} \\&{int}"},
  };
  const std::string expected_aux =
      "@$deg {ham}2 =macro@>\n"
      "@$argc {ham}2 \\&{int}@>\n"
      "@$argv {ham}2 \\&{char} ${*}[\\,]$@>\n"
      "@$d {ham}8 \\&{register} \\&{int}@>\n";
  bool aux_ok = serialize_aux(records) == expected_aux;

  WeaveOutput woven = weave_document(corpus_inputs());
  std::string ref_text = serialize_ref(woven.ref);
  std::string sref_text = serialize_sref(sort_ref(woven.ref));

  bool ref_ok =
      ref_text.rfind("!1\n", 0) == 0 && contains_line(ref_text, "!2") &&
      contains_line(ref_text,
                    "+ \\]{GB_SAVE}4 \\\\{restore_graph} \\&{Graph} $*(\\,)$") &&
      contains_line(ref_text, "+ \\]{GB_GRAPH}9 \\|{u} \\&{util}") &&
      contains_line(ref_text, "+ \\]{GB_GRAPH}8 \\|{I} \\&{long}") &&
      contains_line(ref_text, "+ \\]\"<stdio.h>\" \\\\{printf} \\&{int} (\\,)");
  bool sref_ok =
      contains_line(sref_text, "\\]{GB_GRAPH}10 \\&{Arc} =\\&{struct}") &&
      contains_line(sref_text, "\\]{GB_GRAPH}9 \\|{u} \\&{util}") &&
      contains_line(sref_text, "\\]{GB_GRAPH}9 \\&{Vertex} =\\&{struct}") &&
      contains_line(sref_text, "\\donewithpage1") &&
      contains_line(sref_text, "\\[2 \\|{a} \\&{register} \\&{Arc} $*$") &&
      contains_line(sref_text,
                    "\\]{GB_GRAPH}20 \\\\{vertices} \\&{Vertex} $*$") &&
      contains_line(sref_text, "\\donewithpage5");

  std::string detail;
  if (!aux_ok) detail += "meaning lines differ; ";
  if (!ref_ok) detail += "interchange lines differ; ";
  if (!sref_ok) detail += "sorted lines differ; ";
  if (detail.empty()) detail = "all quoted lines byte-identical";
  return {aux_ok && ref_ok && sref_ok, detail};
}

std::pair<bool, std::string> criterion_section_merge() {
  WeaveOutput woven = weave_document(corpus_inputs());
  LayoutConfig cfg;
  auto body = [&woven](int section) {
    return section_body_lines(woven.document.sections[section - 1]);
  };
  auto minis = [&woven](int section) -> const MiniOutput& {
    return woven.minis[section - 1];
  };

  SpreadState state;
  state.program_name = "ham";
  auto with8 = try_append_section(state, 8, body(8), minis(8), cfg);
  if (!with8) return {false, "section 8 does not open the spread"};
  auto with9 = try_append_section(*with8, 9, body(9), minis(9), cfg);
  if (!with9) return {false, "section 9 does not fit"};
  auto with10 = try_append_section(*with9, 10, body(10), minis(10), cfg);
  if (!with10) return {false, "section 10 does not fit"};

  std::set<MiniEntry> before = scheduled_entries(*with9);
  std::set<MiniEntry> after = scheduled_entries(*with10);
  std::vector<std::string> added;
  for (const MiniEntry& e : after)
    if (!before.count(e)) added.push_back(serialize_mini_entry(e, "ham"));
  std::sort(added.begin(), added.end());

  const std::vector<std::string> expected = {"\\[6 \\\\{ark} =\\|x.\\|A",
                                             "\\[7 \\\\{advance} label"};
  bool delta_ok = added == expected;
  bool overflow_ok = !try_append_section(*with10, 11, body(11), minis(11), cfg);
  std::string detail = "section 10 adds " + std::to_string(added.size()) +
                       " entries, section 11 " +
                       (overflow_ok ? "overflows" : "fits");
  return {delta_ok && overflow_ok, detail};
}

std::pair<bool, std::string> criterion_own_spread_exclusion() {
  std::mt19937_64 rng(55005);
  long long violations = 0;
  long long entries_seen = 0;
  for (int t = 0; t < 1000; t++) {
    LayoutConfig cfg;
    cfg.mini_columns = 1 + static_cast<int>(rng() % 3);
    cfg.mini_baseline = 1 + static_cast<int>(rng() % 2);
    cfg.page_capacity = 20 + static_cast<int>(rng() % 41);
    cfg.section_gap = static_cast<int>(rng() % 3);
    cfg.rule_allowance = static_cast<int>(rng() % 3);
    int n_sections = 1 + static_cast<int>(rng() % 16);
    auto sections =
        random_layouts(rng, n_sections, cfg.page_capacity, "prog");
    PackResult packed = pack_document(sections, "prog", cfg);
    for (const Spread& spread : packed.spreads) {
      std::set<int> members(spread.members.begin(), spread.members.end());
      for (const MiniEntry& e : spread.entries) {
        entries_seen++;
        if (e.origin.is_internal("prog") && members.count(e.origin.section))
          violations++;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " +
                               std::to_string(entries_seen) + " entries"};
}

std::pair<bool, std::string> criterion_consecutive_spreads() {
  LayoutConfig cfg;
  MiniEntry repeat;
  repeat.origin = Origin::section_of("ham", 1);
  repeat.ident_markup = "\\|{x}";
  repeat.type_markup = "\\&{int}";

  std::vector<SectionLayout> sections(3);
  for (int i = 0; i < 3; i++) {
    sections[i].number = i + 1;
    sections[i].body_lines = 40;
    sections[i].minis.section = i + 1;
  }
  sections[1].minis.entries.push_back(repeat);
  sections[2].minis.entries.push_back(repeat);

  PackResult packed = pack_document(sections, "ham", cfg);
  if (packed.spreads.size() != 3)
    return {false,
            std::to_string(packed.spreads.size()) + " spreads instead of 3"};
  auto holds = [&repeat](const Spread& s) {
    return std::count(s.entries.begin(), s.entries.end(), repeat) == 1;
  };
  bool pass = packed.spreads[0].entries.empty() && holds(packed.spreads[1]) &&
              holds(packed.spreads[2]);
  return {pass, "entry repeats in both later spreads"};
}

std::pair<bool, std::string> criterion_fixpoint() {
  WeaveInputs first_in = corpus_inputs();
  WeaveOutput first = weave_document(first_in);

  WeaveInputs second_in = corpus_inputs();
  second_in.aux = first.aux_text;
  WeaveOutput second = weave_document(second_in);

  bool aux_ok = first.aux_text == second.aux_text;
  LayoutConfig cfg;
  std::string pages_first =
      join_pages(render_document(first.document, first.packed, nullptr, cfg,
                                 RenderMode::plain),
                 RenderMode::plain);
  std::string pages_second =
      join_pages(render_document(second.document, second.packed, nullptr, cfg,
                                 RenderMode::plain),
                 RenderMode::plain);
  bool pages_ok = pages_first == pages_second;
  std::string detail;
  if (!aux_ok) detail += "meaning files differ; ";
  if (!pages_ok) detail += "pages differ; ";
  if (detail.empty()) detail = "second run byte-identical";
  return {aux_ok && pages_ok, detail};
}

std::pair<bool, std::string> criterion_sorting() {
  std::mt19937_64 rng(80808);
  for (int t = 0; t < 500; t++) {
    RefFile file;
    int n_spreads = 1 + static_cast<int>(rng() % 6);
    int number = 1 + static_cast<int>(rng() % 3);
    for (int s = 0; s < n_spreads; s++) {
      RefSpread spread;
      spread.number = number;
      number += 1 + static_cast<int>(rng() % 3);
      int count = static_cast<int>(rng() % 11);
      for (int k = 0; k < count; k++)
        spread.entries.push_back(
            serialize_mini_entry(random_entry(rng, 12, "prog"), "prog"));
      file.spreads.push_back(std::move(spread));
    }

    RefFile sorted = sort_ref(file);
    if (sorted.spreads.size() != file.spreads.size())
      return {false, "trial " + std::to_string(t) + ": spread count changed"};
    for (std::size_t s = 0; s < file.spreads.size(); s++) {
      const auto& in = file.spreads[s];
      const auto& out = sorted.spreads[s];
      if (out.number != in.number)
        return {false, "trial " + std::to_string(t) + ": numbering changed"};
      auto a = in.entries, b = out.entries;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b)
        return {false,
                "trial " + std::to_string(t) + ": not a permutation"};
      for (std::size_t i = 1; i < out.entries.size(); i++)
        if (collation_key(out.entries[i]) < collation_key(out.entries[i - 1]))
          return {false, "trial " + std::to_string(t) + ": out of order"};
    }
    if (serialize_ref(sort_ref(sorted)) != serialize_ref(sorted))
      return {false, "trial " + std::to_string(t) + ": not idempotent"};
    if (serialize_ref(parse_ref(serialize_ref(file))) != serialize_ref(file))
      return {false,
              "trial " + std::to_string(t) + ": interchange round trip"};
    if (serialize_sref(parse_sref(serialize_sref(sorted))) !=
        serialize_sref(sorted))
      return {false, "trial " + std::to_string(t) + ": sorted round trip"};
  }
  return {true, "500 random files sorted, idempotent, round-tripped"};
}

std::pair<bool, std::string> criterion_packing() {
  std::mt19937_64 rng(121212);
  for (int t = 0; t < 300; t++) {
    LayoutConfig cfg;
    cfg.page_capacity = 25 + static_cast<int>(rng() % 26);
    cfg.mini_columns = 1 + static_cast<int>(rng() % 3);
    int n_sections = 1 + static_cast<int>(rng() % 12);
    auto sections =
        random_layouts(rng, n_sections, cfg.page_capacity + 5, "prog");
    std::map<int, const SectionLayout*> by_number;
    for (const auto& s : sections) by_number[s.number] = &s;

    PackResult packed = pack_document(sections, "prog", cfg);

    for (std::size_t i = 0; i < packed.spreads.size(); i++) {
      const Spread& spread = packed.spreads[i];
      if (!spread.oversized &&
          estimate_height(spread.body_lines,
                          static_cast<int>(spread.entries.size()),
                          cfg) > cfg.page_capacity)
        return {false, "trial " + std::to_string(t) + ": height exceeded"};

      std::set<int> members(spread.members.begin(), spread.members.end());
      std::set<MiniEntry> expected;
      for (int m : spread.members)
        for (const MiniEntry& e : by_number.at(m)->minis.entries)
          if (!(e.origin.is_internal("prog") &&
                members.count(e.origin.section)))
            expected.insert(e);
      std::set<MiniEntry> actual(spread.entries.begin(), spread.entries.end());
      if (actual != expected)
        return {false, "trial " + std::to_string(t) + ": entry set differs"};
      if (actual.size() != spread.entries.size())
        return {false, "trial " + std::to_string(t) + ": duplicate entries"};

      if (spread.oversized || i + 1 >= packed.spreads.size()) continue;
      SpreadState state;
      state.program_name = "prog";
      bool rebuilt = true;
      for (int m : spread.members) {
        auto next = try_append_section(state, m, by_number.at(m)->body_lines,
                                       by_number.at(m)->minis, cfg);
        if (!next) {
          rebuilt = false;
          break;
        }
        state = *next;
      }
      if (!rebuilt)
        return {false, "trial " + std::to_string(t) + ": spread not greedy"};
      int following = packed.spreads[i + 1].members.front();
      if (try_append_section(state, following, by_number.at(following)->body_lines,
                             by_number.at(following)->minis, cfg))
        return {false,
                "trial " + std::to_string(t) + ": spread closed too early"};
    }
  }
  return {true, "300 random documents packed tight and correct"};
}

std::pair<bool, std::string> criterion_fallback() {
  MeaningTable table("ham");
  std::string line =
      format_entry(entry_for(table.lookup("k")), "ham", RenderMode::plain);
  return {line == "k: ???, \u00a70", "renders as \"" + line + "\""};
}

}  // namespace

int main() {
  run(1, criterion_board_count);
  run(2, criterion_random_graphs);
  run(3, criterion_serialized_forms);
  run(4, criterion_section_merge);
  run(5, criterion_own_spread_exclusion);
  run(6, criterion_consecutive_spreads);
  run(7, criterion_fixpoint);
  run(8, criterion_sorting);
  run(9, criterion_packing);
  run(10, criterion_fallback);
  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
