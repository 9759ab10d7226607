#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "miniweave/ham_corpus.hpp"
#include "miniweave/pipeline.hpp"
#include "miniweave/render.hpp"

using namespace miniweave;

namespace {

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

std::filesystem::path fresh_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("miniweave_corpus_" + std::string(tag));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

const std::string kExpectedAux = R"aux(@$deg {ham}2 =\|u.\|I@>
@$deg {ham}2 =\|u.\|I@>
@$main {ham}2 \&{int} (\,)@>
@$argc {ham}2 \&{int}@>
@$argv {ham}2 \&{char} ${*}[\,]$@>
@$t {ham}2 \&{register} \&{Vertex} $*$@>
@$u {ham}2 \&{register} \&{Vertex} $*$@>
@$v {ham}2 \&{register} \&{Vertex} $*$@>
@$y {ham}2 \&{register} \&{Vertex} $*$@>
@$a {ham}2 \&{register} \&{Arc} $*$@>
@$g {ham}2 \&{Graph} $*$@>
@$count {ham}2 \&{long}@>
@$taken {ham}4 =\|v.\|I@>
@$taken {ham}4 =\|v.\|I@>
@$not_taken {ham}4 =macro (\,)@>
@$d {ham}4 \&{register} \&{int}@>
@$vert {ham}6 =\|w.\|V@>
@$ark {ham}6 =\|x.\|A@>
@$vert {ham}6 =\|w.\|V@>
@$ark {ham}6 =\|x.\|A@>
@$advance {ham}7 label@>
@$d {ham}8 \&{register} \&{int}@>
)aux";

}  // namespace

TEST_CASE("the bundled program parses into eleven sections") {
  SourceDocument doc = parse_source(build_ham_corpus(), "ham");
  REQUIRE(doc.sections.size() == 11);
  CHECK(doc.sections[0].starred);
  CHECK(doc.sections[10].starred);
  for (int i = 1; i < 10; i++) CHECK_FALSE(doc.sections[i].starred);
  for (int i = 0; i < 11; i++) CHECK(doc.sections[i].number == i + 1);
}

TEST_CASE("the override blocks appear verbatim in the source") {
  std::string text = build_ham_corpus();
  CHECK(text.find("@-deg@>") != std::string::npos);
  CHECK(text.find("@$deg {ham}2 =\\|u.\\|I@>") != std::string::npos);
  CHECK(text.find("@%@$u {GB_GRAPH}9 \\&{util}@>") != std::string::npos);
  CHECK(text.find("@-taken@>") != std::string::npos);
  CHECK(text.find("@%@$v {GB_GRAPH}9 \\&{util}@>\n @$v {ham}2 \\&{register} "
                  "\\&{Vertex} $*$@>") != std::string::npos);
  CHECK(text.find("@-k@> @-t@> @-vert@> @-ark@>") != std::string::npos);
  CHECK(text.find("@$vert {ham}6 =\\|w.\\|V@>") != std::string::npos);
  CHECK(text.find("@$ark {ham}6 =\\|x.\\|A@>") != std::string::npos);
  CHECK(text.find("@%@$w {GB_GRAPH}9 \\&{util}@>\n  @$x {GB_GRAPH}9 "
                  "\\&{util}@>") != std::string::npos);
}

TEST_CASE("the corpus writer produces the five companion files") {
  auto dir = fresh_dir("write");
  write_ham_corpus(dir);
  CHECK(slurp(dir / "ham.lw") == build_ham_corpus());
  CHECK(slurp(dir / "ham.bux") == ham_bux_text());
  CHECK(slurp(dir / "gb_graph.hux") == gb_graph_hux_text());
  CHECK(slurp(dir / "gb_save.hux") == gb_save_hux_text());
  CHECK(slurp(dir / "system.bux") == system_bux_text());
  std::filesystem::remove_all(dir);
}

TEST_CASE("weaving the corpus records the expected meanings") {
  WeaveOutput out = weave_document(corpus_inputs());
  CHECK(out.aux_text == kExpectedAux);
  CHECK(out.warnings.empty());
}

TEST_CASE("the corpus packs into five spreads") {
  WeaveOutput out = weave_document(corpus_inputs());
  REQUIRE(out.packed.spreads.size() == 5);
  CHECK(out.packed.oversized_sections.empty());
  const std::vector<std::vector<int>> members = {
      {1, 2}, {3, 4, 5}, {6, 7}, {8, 9, 10}, {11}};
  const std::vector<int> entry_counts = {6, 15, 17, 17, 15};
  for (int i = 0; i < 5; i++) {
    CAPTURE(i);
    CHECK(out.packed.spreads[i].number == i + 1);
    CHECK(out.packed.spreads[i].members == members[i]);
    CHECK(out.packed.spreads[i].entries.size() ==
          static_cast<std::size_t>(entry_counts[i]));
  }
  REQUIRE(out.ref.spreads.size() == 5);
}

TEST_CASE("section ten emits its mini-index in first-use order") {
  WeaveOutput out = weave_document(corpus_inputs());
  REQUIRE(out.minis.size() == 11);
  const MiniOutput& ten = out.minis[9];
  CHECK(ten.section == 10);
  const std::vector<std::string> expected = {
      R"(\[2 \|{t} \&{register} \&{Vertex} $*$)",
      R"(\[2 \|{a} \&{register} \&{Arc} $*$)",
      R"(\[4 \\{not_taken} =macro (\,))",
      R"(\]{GB_GRAPH}10 \\{tip} \&{Vertex} $*$)",
      R"(\]{GB_GRAPH}10 \\{next} \&{Arc} $*$)",
      R"(\[2 \|{v} \&{register} \&{Vertex} $*$)",
      R"(\[6 \\{ark} =\|x.\|A)",
      R"(\[7 \\{advance} label)",
  };
  REQUIRE(ten.entries.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); i++) {
    CAPTURE(i);
    CHECK(serialize_mini_entry(ten.entries[i], "ham") == expected[i]);
  }
}

TEST_CASE("the corpus renders to the recorded page heights") {
  WeaveOutput out = weave_document(corpus_inputs());
  LayoutConfig cfg;
  auto pages = render_document(out.document, out.packed, nullptr, cfg,
                               RenderMode::plain);
  REQUIRE(pages.size() == 5);
  const std::vector<std::size_t> heights = {33, 42, 36, 40, 25};
  for (int i = 0; i < 5; i++) {
    CAPTURE(i);
    CHECK(pages[i].lines.size() == heights[i]);
    CHECK(pages[i].lines.size() <= static_cast<std::size_t>(cfg.page_capacity));
  }
}
