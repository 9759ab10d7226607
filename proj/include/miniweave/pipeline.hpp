#ifndef MINIWEAVE_PIPELINE_HPP
#define MINIWEAVE_PIPELINE_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "miniweave/meaning.hpp"
#include "miniweave/mini.hpp"
#include "miniweave/packer.hpp"
#include "miniweave/refsort.hpp"
#include "miniweave/render.hpp"
#include "miniweave/source_model.hpp"

namespace miniweave {

struct RunConfig {
  std::filesystem::path source;
  std::string program_name;  // empty: the source file's stem
  LayoutConfig layout;
  bool debug_minis = false;
  bool auto_mode = false;
  RenderMode mode = RenderMode::plain;
  std::optional<std::filesystem::path> aux_path;
  std::optional<std::filesystem::path> bux_path;
  std::optional<std::filesystem::path> system_bux_path;
};

struct WeaveInputs {
  std::string source_text;
  std::string program_name;
  std::optional<std::string> system_bux;
  std::optional<std::string> aux;
  std::optional<std::string> bux;
  std::function<std::optional<std::string>(const std::string&)> resolver;
  LayoutConfig layout;
};

struct WeaveOutput {
  SourceDocument document;
  std::vector<MiniOutput> minis;
  PackResult packed;
  std::string aux_text;
  RefFile ref;
  std::vector<std::string> warnings;
};

// The weave pass short of file I/O: parse the source, replay the meaning
// files, process every section, emit and pack the mini-indexes. Warnings
// cover identifiers without meanings and sections too tall for a page.
WeaveOutput weave_document(const WeaveInputs& in);

// weave: rewrites .aux, renders final pages when a matching .sref exists,
// otherwise writes .ref and renders preview pages. Returns 0 on success,
// 1 on error, 2 on warnings. auto_mode chains weave, refsort, weave.
int cmd_weave(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// refsort: sorts an existing .ref into the matching .sref.
int cmd_refsort(const std::filesystem::path& ref_path, std::ostream& err);

// check: prints the raw per-section mini-output, with no packing.
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// corpus: writes the bundled example program and its companion files.
int cmd_corpus(const std::filesystem::path& dir, std::ostream& err);

}  // namespace miniweave

#endif
