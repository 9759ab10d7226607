#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "miniweave/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"weave literate programs into pages with per-page mini-indexes"};
  app.require_subcommand(1);

  miniweave::RunConfig cfg;
  std::string aux_override, bux_override, system_bux_override;
  std::string ref_path;
  std::string corpus_dir = ".";
  bool html = false;

  auto add_source_options = [&](CLI::App* cmd) {
    cmd->add_option("source", cfg.source, "literate source file")->required();
    cmd->add_option("--program-name", cfg.program_name,
                    "program name for internal origins (default: source stem)");
    cmd->add_option("--aux", aux_override, "meaning file from the previous run");
    cmd->add_option("--bux", bux_override, "per-program meaning file");
    cmd->add_option("--system-bux", system_bux_override,
                    "system-wide meaning file (or set MINIWEAVE_SYSTEM_BUX)");
  };

  CLI::App* weave = app.add_subcommand("weave", "weave one document");
  add_source_options(weave);
  weave->add_option("--columns", cfg.layout.mini_columns,
                    "mini-index columns per page");
  weave->add_option("--capacity", cfg.layout.page_capacity,
                    "lines per page");
  weave->add_flag("--html", html, "render html instead of plain text");
  weave->add_flag("--debug-minis", cfg.debug_minis,
                  "also print the raw mini-output");
  weave->add_flag("--auto", cfg.auto_mode,
                  "run weave, refsort, and the final weave in one invocation");

  CLI::App* refsort = app.add_subcommand("refsort", "sort a .ref into a .sref");
  refsort->add_option("ref", ref_path, "unsorted reference file")->required();

  CLI::App* check =
      app.add_subcommand("check", "print the raw mini-output of each section");
  add_source_options(check);

  CLI::App* corpus =
      app.add_subcommand("corpus", "write the bundled example program");
  corpus->add_option("dir", corpus_dir, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (cfg.layout.mini_columns < 1) {
    std::cerr << "error: --columns must be at least 1\n";
    return 1;
  }
  if (cfg.layout.page_capacity < cfg.layout.rule_allowance + 1) {
    std::cerr << "error: --capacity leaves no room below the rule\n";
    return 1;
  }
  if (!aux_override.empty()) cfg.aux_path = aux_override;
  if (!bux_override.empty()) cfg.bux_path = bux_override;
  if (!system_bux_override.empty()) cfg.system_bux_path = system_bux_override;
  cfg.mode = html ? miniweave::RenderMode::html : miniweave::RenderMode::plain;

  if (weave->parsed()) return miniweave::cmd_weave(cfg, std::cout, std::cerr);
  if (refsort->parsed()) return miniweave::cmd_refsort(ref_path, std::cerr);
  if (check->parsed()) return miniweave::cmd_check(cfg, std::cout, std::cerr);
  if (corpus->parsed()) return miniweave::cmd_corpus(corpus_dir, std::cerr);
  return 1;
}
