#include "miniweave/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "miniweave/errors.hpp"
#include "miniweave/ham_corpus.hpp"

namespace miniweave {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    throw Error(ErrorKind::io_failure, "cannot write " + path.string());
}

std::string display_ident(const std::string& ident_markup) {
  std::size_t open = ident_markup.find('{');
  std::size_t close = ident_markup.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    return ident_markup;
  return ident_markup.substr(open + 1, close - open - 1);
}

struct WeavePaths {
  std::filesystem::path aux;
  std::filesystem::path bux;
  std::filesystem::path system_bux;
  std::filesystem::path ref;
  std::filesystem::path sref;
  std::filesystem::path pages;
};

WeavePaths paths_for(const RunConfig& cfg) {
  std::string base = (cfg.source.parent_path() / cfg.source.stem()).string();
  WeavePaths p;
  p.aux = cfg.aux_path.value_or(base + ".aux");
  p.bux = cfg.bux_path.value_or(base + ".bux");
  if (cfg.system_bux_path) {
    p.system_bux = *cfg.system_bux_path;
  } else if (const char* env = std::getenv("MINIWEAVE_SYSTEM_BUX")) {
    p.system_bux = env;
  } else {
    p.system_bux = cfg.source.parent_path() / "system.bux";
  }
  p.ref = base + ".ref";
  p.sref = base + ".sref";
  p.pages = base + (cfg.mode == RenderMode::html ? ".html" : ".txt");
  return p;
}

WeaveInputs gather_inputs(const RunConfig& cfg, const WeavePaths& paths) {
  auto source_text = read_file(cfg.source);
  if (!source_text)
    throw Error(ErrorKind::io_failure, "cannot read " + cfg.source.string());
  WeaveInputs in;
  in.source_text = std::move(*source_text);
  in.program_name = cfg.program_name.empty() ? cfg.source.stem().string()
                                             : cfg.program_name;
  in.system_bux = read_file(paths.system_bux);
  in.aux = read_file(paths.aux);
  in.bux = read_file(paths.bux);
  std::filesystem::path dir = cfg.source.parent_path();
  in.resolver = [dir](const std::string& name) { return read_file(dir / name); };
  in.layout = cfg.layout;
  return in;
}

int weave_once(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  WeavePaths paths = paths_for(cfg);
  WeaveInputs in = gather_inputs(cfg, paths);
  WeaveOutput woven = weave_document(in);

  write_file(paths.aux, woven.aux_text);

  std::optional<RefFile> sref;
  if (auto sref_text = read_file(paths.sref)) {
    try {
      sref = parse_sref(*sref_text);
    } catch (const Error& e) {
      woven.warnings.push_back(std::string("ignoring unreadable ") +
                               paths.sref.string() + ": " + e.what());
    }
  }

  std::vector<RenderedPage> pages;
  bool final_pass = false;
  if (sref) {
    try {
      pages = render_document(woven.document, woven.packed, &*sref, cfg.layout,
                              cfg.mode);
      final_pass = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::sref_mismatch) throw;
      woven.warnings.push_back(std::string("stale ") + paths.sref.string() +
                               ", rendering preview: " + e.what());
    }
  }
  if (!final_pass) {
    pages = render_document(woven.document, woven.packed, nullptr, cfg.layout,
                            cfg.mode);
    write_file(paths.ref, serialize_ref(woven.ref));
  }
  write_file(paths.pages, join_pages(pages, cfg.mode, in.program_name));

  if (cfg.debug_minis) out << dump_debug_minis(woven.minis, in.program_name);
  for (const std::string& warning : woven.warnings)
    err << "warning: " << warning << "\n";
  return woven.warnings.empty() ? 0 : 2;
}

}  // namespace

WeaveOutput weave_document(const WeaveInputs& in) {
  WeaveOutput out;
  out.document = parse_source(in.source_text, in.program_name);
  MeaningTable table = load_meaning_files(in.program_name, in.system_bux,
                                          in.aux, in.bux, in.resolver);

  std::vector<Meaning> aux_records;
  std::vector<SectionLayout> layouts;
  std::set<std::string> unknown;
  for (const Section& section : out.document.sections) {
    SectionOutcome outcome = process_section(table, section);
    aux_records.insert(aux_records.end(), outcome.aux_records.begin(),
                       outcome.aux_records.end());
    MiniOutput minis = emit_section_minis(table, outcome.state, section);
    for (const MiniEntry& e : minis.entries) {
      if (e.type_markup != "???") continue;
      std::string name = display_ident(e.ident_markup);
      if (unknown.insert(name).second)
        out.warnings.push_back("no meaning known for '" + name +
                               "' (first used in section " +
                               std::to_string(section.number) + ")");
    }
    layouts.push_back({section.number, section_body_lines(section), minis});
    out.minis.push_back(std::move(minis));
  }

  out.packed = pack_document(layouts, in.program_name, in.layout);
  out.aux_text = serialize_aux(aux_records);
  for (const Spread& spread : out.packed.spreads) {
    RefSpread ref_spread;
    ref_spread.number = spread.number;
    for (const MiniEntry& e : spread.entries)
      ref_spread.entries.push_back(serialize_mini_entry(e, in.program_name));
    out.ref.spreads.push_back(std::move(ref_spread));
  }
  for (int section : out.packed.oversized_sections)
    out.warnings.push_back("section " + std::to_string(section) +
                           " is taller than a page and overflows its spread");
  return out;
}

int cmd_weave(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!cfg.auto_mode) return weave_once(cfg, out, err);
    RunConfig pass = cfg;
    pass.auto_mode = false;
    int status = weave_once(pass, out, err);
    if (status == 1) return 1;
    WeavePaths paths = paths_for(pass);
    if (std::filesystem::exists(paths.ref)) {
      status = cmd_refsort(paths.ref, err);
      if (status != 0) return status;
    }
    return weave_once(pass, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_refsort(const std::filesystem::path& ref_path, std::ostream& err) {
  try {
    auto text = read_file(ref_path);
    if (!text)
      throw Error(ErrorKind::io_failure, "cannot read " + ref_path.string());
    RefFile sorted = sort_ref(parse_ref(*text));
    std::filesystem::path sref_path = ref_path;
    sref_path.replace_extension(".sref");
    write_file(sref_path, serialize_sref(sorted));
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    WeavePaths paths = paths_for(cfg);
    WeaveInputs in = gather_inputs(cfg, paths);
    WeaveOutput woven = weave_document(in);
    out << dump_debug_minis(woven.minis, in.program_name);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_corpus(const std::filesystem::path& dir, std::ostream& err) {
  try {
    write_ham_corpus(dir);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace miniweave
