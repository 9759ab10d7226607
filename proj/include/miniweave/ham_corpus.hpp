#ifndef MINIWEAVE_HAM_CORPUS_HPP
#define MINIWEAVE_HAM_CORPUS_HPP

#include <filesystem>
#include <string>

namespace miniweave {

// An eleven-section circuit-counting program in LW form, reconstructed as
// the standard test corpus: degree/taken/vert/ark utility-field macros with
// their override blocks, a forward-declared advance label, and a one-line
// grouping hint in section 7.
std::string build_ham_corpus();

// Companion meaning files: ham.bux pulls in the two header extracts, and
// system.bux carries the <stdio.h> meanings.
std::string ham_bux_text();
std::string gb_graph_hux_text();
std::string gb_save_hux_text();
std::string system_bux_text();

// Writes ham.lw, ham.bux, gb_graph.hux, gb_save.hux, and system.bux.
void write_ham_corpus(const std::filesystem::path& dir);

}  // namespace miniweave

#endif
