#ifndef MINIWEAVE_MEANING_HPP
#define MINIWEAVE_MEANING_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "miniweave/origin.hpp"
#include "miniweave/source_model.hpp"

namespace miniweave {

// An identifier's current meaning: its type markup and where it was defined.
struct Meaning {
  std::string ident;
  Origin origin;
  std::string type_markup;

  bool is_zip() const { return type_markup == kZipMarkup; }

  friend bool operator==(const Meaning& a, const Meaning& b) {
    return a.ident == b.ident && a.origin == b.origin &&
           a.type_markup == b.type_markup;
  }
};

// Every identifier has exactly one current meaning at any instant; absent
// identifiers have the uninitialized meaning, anchored at section 0.
class MeaningTable {
public:
  explicit MeaningTable(std::string program_name)
      : program_name_(std::move(program_name)) {}

  const std::string& program_name() const { return program_name_; }

  void set(const Meaning& m) { bindings_[m.ident] = m; }

  bool has(const std::string& ident) const { return bindings_.count(ident) > 0; }

  Meaning lookup(const std::string& ident) const {
    auto it = bindings_.find(ident);
    if (it != bindings_.end()) return it->second;
    Meaning m;
    m.ident = ident;
    m.origin = Origin::section_of(program_name_, 0);
    m.type_markup = "???";
    return m;
  }

  // True when ident is bound to a typedef-style meaning (markup =\&{...}),
  // which makes it usable as a base type in declarations.
  bool is_known_type(const std::string& ident) const {
    auto it = bindings_.find(ident);
    return it != bindings_.end() &&
           it->second.type_markup.rfind("=\\&{", 0) == 0;
  }

private:
  std::string program_name_;
  std::map<std::string, Meaning> bindings_;
};

// Per-section indexing state; resets at every section boundary.
struct SectionIndexState {
  std::set<std::string> suppressed;
  std::vector<Meaning> temporaries;
  bool temporary_toggle = false;
};

struct SectionOutcome {
  std::vector<Meaning> aux_records;
  SectionIndexState state;
};

// One implicit definition detected in code: the identifier, its markup, and
// the index of the identifier's token (used to order against directives).
struct Definition {
  std::string ident;
  std::string type_markup;
  int token_index = 0;
};

// Loads the three meaning files in their fixed order (system, then aux, then
// bux); missing files are simply skipped. Include lines are expanded through
// the resolver.
MeaningTable load_meaning_files(
    const std::string& program_name, const std::optional<std::string>& system_bux,
    const std::optional<std::string>& aux, const std::optional<std::string>& bux,
    const std::function<std::optional<std::string>(const std::string&)>& resolver);

// Applies one non-include control command. Permanent meaning directives
// replace the current meaning and append an aux record; temporary ones only
// extend the section state.
void apply_directive(MeaningTable& table, SectionIndexState& state,
                     const ControlCommand& cmd,
                     std::vector<Meaning>* aux_records);

// Scans a section's tokens for macro definitions, declarations, typedefs,
// function definitions, and labels, in token order. Constructs that do not
// match the supported grammar yield no candidate.
std::vector<Definition> detect_definitions(const Section& section,
                                           const MeaningTable& table);

// Runs a section's directives and implicit definitions in source order,
// updating the table and collecting the aux records it produces.
SectionOutcome process_section(MeaningTable& table, const Section& section);

// One line per record, in the directive grammar, newline-terminated.
std::string serialize_aux(const std::vector<Meaning>& records);

}  // namespace miniweave

#endif
