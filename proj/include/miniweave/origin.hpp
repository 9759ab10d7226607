#ifndef MINIWEAVE_ORIGIN_HPP
#define MINIWEAVE_ORIGIN_HPP

#include <string>
#include <tuple>

namespace miniweave {

// Where a meaning was established: a section of a named program, or a
// literal location label such as a header file name. Section 0 is reserved
// for identifiers that were never defined anywhere.
struct Origin {
  enum class Kind { program_section, literal_label };

  Kind kind = Kind::program_section;
  std::string program;
  int section = 0;
  std::string label;

  static Origin section_of(std::string program, int section) {
    Origin o;
    o.kind = Kind::program_section;
    o.program = std::move(program);
    o.section = section;
    return o;
  }

  static Origin literal(std::string label) {
    Origin o;
    o.kind = Kind::literal_label;
    o.label = std::move(label);
    return o;
  }

  bool is_section() const { return kind == Kind::program_section; }

  bool is_internal(const std::string& current_program) const {
    return kind == Kind::program_section && program == current_program;
  }

  friend bool operator==(const Origin& a, const Origin& b) {
    return a.kind == b.kind && a.program == b.program &&
           a.section == b.section && a.label == b.label;
  }

  friend bool operator!=(const Origin& a, const Origin& b) { return !(a == b); }

  friend bool operator<(const Origin& a, const Origin& b) {
    return std::tie(a.kind, a.program, a.section, a.label) <
           std::tie(b.kind, b.program, b.section, b.label);
  }
};

}  // namespace miniweave

#endif
