#ifndef MINIWEAVE_SOURCE_MODEL_HPP
#define MINIWEAVE_SOURCE_MODEL_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "miniweave/errors.hpp"
#include "miniweave/origin.hpp"

namespace miniweave {

enum class TokenKind {
  identifier,
  keyword,
  punctuation,
  constant,
  string_literal,
  comment_text,
};

struct CodeToken {
  TokenKind kind = TokenKind::punctuation;
  std::string lexeme;
  std::size_t offset = 0;  // byte offset within the code fragment
  int line = 0;            // 0-based line within the code fragment
};

struct ControlCommand {
  enum class Kind {
    meaning_directive,  // @$ident {name}nn type@>  or  @$ident "label" type@>
    suppress,           // @-ident@>
    toggle_temporary,   // @%
    include,            // @i path
    join_hint,          // @+
  };

  Kind kind = Kind::toggle_temporary;
  std::string ident;
  Origin origin;
  std::string type_markup;
  std::string path;
  // Number of code tokens of the owning section that precede this command;
  // commands in the text part have anchor 0.
  int anchor = 0;
};

struct Section {
  int number = 0;
  bool starred = false;
  std::vector<std::string> text_lines;  // commentary with directives removed
  std::vector<std::string> code_lines;  // code with directives and join hints removed
  std::string code_text;                // code_lines joined by newlines (token source)
  std::vector<std::string> render_code_lines;  // join hints applied, markers displayed
  std::vector<CodeToken> code_tokens;
  std::vector<ControlCommand> controls;
};

struct SourceDocument {
  std::string program_name;
  std::vector<Section> sections;
};

// The marker used for meanings that carry no usable type.
inline const std::string kZipMarkup = "\\zip";

bool is_reserved_word(const std::string& word);

// Lexes a code fragment. Comments and string literals are single tokens;
// chunk markers @<...@> and macro markers @d are single punctuation tokens,
// as is # glued to a following identifier.
std::vector<CodeToken> tokenize_code(const std::string& fragment);

// Parses the directive body that follows "@$", up to but not including "@>".
// Grammar: ident { {name}nn | "label" } type.
ControlCommand parse_meaning_directive_body(const std::string& body);

// Parses one line of a meaning file (aux/bux/hux): a @$...@> directive, an
// @i include, or a blank line (which yields nothing).
std::optional<ControlCommand> parse_meaning_file_line(const std::string& line);

// Parses a full meaning file into commands, include lines unresolved.
std::vector<ControlCommand> parse_meaning_file(const std::string& text);

// Replaces every include command with the (recursively expanded) commands of
// the named file, in order. The resolver maps a path to file contents.
std::vector<ControlCommand> expand_includes(
    const std::vector<ControlCommand>& commands,
    const std::function<std::optional<std::string>(const std::string&)>& resolver);

// Parses a full literate source file into sections.
SourceDocument parse_source(const std::string& text, const std::string& program_name);

}  // namespace miniweave

#endif
