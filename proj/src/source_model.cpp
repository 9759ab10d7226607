#include "miniweave/source_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace miniweave {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

std::string rtrimmed(const std::string& s) {
  std::size_t end = s.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) end--;
  return s.substr(0, end);
}

std::string ltrimmed(const std::string& s) {
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) start++;
  return s.substr(start);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

bool is_valid_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

}  // namespace

bool is_reserved_word(const std::string& word) {
  static const std::set<std::string> kReserved = {
      "auto",     "break",  "case",    "char",   "const",    "continue",
      "default",  "do",     "double",  "else",   "enum",     "extern",
      "float",    "for",    "goto",    "if",     "int",      "long",
      "register", "return", "short",   "signed", "sizeof",   "static",
      "struct",   "switch", "typedef", "union",  "unsigned", "void",
      "volatile", "while"};
  return kReserved.count(word) > 0;
}

std::vector<CodeToken> tokenize_code(const std::string& fragment) {
  std::vector<CodeToken> tokens;
  std::size_t i = 0;
  int line = 0;
  bool line_has_content = false;
  const std::size_t n = fragment.size();

  auto push = [&](TokenKind kind, std::size_t start, std::size_t end) {
    CodeToken t;
    t.kind = kind;
    t.lexeme = fragment.substr(start, end - start);
    t.offset = start;
    t.line = line;
    tokens.push_back(std::move(t));
    line_has_content = true;
  };

  while (i < n) {
    char c = fragment[i];
    if (c == '\n') {
      line++;
      line_has_content = false;
      i++;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      i++;
      continue;
    }
    if (c == '/' && i + 1 < n && fragment[i + 1] == '*') {
      std::size_t end = fragment.find("*/", i + 2);
      if (end == std::string::npos)
        throw Error(ErrorKind::unterminated_comment,
                    "comment opened at offset " + std::to_string(i));
      int newlines = static_cast<int>(
          std::count(fragment.begin() + static_cast<long>(i),
                     fragment.begin() + static_cast<long>(end), '\n'));
      push(TokenKind::comment_text, i, end + 2);
      line += newlines;
      i = end + 2;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < n && fragment[j] != c) {
        if (fragment[j] == '\n')
          throw Error(ErrorKind::unterminated_string,
                      "literal opened at offset " + std::to_string(i));
        if (fragment[j] == '\\') j++;
        j++;
      }
      if (j >= n)
        throw Error(ErrorKind::unterminated_string,
                    "literal opened at offset " + std::to_string(i));
      push(c == '"' ? TokenKind::string_literal : TokenKind::constant, i, j + 1);
      i = j + 1;
      continue;
    }
    if (c == '@' && i + 1 < n) {
      char next = fragment[i + 1];
      if (next == '<') {
        std::size_t end = fragment.find("@>", i + 2);
        if (end != std::string::npos) {
          std::size_t stop = end + 2;
          if (!line_has_content && stop < n && fragment[stop] == '=') stop++;
          push(TokenKind::punctuation, i, stop);
          i = stop;
          continue;
        }
      } else if (next == 'd' && !line_has_content &&
                 (i + 2 >= n || std::isspace(static_cast<unsigned char>(fragment[i + 2])))) {
        push(TokenKind::punctuation, i, i + 2);
        i += 2;
        continue;
      }
      push(TokenKind::punctuation, i, i + 1);
      i++;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(fragment[j])) j++;
      std::string word = fragment.substr(i, j - i);
      push(is_reserved_word(word) ? TokenKind::keyword : TokenKind::identifier, i, j);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < n && (is_ident_char(fragment[j]) || fragment[j] == '.')) j++;
      push(TokenKind::constant, i, j);
      i = j;
      continue;
    }
    if (c == '#' && i + 1 < n && is_ident_start(fragment[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(fragment[j])) j++;
      push(TokenKind::punctuation, i, j);
      i = j;
      continue;
    }
    static const std::array<const char*, 4> kThree = {"<<=", ">>=", "...", nullptr};
    static const std::array<const char*, 20> kTwo = {
        "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
        "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", nullptr};
    bool matched = false;
    for (const char* op : kThree) {
      if (op && fragment.compare(i, 3, op) == 0) {
        push(TokenKind::punctuation, i, i + 3);
        i += 3;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (const char* op : kTwo) {
      if (op && fragment.compare(i, 2, op) == 0) {
        push(TokenKind::punctuation, i, i + 2);
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    push(TokenKind::punctuation, i, i + 1);
    i++;
  }
  return tokens;
}

ControlCommand parse_meaning_directive_body(const std::string& body) {
  std::size_t i = 0;
  const std::size_t n = body.size();
  auto skip_ws = [&]() {
    std::size_t start = i;
    while (i < n && std::isspace(static_cast<unsigned char>(body[i]))) i++;
    return i > start;
  };

  skip_ws();
  std::size_t ident_start = i;
  while (i < n && is_ident_char(body[i])) i++;
  std::string ident = body.substr(ident_start, i - ident_start);
  if (!is_valid_identifier(ident))
    throw Error(ErrorKind::malformed_directive, "bad identifier in \"" + body + "\"");
  if (!skip_ws())
    throw Error(ErrorKind::malformed_directive, "missing origin in \"" + body + "\"");

  Origin origin;
  if (i < n && body[i] == '{') {
    int depth = 1;
    std::size_t name_start = ++i;
    while (i < n && depth > 0) {
      if (body[i] == '{') depth++;
      else if (body[i] == '}') depth--;
      if (depth > 0) i++;
    }
    if (depth != 0)
      throw Error(ErrorKind::malformed_directive, "unbalanced braces in \"" + body + "\"");
    std::string name = body.substr(name_start, i - name_start);
    i++;
    std::size_t num_start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(body[i]))) i++;
    if (name.empty() || i == num_start)
      throw Error(ErrorKind::malformed_directive, "bad program origin in \"" + body + "\"");
    origin = Origin::section_of(name, std::stoi(body.substr(num_start, i - num_start)));
  } else if (i < n && body[i] == '"') {
    std::size_t label_start = ++i;
    while (i < n && body[i] != '"') i++;
    if (i >= n || i == label_start)
      throw Error(ErrorKind::malformed_directive, "bad label origin in \"" + body + "\"");
    origin = Origin::literal(body.substr(label_start, i - label_start));
    i++;
  } else {
    throw Error(ErrorKind::malformed_directive, "missing origin in \"" + body + "\"");
  }

  if (!skip_ws())
    throw Error(ErrorKind::malformed_directive, "missing type in \"" + body + "\"");
  std::string type = body.substr(i);
  if (type.empty())
    throw Error(ErrorKind::malformed_directive, "missing type in \"" + body + "\"");

  ControlCommand cmd;
  cmd.kind = ControlCommand::Kind::meaning_directive;
  cmd.ident = std::move(ident);
  cmd.origin = std::move(origin);
  cmd.type_markup = std::move(type);
  return cmd;
}

namespace {

// Scans raw lines, removing @$ @- @% @i commands and recording them along
// with the index of the line they appeared on. @+ markers are recorded but
// left in place for the later join pass.
struct DirectiveScan {
  std::vector<std::string> lines;
  std::vector<ControlCommand> commands;
  std::vector<int> command_lines;
};

DirectiveScan scan_directives(const std::vector<std::string>& raw) {
  DirectiveScan out;
  for (std::size_t li = 0; li < raw.size(); li++) {
    const std::string& line = raw[li];
    if (line.rfind("@i", 0) == 0 &&
        (line.size() == 2 || std::isspace(static_cast<unsigned char>(line[2])))) {
      ControlCommand cmd;
      cmd.kind = ControlCommand::Kind::include;
      cmd.path = line.size() > 2 ? rtrimmed(ltrimmed(line.substr(3))) : "";
      if (cmd.path.empty())
        throw Error(ErrorKind::malformed_directive, "empty include path: \"" + line + "\"");
      out.commands.push_back(std::move(cmd));
      out.command_lines.push_back(static_cast<int>(li));
      continue;  // the whole line is consumed
    }
    std::string kept;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (c != '@' || i + 1 >= line.size()) {
        kept += c;
        i++;
        continue;
      }
      char next = line[i + 1];
      if (next == '$' || next == '-') {
        std::size_t end = line.find("@>", i + 2);
        if (end == std::string::npos)
          throw Error(ErrorKind::unterminated_directive, "in line \"" + line + "\"");
        std::string body = line.substr(i + 2, end - i - 2);
        ControlCommand cmd;
        if (next == '$') {
          cmd = parse_meaning_directive_body(body);
        } else {
          std::string ident = rtrimmed(ltrimmed(body));
          if (!is_valid_identifier(ident))
            throw Error(ErrorKind::malformed_directive,
                        "bad suppressed identifier \"" + body + "\"");
          cmd.kind = ControlCommand::Kind::suppress;
          cmd.ident = std::move(ident);
        }
        out.commands.push_back(std::move(cmd));
        out.command_lines.push_back(static_cast<int>(li));
        i = end + 2;
      } else if (next == '%') {
        ControlCommand cmd;
        cmd.kind = ControlCommand::Kind::toggle_temporary;
        out.commands.push_back(std::move(cmd));
        out.command_lines.push_back(static_cast<int>(li));
        i += 2;
      } else if (next == '+') {
        ControlCommand cmd;
        cmd.kind = ControlCommand::Kind::join_hint;
        out.commands.push_back(std::move(cmd));
        out.command_lines.push_back(static_cast<int>(li));
        kept += "@+";
        i += 2;
      } else if (next == '<') {
        std::size_t end = line.find("@>", i + 2);
        std::size_t stop = end == std::string::npos ? line.size() : end + 2;
        kept += line.substr(i, stop - i);
        i = stop;
      } else {
        kept += c;
        kept += next;
        i += 2;
      }
    }
    out.lines.push_back(std::move(kept));
  }
  return out;
}

bool opens_code(const std::string& line) {
  if (line.rfind("@c", 0) == 0 &&
      (line.size() == 2 || std::isspace(static_cast<unsigned char>(line[2]))))
    return true;
  if (line.rfind("@d", 0) == 0 &&
      (line.size() == 2 || std::isspace(static_cast<unsigned char>(line[2]))))
    return true;
  if (line.rfind("@<", 0) == 0 && line.find("@>=") != std::string::npos) return true;
  return false;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

// Canonical form of one code line: join hints blanked, @c markers removed.
std::string canonical_code_line(const std::string& line) {
  std::string s = replace_all(line, "@+", " ");
  if (s.rfind("@c", 0) == 0 &&
      (s.size() == 2 || std::isspace(static_cast<unsigned char>(s[2])))) {
    s = s.size() > 2 ? ltrimmed(s.substr(2)) : "";
  }
  return s;
}

// Display form of chunk markers: @<name@>= shows as <name>=, references as <name>.
std::string display_chunk_markers(const std::string& line) {
  std::string out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line.compare(i, 2, "@<") == 0) {
      std::size_t end = line.find("@>", i + 2);
      if (end != std::string::npos) {
        out += "<" + line.substr(i + 2, end - i - 2) + ">";
        i = end + 2;
        continue;
      }
    }
    out += line[i];
    i++;
  }
  return out;
}

std::vector<std::string> render_lines_for(const std::vector<std::string>& code_lines) {
  // First apply join hints: a line ending with @+ absorbs the following line.
  std::vector<std::string> joined;
  for (std::size_t i = 0; i < code_lines.size(); i++) {
    std::string line = code_lines[i];
    while (true) {
      std::string t = rtrimmed(line);
      if (t.size() >= 2 && t.compare(t.size() - 2, 2, "@+") == 0 &&
          i + 1 < code_lines.size()) {
        line = t.substr(0, t.size() - 2) + " " + ltrimmed(code_lines[i + 1]);
        i++;
      } else {
        break;
      }
    }
    joined.push_back(replace_all(line, "@+", " "));
  }

  std::vector<std::string> out;
  for (const std::string& line : joined) {
    if (line.rfind("@c", 0) == 0 &&
        (line.size() == 2 || std::isspace(static_cast<unsigned char>(line[2])))) {
      std::string rest = line.size() > 2 ? ltrimmed(line.substr(2)) : "";
      if (rest.empty()) continue;  // a bare @c line is pure markup
      out.push_back(display_chunk_markers(rest));
      continue;
    }
    if (line.rfind("@d", 0) == 0 &&
        (line.size() > 2 && std::isspace(static_cast<unsigned char>(line[2])))) {
      std::string rest = ltrimmed(line.substr(3));
      std::size_t j = 0;
      while (j < rest.size() && is_ident_char(rest[j])) j++;
      std::string name = rest.substr(0, j);
      if (j < rest.size() && rest[j] == '(') {
        int depth = 0;
        do {
          if (rest[j] == '(') depth++;
          else if (rest[j] == ')') depth--;
          j++;
        } while (j < rest.size() && depth > 0);
        name = rest.substr(0, j);
      }
      std::string body = ltrimmed(rest.substr(j));
      std::string shown = "define " + name;
      if (!body.empty()) shown += " = " + display_chunk_markers(body);
      out.push_back(shown);
      continue;
    }
    out.push_back(display_chunk_markers(line));
  }
  while (!out.empty() && is_blank(out.back())) out.pop_back();
  return out;
}

}  // namespace

std::optional<ControlCommand> parse_meaning_file_line(const std::string& line) {
  std::string t = rtrimmed(ltrimmed(line));
  if (t.empty()) return std::nullopt;
  if (t.rfind("@i", 0) == 0 &&
      (t.size() > 2 && std::isspace(static_cast<unsigned char>(t[2])))) {
    ControlCommand cmd;
    cmd.kind = ControlCommand::Kind::include;
    cmd.path = rtrimmed(ltrimmed(t.substr(3)));
    if (cmd.path.empty())
      throw Error(ErrorKind::malformed_directive, "empty include path: \"" + line + "\"");
    return cmd;
  }
  if (t.rfind("@$", 0) == 0) {
    if (t.size() < 4 || t.compare(t.size() - 2, 2, "@>") != 0)
      throw Error(ErrorKind::unterminated_directive, "in line \"" + line + "\"");
    return parse_meaning_directive_body(t.substr(2, t.size() - 4));
  }
  throw Error(ErrorKind::malformed_directive, "unrecognized line \"" + line + "\"");
}

std::vector<ControlCommand> parse_meaning_file(const std::string& text) {
  std::vector<ControlCommand> commands;
  for (const std::string& line : split_lines(text)) {
    if (auto cmd = parse_meaning_file_line(line)) commands.push_back(std::move(*cmd));
  }
  return commands;
}

namespace {

void expand_into(
    const std::vector<ControlCommand>& commands,
    const std::function<std::optional<std::string>(const std::string&)>& resolver,
    std::vector<std::string>& active, std::vector<ControlCommand>& out) {
  for (const ControlCommand& cmd : commands) {
    if (cmd.kind != ControlCommand::Kind::include) {
      out.push_back(cmd);
      continue;
    }
    if (std::find(active.begin(), active.end(), cmd.path) != active.end())
      throw Error(ErrorKind::include_cycle, cmd.path);
    std::optional<std::string> contents = resolver(cmd.path);
    if (!contents) throw Error(ErrorKind::missing_include, cmd.path);
    active.push_back(cmd.path);
    expand_into(parse_meaning_file(*contents), resolver, active, out);
    active.pop_back();
  }
}

}  // namespace

std::vector<ControlCommand> expand_includes(
    const std::vector<ControlCommand>& commands,
    const std::function<std::optional<std::string>(const std::string&)>& resolver) {
  std::vector<ControlCommand> out;
  std::vector<std::string> active;
  expand_into(commands, resolver, active, out);
  return out;
}

SourceDocument parse_source(const std::string& text, const std::string& program_name) {
  if (program_name.empty() ||
      program_name.find_first_of(" \t{}") != std::string::npos)
    throw Error(ErrorKind::bad_usage, "bad program name \"" + program_name + "\"");

  SourceDocument doc;
  doc.program_name = program_name;

  std::vector<std::string> lines = split_lines(text);
  std::vector<std::pair<bool, std::vector<std::string>>> chunks;  // starred, raw lines
  bool in_section = false;
  for (const std::string& line : lines) {
    bool opener = false, starred = false;
    std::string rest;
    if (line == "@" || (line.size() >= 2 && line[0] == '@' && line[1] == ' ')) {
      opener = true;
      rest = line.size() > 2 ? line.substr(2) : "";
    } else if (line.size() >= 2 && line[0] == '@' && line[1] == '*') {
      opener = true;
      starred = true;
      rest = ltrimmed(line.substr(2));
    }
    if (opener) {
      chunks.emplace_back(starred, std::vector<std::string>{});
      if (!rest.empty()) chunks.back().second.push_back(rest);
      in_section = true;
    } else if (in_section) {
      chunks.back().second.push_back(line);
    }
    // Lines before the first section opener are limbo and are ignored.
  }

  for (std::size_t si = 0; si < chunks.size(); si++) {
    Section section;
    section.number = static_cast<int>(si) + 1;
    section.starred = chunks[si].first;

    DirectiveScan scan = scan_directives(chunks[si].second);

    std::size_t code_start = scan.lines.size();
    for (std::size_t li = 0; li < scan.lines.size(); li++) {
      if (opens_code(scan.lines[li])) {
        code_start = li;
        break;
      }
    }

    std::vector<std::string> text_lines(scan.lines.begin(),
                                        scan.lines.begin() + static_cast<long>(code_start));
    while (!text_lines.empty() && is_blank(text_lines.front()))
      text_lines.erase(text_lines.begin());
    while (!text_lines.empty() && is_blank(text_lines.back())) text_lines.pop_back();
    for (std::string& l : text_lines) l = rtrimmed(l);
    section.text_lines = std::move(text_lines);

    std::vector<std::string> code_raw(scan.lines.begin() + static_cast<long>(code_start),
                                      scan.lines.end());
    while (!code_raw.empty() && is_blank(code_raw.back())) code_raw.pop_back();
    for (const std::string& l : code_raw)
      section.code_lines.push_back(canonical_code_line(l));
    section.render_code_lines = render_lines_for(code_raw);

    std::string code_text;
    for (std::size_t li = 0; li < section.code_lines.size(); li++) {
      if (li > 0) code_text += '\n';
      code_text += section.code_lines[li];
    }
    section.code_text = std::move(code_text);
    section.code_tokens = tokenize_code(section.code_text);

    for (std::size_t ci = 0; ci < scan.commands.size(); ci++) {
      ControlCommand cmd = scan.commands[ci];
      int cmd_line = scan.command_lines[ci];
      if (cmd_line < static_cast<int>(code_start)) {
        cmd.anchor = 0;
      } else {
        int code_line = cmd_line - static_cast<int>(code_start);
        int anchor = static_cast<int>(section.code_tokens.size());
        for (std::size_t ti = 0; ti < section.code_tokens.size(); ti++) {
          if (section.code_tokens[ti].line >= code_line) {
            anchor = static_cast<int>(ti);
            break;
          }
        }
        cmd.anchor = anchor;
      }
      section.controls.push_back(std::move(cmd));
    }

    doc.sections.push_back(std::move(section));
  }
  return doc;
}

}  // namespace miniweave
