#include "miniweave/mini.hpp"

#include <cctype>
#include <map>
#include <set>

#include "miniweave/errors.hpp"

namespace miniweave {

std::string ident_markup_for(const std::string& ident, const std::string& type_markup) {
  if (type_markup.rfind("=\\&{", 0) == 0) return "\\&{" + ident + "}";
  if (ident.size() == 1) return "\\|{" + ident + "}";
  return "\\\\{" + ident + "}";
}

std::vector<std::string> span_identifiers(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '|') {
      i++;
      continue;
    }
    std::size_t end = text.find('|', i + 1);
    if (end == std::string::npos) break;
    for (const CodeToken& t : tokenize_code(text.substr(i + 1, end - i - 1))) {
      if (t.kind == TokenKind::identifier) out.push_back(t.lexeme);
    }
    i = end + 1;
  }
  return out;
}

std::vector<std::string> collect_used_identifiers(const Section& section) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& ident) {
    if (seen.insert(ident).second) out.push_back(ident);
  };

  for (const std::string& line : section.text_lines) {
    for (const std::string& ident : span_identifiers(line)) add(ident);
  }
  for (const CodeToken& t : section.code_tokens) {
    if (t.kind == TokenKind::identifier) add(t.lexeme);
    else if (t.kind == TokenKind::comment_text) {
      for (const std::string& ident : span_identifiers(t.lexeme)) add(ident);
    }
  }
  return out;
}

MiniEntry entry_for(const Meaning& m) {
  MiniEntry e;
  e.origin = m.origin;
  e.ident_markup = ident_markup_for(m.ident, m.type_markup);
  e.type_markup = m.type_markup;
  return e;
}

MiniOutput emit_section_minis(const MeaningTable& table,
                              const SectionIndexState& state,
                              const Section& section) {
  std::map<std::string, std::vector<const Meaning*>> temporaries;
  for (const Meaning& m : state.temporaries) temporaries[m.ident].push_back(&m);

  MiniOutput out;
  out.section = section.number;
  std::set<std::tuple<Origin, std::string, std::string>> emitted;
  auto push = [&](const Meaning& m) {
    MiniEntry e = entry_for(m);
    if (emitted.insert({e.origin, e.ident_markup, e.type_markup}).second)
      out.entries.push_back(std::move(e));
  };

  for (const std::string& ident : collect_used_identifiers(section)) {
    auto temp = temporaries.find(ident);
    if (temp != temporaries.end()) {
      for (const Meaning* m : temp->second) push(*m);
      continue;
    }
    if (state.suppressed.count(ident)) continue;
    Meaning m = table.lookup(ident);
    if (m.origin.is_internal(table.program_name()) &&
        m.origin.section == section.number)
      continue;
    push(m);
  }
  return out;
}

std::string serialize_mini_entry(const MiniEntry& e, const std::string& program_name) {
  std::string out;
  if (e.origin.kind == Origin::Kind::literal_label) {
    out = "\\]\"" + e.origin.label + "\"";
  } else if (e.origin.program == program_name) {
    out = "\\[" + std::to_string(e.origin.section);
  } else {
    out = "\\]{" + e.origin.program + "}" + std::to_string(e.origin.section);
  }
  return out + " " + e.ident_markup + " " + e.type_markup;
}

MiniEntry parse_mini_entry(const std::string& line, const std::string& program_name) {
  auto fail = [&]() -> Error {
    return Error(ErrorKind::unparseable_entry,
                 "cannot parse mini-index entry: " + line);
  };
  auto read_number = [&](std::size_t& pos) {
    if (pos >= line.size() || !std::isdigit(static_cast<unsigned char>(line[pos])))
      throw fail();
    int value = 0;
    while (pos < line.size() &&
           std::isdigit(static_cast<unsigned char>(line[pos]))) {
      value = value * 10 + (line[pos] - '0');
      pos++;
    }
    return value;
  };

  MiniEntry e;
  std::size_t pos = 0;
  if (line.rfind("\\[", 0) == 0) {
    pos = 2;
    e.origin = Origin::section_of(program_name, read_number(pos));
  } else if (line.rfind("\\]{", 0) == 0) {
    std::size_t close = line.find('}', 3);
    if (close == std::string::npos || close == 3) throw fail();
    std::string program = line.substr(3, close - 3);
    pos = close + 1;
    e.origin = Origin::section_of(program, read_number(pos));
  } else if (line.rfind("\\]\"", 0) == 0) {
    std::size_t close = line.find('"', 3);
    if (close == std::string::npos) throw fail();
    e.origin = Origin::literal(line.substr(3, close - 3));
    pos = close + 1;
  } else {
    throw fail();
  }
  if (pos >= line.size() || line[pos] != ' ') throw fail();
  pos++;
  if (line.compare(pos, 3, "\\|{") != 0 && line.compare(pos, 3, "\\\\{") != 0 &&
      line.compare(pos, 3, "\\&{") != 0)
    throw fail();
  std::size_t close = line.find('}', pos + 3);
  if (close == std::string::npos) throw fail();
  e.ident_markup = line.substr(pos, close + 1 - pos);
  if (close + 2 >= line.size() || line[close + 1] != ' ') throw fail();
  e.type_markup = line.substr(close + 2);
  return e;
}

std::string serialize_mini_output(const MiniOutput& m, const std::string& program_name) {
  std::string out;
  for (const MiniEntry& e : m.entries)
    out += serialize_mini_entry(e, program_name) + "\n";
  return out;
}

}  // namespace miniweave
