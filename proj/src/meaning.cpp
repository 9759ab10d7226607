#include "miniweave/meaning.hpp"

#include <algorithm>

namespace miniweave {

namespace {

bool is_type_keyword(const std::string& s) {
  static const std::set<std::string> kTypes = {"void",  "char", "short",
                                               "int",   "long", "float",
                                               "double", "signed", "unsigned"};
  return kTypes.count(s) > 0;
}

bool is_storage_keyword(const std::string& s) {
  return s == "register" || s == "static" || s == "extern";
}

bool is_qualifier_keyword(const std::string& s) {
  return s == "const" || s == "volatile";
}

bool is_aggregate_keyword(const std::string& s) {
  return s == "struct" || s == "union" || s == "enum";
}

struct Cursor {
  const std::vector<CodeToken>& tokens;
  std::size_t i = 0;

  bool done() const { return i >= tokens.size(); }
  const CodeToken& at() const { return tokens[i]; }
  bool is_punct(const char* p) const {
    return !done() && at().kind == TokenKind::punctuation && at().lexeme == p;
  }
};

// Skips a balanced group that starts at the cursor's current open token.
// Returns false when the group never closes.
bool skip_group(Cursor& c, const char* open, const char* close) {
  int depth = 0;
  while (!c.done()) {
    if (c.is_punct(open)) depth++;
    else if (c.is_punct(close)) depth--;
    c.i++;
    if (depth == 0) return true;
  }
  return false;
}

}  // namespace

MeaningTable load_meaning_files(
    const std::string& program_name, const std::optional<std::string>& system_bux,
    const std::optional<std::string>& aux, const std::optional<std::string>& bux,
    const std::function<std::optional<std::string>(const std::string&)>& resolver) {
  MeaningTable table(program_name);
  for (const std::optional<std::string>* file : {&system_bux, &aux, &bux}) {
    if (!*file) continue;
    for (const ControlCommand& cmd :
         expand_includes(parse_meaning_file(**file), resolver)) {
      if (cmd.kind != ControlCommand::Kind::meaning_directive) continue;
      Meaning m;
      m.ident = cmd.ident;
      m.origin = cmd.origin;
      m.type_markup = cmd.type_markup;
      table.set(m);
    }
  }
  return table;
}

void apply_directive(MeaningTable& table, SectionIndexState& state,
                     const ControlCommand& cmd,
                     std::vector<Meaning>* aux_records) {
  switch (cmd.kind) {
    case ControlCommand::Kind::meaning_directive: {
      Meaning m;
      m.ident = cmd.ident;
      m.origin = cmd.origin;
      m.type_markup = cmd.type_markup;
      if (state.temporary_toggle) {
        state.temporaries.push_back(std::move(m));
      } else {
        table.set(m);
        if (aux_records) aux_records->push_back(std::move(m));
      }
      break;
    }
    case ControlCommand::Kind::suppress:
      state.suppressed.insert(cmd.ident);
      break;
    case ControlCommand::Kind::toggle_temporary:
      state.temporary_toggle = !state.temporary_toggle;
      break;
    case ControlCommand::Kind::include:
    case ControlCommand::Kind::join_hint:
      break;  // no meaning-level effect
  }
}

std::vector<Definition> detect_definitions(const Section& section,
                                           const MeaningTable& table) {
  std::vector<Definition> out;
  const std::vector<CodeToken>& tokens = section.code_tokens;
  Cursor c{tokens};
  int paren_depth = 0;
  bool stmt_start = true;

  auto base_element = [&](const CodeToken& t) {
    if (t.kind == TokenKind::keyword)
      return is_type_keyword(t.lexeme) || is_aggregate_keyword(t.lexeme);
    return t.kind == TokenKind::identifier && table.is_known_type(t.lexeme);
  };

  while (!c.done()) {
    const CodeToken& t = c.at();

    if (t.kind == TokenKind::punctuation && t.lexeme == "@d") {
      int d_line = t.line;
      c.i++;
      if (!c.done() && c.at().kind == TokenKind::identifier) {
        const CodeToken& name = c.at();
        std::string markup = "=macro";
        if (c.i + 1 < tokens.size() && tokens[c.i + 1].lexeme == "(" &&
            tokens[c.i + 1].offset == name.offset + name.lexeme.size())
          markup = "=macro (\\,)";
        out.push_back({name.lexeme, markup, static_cast<int>(c.i)});
      }
      while (!c.done() && c.at().line == d_line) c.i++;
      stmt_start = true;
      continue;
    }

    if (t.kind == TokenKind::comment_text) {
      c.i++;
      continue;  // comments are transparent to statement structure
    }

    if (stmt_start && t.kind == TokenKind::identifier && c.i + 1 < tokens.size() &&
        tokens[c.i + 1].kind == TokenKind::punctuation &&
        tokens[c.i + 1].lexeme == ":" && !table.is_known_type(t.lexeme)) {
      out.push_back({t.lexeme, "label", static_cast<int>(c.i)});
      c.i += 2;
      stmt_start = true;
      continue;
    }

    bool starts_declaration =
        stmt_start &&
        ((t.kind == TokenKind::keyword &&
          (t.lexeme == "typedef" || is_storage_keyword(t.lexeme) ||
           is_qualifier_keyword(t.lexeme) || is_type_keyword(t.lexeme) ||
           is_aggregate_keyword(t.lexeme))) ||
         base_element(t));

    if (starts_declaration) {
      Cursor d = c;
      bool is_typedef = false;
      std::vector<std::string> base_parts;
      bool saw_type = false;

      while (!d.done()) {
        const CodeToken& b = d.at();
        if (b.kind == TokenKind::keyword && b.lexeme == "typedef" && !is_typedef &&
            base_parts.empty()) {
          is_typedef = true;
          d.i++;
          continue;
        }
        if (b.kind == TokenKind::keyword && is_aggregate_keyword(b.lexeme)) {
          std::string part = "\\&{" + b.lexeme + "}";
          d.i++;
          if (!d.done() && d.at().kind == TokenKind::identifier) {
            if (!is_typedef) part += " \\\\{" + d.at().lexeme + "}";
            d.i++;
          }
          if (d.is_punct("{") && !skip_group(d, "{", "}")) break;
          base_parts.push_back(is_typedef ? "\\&{" + b.lexeme + "}" : part);
          saw_type = true;
          break;  // an aggregate closes the base type
        }
        if (b.kind == TokenKind::keyword &&
            (is_storage_keyword(b.lexeme) || is_qualifier_keyword(b.lexeme) ||
             is_type_keyword(b.lexeme))) {
          base_parts.push_back("\\&{" + b.lexeme + "}");
          if (is_type_keyword(b.lexeme)) saw_type = true;
          d.i++;
          continue;
        }
        if (b.kind == TokenKind::identifier && table.is_known_type(b.lexeme) &&
            !saw_type) {
          base_parts.push_back("\\&{" + b.lexeme + "}");
          saw_type = true;
          d.i++;
          continue;
        }
        break;
      }

      if (saw_type) {
        std::string base;
        for (std::size_t bi = 0; bi < base_parts.size(); bi++) {
          if (bi > 0) base += " ";
          base += base_parts[bi];
        }

        std::vector<Definition> pending;
        bool committed = false;
        bool last_had_parens = false;
        while (!d.done()) {
          int stars = 0;
          while (d.is_punct("*")) {
            stars++;
            d.i++;
          }
          if (d.done() || d.at().kind != TokenKind::identifier) break;
          const CodeToken& name = d.at();
          int name_index = static_cast<int>(d.i);
          d.i++;
          bool has_brackets = false, has_parens = false;
          while (true) {
            if (d.is_punct("[")) {
              if (!skip_group(d, "[", "]")) break;
              has_brackets = true;
            } else if (d.is_punct("(")) {
              if (!skip_group(d, "(", ")")) break;
              has_parens = true;
              break;  // a function suffix ends the declarator
            } else {
              break;
            }
          }
          last_had_parens = has_parens;

          std::string markup;
          if (is_typedef) {
            markup = "=" + base;
          } else {
            markup = base;
            std::string star_text(static_cast<std::size_t>(stars), '*');
            if (has_parens)
              markup += stars ? " $" + star_text + "(\\,)$" : " (\\,)";
            else if (has_brackets)
              markup += stars ? " ${" + star_text + "}[\\,]$" : " $[\\,]$";
            else if (stars)
              markup += " $" + star_text + "$";
          }
          pending.push_back({name.lexeme, markup, name_index});

          if (d.is_punct("=")) {
            d.i++;
            int depth = 0;
            while (!d.done()) {
              if (d.is_punct("(") || d.is_punct("[") || d.is_punct("{")) depth++;
              else if (d.is_punct(")") || d.is_punct("]") || d.is_punct("}")) depth--;
              else if (depth == 0 && (d.is_punct(",") || d.is_punct(";"))) break;
              d.i++;
            }
          }
          if (d.is_punct(",")) {
            d.i++;
            continue;
          }
          if (d.is_punct(";")) {
            d.i++;
            committed = true;
          } else if (last_had_parens && paren_depth == 0) {
            committed = true;  // function definition, K&R or braced
          }
          break;
        }

        if (committed) {
          for (Definition& def : pending) out.push_back(std::move(def));
          c.i = d.i;
          stmt_start = true;
          continue;
        }
        c.i = d.i > c.i ? d.i : c.i + 1;
        stmt_start = false;
        continue;
      }
    }

    if (t.kind == TokenKind::punctuation) {
      if (t.lexeme == "(") {
        paren_depth++;
        stmt_start = false;
      } else if (t.lexeme == ")") {
        if (paren_depth > 0) paren_depth--;
        stmt_start = paren_depth == 0;
      } else if (t.lexeme == ";") {
        stmt_start = paren_depth == 0;
      } else if (t.lexeme == "{" || t.lexeme == "}") {
        stmt_start = true;
      } else if (t.lexeme.rfind("@<", 0) == 0) {
        stmt_start = true;
      } else {
        stmt_start = false;
      }
    } else {
      stmt_start = false;
    }
    c.i++;
  }
  return out;
}

SectionOutcome process_section(MeaningTable& table, const Section& section) {
  SectionOutcome outcome;
  std::vector<Definition> defs = detect_definitions(section, table);

  std::size_t ci = 0;
  auto run_controls_up_to = [&](int token_index) {
    while (ci < section.controls.size() &&
           section.controls[ci].anchor <= token_index) {
      apply_directive(table, outcome.state, section.controls[ci],
                      &outcome.aux_records);
      ci++;
    }
  };

  for (const Definition& def : defs) {
    run_controls_up_to(def.token_index);
    if (outcome.state.suppressed.count(def.ident)) {
      // The implicit definition does not override the present meaning, but
      // the present meaning still goes to the aux file.
      outcome.aux_records.push_back(table.lookup(def.ident));
    } else {
      Meaning m;
      m.ident = def.ident;
      m.origin = Origin::section_of(table.program_name(), section.number);
      m.type_markup = def.type_markup;
      table.set(m);
      outcome.aux_records.push_back(std::move(m));
    }
  }
  run_controls_up_to(static_cast<int>(section.code_tokens.size()));
  return outcome;
}

std::string serialize_aux(const std::vector<Meaning>& records) {
  std::string out;
  for (const Meaning& m : records) {
    out += "@$" + m.ident + " ";
    if (m.origin.kind == Origin::Kind::program_section)
      out += "{" + m.origin.program + "}" + std::to_string(m.origin.section);
    else
      out += "\"" + m.origin.label + "\"";
    out += " " + m.type_markup + "@>\n";
  }
  return out;
}

}  // namespace miniweave
