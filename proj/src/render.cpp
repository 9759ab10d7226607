#include "miniweave/render.hpp"

#include <map>
#include <set>
#include <utility>

#include "miniweave/errors.hpp"

namespace miniweave {

namespace {

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Finds the '}' matching the '{' at pos; groups may nest.
std::size_t matching_brace(const std::string& s, std::size_t pos) {
  int depth = 0;
  for (std::size_t i = pos; i < s.size(); i++) {
    if (s[i] == '{') depth++;
    else if (s[i] == '}' && --depth == 0) return i;
  }
  throw Error(ErrorKind::malformed_markup, "unbalanced braces in: " + s);
}

std::string render_markup_impl(const std::string& s, RenderMode mode) {
  std::string out;
  std::size_t i = 0;
  auto emit = [&](char c) {
    if (mode == RenderMode::html) {
      switch (c) {
        case '&': out += "&amp;"; return;
        case '<': out += "&lt;"; return;
        case '>': out += "&gt;"; return;
      }
    }
    out.push_back(c);
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\\') {
      if (i + 1 >= s.size())
        throw Error(ErrorKind::malformed_markup, "dangling backslash in: " + s);
      char d = s[i + 1];
      if (d == ',') {
        out.push_back(' ');
        i += 2;
        continue;
      }
      if (d != '&' && d != '\\' && d != '|')
        throw Error(ErrorKind::malformed_markup,
                    std::string("unknown control sequence \\") + d + " in: " + s);
      i += 2;
      std::string inner;
      if (i < s.size() && s[i] == '{') {
        std::size_t close = matching_brace(s, i);
        inner = s.substr(i + 1, close - i - 1);
        i = close + 1;
      } else if (i < s.size()) {
        inner = s.substr(i, 1);
        i++;
      } else {
        throw Error(ErrorKind::malformed_markup, "empty control sequence in: " + s);
      }
      std::string body = render_markup_impl(inner, mode);
      if (mode == RenderMode::html)
        out += (d == '&' ? "<b>" + body + "</b>" : "<i>" + body + "</i>");
      else
        out += body;
      continue;
    }
    if (c == '$') {
      std::size_t close = s.find('$', i + 1);
      if (close == std::string::npos)
        throw Error(ErrorKind::malformed_markup, "unterminated math in: " + s);
      out += render_markup_impl(s.substr(i + 1, close - i - 1), mode);
      i = close + 1;
      continue;
    }
    if (c == '{') {
      std::size_t close = matching_brace(s, i);
      out += render_markup_impl(s.substr(i + 1, close - i - 1), mode);
      i = close + 1;
      continue;
    }
    if (c == '}')
      throw Error(ErrorKind::malformed_markup, "unbalanced braces in: " + s);
    emit(c);
    i++;
  }
  return out;
}

// Replaces |...| spans in the given range; outside that range the line is
// copied untouched (code uses | as an operator, commentary does not).
std::string replace_spans(const std::string& line, std::size_t from,
                          std::size_t to, RenderMode mode) {
  std::string out = line.substr(0, from);
  std::size_t i = from;
  while (i < to) {
    if (line[i] != '|') {
      if (mode == RenderMode::html) out += html_escape(line.substr(i, 1));
      else out.push_back(line[i]);
      i++;
      continue;
    }
    std::size_t end = line.find('|', i + 1);
    if (end == std::string::npos || end >= to) {
      if (mode == RenderMode::html) out += html_escape(line.substr(i, 1));
      else out.push_back(line[i]);
      i++;
      continue;
    }
    std::string content = line.substr(i + 1, end - i - 1);
    if (mode == RenderMode::html) out += "<code>" + html_escape(content) + "</code>";
    else out += content;
    i = end + 1;
  }
  out += (mode == RenderMode::html ? html_escape(line.substr(to))
                                   : line.substr(to));
  return out;
}

std::string render_text_line(const std::string& line, RenderMode mode) {
  return replace_spans(line, 0, line.size(), mode);
}

// Spans apply only inside comments on code lines.
std::string render_code_line(const std::string& line, RenderMode mode) {
  std::size_t open = line.find("/*");
  if (open == std::string::npos)
    return mode == RenderMode::html ? html_escape(line) : line;
  std::size_t close = line.find("*/", open + 2);
  if (close == std::string::npos) close = line.size();
  return replace_spans(line, open + 2, close, mode);
}

std::vector<std::string> section_lines(const Section& section, RenderMode mode) {
  std::vector<std::string> lines;
  std::string header = std::to_string(section.number) + ".";
  if (!section.text_lines.empty())
    header += " " + render_text_line(section.text_lines.front(), mode);
  lines.push_back(header);
  for (std::size_t i = 1; i < section.text_lines.size(); i++)
    lines.push_back(render_text_line(section.text_lines[i], mode));
  if (!section.render_code_lines.empty()) {
    lines.push_back("");
    for (const std::string& code : section.render_code_lines)
      lines.push_back(render_code_line(code, mode));
  }
  return lines;
}

std::string location_of(const Origin& origin, const std::string& program_name,
                        RenderMode mode) {
  if (origin.kind == Origin::Kind::literal_label)
    return mode == RenderMode::html ? html_escape(origin.label) : origin.label;
  std::string loc = "§" + std::to_string(origin.section);
  if (origin.program != program_name) loc = origin.program + " " + loc;
  return loc;
}

std::vector<std::string> mini_lines(const std::vector<std::string>& cells,
                                    const LayoutConfig& cfg) {
  std::vector<std::string> lines;
  int width = cfg.page_width / cfg.mini_columns;
  for (std::size_t row = 0; row * cfg.mini_columns < cells.size(); row++) {
    std::string line;
    for (int col = 0; col < cfg.mini_columns; col++) {
      std::size_t idx = row * cfg.mini_columns + col;
      if (idx >= cells.size()) break;
      if (col > 0) {
        while (static_cast<int>(line.size()) < width * col) line.push_back(' ');
        if (!line.empty() && line.back() != ' ') line.push_back(' ');
      }
      line += cells[idx];
    }
    lines.push_back(line);
    for (int extra = 1; extra < cfg.mini_baseline; extra++) lines.push_back("");
  }
  return lines;
}

}  // namespace

std::string render_markup(const std::string& markup, RenderMode mode) {
  return render_markup_impl(markup, mode);
}

std::string format_entry(const MiniEntry& e, const std::string& program_name,
                         RenderMode mode) {
  std::string ident = render_markup(e.ident_markup, mode);
  std::string loc = location_of(e.origin, program_name, mode);
  if (e.type_markup == kZipMarkup) return ident + ", " + loc;
  if (!e.type_markup.empty() && e.type_markup[0] == '=')
    return ident + " = " + render_markup(e.type_markup.substr(1), mode) + ", " +
           loc;
  return ident + ": " + render_markup(e.type_markup, mode) + ", " + loc;
}

int section_body_lines(const Section& section) {
  int text = section.text_lines.empty()
                 ? 1
                 : static_cast<int>(section.text_lines.size());
  int code = section.render_code_lines.empty()
                 ? 0
                 : 1 + static_cast<int>(section.render_code_lines.size());
  return text + code;
}

std::vector<RenderedPage> render_document(const SourceDocument& doc,
                                          const PackResult& packed,
                                          const RefFile* sref,
                                          const LayoutConfig& cfg,
                                          RenderMode mode) {
  std::map<int, const Section*> by_number;
  for (const Section& s : doc.sections) by_number[s.number] = &s;

  if (sref) {
    if (sref->spreads.size() != packed.spreads.size())
      throw Error(ErrorKind::sref_mismatch,
                  "sorted reference file covers " +
                      std::to_string(sref->spreads.size()) + " spreads, not " +
                      std::to_string(packed.spreads.size()));
    for (std::size_t i = 0; i < packed.spreads.size(); i++) {
      if (sref->spreads[i].number != packed.spreads[i].number)
        throw Error(ErrorKind::sref_mismatch,
                    "spread numbering disagrees at spread " +
                        std::to_string(packed.spreads[i].number));
      std::multiset<std::string> ours;
      for (const MiniEntry& e : packed.spreads[i].entries)
        ours.insert(serialize_mini_entry(e, doc.program_name));
      std::multiset<std::string> theirs(sref->spreads[i].entries.begin(),
                                        sref->spreads[i].entries.end());
      if (ours != theirs)
        throw Error(ErrorKind::sref_mismatch,
                    "entries disagree on spread " +
                        std::to_string(packed.spreads[i].number));
    }
  }

  std::vector<RenderedPage> pages;
  for (std::size_t i = 0; i < packed.spreads.size(); i++) {
    const Spread& spread = packed.spreads[i];
    RenderedPage page;
    page.spread_number = spread.number;

    std::vector<std::string> body;
    for (std::size_t m = 0; m < spread.members.size(); m++) {
      if (m > 0)
        for (int gap = 0; gap < cfg.section_gap; gap++) body.push_back("");
      auto found = by_number.find(spread.members[m]);
      if (found == by_number.end())
        throw Error(ErrorKind::bad_usage,
                    "spread refers to unknown section " +
                        std::to_string(spread.members[m]));
      for (auto& line : section_lines(*found->second, mode))
        body.push_back(std::move(line));
    }

    std::vector<MiniEntry> entries;
    if (sref) {
      for (const std::string& line : sref->spreads[i].entries)
        entries.push_back(parse_mini_entry(line, doc.program_name));
    } else {
      entries = spread.entries;
    }
    std::vector<std::string> cells;
    for (const MiniEntry& e : entries)
      cells.push_back(format_entry(e, doc.program_name, mode));

    if (mode == RenderMode::plain) {
      page.lines = std::move(body);
      for (int r = 0; r < cfg.rule_allowance; r++)
        page.lines.push_back(std::string(cfg.page_width, '-'));
      for (auto& line : mini_lines(cells, cfg))
        page.lines.push_back(std::move(line));
    } else {
      page.lines.push_back("<section class=\"spread\" id=\"spread-" +
                           std::to_string(spread.number) + "\">");
      page.lines.push_back("<pre class=\"body\">");
      for (auto& line : body) page.lines.push_back(std::move(line));
      page.lines.push_back("</pre>");
      page.lines.push_back("<hr>");
      page.lines.push_back("<table class=\"mini\">");
      for (std::size_t idx = 0; idx < cells.size();
           idx += static_cast<std::size_t>(cfg.mini_columns)) {
        std::string row = "<tr>";
        for (int col = 0; col < cfg.mini_columns; col++) {
          if (idx + col >= cells.size()) break;
          row += "<td>" + cells[idx + col] + "</td>";
        }
        row += "</tr>";
        page.lines.push_back(std::move(row));
      }
      page.lines.push_back("</table>");
      page.lines.push_back("</section>");
    }
    pages.push_back(std::move(page));
  }
  return pages;
}

std::string join_pages(const std::vector<RenderedPage>& pages, RenderMode mode,
                       const std::string& title) {
  std::string out;
  if (mode == RenderMode::plain) {
    for (std::size_t i = 0; i < pages.size(); i++) {
      if (i > 0) out += "\f\n";
      for (const std::string& line : pages[i].lines) out += line + "\n";
    }
    return out;
  }
  out += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + html_escape(title.empty() ? "woven pages" : title) +
         "</title>\n";
  out += "<style>\n";
  out += "body { font-family: serif; max-width: 60em; margin: 1em auto; }\n";
  out += ".spread { border-bottom: 2px solid #444; margin-bottom: 2em; }\n";
  out += "pre.body { font-family: inherit; white-space: pre-wrap; }\n";
  out += "table.mini { width: 100%; font-size: smaller; }\n";
  out += "</style>\n</head>\n<body>\n";
  for (const RenderedPage& page : pages) {
    for (const std::string& line : page.lines) out += line + "\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string dump_debug_minis(const std::vector<MiniOutput>& minis,
                             const std::string& program_name) {
  std::string out;
  for (const MiniOutput& m : minis) {
    out += "%% section " + std::to_string(m.section) + "\n";
    out += serialize_mini_output(m, program_name);
  }
  return out;
}

}  // namespace miniweave
