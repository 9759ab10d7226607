#include "miniweave/refsort.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>

#include "miniweave/errors.hpp"

namespace miniweave {

namespace {

struct ParsedEntry {
  int origin_rank = 0;  // 0 external program or label, 1 internal section
  std::string origin_name;
  int origin_section = 0;
  std::string ident_markup;
  std::string display;
};

bool read_number(const std::string& s, std::size_t& pos, int& out) {
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    return false;
  long value = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    value = value * 10 + (s[pos] - '0');
    if (value > 1000000) return false;
    pos++;
  }
  out = static_cast<int>(value);
  return true;
}

std::optional<ParsedEntry> parse_entry_line(const std::string& line) {
  ParsedEntry entry;
  std::size_t pos = 0;
  if (line.rfind("\\[", 0) == 0) {
    entry.origin_rank = 1;
    pos = 2;
    if (!read_number(line, pos, entry.origin_section)) return std::nullopt;
  } else if (line.rfind("\\]{", 0) == 0) {
    std::size_t close = line.find('}', 3);
    if (close == std::string::npos || close == 3) return std::nullopt;
    entry.origin_name = line.substr(3, close - 3);
    pos = close + 1;
    if (!read_number(line, pos, entry.origin_section)) return std::nullopt;
  } else if (line.rfind("\\]\"", 0) == 0) {
    std::size_t close = line.find('"', 3);
    if (close == std::string::npos) return std::nullopt;
    entry.origin_name = line.substr(2, close - 1);  // keep the quotes
    pos = close + 1;
  } else {
    return std::nullopt;
  }
  if (pos >= line.size() || line[pos] != ' ') return std::nullopt;
  pos++;
  if (line.compare(pos, 3, "\\|{") != 0 && line.compare(pos, 3, "\\\\{") != 0 &&
      line.compare(pos, 3, "\\&{") != 0)
    return std::nullopt;
  std::size_t open = pos + 2;
  std::size_t close = line.find('}', open + 1);
  if (close == std::string::npos) return std::nullopt;
  entry.ident_markup = line.substr(pos, close + 1 - pos);
  entry.display = line.substr(open + 1, close - open - 1);
  if (close + 1 >= line.size() || line[close + 1] != ' ' ||
      close + 2 >= line.size())
    return std::nullopt;
  return entry;
}

ParsedEntry require_entry(const std::string& line) {
  auto parsed = parse_entry_line(line);
  if (!parsed)
    throw Error(ErrorKind::unparseable_entry,
                "cannot parse mini-index entry: " + line);
  return *parsed;
}

void check_monotone(int previous, int number) {
  if (number <= previous)
    throw Error(ErrorKind::non_monotone_spread_numbers,
                "spread " + std::to_string(number) + " follows spread " +
                    std::to_string(previous));
}

std::vector<std::string> split_nonfinal_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

CollationKey collation_key(const std::string& entry_line) {
  ParsedEntry entry = require_entry(entry_line);
  CollationKey key;
  for (char c : entry.display) {
    if (c == '_') continue;
    key.primary.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  key.secondary = entry.ident_markup;
  key.origin_rank = entry.origin_rank;
  key.origin_name = entry.origin_name;
  key.origin_section = entry.origin_section;
  return key;
}

RefFile parse_ref(const std::string& text) {
  RefFile file;
  for (const auto& line : split_nonfinal_lines(text)) {
    if (!line.empty() && line[0] == '!') {
      std::size_t pos = 1;
      int number = 0;
      if (!read_number(line, pos, number) || pos != line.size())
        throw Error(ErrorKind::unparseable_entry,
                    "bad spread header: " + line);
      check_monotone(file.spreads.empty() ? 0 : file.spreads.back().number,
                     number);
      file.spreads.push_back({number, {}});
    } else if (line.rfind("+ ", 0) == 0) {
      if (file.spreads.empty())
        throw Error(ErrorKind::entry_before_spread,
                    "entry precedes the first spread header: " + line);
      std::string entry = line.substr(2);
      require_entry(entry);
      file.spreads.back().entries.push_back(std::move(entry));
    } else {
      throw Error(ErrorKind::unparseable_entry,
                  "unrecognized line in reference file: " + line);
    }
  }
  return file;
}

RefFile parse_sref(const std::string& text) {
  static const std::string kMarker = "\\donewithpage";
  RefFile file;
  std::vector<std::string> pending;
  for (const auto& line : split_nonfinal_lines(text)) {
    if (line.rfind(kMarker, 0) == 0) {
      std::size_t pos = kMarker.size();
      int number = 0;
      if (!read_number(line, pos, number) || pos != line.size())
        throw Error(ErrorKind::unparseable_entry,
                    "bad spread marker: " + line);
      check_monotone(file.spreads.empty() ? 0 : file.spreads.back().number,
                     number);
      file.spreads.push_back({number, std::move(pending)});
      pending.clear();
    } else {
      require_entry(line);
      pending.push_back(line);
    }
  }
  if (!pending.empty())
    throw Error(ErrorKind::unparseable_entry,
                "entries after the final spread marker");
  return file;
}

std::vector<std::string> sort_spread(std::vector<std::string> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const std::string& a, const std::string& b) {
                     return collation_key(a) < collation_key(b);
                   });
  return entries;
}

RefFile sort_ref(const RefFile& file) {
  RefFile sorted;
  for (const auto& spread : file.spreads)
    sorted.spreads.push_back({spread.number, sort_spread(spread.entries)});
  return sorted;
}

std::string serialize_ref(const RefFile& file) {
  std::string out;
  for (const auto& spread : file.spreads) {
    out += "!" + std::to_string(spread.number) + "\n";
    for (const auto& entry : spread.entries) out += "+ " + entry + "\n";
  }
  return out;
}

std::string serialize_sref(const RefFile& file) {
  std::string out;
  for (const auto& spread : file.spreads) {
    for (const auto& entry : spread.entries) out += entry + "\n";
    out += "\\donewithpage" + std::to_string(spread.number) + "\n";
  }
  return out;
}

}  // namespace miniweave

