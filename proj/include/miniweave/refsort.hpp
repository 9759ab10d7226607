#ifndef MINIWEAVE_REFSORT_HPP
#define MINIWEAVE_REFSORT_HPP

#include <string>
#include <tuple>
#include <vector>

namespace miniweave {

// Interchange form of the mini-index entries, one serialized line each.
struct RefSpread {
  int number = 0;
  std::vector<std::string> entries;
};

struct RefFile {
  std::vector<RefSpread> spreads;
};

// Alphabetical ordering for one spread's entries: the displayed identifier,
// lowercased with underscores stripped, decides first; the raw identifier
// markup breaks ties; origins order any remainder, external programs and
// labels lexicographically before internal sections.
struct CollationKey {
  std::string primary;
  std::string secondary;
  int origin_rank = 0;
  std::string origin_name;
  int origin_section = 0;

  bool operator<(const CollationKey& other) const {
    return std::tie(primary, secondary, origin_rank, origin_name,
                    origin_section) <
           std::tie(other.primary, other.secondary, other.origin_rank,
                    other.origin_name, other.origin_section);
  }
};

CollationKey collation_key(const std::string& entry_line);

RefFile parse_ref(const std::string& text);
RefFile parse_sref(const std::string& text);

std::vector<std::string> sort_spread(std::vector<std::string> entries);
RefFile sort_ref(const RefFile& file);

std::string serialize_ref(const RefFile& file);
std::string serialize_sref(const RefFile& file);

}  // namespace miniweave

#endif
