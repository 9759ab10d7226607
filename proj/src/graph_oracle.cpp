#include "miniweave/graph_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "miniweave/errors.hpp"

namespace miniweave {

long long brute_force_cycles(const Graph& g) {
  if (g.n > 10)
    throw Error(ErrorKind::too_large,
                "exhaustive cycle count refused for n = " +
                    std::to_string(g.n));
  if (g.n < 3) return 0;

  std::vector<std::vector<char>> edge(g.n, std::vector<char>(g.n, 0));
  for (int u = 0; u < g.n; u++)
    for (int v : g.adjacency[u]) edge[u][v] = 1;

  std::vector<int> rest(g.n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  long long closed = 0;
  do {
    if (!edge[0][rest.front()] || !edge[rest.back()][0]) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < rest.size(); i++)
      ok = edge[rest[i]][rest[i + 1]];
    if (ok) closed++;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return closed / 2;
}

}  // namespace miniweave
