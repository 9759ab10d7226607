#include "miniweave/graph.hpp"

#include <map>
#include <utility>

#include "miniweave/errors.hpp"

namespace miniweave {

void validate_graph(const Graph& g) {
  if (g.n < 0 || g.adjacency.size() != static_cast<std::size_t>(g.n) ||
      g.names.size() != static_cast<std::size_t>(g.n))
    throw Error(ErrorKind::bad_usage, "graph field sizes disagree with n");
  std::map<std::pair<int, int>, int> arc_count;
  for (int u = 0; u < g.n; u++) {
    for (int v : g.adjacency[u]) {
      if (v < 0 || v >= g.n)
        throw Error(ErrorKind::bad_usage,
                    "arc target " + std::to_string(v) + " out of range");
      if (v == u)
        throw Error(ErrorKind::bad_usage,
                    "self-loop at vertex " + std::to_string(u));
      arc_count[{u, v}]++;
    }
  }
  for (const auto& [arc, count] : arc_count) {
    auto reverse = arc_count.find({arc.second, arc.first});
    if (reverse == arc_count.end() || reverse->second != count)
      throw Error(ErrorKind::bad_usage,
                  "unpaired arc " + std::to_string(arc.first) + "->" +
                      std::to_string(arc.second));
  }
}

Graph knight_graph(int rows, int cols) {
  static const int kMoves[8][2] = {{1, 2},  {2, 1},  {-1, 2},  {-2, 1},
                                   {1, -2}, {2, -1}, {-1, -2}, {-2, -1}};
  Graph g;
  g.n = rows * cols;
  g.names.reserve(g.n);
  g.adjacency.resize(g.n);
  for (int r = 0; r < rows; r++) {
    for (int c = 0; c < cols; c++) {
      g.names.push_back(std::to_string(r) + "," + std::to_string(c));
      for (const auto& move : kMoves) {
        int r2 = r + move[0], c2 = c + move[1];
        if (r2 >= 0 && r2 < rows && c2 >= 0 && c2 < cols)
          g.adjacency[r * cols + c].push_back(r2 * cols + c2);
      }
    }
  }
  return g;
}

namespace {

struct CycleSearch {
  const Graph& g;
  std::vector<char> taken;
  std::vector<char> adj_start;
  std::vector<int> untaken_degree;
  int first_step = 0;

  explicit CycleSearch(const Graph& graph)
      : g(graph), taken(graph.n, 0), adj_start(graph.n, 0) {
    untaken_degree.reserve(g.n);
    for (int v = 0; v < g.n; v++)
      untaken_degree.push_back(static_cast<int>(g.adjacency[v].size()));
    for (int z : g.adjacency[0]) adj_start[z] = 1;
  }

  long long run() {
    taken[0] = 1;
    for (int z : g.adjacency[0]) untaken_degree[z]--;
    long long total = extend(0, 1);
    for (int z : g.adjacency[0]) untaken_degree[z]++;
    taken[0] = 0;
    return total;
  }

  long long extend(int v, int depth) {
    int forced = -1;
    if (v != 0) {
      for (int z : g.adjacency[v]) {
        if (taken[z] || z == forced) continue;
        if (untaken_degree[z] + adj_start[z] == 1) {
          if (forced >= 0) return 0;
          forced = z;
        }
      }
    }
    long long total = 0;
    for (int z : g.adjacency[v]) {
      if (taken[z]) continue;
      if (forced >= 0 && z != forced) continue;
      if (v == 0) first_step = z;
      taken[z] = 1;
      bool stranded = false;
      for (int w : g.adjacency[z]) {
        if (taken[w]) continue;
        if (--untaken_degree[w] == 0 && !adj_start[w]) stranded = true;
      }
      if (!stranded) {
        if (depth + 1 == g.n) {
          if (adj_start[z] && first_step < z) total++;
        } else {
          total += extend(z, depth + 1);
        }
      }
      for (int w : g.adjacency[z]) {
        if (!taken[w]) untaken_degree[w]++;
      }
      taken[z] = 0;
    }
    return total;
  }
};

}  // namespace

long long enumerate_hamiltonian_cycles(const Graph& g) {
  if (g.n < 3) return 0;
  CycleSearch search(g);
  return search.run();
}

}  // namespace miniweave
