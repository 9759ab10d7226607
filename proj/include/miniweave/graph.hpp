#ifndef MINIWEAVE_GRAPH_HPP
#define MINIWEAVE_GRAPH_HPP

#include <string>
#include <vector>

namespace miniweave {

// Undirected graph as paired arc lists: an edge {u,v} appears once in each
// endpoint's list.
struct Graph {
  int n = 0;
  std::vector<std::string> names;
  std::vector<std::vector<int>> adjacency;
};

// Checks vertex-index range, absence of self-loops, and exact arc pairing.
void validate_graph(const Graph& g);

// Board squares labeled "r,c" (zero-based), edges for the legal knight
// moves.
Graph knight_graph(int rows, int cols);

// Counts undirected Hamiltonian cycles, each once: the search starts at
// vertex 0 and a closed path is counted only in the orientation whose first
// step goes to the lower-numbered of 0's two cycle neighbors. Backtracking
// keeps per-vertex counts of arcs to untaken vertices; a move is rejected
// when it strands an untaken vertex, and a neighbor down to its last free
// connection forces the next step.
long long enumerate_hamiltonian_cycles(const Graph& g);

}  // namespace miniweave

#endif
