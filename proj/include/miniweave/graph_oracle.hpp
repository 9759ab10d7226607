#ifndef MINIWEAVE_GRAPH_ORACLE_HPP
#define MINIWEAVE_GRAPH_ORACLE_HPP

#include "miniweave/graph.hpp"

namespace miniweave {

// Reference count of undirected Hamiltonian cycles by exhaustive
// permutation check. Deliberately shares no logic with the backtracking
// enumerator; refuses graphs with more than ten vertices.
long long brute_force_cycles(const Graph& g);

}  // namespace miniweave

#endif
