#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "shadowing/hsc.hpp"
#include "shadowing/system.hpp"

namespace shadowing {

// Directed graph presenting a subshift of finite type: orbits are bi-infinite
// edge walks. As a correspondence: X1 = edge set, X0 = vertex set,
// iota(e) = tail(e), sigma(e) = head(e).
struct graph_data {
    long vertices = 0;
    std::vector<std::pair<long, long>> edges; // (tail, head)
};

// Validates ranges (throws input_error) and wraps the graph as a system.
// Points carry the edge index (X1) / vertex index (X0) in x.real().
std::shared_ptr<const mv_system> make_graph_system(graph_data g);

// n-block presentation: vertices of the new graph are the (n-1)-edge walks,
// edges the n-edge walks; iota drops the last edge of a walk, sigma the
// first. Returns the new system and the semi-conjugacy onto the original
// (project a walk to its first edge; both homotopies constant).
struct higher_block_result {
    std::shared_ptr<const mv_system> system;
    hsc projection;
    std::vector<std::vector<long>> blocks; // edge walk per new edge index
};
higher_block_result higher_block(const std::shared_ptr<const mv_system>& graph_sys, int n);

// All period-n edge walks (e_0 .. e_{n-1}) with head(e_i) = tail(e_{i+1 mod n}),
// in lexicographic order. Their count equals trace(A^n) of the vertex
// adjacency matrix.
std::vector<std::vector<long>> enumerate_periodic(const graph_data& g, int n);

// Degree-d angle partition of the circle into arcs [k/d, (k+1)/d).
struct markov_partition {
    int pieces = 2;
    double boundary_guard = 1e-8;

    // Symbol of a circle point (by lift); throws input_error when the point
    // is within boundary_guard of an arc boundary.
    int symbol(double lift) const;
};

// Itinerary of a circle-system orbit under the degree-d partition of its
// expanding family (d = |degree|).
std::vector<int> code_orbit(const mv_system& sys, const orbit_seg& o,
                            double boundary_guard = 1e-8);

// Value in [0, 1) whose base-d expansion is preperiod followed by period
// repeating. Exact rational evaluated in integer arithmetic; digit strings
// are capped at 18 digits combined (input_error beyond).
double decode_symbols(int d, const std::vector<int>& preperiod,
                      const std::vector<int>& period);

} // namespace shadowing
