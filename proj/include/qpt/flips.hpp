#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/group.hpp"
#include "qpt/iso.hpp"

namespace qpt {

// Three (d/2)-simplices partitioning the occupied vertex set with the cyclic
// link conditions link(D[i]) = boundary of D[i+1]. Stored in the canonical
// rotation: D[0] contains the smallest vertex.
struct DistinguishedTriple {
    std::array<Mask, 3> simplices;

    static DistinguishedTriple canonical(Mask a, Mask b, Mask c);
    DistinguishedTriple reversed() const;  // the inverse flip's triple
    DistinguishedTriple mapped(const Permutation& g) const;

    bool operator==(const DistinguishedTriple&) const = default;
    bool operator<(const DistinguishedTriple& o) const { return simplices < o.simplices; }
};

// Throws ShapeMismatch unless K is pure of even dimension d with
// 3(d/2 + 1) occupied vertices.
std::vector<DistinguishedTriple> distinguished_triples(const Complex& K);

// Facets of the distinguished subcomplex (D1*dD2) u (D2*dD3) u (D3*dD1).
std::vector<Mask> distinguished_subcomplex_facets(const DistinguishedTriple& t);

// Replaces the distinguished subcomplex by its cyclic dual. Throws
// NotDistinguished if t is not distinguished in K. The result is a weak
// pseudomanifold with the same f-vector (checked).
Complex apply_triple_flip(const Complex& K, const DistinguishedTriple& t);

struct FlipGraphNode {
    CanonicalKey key;
    Complex representative;
    std::size_t sym_order = 0;
    std::string sym_name;
    std::array<std::int64_t, 6> m{};
    std::uint64_t cert = 0;
    int triple_count = 0;
    int orbit_count = 0;       // Sym-orbits of triples = degree
    int self_inverse_loops = 0;
    int non_self_inverse_loops = 0;
};

struct FlipGraph {
    std::vector<FlipGraphNode> nodes;
    std::map<std::pair<int, int>, int> edges;  // (i < j) -> multiplicity
    bool truncated = false;

    int loop_count() const;
    int edge_count() const;  // inter-node edges with multiplicity
    std::string to_dot() const;
};

struct FlipGraphLimits {
    std::size_t max_nodes = 100000;
    std::size_t max_edges = 1000000;
};

// BFS over isomorphism classes reachable from `seed` by triple flips.
FlipGraph flip_graph_component(const Complex& seed, const FlipGraphLimits& limits = {});

struct EquivariantOrbit {
    std::vector<DistinguishedTriple> triples;  // one G-orbit of subcomplexes
    bool admissible = false;
};

// G-orbits of distinguished subcomplexes of K, flagged admissible when the
// distinct members pairwise share no facet. Requires is_invariant(K, G).
std::vector<EquivariantOrbit> admissible_orbits(const Complex& K, const PermGroup& G);

// Performs all flips of an admissible orbit simultaneously. Throws
// NotAdmissible on an inadmissible orbit.
Complex apply_equivariant_flip(const Complex& K, const PermGroup& G,
                               const EquivariantOrbit& orbit);

// BFS over weak G-isomorphism classes using admissible orbits as moves.
FlipGraph equivariant_component(const Complex& seed, const PermGroup& G,
                                const FlipGraphLimits& limits = {});

struct WalkStats {
    std::uint64_t steps_taken = 0;
    std::uint64_t rng_seed = 0;
    bool halted_no_moves = false;
    // group name -> distinct certificates seen
    std::map<std::string, std::set<std::uint64_t>> certificates;

    std::uint64_t distinct_certificates() const;
};

// Random walk on the flip graph: at each step flips a uniformly random
// distinguished triple of the current complex and records (certificate,
// symmetry group). Reproducible for a fixed seed.
WalkStats random_walk(const Complex& seed, std::uint64_t steps, std::uint64_t rng_seed);

}  // namespace qpt
