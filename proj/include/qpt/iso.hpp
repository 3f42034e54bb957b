#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/group.hpp"

namespace qpt {

// Exact isomorphism invariant: the facet list under a canonical labeling of
// the occupied vertices. Equal keys <=> isomorphic complexes.
struct CanonicalKey {
    int vertex_count = 0;
    std::vector<Mask> facets;

    bool operator==(const CanonicalKey&) const = default;
    bool operator<(const CanonicalKey& o) const;
    std::string to_string() const;
};

struct CanonicalForm {
    CanonicalKey key;
    // Slot permutation realizing the canonical labeling (occupied vertices
    // mapped to 0..m-1 in canonical order, unoccupied slots after them).
    Permutation labeling;
    std::vector<Permutation> automorphisms;  // generators of Aut(K)
};

CanonicalForm canonical_form(const Complex& K);
CanonicalKey canonical_key(const Complex& K);

// A vertex bijection carrying facets(K1) onto facets(K2), or nullopt.
std::optional<Permutation> find_isomorphism(const Complex& K1, const Complex& K2);

// Full automorphism group (trivial on unoccupied slots).
PermGroup symmetry_group(const Complex& K);

// Counts of 6-faces by the number of 8-facets containing them, for a pure
// 8-dimensional weak pseudomanifold on 15 vertices. Degrees outside 3..8
// raise DegreeOutOfRange.
std::array<std::int64_t, 6> m_distribution(const Complex& K);

// cert = m4 + 2^12 m5 + 2^24 m6 + 2^36 m7 + 2^48 m8.
std::uint64_t pack_certificate(const std::array<std::int64_t, 6>& m);
std::uint64_t certificate(const Complex& K);

// Codimension-2 face degree histogram for any pure d-complex (degree -> count).
std::vector<std::pair<int, std::int64_t>> codim2_degree_histogram(const Complex& K, int d);

struct WeakGIso {
    Permutation vertex_map;            // f with f(K1) = K2
    std::vector<int> group_automorphism;  // phi as indices into G.elements()
};

// Isomorphism f: K1 -> K2 with f g f^-1 in G for all g in G. Requires both
// complexes G-invariant (NotInvariant otherwise).
std::optional<WeakGIso> find_weak_G_isomorphism(const Complex& K1, const Complex& K2,
                                                const PermGroup& G);

struct IsoClasses {
    std::vector<std::vector<std::size_t>> classes;  // indices into the input
    std::vector<std::size_t> representatives;       // first occurrence
};

// Partition into isomorphism classes; class order is first occurrence.
// Certificate buckets (or f-vector buckets for other shapes) precede the
// exact canonical-key comparison.
IsoClasses group_by_isomorphism(const std::vector<Complex>& list);

}  // namespace qpt
