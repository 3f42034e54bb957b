#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/perm.hpp"

namespace qpt {

// A small permutation group given by generators plus its fully enumerated
// element list (BFS closure from the identity, deterministic order).
class PermGroup {
public:
    PermGroup() = default;

    // Throws GroupTooLarge if the closure exceeds `cap`.
    static PermGroup from_generators(int n, std::vector<Permutation> gens,
                                     std::size_t cap = 1000000);
    static PermGroup trivial(int n);

    int degree() const { return n_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const std::vector<Permutation>& elements() const { return elems_; }
    std::size_t order() const { return elems_.size(); }
    bool is_abelian() const;
    bool contains(const Permutation& p) const;

    // Word for elems_[i] as indices into generators() (empty for identity).
    const std::vector<int>& factorization(std::size_t i) const { return words_[i]; }

    bool operator==(const PermGroup&) const = default;

private:
    int n_ = 0;
    std::vector<Permutation> gens_;
    std::vector<Permutation> elems_;
    std::vector<std::vector<int>> words_;
};

// Partition of the slots {0..n-1} into G-orbits, each as a mask, sorted by
// smallest element.
std::vector<Mask> vertex_orbits(const PermGroup& G);

struct KSubsetOrbits {
    std::vector<std::vector<Mask>> orbits;  // each sorted ascending
    std::vector<Mask> representatives;      // the minimal mask of each orbit
};

// All C(n,k) masks partitioned into G-orbits, in order of increasing
// representative (= minimal mask of the orbit).
KSubsetOrbits orbits_on_ksubsets(const PermGroup& G, int k);

// Orbit of a single mask, sorted ascending.
std::vector<Mask> mask_orbit(const PermGroup& G, Mask m);

bool is_invariant(const Complex& K, const PermGroup& G);

// Quotient complex on the G-orbits of V that are simplices of K; a set of
// orbit-vertices spans a simplex iff the union of the orbits is in K.
struct FixedPointComplex {
    Complex quotient;
    std::vector<Mask> labels;  // quotient slot i represents this orbit of K
};

// Throws NotInvariant unless is_invariant(K, G).
FixedPointComplex fixed_point_complex(const Complex& K, const PermGroup& G);

// Automorphisms of G as permutations of its element list: aut[e] = index of
// the image of elements()[e]. Deterministic order.
std::vector<std::vector<int>> group_automorphisms(const PermGroup& G);

// Structural name for the small groups arising here: C1..Cn, S3, A4, A5,
// C2xC2, C6xC2, ...; falls back to "G<order>".
std::string group_structure_name(const PermGroup& G);

}  // namespace qpt
