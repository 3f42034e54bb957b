#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpt/errors.hpp"
#include "qpt/simplex.hpp"

namespace qpt {

// Face counts f_0..f_d. f(k) is 0 outside the stored range.
class FVector {
public:
    FVector() = default;
    explicit FVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {}

    int dim() const { return static_cast<int>(counts_.size()) - 1; }
    std::int64_t f(int k) const {
        return (k < 0 || k > dim()) ? 0 : counts_[static_cast<std::size_t>(k)];
    }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t euler_characteristic() const;

    bool operator==(const FVector&) const = default;

private:
    std::vector<std::int64_t> counts_;
};

// An abstract simplicial complex on n <= 32 vertex slots, stored as its set
// of facets (maximal simplices) in increasing mask order. Immutable after
// construction; the facet list never contains a pair with one mask inside
// the other. Unused slots are permitted (links and fixed point complexes
// produce them).
class Complex {
public:
    Complex() = default;

    // Builds the complex generated by `simplices`: dominated masks and
    // duplicates are removed. Throws InvalidVertex if a mask has a bit >= n
    // set, or n is out of range.
    static Complex from_facets(int n, std::vector<Mask> simplices);

    int slot_count() const { return n_; }
    const std::vector<Mask>& facets() const { return facets_; }
    std::size_t facet_count() const { return facets_.size(); }
    bool empty() const { return facets_.empty(); }

    // Max facet dimension; -1 for the void complex.
    int dim() const;
    Mask support() const;
    int vertex_count() const { return mask_card(support()); }

    // True iff m is a face of some facet. The empty mask is a simplex of
    // every non-void complex.
    bool is_simplex(Mask m) const;

    bool is_pure(int d) const;

    bool operator==(const Complex&) const = default;

private:
    int n_ = 0;
    std::vector<Mask> facets_;
};

FVector f_vector(const Complex& K);
std::int64_t euler_characteristic(const Complex& K);

// All faces of K grouped by dimension: result[k] = sorted masks of k-faces.
std::vector<std::vector<Mask>> faces_by_dim(const Complex& K);

// Faces of K disjoint from sigma whose union with sigma lies in K, as a
// complex on the same slot universe. Throws NotASimplex if sigma is not in K.
Complex link(const Complex& K, Mask sigma);

// Join: facets are unions of facets. Vertex supports must be disjoint
// (OverlappingSupports otherwise). The void complex acts as identity.
Complex join(const Complex& K1, const Complex& K2);

// For each (d-1)-face, the number of d-facets containing it.
// Requires K pure d-dimensional (NotPure otherwise).
std::vector<std::pair<Mask, int>> ridge_degrees(const Complex& K, int d);

bool is_weak_pseudomanifold(const Complex& K, int d);
bool is_strongly_connected(const Complex& K, int d);  // NotPure if not pure

// Condition (*): no subset sigma of the n-slot vertex set such that both
// sigma and its complement are simplices. Returns a violating sigma, or
// nullopt when the condition holds. Reduces to checking facet pairs whose
// union covers all n slots.
std::optional<Mask> check_condition_star(const Complex& K);

// Complementarity: for every sigma exactly one of sigma, V minus sigma is a
// simplex. Exhaustive over all 2^n subsets; requires n <= 20.
std::optional<Mask> check_complementarity(const Complex& K);

// Largest k such that every k-element subset of the occupied vertex set is
// a simplex of K.
int neighborliness(const Complex& K);

}  // namespace qpt
