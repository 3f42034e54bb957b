#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/snf.hpp"

namespace qpt {

// Coefficient ring: Z (p == 0) or the field F_p for a prime p.
struct Coeff {
    std::uint32_t p = 0;
    static Coeff Z() { return {0}; }
    static Coeff Fp(std::uint32_t prime) { return {prime}; }
    bool is_field() const { return p != 0; }
    bool operator==(const Coeff&) const = default;
};

// Boundary maps of K with vertex-sorted simplex bases and the standard
// alternating signs. Verifies d(d(x)) = 0 for every basis element on
// construction.
struct ChainBoundary {
    std::vector<std::vector<Mask>> basis;      // basis[k] = k-faces, sorted
    std::vector<SparseIntMatrix> boundary;     // boundary[k]: C_k -> C_{k-1}

    static ChainBoundary build(const Complex& K);
};

// Unreduced homology: betti[k] and torsion[k] for k = 0..dim. Over a field
// the torsion lists are empty.
struct HomologyProfile {
    Coeff coeff;
    std::vector<int> betti;
    std::vector<std::vector<BigInt>> torsion;

    int dim() const { return static_cast<int>(betti.size()) - 1; }
    bool is_sphere(int d) const;  // matches H_*(S^d) (unreduced)
    bool operator==(const HomologyProfile&) const = default;
};

HomologyProfile homology(const Complex& K, Coeff coeff);

bool is_homology_manifold(const Complex& K, int d, Coeff coeff);
bool is_homology_sphere(const Complex& K, int d, Coeff coeff);

// Requires a strongly connected weak d-pseudomanifold (NotAPseudomanifold
// otherwise). Sign propagation over the facet adjacency graph.
bool is_orientable(const Complex& K, int d);

enum class SphereCertificate { Certified, NotSphere, Unknown };

// Heuristic recognizer: NotSphere on a homology mismatch; Certified when a
// sequence of at most `budget` bistellar moves reduces K to the boundary of
// a (d+1)-simplex. Deterministic for a fixed seed; Unknown is not a
// refutation.
SphereCertificate certify_sphere_bistellar(const Complex& K, int d,
                                           std::int64_t budget = 20000,
                                           std::uint64_t seed = 1);

}  // namespace qpt
