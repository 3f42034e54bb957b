#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace qpt {

using BigInt = boost::multiprecision::cpp_int;

// A sparse integer matrix, rows of (col, value) pairs sorted by column.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> row_data;

    static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& m);
};

struct SnfResult {
    // Invariant factors d_1 | d_2 | ... | d_r, all positive; r = rank.
    std::vector<BigInt> invariant_factors;
    int rank = 0;
    std::vector<BigInt> torsion() const {  // factors > 1
        std::vector<BigInt> t;
        for (const auto& d : invariant_factors)
            if (d > 1) t.push_back(d);
        return t;
    }
};

// Exact Smith normal form. Eliminates with unit pivots on the sparse
// structure first (minimal fill-in heuristic), then finishes the remaining
// core with arbitrary-precision arithmetic.
SnfResult smith_normal_form(SparseIntMatrix M);

// Rank of M over F_p. p = 2 uses bit-packed elimination.
int rank_mod_p(const SparseIntMatrix& M, std::uint32_t p);

}  // namespace qpt
