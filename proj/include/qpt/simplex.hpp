#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace qpt {

// A simplex on at most 32 vertex slots, stored as a bit mask.
// Bit i (0-based) set means vertex i+1 (1-based, as printed) is in the simplex.
using Mask = std::uint32_t;

inline constexpr int kMaxVertices = 32;

inline int mask_card(Mask m) { return std::popcount(m); }

// Dimension of the simplex: popcount - 1; the empty mask has dimension -1.
inline int mask_dim(Mask m) { return std::popcount(m) - 1; }

inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline Mask full_mask(int n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Next k-subset in increasing numeric order (Gosper's hack). 0 terminates.
inline Mask next_ksubset(Mask v) {
    Mask c = v & -v;
    Mask r = v + c;
    if (r == 0) return 0;
    Mask w = (((r ^ v) >> 2) / c) | r;
    return w;
}

inline Mask first_ksubset(int k) { return k == 0 ? 0 : full_mask(k); }

Mask mask_from_vertices(const std::vector<int>& verts_1based, int n = kMaxVertices);
std::vector<int> mask_vertices(Mask m);  // 1-based, ascending
std::string mask_to_string(Mask m);      // e.g. "{1,2,3}"

}  // namespace qpt
