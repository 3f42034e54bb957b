#pragma once

// Independent brute-force oracles used to freeze expected values. These
// deliberately avoid the library's own enumeration shortcuts.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/group.hpp"
#include "qpt/search.hpp"
#include "qpt/snf.hpp"

namespace oracle {

using qpt::Complex;
using qpt::Mask;

// f-vector by scanning every subset of the slot universe.
inline std::vector<std::int64_t> naive_f_vector(const Complex& K) {
    std::vector<std::int64_t> counts;
    const int n = K.slot_count();
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        bool face = false;
        for (Mask f : K.facets())
            if (qpt::mask_subset(s, f)) {
                face = true;
                break;
            }
        if (!face) continue;
        int d = qpt::mask_dim(s);
        if (static_cast<int>(counts.size()) <= d) counts.resize(static_cast<std::size_t>(d) + 1, 0);
        ++counts[static_cast<std::size_t>(d)];
    }
    return counts;
}

// Invariant factors of a small integer matrix via gcds of k x k minors.
inline std::vector<long long> snf_by_minors(const std::vector<std::vector<long long>>& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    auto det = [&](const std::vector<int>& ri, const std::vector<int>& ci) {
        // Laplace expansion; fine for k <= 4
        std::vector<int> r = ri, c = ci;
        std::function<long long(std::vector<int>, std::vector<int>)> go =
            [&](std::vector<int> rr, std::vector<int> cc) -> long long {
            if (rr.empty()) return 1;
            long long sum = 0;
            for (std::size_t j = 0; j < cc.size(); ++j) {
                std::vector<int> rr2(rr.begin() + 1, rr.end());
                std::vector<int> cc2 = cc;
                cc2.erase(cc2.begin() + static_cast<std::ptrdiff_t>(j));
                long long sign = (j % 2 == 0) ? 1 : -1;
                sum += sign * m[static_cast<std::size_t>(rr[0])][static_cast<std::size_t>(cc[j])] *
                       go(rr2, cc2);
            }
            return sum;
        };
        return go(r, c);
    };
    auto gcd_minors = [&](std::size_t k) -> long long {
        long long g = 0;
        std::vector<int> ri(k), ci(k);
        std::vector<int> rsel(rows, 0), csel(cols, 0);
        std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), 1);
        std::sort(rsel.begin(), rsel.end());
        do {
            std::size_t a = 0;
            for (std::size_t i = 0; i < rows; ++i)
                if (rsel[i]) ri[a++] = static_cast<int>(i);
            std::fill(csel.begin(), csel.end(), 0);
            std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), 1);
            std::sort(csel.begin(), csel.end());
            do {
                std::size_t b = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    if (csel[j]) ci[b++] = static_cast<int>(j);
                g = std::gcd(g, det(ri, ci));
            } while (std::next_permutation(csel.begin(), csel.end()));
        } while (std::next_permutation(rsel.begin(), rsel.end()));
        return g < 0 ? -g : g;
    };
    std::vector<long long> factors;
    long long prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        long long g = gcd_minors(k);
        if (g == 0) break;
        factors.push_back(g / prev);
        prev = g;
    }
    return factors;
}

// Exhaustive search over all unions of facet orbits; checks the same final
// predicates as the engine's contract.
inline std::vector<std::vector<Mask>> brute_force_search(const qpt::SearchProblem& prob) {
    using qpt::full_mask;
    const Mask universe = full_mask(prob.n);
    std::vector<Mask> all;
    for (Mask m = qpt::first_ksubset(prob.d + 1); m != 0 && qpt::mask_subset(m, universe);
         m = qpt::next_ksubset(m))
        all.push_back(m);

    // orbits
    std::map<Mask, int> orbit_of;
    std::vector<std::vector<Mask>> orbits;
    for (Mask m : all) {
        if (orbit_of.count(m)) continue;
        auto orbit = qpt::mask_orbit(prob.group, m);
        int id = static_cast<int>(orbits.size());
        for (Mask x : orbit) orbit_of[x] = id;
        orbits.push_back(orbit);
    }
    std::set<int> mandatory_orbits;
    for (Mask m : prob.mandatory) mandatory_orbits.insert(orbit_of.at(m));

    std::vector<std::vector<Mask>> solutions;
    const std::size_t no = orbits.size();
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << no); ++pick) {
        bool has_mandatory = true;
        for (int o : mandatory_orbits)
            if (!((pick >> o) & 1)) has_mandatory = false;
        if (!has_mandatory) continue;
        std::vector<Mask> facets;
        for (std::size_t o = 0; o < no; ++o)
            if ((pick >> o) & 1)
                facets.insert(facets.end(), orbits[o].begin(), orbits[o].end());
        if (static_cast<std::int64_t>(facets.size()) < prob.min_facets) continue;
        // every ridge of a chosen facet in exactly two chosen facets
        std::map<Mask, int> deg;
        for (Mask f : facets)
            for (Mask rest = f; rest != 0; rest &= rest - 1) ++deg[f & ~(rest & -rest)];
        bool ok = true;
        for (const auto& [r, d] : deg)
            if (d != 2) ok = false;
        if (!ok) continue;
        if (prob.enforce_star) {
            for (std::size_t i = 0; i < facets.size() && ok; ++i)
                for (std::size_t j = i; j < facets.size() && ok; ++j)
                    if ((facets[i] | facets[j]) == universe) ok = false;
        }
        if (!ok) continue;
        std::sort(facets.begin(), facets.end());
        solutions.push_back(std::move(facets));
    }
    std::sort(solutions.begin(), solutions.end());
    return solutions;
}

}  // namespace oracle
