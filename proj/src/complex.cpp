#include "qpt/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace qpt {

std::int64_t FVector::euler_characteristic() const {
    std::int64_t chi = 0;
    for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0) ? f(k) : -f(k);
    return chi;
}

Complex Complex::from_facets(int n, std::vector<Mask> simplices) {
    if (n < 0 || n > kMaxVertices)
        throw InvalidVertex("slot count " + std::to_string(n) + " out of range 0..32");
    const Mask universe = full_mask(n);
    for (Mask m : simplices) {
        if ((m & ~universe) != 0)
            throw InvalidVertex("mask " + mask_to_string(m) + " has a vertex beyond slot " +
                                std::to_string(n));
    }
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());

    // Drop dominated masks. Candidates are sorted by value; a mask can only
    // be dominated by one with strictly more bits.
    std::vector<Mask> maximal;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < simplices.size(); ++j) {
            if (i != j && mask_subset(simplices[i], simplices[j]) &&
                simplices[i] != simplices[j]) {
                dominated = true;
                break;
            }
        }
        if (!dominated) maximal.push_back(simplices[i]);
    }
    Complex K;
    K.n_ = n;
    K.facets_ = std::move(maximal);
    return K;
}

int Complex::dim() const {
    int d = -1;
    for (Mask f : facets_) d = std::max(d, mask_dim(f));
    return d;
}

Mask Complex::support() const {
    Mask s = 0;
    for (Mask f : facets_) s |= f;
    return s;
}

bool Complex::is_simplex(Mask m) const {
    for (Mask f : facets_)
        if (mask_subset(m, f)) return true;
    return false;
}

bool Complex::is_pure(int d) const {
    if (facets_.empty()) return false;
    for (Mask f : facets_)
        if (mask_dim(f) != d) return false;
    return true;
}

std::vector<std::vector<Mask>> faces_by_dim(const Complex& K) {
    std::vector<std::vector<Mask>> out(static_cast<std::size_t>(K.dim() + 1));
    if (K.dim() < 0) return out;
    if (K.slot_count() <= 20) {
        std::vector<bool> seen(std::size_t{1} << K.slot_count(), false);
        for (Mask f : K.facets()) {
            // enumerate all nonempty submasks of f
            for (Mask s = f;; s = (s - 1) & f) {
                if (s != 0 && !seen[s]) {
                    seen[s] = true;
                    out[static_cast<std::size_t>(mask_dim(s))].push_back(s);
                }
                if (s == 0) break;
            }
        }
    } else {
        std::unordered_set<Mask> seen;
        for (Mask f : K.facets()) {
            for (Mask s = f;; s = (s - 1) & f) {
                if (s != 0 && seen.insert(s).second)
                    out[static_cast<std::size_t>(mask_dim(s))].push_back(s);
                if (s == 0) break;
            }
        }
    }
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

FVector f_vector(const Complex& K) {
    auto faces = faces_by_dim(K);
    std::vector<std::int64_t> counts;
    counts.reserve(faces.size());
    for (const auto& v : faces) counts.push_back(static_cast<std::int64_t>(v.size()));
    return FVector(std::move(counts));
}

std::int64_t euler_characteristic(const Complex& K) {
    return f_vector(K).euler_characteristic();
}

Complex link(const Complex& K, Mask sigma) {
    if (!K.is_simplex(sigma))
        throw NotASimplex("link: " + mask_to_string(sigma) + " is not a simplex");
    std::vector<Mask> facets;
    for (Mask f : K.facets())
        if (mask_subset(sigma, f)) facets.push_back(f & ~sigma);
    return Complex::from_facets(K.slot_count(), std::move(facets));
}

Complex join(const Complex& K1, const Complex& K2) {
    if (K1.empty()) return K2;
    if (K2.empty()) return K1;
    if ((K1.support() & K2.support()) != 0)
        throw OverlappingSupports("join: supports intersect in " +
                                  mask_to_string(K1.support() & K2.support()));
    int n = std::max(K1.slot_count(), K2.slot_count());
    std::vector<Mask> facets;
    facets.reserve(K1.facet_count() * K2.facet_count());
    for (Mask a : K1.facets())
        for (Mask b : K2.facets()) facets.push_back(a | b);
    return Complex::from_facets(n, std::move(facets));
}

std::vector<std::pair<Mask, int>> ridge_degrees(const Complex& K, int d) {
    if (!K.is_pure(d))
        throw NotPure("ridge_degrees: complex is not pure of dimension " + std::to_string(d));
    std::map<Mask, int> deg;
    for (Mask f : K.facets()) {
        Mask rest = f;
        while (rest != 0) {
            Mask bit = rest & -rest;
            ++deg[f & ~bit];
            rest &= rest - 1;
        }
    }
    return {deg.begin(), deg.end()};
}

bool is_weak_pseudomanifold(const Complex& K, int d) {
    if (K.empty()) return false;
    if (!K.is_pure(d)) return false;
    if (d == 0) return true;  // a finite set of points
    for (const auto& [ridge, deg] : ridge_degrees(K, d))
        if (deg != 2) return false;
    return true;
}

bool is_strongly_connected(const Complex& K, int d) {
    if (!K.is_pure(d))
        throw NotPure("is_strongly_connected: complex is not pure of dimension " +
                      std::to_string(d));
    const auto& facets = K.facets();
    if (facets.size() <= 1) return true;
    std::vector<int> comp(facets.size(), -1);
    std::vector<std::size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < facets.size(); ++j) {
            if (comp[j] == -1 && mask_dim(facets[i] & facets[j]) == d - 1) {
                comp[j] = 0;
                stack.push_back(j);
            }
        }
    }
    return std::none_of(comp.begin(), comp.end(), [](int c) { return c == -1; });
}

std::optional<Mask> check_condition_star(const Complex& K) {
    // sigma and V\sigma are both simplices iff two facets cover all n slots
    // (then sigma = V \ F2 works); so facet pairs decide the condition.
    const Mask universe = full_mask(K.slot_count());
    const auto& facets = K.facets();
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::size_t j = i; j < facets.size(); ++j)
            if ((facets[i] | facets[j]) == universe) return universe & ~facets[j];
    return std::nullopt;
}

std::optional<Mask> check_complementarity(const Complex& K) {
    const int n = K.slot_count();
    if (n > 20) throw Error("check_complementarity: exhaustive check requires n <= 20");
    const Mask universe = full_mask(n);
    std::vector<bool> simplex(std::size_t{1} << n, false);
    for (Mask f : K.facets())
        for (Mask s = f;; s = (s - 1) & f) {
            simplex[s] = true;
            if (s == 0) break;
        }
    for (Mask sigma = 0;; ++sigma) {
        if (simplex[sigma] == simplex[universe & ~sigma]) return sigma;
        if (sigma == universe) break;
    }
    return std::nullopt;
}

int neighborliness(const Complex& K) {
    const Mask occ = K.support();
    const int m = mask_card(occ);
    const std::vector<int> occ_verts = mask_vertices(occ);
    const Mask limit = full_mask(m);
    int best = 0;
    for (int k = 1; k <= m; ++k) {
        // check every k-subset of the occupied vertices
        bool all = true;
        for (Mask pick = first_ksubset(k); pick != 0 && mask_subset(pick, limit);
             pick = next_ksubset(pick)) {
            Mask subset = 0;
            Mask p = pick;
            while (p != 0) {
                subset |= Mask{1} << (occ_verts[static_cast<std::size_t>(std::countr_zero(p))] - 1);
                p &= p - 1;
            }
            if (!K.is_simplex(subset)) {
                all = false;
                break;
            }
        }
        if (!all) break;
        best = k;
    }
    return best;
}

}  // namespace qpt
