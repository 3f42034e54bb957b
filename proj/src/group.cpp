#include "qpt/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qpt {

PermGroup PermGroup::from_generators(int n, std::vector<Permutation> gens, std::size_t cap) {
    for (const auto& g : gens)
        if (g.degree() != n) throw InvalidVertex("generator degree differs from n");
    PermGroup G;
    G.n_ = n;
    G.gens_ = std::move(gens);

    std::map<std::vector<std::uint8_t>, std::size_t> index;
    Permutation id = Permutation::identity(n);
    G.elems_.push_back(id);
    G.words_.emplace_back();
    index.emplace(id.image(), 0);
    for (std::size_t head = 0; head < G.elems_.size(); ++head) {
        for (std::size_t gi = 0; gi < G.gens_.size(); ++gi) {
            Permutation next = G.gens_[gi].compose(G.elems_[head]);
            if (index.emplace(next.image(), G.elems_.size()).second) {
                std::vector<int> word = G.words_[head];
                word.push_back(static_cast<int>(gi));
                G.elems_.push_back(std::move(next));
                G.words_.push_back(std::move(word));
                if (G.elems_.size() > cap)
                    throw GroupTooLarge("group closure exceeds cap of " + std::to_string(cap));
            }
        }
    }
    return G;
}

PermGroup PermGroup::trivial(int n) { return from_generators(n, {}); }

bool PermGroup::is_abelian() const {
    for (const auto& a : gens_)
        for (const auto& b : gens_)
            if (!(a.compose(b) == b.compose(a))) return false;
    return true;
}

bool PermGroup::contains(const Permutation& p) const {
    return std::find(elems_.begin(), elems_.end(), p) != elems_.end();
}

std::vector<Mask> vertex_orbits(const PermGroup& G) {
    const int n = G.degree();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Mask> orbits;
    for (int v = 0; v < n; ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        Mask orbit = 0;
        std::vector<int> stack{v};
        seen[static_cast<std::size_t>(v)] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            orbit |= Mask{1} << u;
            for (const auto& g : G.generators()) {
                int w = g.apply(u);
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
            }
        }
        orbits.push_back(orbit);
    }
    return orbits;
}

std::vector<Mask> mask_orbit(const PermGroup& G, Mask m) {
    std::set<Mask> orbit{m};
    std::vector<Mask> stack{m};
    while (!stack.empty()) {
        Mask cur = stack.back();
        stack.pop_back();
        for (const auto& g : G.generators()) {
            Mask img = g.apply_mask(cur);
            if (orbit.insert(img).second) stack.push_back(img);
        }
    }
    return {orbit.begin(), orbit.end()};
}

KSubsetOrbits orbits_on_ksubsets(const PermGroup& G, int k) {
    const int n = G.degree();
    if (k > n) throw InvalidVertex("k exceeds n");
    KSubsetOrbits out;
    if (k == 0) {
        out.orbits.push_back({0});
        out.representatives.push_back(0);
        return out;
    }
    std::set<Mask> seen;
    const Mask limit = full_mask(n);
    for (Mask m = first_ksubset(k); m != 0 && mask_subset(m, limit); m = next_ksubset(m)) {
        if (seen.count(m)) continue;
        std::vector<Mask> orbit = mask_orbit(G, m);
        seen.insert(orbit.begin(), orbit.end());
        out.representatives.push_back(orbit.front());
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

bool is_invariant(const Complex& K, const PermGroup& G) {
    for (const auto& g : G.generators()) {
        std::vector<Mask> mapped;
        mapped.reserve(K.facet_count());
        for (Mask f : K.facets()) mapped.push_back(g.apply_mask(f));
        std::sort(mapped.begin(), mapped.end());
        if (mapped != K.facets()) return false;
    }
    return true;
}

FixedPointComplex fixed_point_complex(const Complex& K, const PermGroup& G) {
    if (!is_invariant(K, G)) throw NotInvariant("complex is not invariant under the group");
    std::vector<Mask> orbit_labels;
    for (Mask orbit : vertex_orbits(G))
        if (K.is_simplex(orbit)) orbit_labels.push_back(orbit);

    const int r = static_cast<int>(orbit_labels.size());
    std::vector<Mask> facets;
    // subsets of the orbit-vertices whose orbit union is a simplex of K
    for (Mask s = 0; s < (Mask{1} << r); ++s) {
        Mask uni = 0;
        Mask rest = s;
        while (rest != 0) {
            uni |= orbit_labels[static_cast<std::size_t>(std::countr_zero(rest))];
            rest &= rest - 1;
        }
        if (s != 0 && K.is_simplex(uni)) facets.push_back(s);
    }
    FixedPointComplex out;
    out.quotient = Complex::from_facets(r, std::move(facets));
    out.labels = std::move(orbit_labels);
    return out;
}

std::vector<std::vector<int>> group_automorphisms(const PermGroup& G) {
    const auto& elems = G.elements();
    const std::size_t m = elems.size();
    std::map<std::vector<std::uint8_t>, int> index;
    for (std::size_t i = 0; i < m; ++i) index.emplace(elems[i].image(), static_cast<int>(i));

    // multiplication table
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            mul[i][j] = index.at(elems[i].compose(elems[j]).image());

    std::vector<int> elem_order(m);
    for (std::size_t i = 0; i < m; ++i) elem_order[i] = elems[i].order();

    const std::size_t ngens = G.generators().size();
    std::vector<int> gen_idx(ngens);
    for (std::size_t gi = 0; gi < ngens; ++gi)
        gen_idx[gi] = index.at(G.generators()[gi].image());

    std::vector<std::vector<int>> auts;
    if (ngens == 0) {
        auts.push_back({0});
        return auts;
    }

    // candidate generator images, filtered by element order; each candidate
    // tuple determines the map through the stored factorizations
    std::vector<int> images(ngens, 0);
    auto build_and_check = [&]() {
        std::vector<int> aut(m, -1);
        for (std::size_t i = 0; i < m; ++i) {
            int val = 0;  // identity
            for (int w : G.factorization(i)) val = mul[images[static_cast<std::size_t>(w)]][val];
            aut[i] = val;
        }
        std::vector<bool> hit(m, false);
        for (int v : aut) {
            if (hit[static_cast<std::size_t>(v)]) return;
            hit[static_cast<std::size_t>(v)] = true;
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (aut[static_cast<std::size_t>(mul[i][j])] !=
                    mul[aut[i]][aut[j]])
                    return;
        auts.push_back(std::move(aut));
    };
    std::vector<std::size_t> stack;
    auto rec = [&](auto&& self, std::size_t gi) -> void {
        if (gi == ngens) {
            build_and_check();
            return;
        }
        for (std::size_t cand = 0; cand < m; ++cand) {
            if (elem_order[cand] != elem_order[static_cast<std::size_t>(gen_idx[gi])]) continue;
            images[gi] = static_cast<int>(cand);
            self(self, gi + 1);
        }
    };
    rec(rec, 0);
    return auts;
}

std::string group_structure_name(const PermGroup& G) {
    const std::size_t n = G.order();
    auto max_elem_order = [&] {
        int mo = 1;
        for (const auto& e : G.elements()) mo = std::max(mo, e.order());
        return mo;
    };
    switch (n) {
        case 1: return "C1";
        case 2: return "C2";
        case 3: return "C3";
        case 5: return "C5";
        case 7: return "C7";
        case 4: return max_elem_order() == 4 ? "C4" : "C2xC2";
        case 6: return G.is_abelian() ? "C6" : "S3";
        case 12: {
            if (!G.is_abelian()) return max_elem_order() == 3 ? "A4" : "G12";
            return max_elem_order() == 6 ? "C6xC2" : "C12?";
        }
        case 54: return "G54";
        case 60: return G.is_abelian() ? "G60" : "A5";
        default: break;
    }
    if (G.is_abelian() && max_elem_order() == static_cast<int>(n))
        return "C" + std::to_string(n);
    return "G" + std::to_string(n);
}

}  // namespace qpt
