#include "qpt/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qpt/homology.hpp"

namespace qpt {

bool CanonicalKey::operator<(const CanonicalKey& o) const {
    if (vertex_count != o.vertex_count) return vertex_count < o.vertex_count;
    return facets < o.facets;
}

std::string CanonicalKey::to_string() const {
    std::ostringstream os;
    os << vertex_count << ':';
    for (Mask f : facets) os << std::hex << f << ';';
    return os.str();
}

namespace {

// Canonical labeling by individualization-refinement on the occupied
// vertices. Refinement recolors a vertex by the multiset of colored facets
// through it; branches on the first non-singleton cell. Discovered
// automorphisms prune branches that fix the individualized prefix.
struct CanonSearch {
    int m = 0;                      // occupied vertices
    std::vector<Mask> facets;      // re-encoded on 0..m-1
    std::vector<std::vector<int>> facets_of_vertex;
    std::vector<long long> initial_inv;

    std::vector<Mask> best;
    bool have_best = false;
    std::vector<std::vector<int>> best_labelings;  // vertex -> canonical index
    std::vector<std::vector<int>> automorphisms;   // vertex -> vertex
    long long leaf_budget = 2000000;

    void init(const Complex& K, const std::vector<int>& occ_slots) {
        m = static_cast<int>(occ_slots.size());
        std::vector<int> slot_to_dense(kMaxVertices, -1);
        for (int i = 0; i < m; ++i) slot_to_dense[static_cast<std::size_t>(occ_slots[i])] = i;
        for (Mask f : K.facets()) {
            Mask d = 0;
            for (Mask rest = f; rest != 0; rest &= rest - 1)
                d |= Mask{1} << slot_to_dense[static_cast<std::size_t>(std::countr_zero(rest))];
            facets.push_back(d);
        }
        std::sort(facets.begin(), facets.end());
        facets_of_vertex.assign(static_cast<std::size_t>(m), {});
        for (std::size_t i = 0; i < facets.size(); ++i)
            for (Mask rest = facets[i]; rest != 0; rest &= rest - 1)
                facets_of_vertex[static_cast<std::size_t>(std::countr_zero(rest))].push_back(
                    static_cast<int>(i));

        // isomorphism-invariant starting colors: face counts through the
        // vertex by dimension, and facet-size profile
        Complex D = Complex::from_facets(m, facets);
        auto faces = faces_by_dim(D);
        std::vector<std::vector<long long>> inv(static_cast<std::size_t>(m));
        for (int v = 0; v < m; ++v) inv[static_cast<std::size_t>(v)].assign(faces.size(), 0);
        for (std::size_t k = 0; k < faces.size(); ++k)
            for (Mask f : faces[k])
                for (Mask rest = f; rest != 0; rest &= rest - 1)
                    ++inv[static_cast<std::size_t>(std::countr_zero(rest))][k];
        std::map<std::vector<long long>, int> rank;
        for (int v = 0; v < m; ++v) rank[inv[static_cast<std::size_t>(v)]] = 0;
        int r = 0;
        for (auto& [key, val] : rank) val = r++;
        initial_inv.assign(static_cast<std::size_t>(m), 0);
        for (int v = 0; v < m; ++v)
            initial_inv[static_cast<std::size_t>(v)] = rank.at(inv[static_cast<std::size_t>(v)]);
    }

    void refine(std::vector<long long>& colors) const {
        for (;;) {
            std::vector<std::pair<std::vector<long long>, int>> sigs(
                static_cast<std::size_t>(m));
            for (int v = 0; v < m; ++v) {
                std::vector<long long> sig{colors[static_cast<std::size_t>(v)]};
                std::vector<std::vector<long long>> per_facet;
                for (int fi : facets_of_vertex[static_cast<std::size_t>(v)]) {
                    std::vector<long long> fc;
                    for (Mask rest = facets[static_cast<std::size_t>(fi)]; rest != 0;
                         rest &= rest - 1) {
                        int u = std::countr_zero(rest);
                        if (u != v) fc.push_back(colors[static_cast<std::size_t>(u)]);
                    }
                    std::sort(fc.begin(), fc.end());
                    per_facet.push_back(std::move(fc));
                }
                std::sort(per_facet.begin(), per_facet.end());
                for (const auto& fc : per_facet) {
                    sig.push_back(-1);  // separator
                    sig.insert(sig.end(), fc.begin(), fc.end());
                }
                sigs[static_cast<std::size_t>(v)] = {std::move(sig), v};
            }
            std::vector<std::pair<std::vector<long long>, int>> sorted = sigs;
            std::sort(sorted.begin(), sorted.end());
            std::vector<long long> next(static_cast<std::size_t>(m));
            long long color = 0;
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (i > 0 && sorted[i].first != sorted[i - 1].first) ++color;
                next[static_cast<std::size_t>(sorted[i].second)] = color;
            }
            if (next == colors) return;
            colors = std::move(next);
        }
    }

    void leaf(const std::vector<long long>& colors) {
        std::vector<int> label(static_cast<std::size_t>(m));
        std::vector<int> order(static_cast<std::size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return colors[static_cast<std::size_t>(a)] < colors[static_cast<std::size_t>(b)];
        });
        for (int i = 0; i < m; ++i) label[static_cast<std::size_t>(order[i])] = i;

        std::vector<Mask> cand;
        cand.reserve(facets.size());
        for (Mask f : facets) {
            Mask img = 0;
            for (Mask rest = f; rest != 0; rest &= rest - 1)
                img |= Mask{1}
                       << label[static_cast<std::size_t>(std::countr_zero(rest))];
            cand.push_back(img);
        }
        std::sort(cand.begin(), cand.end());

        if (!have_best || cand < best) {
            best = std::move(cand);
            have_best = true;
            best_labelings.clear();
            best_labelings.push_back(std::move(label));
        } else if (cand == best) {
            // label and the reference labeling differ by an automorphism
            const auto& ref = best_labelings.front();
            std::vector<int> aut(static_cast<std::size_t>(m));
            std::vector<int> inv_ref(static_cast<std::size_t>(m));
            for (int v = 0; v < m; ++v) inv_ref[static_cast<std::size_t>(ref[static_cast<std::size_t>(v)])] = v;
            for (int v = 0; v < m; ++v)
                aut[static_cast<std::size_t>(v)] =
                    inv_ref[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])];
            bool is_id = true;
            for (int v = 0; v < m; ++v)
                if (aut[static_cast<std::size_t>(v)] != v) is_id = false;
            if (!is_id) automorphisms.push_back(std::move(aut));
            best_labelings.push_back(std::move(label));
        }
    }

    void search(std::vector<long long> colors, std::vector<int>& prefix) {
        if (--leaf_budget < 0) throw Error("canonical labeling search exceeded its budget");
        refine(colors);
        int cell_color = -1;
        std::vector<int> cell;
        {
            std::map<long long, std::vector<int>> cells;
            for (int v = 0; v < m; ++v) cells[colors[static_cast<std::size_t>(v)]].push_back(v);
            for (const auto& [c, members] : cells)
                if (members.size() > 1) {
                    cell_color = static_cast<int>(c);
                    cell = members;
                    break;
                }
        }
        if (cell_color < 0) {
            leaf(colors);
            return;
        }

        std::vector<int> tried;
        for (int v : cell) {
            bool skip = false;
            for (const auto& aut : automorphisms) {
                bool fixes_prefix = true;
                for (int p : prefix)
                    if (aut[static_cast<std::size_t>(p)] != p) {
                        fixes_prefix = false;
                        break;
                    }
                if (!fixes_prefix) continue;
                if (std::find(tried.begin(), tried.end(),
                              aut[static_cast<std::size_t>(v)]) != tried.end()) {
                    skip = true;
                    break;
                }
            }
            if (skip) continue;
            tried.push_back(v);
            std::vector<long long> next = colors;
            next[static_cast<std::size_t>(v)] =
                -static_cast<long long>(prefix.size()) - 2;  // unique minimum
            prefix.push_back(v);
            search(next, prefix);
            prefix.pop_back();
        }
    }
};

}  // namespace

CanonicalForm canonical_form(const Complex& K) {
    CanonicalForm out;
    const Mask support = K.support();
    std::vector<int> occ;
    for (Mask rest = support; rest != 0; rest &= rest - 1) occ.push_back(std::countr_zero(rest));

    const int n = K.slot_count();
    if (occ.empty()) {
        out.key.vertex_count = 0;
        out.labeling = Permutation::identity(n);
        return out;
    }

    CanonSearch cs;
    cs.init(K, occ);
    std::vector<long long> colors = cs.initial_inv;
    std::vector<int> prefix;
    cs.search(colors, prefix);

    out.key.vertex_count = cs.m;
    out.key.facets = cs.best;

    // slot labeling: occupied slot -> canonical index, unoccupied slots keep
    // their relative order after the occupied block
    std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
    const auto& lab = cs.best_labelings.front();
    std::vector<bool> occupied(static_cast<std::size_t>(n), false);
    for (std::size_t i = 0; i < occ.size(); ++i) {
        image[static_cast<std::size_t>(occ[i])] = static_cast<std::uint8_t>(lab[i]);
        occupied[static_cast<std::size_t>(occ[i])] = true;
    }
    int next_slot = cs.m;
    for (int s = 0; s < n; ++s)
        if (!occupied[static_cast<std::size_t>(s)])
            image[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(next_slot++);
    out.labeling = Permutation(std::move(image));

    for (const auto& aut : cs.automorphisms) {
        std::vector<std::uint8_t> a(static_cast<std::size_t>(n));
        std::iota(a.begin(), a.end(), std::uint8_t{0});
        for (std::size_t i = 0; i < occ.size(); ++i)
            a[static_cast<std::size_t>(occ[i])] =
                static_cast<std::uint8_t>(occ[static_cast<std::size_t>(
                    aut[i])]);
        out.automorphisms.emplace_back(std::move(a));
    }
    return out;
}

CanonicalKey canonical_key(const Complex& K) { return canonical_form(K).key; }

std::optional<Permutation> find_isomorphism(const Complex& K1, const Complex& K2) {
    if (K1.slot_count() != K2.slot_count())
        throw Error("find_isomorphism requires complexes on the same slot universe");
    CanonicalForm c1 = canonical_form(K1);
    CanonicalForm c2 = canonical_form(K2);
    if (!(c1.key == c2.key)) return std::nullopt;
    Permutation iso = c2.labeling.inverse().compose(c1.labeling);
    std::vector<Mask> mapped;
    for (Mask f : K1.facets()) mapped.push_back(iso.apply_mask(f));
    std::sort(mapped.begin(), mapped.end());
    if (mapped != K2.facets()) throw Error("internal: canonical labeling produced a bad map");
    return iso;
}

PermGroup symmetry_group(const Complex& K) {
    CanonicalForm c = canonical_form(K);
    return PermGroup::from_generators(K.slot_count(), c.automorphisms);
}

std::vector<std::pair<int, std::int64_t>> codim2_degree_histogram(const Complex& K, int d) {
    if (!K.is_pure(d) || d < 2) throw ShapeMismatch("codim2 histogram requires a pure d-complex, d >= 2");
    std::map<Mask, int> deg;
    for (Mask f : K.facets()) {
        std::vector<int> vs = mask_vertices(f);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                Mask rho = f & ~(Mask{1} << (vs[i] - 1)) & ~(Mask{1} << (vs[j] - 1));
                ++deg[rho];
            }
    }
    std::map<int, std::int64_t> hist;
    for (const auto& [rho, c] : deg) ++hist[c];
    return {hist.begin(), hist.end()};
}

std::array<std::int64_t, 6> m_distribution(const Complex& K) {
    if (K.slot_count() < 15 || K.vertex_count() != 15 || !is_weak_pseudomanifold(K, 8))
        throw ShapeMismatch("m_distribution requires a pure 8-dimensional weak pseudomanifold on 15 vertices");
    std::array<std::int64_t, 6> m{};
    for (const auto& [degree, count] : codim2_degree_histogram(K, 8)) {
        if (degree < 3 || degree > 8)
            throw DegreeOutOfRange("6-simplex degree " + std::to_string(degree) +
                                   " outside 3..8");
        m[static_cast<std::size_t>(degree - 3)] += count;
    }
    return m;
}

std::uint64_t pack_certificate(const std::array<std::int64_t, 6>& m) {
    for (std::size_t i = 1; i < 6; ++i) {
        if (m[i] < 0 || m[i] >= (std::int64_t{1} << 12))
            throw DegreeOutOfRange("certificate field m" + std::to_string(i + 3) +
                                   " does not fit 12 bits");
    }
    std::uint64_t cert = 0;
    for (std::size_t i = 1; i < 6; ++i)
        cert += static_cast<std::uint64_t>(m[i]) << (12 * (i - 1));
    return cert;
}

std::uint64_t certificate(const Complex& K) { return pack_certificate(m_distribution(K)); }

std::optional<WeakGIso> find_weak_G_isomorphism(const Complex& K1, const Complex& K2,
                                                const PermGroup& G) {
    if (!is_invariant(K1, G) || !is_invariant(K2, G))
        throw NotInvariant("find_weak_G_isomorphism requires G-invariant complexes");
    const int n = G.degree();
    if (K1.slot_count() != n || K2.slot_count() != n)
        throw Error("complex slot count differs from the group degree");

    if (G.order() == 1) {
        auto iso = find_isomorphism(K1, K2);
        if (!iso) return std::nullopt;
        return WeakGIso{*iso, {0}};
    }

    const auto& elems = G.elements();
    std::vector<Mask> orbits = vertex_orbits(G);
    std::vector<int> reps;
    for (Mask o : orbits) reps.push_back(std::countr_zero(o));

    // stabilizer element indices per slot
    std::vector<std::vector<int>> stab(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < elems.size(); ++e)
        for (int v = 0; v < n; ++v)
            if (elems[e].apply(v) == v) stab[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));

    std::vector<int> orbit_of(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (Mask rest = orbits[i]; rest != 0; rest &= rest - 1)
            orbit_of[static_cast<std::size_t>(std::countr_zero(rest))] = static_cast<int>(i);

    std::vector<Mask> sorted_k2 = K2.facets();

    for (const auto& phi : group_automorphisms(G)) {
        std::vector<int> f(static_cast<std::size_t>(n), -1);
        std::vector<bool> used(static_cast<std::size_t>(n), false);

        auto assign_orbit = [&](int rep, int w) -> bool {
            for (int e : stab[static_cast<std::size_t>(rep)])
                if (elems[static_cast<std::size_t>(phi[static_cast<std::size_t>(e)])].apply(w) != w)
                    return false;
            std::vector<std::pair<int, int>> placed;
            for (std::size_t e = 0; e < elems.size(); ++e) {
                int from = elems[e].apply(rep);
                int to = elems[static_cast<std::size_t>(phi[e])].apply(w);
                if (f[static_cast<std::size_t>(from)] == -1) {
                    if (used[static_cast<std::size_t>(to)]) {
                        for (auto [a, b] : placed) {
                            f[static_cast<std::size_t>(a)] = -1;
                            used[static_cast<std::size_t>(b)] = false;
                        }
                        return false;
                    }
                    f[static_cast<std::size_t>(from)] = to;
                    used[static_cast<std::size_t>(to)] = true;
                    placed.emplace_back(from, to);
                } else if (f[static_cast<std::size_t>(from)] != to) {
                    for (auto [a, b] : placed) {
                        f[static_cast<std::size_t>(a)] = -1;
                        used[static_cast<std::size_t>(b)] = false;
                    }
                    return false;
                }
            }
            return true;
        };
        auto unassign_orbit = [&](int rep_orbit_idx) {
            for (Mask rest = orbits[static_cast<std::size_t>(rep_orbit_idx)]; rest != 0;
                 rest &= rest - 1) {
                int v = std::countr_zero(rest);
                if (f[static_cast<std::size_t>(v)] != -1) {
                    used[static_cast<std::size_t>(f[static_cast<std::size_t>(v)])] = false;
                    f[static_cast<std::size_t>(v)] = -1;
                }
            }
        };

        auto try_all = [&](auto&& self, std::size_t oi) -> std::optional<Permutation> {
            if (oi == reps.size()) {
                std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
                for (int v = 0; v < n; ++v) image[static_cast<std::size_t>(v)] =
                    static_cast<std::uint8_t>(f[static_cast<std::size_t>(v)]);
                Permutation perm((image));
                std::vector<Mask> mapped;
                mapped.reserve(K1.facet_count());
                for (Mask fa : K1.facets()) mapped.push_back(perm.apply_mask(fa));
                std::sort(mapped.begin(), mapped.end());
                if (mapped == sorted_k2) return perm;
                return std::nullopt;
            }
            int rep = reps[oi];
            int size = mask_card(orbits[oi]);
            for (int w = 0; w < n; ++w) {
                if (used[static_cast<std::size_t>(w)]) continue;
                if (mask_card(orbits[static_cast<std::size_t>(orbit_of[static_cast<std::size_t>(w)])]) != size)
                    continue;
                if (!assign_orbit(rep, w)) continue;
                auto res = self(self, oi + 1);
                if (res) return res;
                unassign_orbit(static_cast<int>(oi));
            }
            return std::nullopt;
        };
        auto res = try_all(try_all, 0);
        if (res) {
            // confirm the conjugation property on the generators
            for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
                Permutation lhs = res->compose(G.generators()[gi]).compose(res->inverse());
                if (!G.contains(lhs)) throw Error("internal: weak iso fails conjugation");
            }
            return WeakGIso{*res, phi};
        }
    }
    return std::nullopt;
}

IsoClasses group_by_isomorphism(const std::vector<Complex>& list) {
    IsoClasses out;
    std::map<std::string, std::vector<std::size_t>> buckets;  // bucket -> class ids
    std::vector<CanonicalKey> class_keys;

    for (std::size_t idx = 0; idx < list.size(); ++idx) {
        const Complex& K = list[idx];
        std::string bucket;
        if (K.slot_count() >= 15 && K.vertex_count() == 15 && is_weak_pseudomanifold(K, 8)) {
            bucket = "c" + std::to_string(certificate(K));
        } else {
            std::ostringstream os;
            os << 'f';
            for (auto c : f_vector(K).counts()) os << c << ',';
            bucket = os.str();
        }
        CanonicalKey key = canonical_key(K);
        bool found = false;
        for (std::size_t cid : buckets[bucket]) {
            if (class_keys[cid] == key) {
                out.classes[cid].push_back(idx);
                found = true;
                break;
            }
        }
        if (!found) {
            std::size_t cid = out.classes.size();
            out.classes.push_back({idx});
            out.representatives.push_back(idx);
            class_keys.push_back(std::move(key));
            buckets[bucket].push_back(cid);
        }
    }
    return out;
}

}  // namespace qpt
