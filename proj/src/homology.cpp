#include "qpt/homology.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "qpt/rng.hpp"

namespace qpt {

namespace {

// d(d(sigma)) accumulated directly on masks; independent of the matrices.
void verify_dd_zero(const std::vector<std::vector<Mask>>& basis) {
    for (std::size_t k = 2; k < basis.size(); ++k) {
        for (Mask sigma : basis[k]) {
            std::map<Mask, int> acc;
            int i = 0;
            for (Mask rest = sigma; rest != 0; rest &= rest - 1, ++i) {
                Mask tau = sigma & ~(rest & -rest);
                int sign1 = (i % 2 == 0) ? 1 : -1;
                int j = 0;
                for (Mask rest2 = tau; rest2 != 0; rest2 &= rest2 - 1, ++j) {
                    Mask rho = tau & ~(rest2 & -rest2);
                    int sign2 = (j % 2 == 0) ? 1 : -1;
                    acc[rho] += sign1 * sign2;
                }
            }
            for (const auto& [rho, coeff] : acc)
                if (coeff != 0) throw Error("boundary of boundary is nonzero");
        }
    }
}

}  // namespace

ChainBoundary ChainBoundary::build(const Complex& K) {
    ChainBoundary cb;
    cb.basis = faces_by_dim(K);
    verify_dd_zero(cb.basis);
    cb.boundary.resize(cb.basis.size());
    if (cb.basis.empty()) return cb;

    // boundary[0]: C_0 -> 0
    cb.boundary[0].rows = 0;
    cb.boundary[0].cols = static_cast<int>(cb.basis[0].size());
    cb.boundary[0].row_data.clear();

    for (std::size_t k = 1; k < cb.basis.size(); ++k) {
        std::unordered_map<Mask, int> row_index;
        row_index.reserve(cb.basis[k - 1].size() * 2);
        for (std::size_t i = 0; i < cb.basis[k - 1].size(); ++i)
            row_index.emplace(cb.basis[k - 1][i], static_cast<int>(i));
        SparseIntMatrix& M = cb.boundary[k];
        M.rows = static_cast<int>(cb.basis[k - 1].size());
        M.cols = static_cast<int>(cb.basis[k].size());
        M.row_data.assign(static_cast<std::size_t>(M.rows), {});
        for (std::size_t j = 0; j < cb.basis[k].size(); ++j) {
            Mask sigma = cb.basis[k][j];
            int i = 0;
            for (Mask rest = sigma; rest != 0; rest &= rest - 1, ++i) {
                Mask tau = sigma & ~(rest & -rest);
                int sign = (i % 2 == 0) ? 1 : -1;
                M.row_data[static_cast<std::size_t>(row_index.at(tau))].emplace_back(
                    static_cast<int>(j), sign);
            }
        }
        for (auto& r : M.row_data)
            std::sort(r.begin(), r.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    return cb;
}

bool HomologyProfile::is_sphere(int d) const {
    if (dim() != d) return false;
    for (const auto& t : torsion)
        if (!t.empty()) return false;
    if (d == 0) return betti.size() == 1 && betti[0] == 2;
    for (int k = 0; k <= d; ++k) {
        int expect = (k == 0 || k == d) ? 1 : 0;
        if (betti[static_cast<std::size_t>(k)] != expect) return false;
    }
    return true;
}

HomologyProfile homology(const Complex& K, Coeff coeff) {
    if (K.empty()) throw Error("homology: complex is void");
    ChainBoundary cb = ChainBoundary::build(K);
    const int dim = static_cast<int>(cb.basis.size()) - 1;
    HomologyProfile out;
    out.coeff = coeff;
    out.betti.assign(static_cast<std::size_t>(dim) + 1, 0);
    out.torsion.assign(static_cast<std::size_t>(dim) + 1, {});

    if (!coeff.is_field()) {
        std::vector<SnfResult> snf(static_cast<std::size_t>(dim) + 2);
        for (int k = 0; k <= dim; ++k)
            snf[static_cast<std::size_t>(k)] = smith_normal_form(cb.boundary[static_cast<std::size_t>(k)]);
        snf[static_cast<std::size_t>(dim) + 1] = SnfResult{};  // zero map above top
        for (int k = 0; k <= dim; ++k) {
            std::int64_t fk = static_cast<std::int64_t>(cb.basis[static_cast<std::size_t>(k)].size());
            out.betti[static_cast<std::size_t>(k)] =
                static_cast<int>(fk - snf[static_cast<std::size_t>(k)].rank -
                                 snf[static_cast<std::size_t>(k) + 1].rank);
            out.torsion[static_cast<std::size_t>(k)] =
                snf[static_cast<std::size_t>(k) + 1].torsion();
        }
    } else {
        std::vector<int> rank(static_cast<std::size_t>(dim) + 2, 0);
        for (int k = 0; k <= dim; ++k)
            rank[static_cast<std::size_t>(k)] =
                rank_mod_p(cb.boundary[static_cast<std::size_t>(k)], coeff.p);
        for (int k = 0; k <= dim; ++k) {
            std::int64_t fk = static_cast<std::int64_t>(cb.basis[static_cast<std::size_t>(k)].size());
            out.betti[static_cast<std::size_t>(k)] =
                static_cast<int>(fk - rank[static_cast<std::size_t>(k)] -
                                 rank[static_cast<std::size_t>(k) + 1]);
        }
    }
    return out;
}

namespace {

struct LinkCacheKey {
    std::vector<Mask> facets;
    std::uint32_t p;
    int sphere_dim;
    bool operator<(const LinkCacheKey& o) const {
        if (sphere_dim != o.sphere_dim) return sphere_dim < o.sphere_dim;
        if (p != o.p) return p < o.p;
        return facets < o.facets;
    }
};

std::map<LinkCacheKey, bool> g_link_cache;
std::mutex g_link_cache_mutex;

bool link_is_sphere_cached(const Complex& L, int sphere_dim, Coeff coeff) {
    LinkCacheKey key{L.facets(), coeff.p, sphere_dim};
    {
        std::lock_guard<std::mutex> lock(g_link_cache_mutex);
        auto it = g_link_cache.find(key);
        if (it != g_link_cache.end()) return it->second;
    }
    bool ok = L.dim() == sphere_dim && homology(L, coeff).is_sphere(sphere_dim);
    {
        std::lock_guard<std::mutex> lock(g_link_cache_mutex);
        if (g_link_cache.size() > 200000) g_link_cache.clear();
        g_link_cache.emplace(std::move(key), ok);
    }
    return ok;
}

}  // namespace

bool is_homology_manifold(const Complex& K, int d, Coeff coeff) {
    if (!K.is_pure(d)) return false;
    auto faces = faces_by_dim(K);
    // cheap local condition first: ridges lie in exactly two facets
    if (d >= 1) {
        for (const auto& [ridge, deg] : ridge_degrees(K, d))
            if (deg != 2) return false;
    }
    for (int k = 0; k < d; ++k) {
        const int sphere_dim = d - k - 1;
        for (Mask sigma : faces[static_cast<std::size_t>(k)]) {
            if (sphere_dim == 0) continue;  // covered by the ridge degrees
            Complex L = link(K, sigma);
            if (!link_is_sphere_cached(L, sphere_dim, coeff)) return false;
        }
    }
    return true;
}

bool is_homology_sphere(const Complex& K, int d, Coeff coeff) {
    if (!is_homology_manifold(K, d, coeff)) return false;
    return homology(K, coeff).is_sphere(d);
}

bool is_orientable(const Complex& K, int d) {
    if (!is_weak_pseudomanifold(K, d) || !is_strongly_connected(K, d))
        throw NotAPseudomanifold("is_orientable requires a strongly connected weak pseudomanifold");
    const auto& facets = K.facets();
    if (d == 0) return true;

    // ridge -> the at most two facets containing it, with the parity of the
    // dropped vertex's position
    std::map<Mask, std::vector<std::pair<std::size_t, int>>> ridges;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        int pos = 0;
        for (Mask rest = facets[i]; rest != 0; rest &= rest - 1, ++pos) {
            Mask ridge = facets[i] & ~(rest & -rest);
            ridges[ridge].emplace_back(i, pos % 2 == 0 ? 1 : -1);
        }
    }
    std::vector<int> sign(facets.size(), 0);
    sign[0] = 1;
    std::vector<std::size_t> stack{0};
    // adjacency via ridges
    std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> adj;
    for (const auto& [ridge, pair] : ridges) {
        if (pair.size() != 2) throw NotAPseudomanifold("ridge degree is not two");
        auto [f1, s1] = pair[0];
        auto [f2, s2] = pair[1];
        // opposite induced orientations: sign(f1)*s1 = -sign(f2)*s2
        adj[f1].emplace_back(f2, -s1 * s2);
        adj[f2].emplace_back(f1, -s1 * s2);
    }
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (auto [j, rel] : adj[i]) {
            int want = sign[i] * rel;
            if (sign[j] == 0) {
                sign[j] = want;
                stack.push_back(j);
            } else if (sign[j] != want) {
                return false;
            }
        }
    }
    return true;
}

namespace {

bool is_simplex_boundary(const Complex& K, int d) {
    Mask sup = K.support();
    if (mask_card(sup) != d + 2) return false;
    if (K.facet_count() != static_cast<std::size_t>(d) + 2) return false;
    for (Mask f : K.facets())
        if (!mask_subset(f, sup) || mask_card(f) != d + 1) return false;
    return true;
}

struct BistellarMove {
    Mask sigma;  // face to remove
    Mask tau;    // replacement simplex (not yet in the complex)
};

std::vector<BistellarMove> applicable_moves(const Complex& K, int d, int k) {
    std::vector<BistellarMove> out;
    auto faces = faces_by_dim(K);
    if (k >= static_cast<int>(faces.size())) return out;
    for (Mask sigma : faces[static_cast<std::size_t>(k)]) {
        Complex L = link(K, sigma);
        Mask sup = L.support();
        if (mask_card(sup) != d - k + 1) continue;
        // link must be the full boundary of tau = sup
        if (L.facet_count() != static_cast<std::size_t>(d - k) + 1) continue;
        bool boundary = true;
        for (Mask f : L.facets())
            if (mask_card(f) != d - k) boundary = false;
        if (!boundary) continue;
        if (K.is_simplex(sup)) continue;
        out.push_back({sigma, sup});
    }
    return out;
}

Complex apply_move(const Complex& K, int d, const BistellarMove& mv) {
    std::vector<Mask> facets;
    for (Mask f : K.facets())
        if (!mask_subset(mv.sigma, f)) facets.push_back(f);
    // insert boundary(sigma) * tau
    for (Mask rest = mv.sigma; rest != 0; rest &= rest - 1)
        facets.push_back((mv.sigma & ~(rest & -rest)) | mv.tau);
    Complex out = Complex::from_facets(K.slot_count(), std::move(facets));
    if (!is_weak_pseudomanifold(out, d)) throw Error("bistellar move broke the pseudomanifold");
    return out;
}

}  // namespace

SphereCertificate certify_sphere_bistellar(const Complex& K, int d, std::int64_t budget,
                                           std::uint64_t seed) {
    if (!is_weak_pseudomanifold(K, d))
        throw NotAPseudomanifold("certify_sphere_bistellar requires a weak pseudomanifold");
    if (!homology(K, Coeff::Z()).is_sphere(d)) return SphereCertificate::NotSphere;
    if (is_simplex_boundary(K, d)) return SphereCertificate::Certified;

    Rng rng(seed);
    Complex cur = K;
    std::int64_t heat = 0;
    for (std::int64_t step = 0; step < budget; ++step) {
        if (is_simplex_boundary(cur, d)) return SphereCertificate::Certified;
        // prefer moves that shrink the facet count: 2k < d
        std::vector<BistellarMove> moves;
        for (int k = 0; 2 * k < d; ++k) {
            auto mk = applicable_moves(cur, d, k);
            moves.insert(moves.end(), mk.begin(), mk.end());
            if (!moves.empty()) break;
        }
        if (!moves.empty()) {
            cur = apply_move(cur, d, moves[rng.below(moves.size())]);
            heat = 0;
            continue;
        }
        // stuck: allow neutral or mildly increasing moves for a while
        if (++heat > 40) return SphereCertificate::Unknown;
        std::vector<BistellarMove> warm;
        for (int k = (d + 1) / 2; k < d && warm.empty(); ++k)
            warm = applicable_moves(cur, d, k);
        if (warm.empty()) return SphereCertificate::Unknown;
        cur = apply_move(cur, d, warm[rng.below(warm.size())]);
    }
    return SphereCertificate::Unknown;
}

}  // namespace qpt
