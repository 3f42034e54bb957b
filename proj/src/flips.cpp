#include "qpt/flips.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "qpt/rng.hpp"

namespace qpt {

DistinguishedTriple DistinguishedTriple::canonical(Mask a, Mask b, Mask c) {
    Mask all = a | b | c;
    int min_vertex = std::countr_zero(all);
    DistinguishedTriple t;
    if (a & (Mask{1} << min_vertex))
        t.simplices = {a, b, c};
    else if (b & (Mask{1} << min_vertex))
        t.simplices = {b, c, a};
    else
        t.simplices = {c, a, b};
    return t;
}

DistinguishedTriple DistinguishedTriple::reversed() const {
    return canonical(simplices[0], simplices[2], simplices[1]);
}

DistinguishedTriple DistinguishedTriple::mapped(const Permutation& g) const {
    return canonical(g.apply_mask(simplices[0]), g.apply_mask(simplices[1]),
                     g.apply_mask(simplices[2]));
}

namespace {

// link(K, delta) must be the boundary of a (card(delta))-set; returns it.
std::optional<Mask> boundary_partner(const Complex& K, Mask delta) {
    const int q = mask_card(delta);
    Mask support = 0;
    int count = 0;
    for (Mask f : K.facets()) {
        if (!mask_subset(delta, f)) continue;
        Mask rest = f & ~delta;
        if (mask_card(rest) != q - 1) return std::nullopt;
        support |= rest;
        ++count;
    }
    if (count != q || mask_card(support) != q) return std::nullopt;
    // all (q-1)-subsets of `support` must be present: count match forces it
    return support;
}

void check_triple_shape(const Complex& K, int& d_out) {
    const int d = K.dim();
    if (d < 2 || d % 2 != 0 || !K.is_pure(d))
        throw ShapeMismatch("distinguished triples require a pure complex of even dimension");
    if (K.vertex_count() != 3 * (d / 2 + 1))
        throw ShapeMismatch("vertex count must be 3(d/2+1)");
    d_out = d;
}

}  // namespace

std::vector<DistinguishedTriple> distinguished_triples(const Complex& K) {
    int d = 0;
    check_triple_shape(K, d);
    const int q = d / 2 + 1;

    auto faces = faces_by_dim(K);
    const auto& candidates = faces[static_cast<std::size_t>(q - 1)];
    std::map<Mask, Mask> partner;
    for (Mask delta : candidates)
        if (auto b = boundary_partner(K, delta)) partner[delta] = *b;

    std::set<DistinguishedTriple> found;
    for (const auto& [d1, d2] : partner) {
        auto it2 = partner.find(d2);
        if (it2 == partner.end()) continue;
        Mask d3 = it2->second;
        auto it3 = partner.find(d3);
        if (it3 == partner.end() || it3->second != d1) continue;
        if ((d1 | d2 | d3) != K.support()) continue;
        found.insert(DistinguishedTriple::canonical(d1, d2, d3));
    }
    return {found.begin(), found.end()};
}

std::vector<Mask> distinguished_subcomplex_facets(const DistinguishedTriple& t) {
    std::vector<Mask> out;
    for (int i = 0; i < 3; ++i) {
        Mask a = t.simplices[static_cast<std::size_t>(i)];
        Mask b = t.simplices[static_cast<std::size_t>((i + 1) % 3)];
        for (Mask rest = b; rest != 0; rest &= rest - 1)
            out.push_back(a | (b & ~(rest & -rest)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<Mask> flipped_subcomplex_facets(const DistinguishedTriple& t) {
    std::vector<Mask> out;
    for (int i = 0; i < 3; ++i) {
        Mask a = t.simplices[static_cast<std::size_t>(i)];
        Mask b = t.simplices[static_cast<std::size_t>((i + 1) % 3)];
        for (Mask rest = a; rest != 0; rest &= rest - 1)
            out.push_back((a & ~(rest & -rest)) | b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool triple_is_distinguished(const Complex& K, const DistinguishedTriple& t) {
    for (int i = 0; i < 3; ++i) {
        auto b = boundary_partner(K, t.simplices[static_cast<std::size_t>(i)]);
        if (!b || *b != t.simplices[static_cast<std::size_t>((i + 1) % 3)]) return false;
    }
    return true;
}

}  // namespace

Complex apply_triple_flip(const Complex& K, const DistinguishedTriple& t) {
    if (!triple_is_distinguished(K, t))
        throw NotDistinguished("triple is not distinguished in the complex");
    auto old_facets = distinguished_subcomplex_facets(t);
    auto new_facets = flipped_subcomplex_facets(t);
    std::vector<Mask> facets;
    facets.reserve(K.facet_count());
    for (Mask f : K.facets())
        if (!std::binary_search(old_facets.begin(), old_facets.end(), f)) facets.push_back(f);
    facets.insert(facets.end(), new_facets.begin(), new_facets.end());
    Complex out = Complex::from_facets(K.slot_count(), std::move(facets));
    const int d = K.dim();
    if (!(f_vector(out) == f_vector(K)) || !is_weak_pseudomanifold(out, d))
        throw Error("triple flip produced an invalid complex");
    return out;
}

int FlipGraph::loop_count() const {
    int loops = 0;
    for (const auto& node : nodes) loops += node.self_inverse_loops + node.non_self_inverse_loops;
    return loops;
}

int FlipGraph::edge_count() const {
    int count = 0;
    for (const auto& [e, mult] : edges) count += mult;
    return count;
}

std::string FlipGraph::to_dot() const {
    std::ostringstream os;
    os << "graph flips {\n";
    std::map<std::string, int> group_counter;
    std::vector<std::string> labels;
    for (const auto& node : nodes) {
        int idx = ++group_counter[node.sym_name];
        labels.push_back(node.sym_name + "," + std::to_string(idx));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        os << "  n" << i << " [label=\"" << labels[i] << "\"];\n";
        for (int k = 0; k < nodes[i].self_inverse_loops; ++k)
            os << "  n" << i << " -- n" << i << " [style=dashed];\n";
        for (int k = 0; k < nodes[i].non_self_inverse_loops; ++k)
            os << "  n" << i << " -- n" << i << ";\n";
    }
    for (const auto& [e, mult] : edges)
        for (int k = 0; k < mult; ++k) os << "  n" << e.first << " -- n" << e.second << ";\n";
    os << "}\n";
    return os.str();
}

namespace {

struct NodeExtras {
    PermGroup sym;
    std::vector<std::vector<DistinguishedTriple>> orbits;  // Sym-orbits of triples
};

std::vector<std::vector<DistinguishedTriple>> triple_orbits(
    const std::vector<DistinguishedTriple>& triples, const std::vector<Permutation>& elements) {
    std::vector<std::vector<DistinguishedTriple>> orbits;
    std::set<DistinguishedTriple> seen;
    for (const auto& t : triples) {
        if (seen.count(t)) continue;
        std::set<DistinguishedTriple> orbit;
        for (const auto& g : elements) orbit.insert(t.mapped(g));
        seen.insert(orbit.begin(), orbit.end());
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    return orbits;
}

void fill_node_stats(FlipGraphNode& node, const Complex& K) {
    node.representative = K;
    node.key = canonical_key(K);
    PermGroup sym = symmetry_group(K);
    node.sym_order = sym.order();
    node.sym_name = group_structure_name(sym);
    if (K.slot_count() >= 15 && K.vertex_count() == 15 && K.dim() == 8) {
        node.m = m_distribution(K);
        node.cert = pack_certificate(node.m);
    }
}

}  // namespace

FlipGraph flip_graph_component(const Complex& seed, const FlipGraphLimits& limits) {
    FlipGraph graph;
    std::vector<NodeExtras> extras;
    std::map<CanonicalKey, int> key_to_node;

    auto add_node = [&](const Complex& K, const CanonicalKey& key) -> int {
        FlipGraphNode node;
        fill_node_stats(node, K);
        node.key = key;
        PermGroup sym = symmetry_group(K);
        auto triples = distinguished_triples(K);
        node.triple_count = static_cast<int>(triples.size());
        NodeExtras ex;
        ex.orbits = triple_orbits(triples, sym.elements());
        ex.sym = std::move(sym);
        node.orbit_count = static_cast<int>(ex.orbits.size());
        graph.nodes.push_back(std::move(node));
        extras.push_back(std::move(ex));
        key_to_node.emplace(key, static_cast<int>(graph.nodes.size()) - 1);
        return static_cast<int>(graph.nodes.size()) - 1;
    };

    std::deque<int> frontier;
    frontier.push_back(add_node(seed, canonical_key(seed)));

    // per ordered pair: how many triple-orbits of the source flip to the target
    std::map<std::pair<int, int>, int> directed;

    while (!frontier.empty()) {
        if (graph.nodes.size() > limits.max_nodes ||
            graph.edges.size() > limits.max_edges) {
            graph.truncated = true;
            break;
        }
        int u = frontier.front();
        frontier.pop_front();
        const Complex K = graph.nodes[static_cast<std::size_t>(u)].representative;

        struct LoopOrbit {
            int orbit_index;
            DistinguishedTriple rep;
            Complex flipped;
        };
        std::vector<LoopOrbit> loop_orbits;

        for (std::size_t oi = 0; oi < extras[static_cast<std::size_t>(u)].orbits.size(); ++oi) {
            const auto& orbit = extras[static_cast<std::size_t>(u)].orbits[oi];
            const DistinguishedTriple& rep = orbit.front();
            Complex flipped = apply_triple_flip(K, rep);
            CanonicalKey fkey = canonical_key(flipped);
            auto it = key_to_node.find(fkey);
            int v;
            if (it == key_to_node.end()) {
                v = add_node(flipped, fkey);
                frontier.push_back(v);
            } else {
                v = it->second;
            }
            if (v == u) {
                loop_orbits.push_back({static_cast<int>(oi), rep, std::move(flipped)});
            } else {
                ++directed[{u, v}];
            }
        }

        // pair loop orbits into self-inverse loops and non-self-inverse pairs
        std::set<int> consumed;
        for (const auto& lo : loop_orbits) {
            if (consumed.count(lo.orbit_index)) continue;
            auto iso = find_isomorphism(lo.flipped, K);
            if (!iso) throw Error("internal: loop flip target no longer isomorphic");
            DistinguishedTriple inv = lo.rep.reversed().mapped(*iso);
            int partner = -1;
            for (const auto& lo2 : loop_orbits) {
                const auto& orbit2 =
                    extras[static_cast<std::size_t>(u)].orbits[static_cast<std::size_t>(
                        lo2.orbit_index)];
                if (std::find(orbit2.begin(), orbit2.end(), inv) != orbit2.end()) {
                    partner = lo2.orbit_index;
                    break;
                }
            }
            if (partner < 0) throw Error("internal: loop inverse not found among loop orbits");
            if (partner == lo.orbit_index) {
                ++graph.nodes[static_cast<std::size_t>(u)].self_inverse_loops;
                consumed.insert(lo.orbit_index);
            } else {
                ++graph.nodes[static_cast<std::size_t>(u)].non_self_inverse_loops;
                consumed.insert(lo.orbit_index);
                consumed.insert(partner);
            }
        }
    }

    if (!graph.truncated) {
        for (const auto& [uv, mult] : directed) {
            auto [u, v] = uv;
            if (u < v) {
                auto back = directed.find({v, u});
                int back_mult = back == directed.end() ? 0 : back->second;
                if (back_mult != mult)
                    throw Error("internal: asymmetric edge multiplicities in flip graph");
                graph.edges[{u, v}] = mult;
            }
        }
        // degree bookkeeping: orbit count = edges + loops with convention
        for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
            int deg = graph.nodes[i].self_inverse_loops + 2 * graph.nodes[i].non_self_inverse_loops;
            for (const auto& [uv, mult] : graph.edges)
                if (uv.first == static_cast<int>(i) || uv.second == static_cast<int>(i))
                    deg += mult;
            if (deg != graph.nodes[i].orbit_count)
                throw Error("internal: node degree differs from triple orbit count");
        }
    } else {
        for (const auto& [uv, mult] : directed)
            if (uv.first < uv.second) graph.edges[{uv.first, uv.second}] = mult;
    }
    return graph;
}

std::vector<EquivariantOrbit> admissible_orbits(const Complex& K, const PermGroup& G) {
    if (!is_invariant(K, G)) throw NotInvariant("complex is not G-invariant");
    auto triples = distinguished_triples(K);
    std::vector<EquivariantOrbit> out;
    std::set<DistinguishedTriple> seen;
    for (const auto& t : triples) {
        if (seen.count(t)) continue;
        std::set<DistinguishedTriple> orbit;
        for (const auto& g : G.elements()) orbit.insert(t.mapped(g));
        seen.insert(orbit.begin(), orbit.end());
        EquivariantOrbit eo;
        eo.triples.assign(orbit.begin(), orbit.end());
        // admissible: distinct members pairwise share no facet
        std::vector<std::vector<Mask>> subs;
        for (const auto& tt : eo.triples) subs.push_back(distinguished_subcomplex_facets(tt));
        std::sort(subs.begin(), subs.end());
        subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
        bool ok = true;
        for (std::size_t i = 0; i < subs.size() && ok; ++i)
            for (std::size_t j = i + 1; j < subs.size() && ok; ++j) {
                std::vector<Mask> inter;
                std::set_intersection(subs[i].begin(), subs[i].end(), subs[j].begin(),
                                      subs[j].end(), std::back_inserter(inter));
                if (!inter.empty()) ok = false;
            }
        eo.admissible = ok;
        out.push_back(std::move(eo));
    }
    return out;
}

Complex apply_equivariant_flip(const Complex& K, const PermGroup& G,
                               const EquivariantOrbit& orbit) {
    if (!orbit.admissible) throw NotAdmissible("orbit is not admissible");
    std::set<Mask> remove;
    std::vector<Mask> add;
    std::set<std::vector<Mask>> distinct;
    for (const auto& t : orbit.triples) {
        if (!triple_is_distinguished(K, t))
            throw NotDistinguished("orbit member is not distinguished");
        auto sub = distinguished_subcomplex_facets(t);
        if (!distinct.insert(sub).second) continue;
        remove.insert(sub.begin(), sub.end());
        auto rep = flipped_subcomplex_facets(t);
        add.insert(add.end(), rep.begin(), rep.end());
    }
    std::vector<Mask> facets;
    for (Mask f : K.facets())
        if (!remove.count(f)) facets.push_back(f);
    facets.insert(facets.end(), add.begin(), add.end());
    Complex out = Complex::from_facets(K.slot_count(), std::move(facets));
    if (!(f_vector(out) == f_vector(K)) || !is_weak_pseudomanifold(out, K.dim()) ||
        !is_invariant(out, G))
        throw Error("equivariant flip produced an invalid complex");
    return out;
}

namespace {

// normalizer of G inside Sym(K), as an element list
std::vector<Permutation> normalizer_in_sym(const PermGroup& sym, const PermGroup& G) {
    std::vector<Permutation> out;
    for (const auto& f : sym.elements()) {
        bool ok = true;
        for (const auto& g : G.generators())
            if (!G.contains(f.compose(g).compose(f.inverse()))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(f);
    }
    return out;
}

std::uint64_t certificate_or_zero(const Complex& K) {
    if (K.slot_count() >= 15 && K.vertex_count() == 15 && K.dim() == 8)
        return pack_certificate(m_distribution(K));
    return 0;
}

std::vector<Mask> orbit_signature(const EquivariantOrbit& o) {
    std::vector<Mask> sig;
    for (const auto& t : o.triples) {
        sig.push_back(t.simplices[0]);
        sig.push_back(t.simplices[1]);
        sig.push_back(t.simplices[2]);
    }
    return sig;
}

EquivariantOrbit map_orbit(const EquivariantOrbit& o, const Permutation& f) {
    std::set<DistinguishedTriple> mapped;
    for (const auto& t : o.triples) mapped.insert(t.mapped(f));
    EquivariantOrbit out;
    out.triples.assign(mapped.begin(), mapped.end());
    out.admissible = o.admissible;
    return out;
}

}  // namespace

FlipGraph equivariant_component(const Complex& seed, const PermGroup& G,
                                const FlipGraphLimits& limits) {
    if (!is_invariant(seed, G)) throw NotInvariant("seed is not G-invariant");
    FlipGraph graph;
    std::vector<std::vector<EquivariantOrbit>> node_moves;  // N-class representatives

    auto weak_equal = [&](const Complex& A, const Complex& B) {
        return find_weak_G_isomorphism(A, B, G).has_value();
    };

    auto add_node = [&](const Complex& K) -> int {
        FlipGraphNode node;
        fill_node_stats(node, K);
        PermGroup sym = symmetry_group(K);
        auto norm = normalizer_in_sym(sym, G);
        auto orbits = admissible_orbits(K, G);
        node.triple_count = static_cast<int>(distinguished_triples(K).size());

        // group the admissible orbits into classes under the normalizer
        std::vector<EquivariantOrbit> moves;
        std::set<std::vector<Mask>> seen;
        for (const auto& o : orbits) {
            if (!o.admissible) continue;
            if (seen.count(orbit_signature(o))) continue;
            for (const auto& f : norm) seen.insert(orbit_signature(map_orbit(o, f)));
            moves.push_back(o);
        }
        node.orbit_count = static_cast<int>(moves.size());
        graph.nodes.push_back(std::move(node));
        node_moves.push_back(std::move(moves));
        return static_cast<int>(graph.nodes.size()) - 1;
    };

    std::deque<int> frontier;
    frontier.push_back(add_node(seed));
    std::map<std::pair<int, int>, int> directed;

    while (!frontier.empty()) {
        if (graph.nodes.size() > limits.max_nodes) {
            graph.truncated = true;
            break;
        }
        int u = frontier.front();
        frontier.pop_front();
        const Complex K = graph.nodes[static_cast<std::size_t>(u)].representative;

        struct LoopMove {
            std::size_t move_index;
            Complex flipped;
        };
        std::vector<LoopMove> loops;

        for (std::size_t mi = 0; mi < node_moves[static_cast<std::size_t>(u)].size(); ++mi) {
            const auto& move = node_moves[static_cast<std::size_t>(u)][mi];
            Complex flipped = apply_equivariant_flip(K, G, move);
            const std::uint64_t fcert = certificate_or_zero(flipped);
            int v = -1;
            for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
                if (graph.nodes[i].cert != fcert) continue;
                if (weak_equal(flipped, graph.nodes[i].representative)) {
                    v = static_cast<int>(i);
                    break;
                }
            }
            if (v < 0) {
                v = add_node(flipped);
                frontier.push_back(v);
            }
            if (v == u)
                loops.push_back({mi, std::move(flipped)});
            else
                ++directed[{u, v}];
        }

        std::set<std::size_t> consumed;
        const auto& norm_elems =
            normalizer_in_sym(symmetry_group(K), G);  // for inverse classing
        for (const auto& lm : loops) {
            if (consumed.count(lm.move_index)) continue;
            auto wiso = find_weak_G_isomorphism(lm.flipped, K, G);
            if (!wiso) throw Error("internal: equivariant loop no longer weakly isomorphic");
            // inverse move: the orbit of reversed triples, pulled back
            EquivariantOrbit inv;
            for (const auto& t : node_moves[static_cast<std::size_t>(u)][lm.move_index].triples)
                inv.triples.push_back(t.reversed().mapped(wiso->vertex_map));
            std::sort(inv.triples.begin(), inv.triples.end());
            auto inv_sig = orbit_signature(inv);
            int partner = -1;
            for (const auto& lm2 : loops) {
                const auto& move2 = node_moves[static_cast<std::size_t>(u)][lm2.move_index];
                for (const auto& f : norm_elems) {
                    if (orbit_signature(map_orbit(move2, f)) == inv_sig) {
                        partner = static_cast<int>(lm2.move_index);
                        break;
                    }
                }
                if (partner >= 0) break;
            }
            if (partner < 0) throw Error("internal: equivariant loop inverse not found");
            if (partner == static_cast<int>(lm.move_index)) {
                ++graph.nodes[static_cast<std::size_t>(u)].self_inverse_loops;
                consumed.insert(lm.move_index);
            } else {
                ++graph.nodes[static_cast<std::size_t>(u)].non_self_inverse_loops;
                consumed.insert(lm.move_index);
                consumed.insert(static_cast<std::size_t>(partner));
            }
        }
    }

    for (const auto& [uv, mult] : directed) {
        auto [u, v] = uv;
        if (u < v) {
            auto back = directed.find({v, u});
            int back_mult = back == directed.end() ? 0 : back->second;
            if (!graph.truncated && back_mult != mult)
                throw Error("internal: asymmetric equivariant edge multiplicities");
            graph.edges[{u, v}] = mult;
        }
    }
    return graph;
}

std::uint64_t WalkStats::distinct_certificates() const {
    std::uint64_t total = 0;
    for (const auto& [name, certs] : certificates) total += certs.size();
    return total;
}

WalkStats random_walk(const Complex& seed, std::uint64_t steps, std::uint64_t rng_seed) {
    WalkStats stats;
    stats.rng_seed = rng_seed;
    Rng rng(rng_seed);
    Complex cur = seed;
    auto record = [&](const Complex& K) {
        PermGroup sym = symmetry_group(K);
        stats.certificates[group_structure_name(sym)].insert(certificate(K));
    };
    record(cur);
    for (std::uint64_t s = 0; s < steps; ++s) {
        auto triples = distinguished_triples(cur);
        if (triples.empty()) {
            stats.halted_no_moves = true;
            break;
        }
        const auto& t = triples[rng.below(triples.size())];
        cur = apply_triple_flip(cur, t);
        ++stats.steps_taken;
        record(cur);
    }
    return stats;
}

}  // namespace qpt
