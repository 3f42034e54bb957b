#include "qpt/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace qpt {

namespace {

constexpr std::int8_t kUndec = 0;
constexpr std::int8_t kIn = 1;
constexpr std::int8_t kOut = 2;

// Immutable per-problem tables shared between worker states.
struct Tables {
    int n = 0, d = 0;
    Mask universe = 0;
    std::int64_t min_facets = 0;
    bool enforce_star = false;

    std::vector<Mask> facet_mask;                 // all (d+1)-subsets, ascending
    std::vector<int> facet_orbit;
    std::vector<std::vector<int>> orbit_facets;   // ascending facet ids
    std::vector<std::vector<int>> facet_ridges;
    std::vector<std::vector<int>> ridge_facets;   // ascending facet ids
    std::vector<std::vector<int>> star_conflicts; // facet -> conflicting facets
    std::vector<char> orbit_pre_excluded;
    std::vector<int> mandatory_orbits;
    int num_orbits = 0, num_facets = 0, num_ridges = 0;

    void build(const SearchProblem& prob);
};

void Tables::build(const SearchProblem& prob) {
    n = prob.n;
    d = prob.d;
    universe = full_mask(n);
    min_facets = prob.min_facets;
    enforce_star = prob.enforce_star;
    if (prob.group.degree() != n) throw Error("group degree differs from n");
    if (d + 1 > n) throw Error("facet size exceeds vertex count");

    std::unordered_map<Mask, int> facet_index;
    for (Mask m = first_ksubset(d + 1); m != 0 && mask_subset(m, universe);
         m = next_ksubset(m)) {
        facet_index.emplace(m, static_cast<int>(facet_mask.size()));
        facet_mask.push_back(m);
    }
    num_facets = static_cast<int>(facet_mask.size());

    // orbits in order of smallest member
    facet_orbit.assign(static_cast<std::size_t>(num_facets), -1);
    for (int f = 0; f < num_facets; ++f) {
        if (facet_orbit[static_cast<std::size_t>(f)] >= 0) continue;
        int oid = static_cast<int>(orbit_facets.size());
        std::vector<int> members;
        std::vector<Mask> stack{facet_mask[static_cast<std::size_t>(f)]};
        facet_orbit[static_cast<std::size_t>(f)] = oid;
        members.push_back(f);
        while (!stack.empty()) {
            Mask cur = stack.back();
            stack.pop_back();
            for (const auto& g : prob.group.generators()) {
                Mask img = g.apply_mask(cur);
                int idx = facet_index.at(img);
                if (facet_orbit[static_cast<std::size_t>(idx)] < 0) {
                    facet_orbit[static_cast<std::size_t>(idx)] = oid;
                    members.push_back(idx);
                    stack.push_back(img);
                }
            }
        }
        std::sort(members.begin(), members.end());
        orbit_facets.push_back(std::move(members));
    }
    num_orbits = static_cast<int>(orbit_facets.size());

    // ridges: all d-subsets of facets
    std::unordered_map<Mask, int> ridge_index;
    facet_ridges.assign(static_cast<std::size_t>(num_facets), {});
    for (int f = 0; f < num_facets; ++f) {
        Mask fm = facet_mask[static_cast<std::size_t>(f)];
        for (Mask rest = fm; rest != 0; rest &= rest - 1) {
            Mask ridge = fm & ~(rest & -rest);
            auto [it, inserted] = ridge_index.emplace(ridge, static_cast<int>(ridge_facets.size()));
            if (inserted) ridge_facets.emplace_back();
            facet_ridges[static_cast<std::size_t>(f)].push_back(it->second);
            ridge_facets[static_cast<std::size_t>(it->second)].push_back(f);
        }
    }
    num_ridges = static_cast<int>(ridge_facets.size());

    if (enforce_star) {
        star_conflicts.assign(static_cast<std::size_t>(num_facets), {});
        for (int f = 0; f < num_facets; ++f) {
            Mask fm = facet_mask[static_cast<std::size_t>(f)];
            Mask comp = universe & ~fm;
            int extra = (d + 1) - mask_card(comp);
            if (extra < 0) continue;
            // facets containing comp: comp plus `extra` bits chosen from fm
            std::vector<int> bits = mask_vertices(fm);  // 1-based
            const int b = static_cast<int>(bits.size());
            for (Mask pick = first_ksubset(extra);
                 extra == 0 || (pick != 0 && mask_subset(pick, full_mask(b)));
                 pick = next_ksubset(pick)) {
                Mask g = comp;
                for (Mask rest = pick; rest != 0; rest &= rest - 1)
                    g |= Mask{1} << (bits[static_cast<std::size_t>(std::countr_zero(rest))] - 1);
                star_conflicts[static_cast<std::size_t>(f)].push_back(facet_index.at(g));
                if (extra == 0) break;
            }
            std::sort(star_conflicts[static_cast<std::size_t>(f)].begin(),
                      star_conflicts[static_cast<std::size_t>(f)].end());
        }
    }

    // orbits that violate the constraints on their own can never be included
    orbit_pre_excluded.assign(static_cast<std::size_t>(num_orbits), 0);
    for (int o = 0; o < num_orbits; ++o) {
        const auto& members = orbit_facets[static_cast<std::size_t>(o)];
        std::unordered_map<int, int> ridge_mult;
        bool bad = false;
        for (int f : members)
            for (int r : facet_ridges[static_cast<std::size_t>(f)])
                if (++ridge_mult[r] > 2) bad = true;
        if (enforce_star && !bad) {
            for (std::size_t i = 0; i < members.size() && !bad; ++i)
                for (std::size_t j = i; j < members.size() && !bad; ++j)
                    if ((facet_mask[static_cast<std::size_t>(members[i])] |
                         facet_mask[static_cast<std::size_t>(members[j])]) == universe)
                        bad = true;
        }
        if (bad) orbit_pre_excluded[static_cast<std::size_t>(o)] = 1;
    }

    // mandatory facets, closed under the group
    std::vector<char> is_mand_orbit(static_cast<std::size_t>(num_orbits), 0);
    for (Mask m : prob.mandatory) {
        if (mask_card(m) != d + 1)
            throw InfeasibleMandatory("mandatory facet " + mask_to_string(m) +
                                      " does not have dimension d");
        auto it = facet_index.find(m);
        if (it == facet_index.end())
            throw InfeasibleMandatory("mandatory facet outside the slot universe");
        int o = facet_orbit[static_cast<std::size_t>(it->second)];
        if (orbit_pre_excluded[static_cast<std::size_t>(o)])
            throw InfeasibleMandatory("mandatory facet lies in a self-conflicting orbit");
        is_mand_orbit[static_cast<std::size_t>(o)] = 1;
    }
    for (int o = 0; o < num_orbits; ++o)
        if (is_mand_orbit[static_cast<std::size_t>(o)]) mandatory_orbits.push_back(o);
}

struct Op {
    std::uint8_t kind;  // 0 orbit, 1 facet-in, 2 facet-out
    int id;
};

struct Engine {
    const Tables& t;
    const SearchOptions& opts;

    std::vector<std::int8_t> orbit_state;
    std::vector<std::int8_t> facet_state;
    std::vector<std::int8_t> ridge_deg;
    std::vector<std::int16_t> ridge_cand;
    std::vector<int> open_stack;
    std::vector<Op> trail;
    std::vector<std::pair<std::uint8_t, int>> queue;  // 1 include, 2 exclude
    std::int64_t num_in = 0;
    std::int64_t undecided = 0;
    std::int64_t open_count = 0;

    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    std::vector<int> path;            // branch indices along the current path
    std::vector<int> resume;          // prefix to fast-forward
    std::size_t resume_pos = 0;
    bool exclusive_root = false;      // process only the resumed root branch
    std::function<void(const std::vector<Mask>&)> emit;
    std::chrono::steady_clock::time_point started;
    std::uint64_t next_progress = 0;
    std::uint64_t next_checkpoint = 0;

    explicit Engine(const Tables& tables, const SearchOptions& options)
        : t(tables), opts(options) {
        orbit_state.assign(static_cast<std::size_t>(t.num_orbits), kUndec);
        facet_state.assign(static_cast<std::size_t>(t.num_facets), kUndec);
        ridge_deg.assign(static_cast<std::size_t>(t.num_ridges), 0);
        ridge_cand.resize(static_cast<std::size_t>(t.num_ridges));
        for (int r = 0; r < t.num_ridges; ++r)
            ridge_cand[static_cast<std::size_t>(r)] =
                static_cast<std::int16_t>(t.ridge_facets[static_cast<std::size_t>(r)].size());
        undecided = t.num_facets;
        next_progress = opts.progress_interval;
        next_checkpoint = opts.checkpoint_interval;
        started = std::chrono::steady_clock::now();
    }

    bool facet_to_in(int f) {
        facet_state[static_cast<std::size_t>(f)] = kIn;
        ++num_in;
        --undecided;
        trail.push_back({1, f});
        for (int r : t.facet_ridges[static_cast<std::size_t>(f)]) {
            auto& deg = ridge_deg[static_cast<std::size_t>(r)];
            --ridge_cand[static_cast<std::size_t>(r)];
            ++deg;
            if (deg == 1) {
                ++open_count;
                open_stack.push_back(r);
            } else if (deg == 2) {
                --open_count;
            } else {
                return false;
            }
        }
        return true;
    }

    void facet_to_out(int f) {
        facet_state[static_cast<std::size_t>(f)] = kOut;
        --undecided;
        trail.push_back({2, f});
        for (int r : t.facet_ridges[static_cast<std::size_t>(f)])
            --ridge_cand[static_cast<std::size_t>(r)];
    }

    // consequences for a ridge after its counters changed
    bool ridge_consequences(int r) {
        int deg = ridge_deg[static_cast<std::size_t>(r)];
        int cand = ridge_cand[static_cast<std::size_t>(r)];
        if (deg == 2) {
            if (cand > 0) {
                for (int g : t.ridge_facets[static_cast<std::size_t>(r)])
                    if (facet_state[static_cast<std::size_t>(g)] == kUndec)
                        queue.emplace_back(2, t.facet_orbit[static_cast<std::size_t>(g)]);
            }
            return true;
        }
        if (deg == 1) {
            if (cand == 0) return false;
            if (cand == 1) {
                for (int g : t.ridge_facets[static_cast<std::size_t>(r)])
                    if (facet_state[static_cast<std::size_t>(g)] == kUndec) {
                        queue.emplace_back(1, t.facet_orbit[static_cast<std::size_t>(g)]);
                        break;
                    }
            }
        }
        return true;
    }

    bool apply_include(int o) {
        auto& st = orbit_state[static_cast<std::size_t>(o)];
        if (st == kIn) return true;
        if (st == kOut) return false;
        if (t.orbit_pre_excluded[static_cast<std::size_t>(o)]) return false;
        st = kIn;
        trail.push_back({0, o});
        const auto& members = t.orbit_facets[static_cast<std::size_t>(o)];
        for (int f : members)
            if (!facet_to_in(f)) return false;
        for (int f : members) {
            if (t.enforce_star) {
                for (int g : t.star_conflicts[static_cast<std::size_t>(f)]) {
                    auto gs = facet_state[static_cast<std::size_t>(g)];
                    if (gs == kIn) return false;
                    if (gs == kUndec)
                        queue.emplace_back(2, t.facet_orbit[static_cast<std::size_t>(g)]);
                }
            }
            for (int r : t.facet_ridges[static_cast<std::size_t>(f)])
                if (!ridge_consequences(r)) return false;
        }
        return true;
    }

    bool apply_exclude(int o) {
        auto& st = orbit_state[static_cast<std::size_t>(o)];
        if (st == kOut) return true;
        if (st == kIn) return false;
        st = kOut;
        trail.push_back({0, o});
        const auto& members = t.orbit_facets[static_cast<std::size_t>(o)];
        for (int f : members)
            if (facet_state[static_cast<std::size_t>(f)] == kUndec) facet_to_out(f);
        for (int f : members)
            for (int r : t.facet_ridges[static_cast<std::size_t>(f)])
                if (!ridge_consequences(r)) return false;
        return true;
    }

    bool propagate() {
        while (!queue.empty()) {
            auto [kind, o] = queue.back();
            queue.pop_back();
            bool ok = (kind == 1) ? apply_include(o) : apply_exclude(o);
            if (!ok) return false;
        }
        return true;
    }

    bool do_op(std::uint8_t kind, int o) {
        queue.clear();
        queue.emplace_back(kind, o);
        bool ok = propagate();
        queue.clear();
        return ok;
    }

    void undo_to(std::size_t mark, std::size_t open_mark) {
        while (trail.size() > mark) {
            Op op = trail.back();
            trail.pop_back();
            if (op.kind == 0) {
                orbit_state[static_cast<std::size_t>(op.id)] = kUndec;
            } else if (op.kind == 1) {
                facet_state[static_cast<std::size_t>(op.id)] = kUndec;
                --num_in;
                ++undecided;
                for (int r : t.facet_ridges[static_cast<std::size_t>(op.id)]) {
                    auto& deg = ridge_deg[static_cast<std::size_t>(r)];
                    ++ridge_cand[static_cast<std::size_t>(r)];
                    if (deg == 1)
                        --open_count;
                    else if (deg == 2)
                        ++open_count;
                    --deg;
                }
            } else {
                facet_state[static_cast<std::size_t>(op.id)] = kUndec;
                ++undecided;
                for (int r : t.facet_ridges[static_cast<std::size_t>(op.id)])
                    ++ridge_cand[static_cast<std::size_t>(r)];
            }
        }
        open_stack.resize(open_mark);
    }

    void emit_solution() {
        std::vector<Mask> sol;
        sol.reserve(static_cast<std::size_t>(num_in));
        for (int f = 0; f < t.num_facets; ++f)
            if (facet_state[static_cast<std::size_t>(f)] == kIn)
                sol.push_back(t.facet_mask[static_cast<std::size_t>(f)]);
        ++solutions;
        emit(sol);
    }

    void progress_hooks() {
        if (opts.progress_interval != 0 && nodes >= next_progress) {
            next_progress += opts.progress_interval;
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                        started)
                              .count();
            std::fprintf(stderr,
                         "search: %llu nodes, %llu solutions, depth %zu, %.1f s, %.0f nodes/s\n",
                         static_cast<unsigned long long>(nodes),
                         static_cast<unsigned long long>(solutions), path.size(), secs,
                         secs > 0 ? static_cast<double>(nodes) / secs : 0.0);
        }
        if (!opts.checkpoint_path.empty() && nodes >= next_checkpoint) {
            next_checkpoint += opts.checkpoint_interval;
            std::ofstream out(opts.checkpoint_path, std::ios::trunc);
            out << "qpt-checkpoint v1\n";
            out << "nodes " << nodes << "\n";
            out << "solutions " << solutions << "\n";
            out << "prefix";
            for (int b : path) out << ' ' << b;
            out << "\n";
        }
    }

    // Fills `out` with the candidate orbits of the most constrained open
    // ridge (ridge node) or a single undecided orbit (free node). Returns -1
    // for a leaf, otherwise the candidate count.
    int choose_branches(int* out, bool& ridge_node) {
        if (open_count > 0) {
            int best_count = -1;
            int best[16];
            auto consider = [&](int r) -> bool {
                int count = 0;
                int orbits[16];
                for (int g : t.ridge_facets[static_cast<std::size_t>(r)]) {
                    if (facet_state[static_cast<std::size_t>(g)] != kUndec) continue;
                    int o = t.facet_orbit[static_cast<std::size_t>(g)];
                    bool dup = false;
                    for (int i = 0; i < count; ++i)
                        if (orbits[i] == o) dup = true;
                    if (!dup) orbits[count++] = o;
                }
                if (best_count < 0 || count < best_count) {
                    best_count = count;
                    std::copy(orbits, orbits + count, best);
                }
                return best_count <= 1;
            };
            int inspected = 0;
            std::size_t scanned = 0;
            for (std::size_t i = open_stack.size(); i-- > 0 && inspected < 12 && scanned < 64;
                 ++scanned) {
                int r = open_stack[i];
                if (ridge_deg[static_cast<std::size_t>(r)] != 1) continue;
                ++inspected;
                if (consider(r)) break;
            }
            if (inspected == 0) {
                // the window was stale: scan the ridge table directly
                for (int r = 0; r < t.num_ridges && inspected < 12; ++r) {
                    if (ridge_deg[static_cast<std::size_t>(r)] != 1) continue;
                    ++inspected;
                    if (consider(r)) break;
                }
            }
            ridge_node = true;
            std::copy(best, best + std::max(best_count, 0), out);
            return std::max(best_count, 0);
        }
        for (int o = 0; o < t.num_orbits; ++o)
            if (orbit_state[static_cast<std::size_t>(o)] == kUndec) {
                out[0] = o;
                ridge_node = false;
                return 1;
            }
        return -1;  // leaf
    }

    void node() {
        ++nodes;
        progress_hooks();
        if (num_in + undecided < t.min_facets) return;

        int branch_orbits[16];
        bool ridge_node = false;
        int count = choose_branches(branch_orbits, ridge_node);
        if (count < 0) {
            if (num_in >= t.min_facets && num_in > 0) emit_solution();
            return;
        }
        if (ridge_node && count == 0) return;

        int start_branch = 0;
        if (resume_pos < resume.size()) start_branch = resume[resume_pos++];

        const int total_branches = ridge_node ? count : 2;
        for (int b = 0; b < total_branches; ++b) {
            if (b < start_branch) {
                // this sibling was completed before the snapshot: commit its
                // exclusion and move on (for a free node the next branch is
                // the exclusion itself)
                if (ridge_node && !do_op(2, branch_orbits[b])) return;
                continue;
            }
            std::size_t mark = trail.size();
            std::size_t open_mark = open_stack.size();
            path.push_back(b);
            bool ok;
            if (ridge_node) {
                ok = do_op(1, branch_orbits[b]);
            } else {
                ok = do_op(b == 0 ? 1 : 2, branch_orbits[0]);
            }
            if (ok) node();
            path.pop_back();
            undo_to(mark, open_mark);
            if (exclusive_root && path.empty()) return;
            if (b + 1 < total_branches && ridge_node) {
                if (!do_op(2, branch_orbits[b])) return;
            }
        }
    }
};

}  // namespace

SearchStats enumerate(const SearchProblem& problem, const SolutionSink& sink,
                      const SearchOptions& options) {
    auto start = std::chrono::steady_clock::now();
    Tables tables;
    tables.build(problem);

    SearchStats stats;
    auto finish = [&](std::uint64_t nodes, std::uint64_t sols) {
        stats.nodes = nodes;
        stats.solutions = sols;
        stats.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return stats;
    };

    // initial propagation: pre-excluded orbits out, mandatory orbits in
    auto init_engine = [&](Engine& eng) -> bool {
        eng.queue.clear();
        for (int o = 0; o < tables.num_orbits; ++o)
            if (tables.orbit_pre_excluded[static_cast<std::size_t>(o)])
                eng.queue.emplace_back(2, o);
        for (int o : tables.mandatory_orbits) eng.queue.emplace_back(1, o);
        bool ok = eng.propagate();
        eng.queue.clear();
        return ok;
    };

    if (options.threads <= 1) {
        Engine eng(tables, options);
        std::uint64_t already = 0;
        eng.emit = [&](const std::vector<Mask>& sol) {
            if (already < options.resume_solutions) {
                ++already;
                return;
            }
            sink(sol);
        };
        eng.resume = options.resume_prefix;
        if (!init_engine(eng)) {
            if (!tables.mandatory_orbits.empty())
                throw InfeasibleMandatory("mandatory facets are inconsistent");
            return finish(1, 0);
        }
        eng.node();
        return finish(eng.nodes, eng.solutions);
    }

    // parallel mode: the root branches become tasks; solutions are merged in
    // task order so the output is identical to the single-threaded run
    Engine probe(tables, options);
    probe.emit = [](const std::vector<Mask>&) {};
    if (!init_engine(probe)) {
        if (!tables.mandatory_orbits.empty())
            throw InfeasibleMandatory("mandatory facets are inconsistent");
        return finish(1, 0);
    }
    int root_orbits[16];
    bool ridge_node = false;
    int root_count = probe.choose_branches(root_orbits, ridge_node);
    if (root_count < 0 || (ridge_node && root_count == 0)) {
        // the root is already decided
        Engine eng(tables, options);
        eng.emit = sink;
        init_engine(eng);
        eng.node();
        return finish(eng.nodes, eng.solutions);
    }
    const int task_count = ridge_node ? root_count : 2;

    std::vector<std::vector<std::vector<Mask>>> buffers(static_cast<std::size_t>(task_count));
    std::vector<std::uint64_t> node_counts(static_cast<std::size_t>(task_count), 0);
    std::atomic<int> next_task{0};
    auto worker = [&]() {
        for (;;) {
            int task = next_task.fetch_add(1);
            if (task >= task_count) return;
            Engine eng(tables, options);
            eng.emit = [&buffers, task](const std::vector<Mask>& sol) {
                buffers[static_cast<std::size_t>(task)].push_back(sol);
            };
            eng.resume = {task};
            eng.exclusive_root = true;
            if (!init_engine(eng)) continue;
            eng.node();
            node_counts[static_cast<std::size_t>(task)] = eng.nodes;
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < options.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::uint64_t nodes = 1, sols = 0;
    for (int task = 0; task < task_count; ++task) {
        nodes += node_counts[static_cast<std::size_t>(task)];
        for (const auto& sol : buffers[static_cast<std::size_t>(task)]) {
            ++sols;
            sink(sol);
        }
    }
    return finish(nodes, sols);
}

std::vector<std::string> verify_solution(const SearchProblem& problem, const Complex& K) {
    std::vector<std::string> violations;
    if (K.slot_count() != problem.n)
        violations.push_back("slot count differs from the problem");
    if (!K.is_pure(problem.d))
        violations.push_back("complex is not pure of dimension " + std::to_string(problem.d));
    else {
        for (const auto& [ridge, deg] : ridge_degrees(K, problem.d))
            if (deg != 2) {
                violations.push_back("ridge " + mask_to_string(ridge) + " has degree " +
                                     std::to_string(deg));
                break;
            }
    }
    if (!is_invariant(K, problem.group)) violations.push_back("not G-invariant");
    if (static_cast<std::int64_t>(K.facet_count()) < problem.min_facets)
        violations.push_back("fewer than N facets");
    if (problem.enforce_star) {
        if (auto witness = check_condition_star(K))
            violations.push_back("condition (*) fails at " + mask_to_string(*witness));
    }
    std::vector<Mask> closed;
    for (Mask m : problem.mandatory)
        for (Mask img : mask_orbit(problem.group, m)) closed.push_back(img);
    for (Mask m : closed) {
        if (std::find(K.facets().begin(), K.facets().end(), m) == K.facets().end()) {
            violations.push_back("mandatory facet " + mask_to_string(m) + " missing");
            break;
        }
    }
    return violations;
}

}  // namespace qpt
