#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/group.hpp"

namespace qpt {

// One enumeration run: all G-invariant facet sets F of (d+1)-subsets of the
// n slots such that every d-subset of a member of F lies in exactly two
// members, F contains the mandatory facets, |F| >= min_facets, and (when
// enforce_star is set) no two members of F cover all n slots.
struct SearchProblem {
    int d = 0;
    int n = 0;
    std::int64_t min_facets = 0;  // N
    PermGroup group;
    std::vector<Mask> mandatory;  // closed under G at load time
    bool enforce_star = true;
};

struct SearchOptions {
    int threads = 1;
    std::uint64_t progress_interval = 0;  // nodes between progress lines; 0 = off
    std::string checkpoint_path;          // empty = no checkpointing
    std::uint64_t checkpoint_interval = 1u << 22;
    std::uint64_t resume_solutions = 0;       // solutions already emitted
    std::vector<int> resume_prefix;           // branch indices to fast-forward
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    double seconds = 0.0;
};

using SolutionSink = std::function<void(const std::vector<Mask>&)>;

// Runs the backtracking enumeration. Solutions are emitted in a fixed
// deterministic order independent of the thread count. Throws
// InfeasibleMandatory when the mandatory set already violates the ridge or
// star constraints.
SearchStats enumerate(const SearchProblem& problem, const SolutionSink& sink,
                      const SearchOptions& options = {});

// Independent re-check of a claimed solution using only complex-core
// predicates. Returns a list of violation descriptions (empty = Ok).
std::vector<std::string> verify_solution(const SearchProblem& problem, const Complex& K);

}  // namespace qpt
