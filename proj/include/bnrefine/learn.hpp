#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bnrefine/dataset.hpp"
#include "bnrefine/graph.hpp"
#include "bnrefine/score.hpp"

namespace bnrefine {

struct LearnConfig {
    std::size_t max_parents = 5;
    std::size_t max_expansions = 10000;
    // Start hill-climbing from h_n restricted to the observed variables
    // instead of the empty graph.
    bool seed_from_existent = false;
    ScorerConfig scorer;
};

struct LearnResult {
    DagStructure structure;
    ScoreBreakdown score;
    std::size_t expansions_used = 0;
    bool converged = false;
};

enum class ArcOp { remove, reverse, add };  // tie-break order

const char* to_string(ArcOp op) noexcept;

struct Neighbor {
    ArcOp op;
    Arc arc;  // the arc removed, reversed (as it was) or added
    DagStructure result;
};

// Every acyclic single-arc edit of `g` whose result respects `max_parents`.
// Order: removals, then reversals, then additions; each by arc.
std::vector<Neighbor> neighbors(const DagStructure& g, std::size_t max_parents);

// Greedy hill-climbing on total_dl over the dataset columns.
LearnResult learn_partial(const Dataset& d, const DagStructure& h_n, const LearnConfig& cfg);

inline constexpr std::size_t kOracleMaxVariables = 5;

// Minimiser of total_dl over every DAG on the dataset columns (at most
// kOracleMaxVariables). Ties: fewer arcs, then lexicographically smaller
// sorted arc list.
LearnResult exhaustive_oracle(const Dataset& d, const DagStructure& h_n, const LearnConfig& cfg);

}  // namespace bnrefine
