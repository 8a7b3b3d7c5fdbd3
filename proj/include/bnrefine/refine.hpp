#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bnrefine/dataset.hpp"
#include "bnrefine/graph.hpp"
#include "bnrefine/learn.hpp"
#include "bnrefine/score.hpp"

namespace bnrefine {

// Nodes of h_p whose entire h_n parent set is observed (lies in h_p), so
// their local description lengths under h_n and h_p are comparable.
struct MarkedSet {
    NodeSet nodes;

    bool contains(const std::string& n) const { return nodes.count(n) != 0; }
};

MarkedSet marked_nodes(const DagStructure& h_n, const DagStructure& h_p);

// Nodes whose arc with `node` points the other way in h_p than in h_n,
// looking at the parents of `node` in both structures.
NodeSet reversal_partners(const std::string& node, const DagStructure& h_n, const DagStructure& h_p);

// Grows `unit` from `seed` through reversal partners: every partner is taken
// out of `remaining`, and marked partners not yet in the unit join it and are
// expanded in turn. Partners are visited in lexicographic order.
void construct_subgraph(NodeSet& unit, const std::string& seed, NodeSet& remaining,
                        const DagStructure& h_n, const DagStructure& h_p);

// Splits the marked set into substitution units, seeding each unit with the
// lexicographically smallest node still unassigned.
std::vector<NodeSet> partition_into_subgraphs(const MarkedSet& marked, const DagStructure& h_n,
                                              const DagStructure& h_p);

struct SubgraphUnit {
    NodeSet members;
    std::map<std::string, NodeSet> new_parents;  // parents in h_p
    double existent_bits = 0.0;                  // sum of node_dl with h_n parents
    double partial_bits = 0.0;                   // sum of node_dl with h_p parents
    double benefit = 0.0;                        // existent_bits - partial_bits
};

// Benefits for each member set, computed from the data.
std::vector<SubgraphUnit> score_units(const std::vector<NodeSet>& member_sets,
                                      const DagStructure& h_n, const DagStructure& h_p,
                                      const Dataset& d, const ScorerConfig& cfg);

// Units ranked for the search: largest benefit first, ties by member list.
std::vector<SubgraphUnit> rank_units(std::vector<SubgraphUnit> units);

struct UnitSearchResult {
    std::vector<std::size_t> applied;  // indices into the ranked list, ascending
    DagStructure result;
    double score_delta = 0.0;  // sum of applied benefits, in index order
    std::size_t expansions_used = 0;
    bool converged = true;
};

// Best-first search over which ranked units to substitute into h_n. Elements
// are (H, next unit); priority is DL(H) - benefit(next). Expanding (H, S_i)
// always enqueues (H, S_i+1) and, when H with S_i substituted is acyclic and
// S_i has positive benefit, (H + S_i, S_i+1). Returns the lowest-DL acyclic
// structure seen; ties prefer fewer units, then smaller index lists.
UnitSearchResult search_units(const DagStructure& h_n, const std::vector<SubgraphUnit>& ranked,
                              double existent_bits, std::size_t max_expansions);

struct RefinePlan {
    std::vector<SubgraphUnit> units;  // ranked
    std::vector<std::size_t> applied;
    std::vector<std::size_t> skipped_for_cycle;  // positive benefit, cyclic with the result
    std::vector<std::size_t> not_beneficial;     // benefit <= 0
    // Positive benefit and acyclic with the result, but never reached by the
    // search (ordering or budget).
    std::vector<std::size_t> unreached;
    MarkedSet marked;
    DagStructure result;
    double existent_bits = 0.0;  // network_dl(h_n).total
    double score_delta = 0.0;
    std::size_t expansions_used = 0;
    bool converged = true;
};

RefinePlan refine(const DagStructure& h_n, const DagStructure& h_p, const Dataset& d,
                  const LearnConfig& cfg);

// h_n with every applied unit's parents substituted.
DagStructure apply_units(const DagStructure& h_n, const std::vector<SubgraphUnit>& units,
                         const std::vector<std::size_t>& which);

}  // namespace bnrefine
