#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bnrefine/dataset.hpp"
#include "bnrefine/graph.hpp"

namespace bnrefine {

struct ScorerConfig {
    // Bits charged per free conditional-probability parameter.
    double bits_per_parameter = 10.0;
    // Node count of the existent structure. 0 means "take it from h_n".
    std::size_t domain_size = 0;
};

// Fills in domain_size from h_n and validates the configuration.
ScorerConfig resolve(const ScorerConfig& cfg, const DagStructure& h_n);

struct NodeScore {
    std::string node;
    std::vector<std::string> parents;
    // Parent list plus parameter bits.
    double structure_bits = 0.0;
    // N * H_emp(node | parents).
    double data_bits = 0.0;
    // (r_i + a_i + m_i) * 2 * log2(n).
    double deviation_bits = 0.0;
    NodeDiffCounts counts;
    // False when the node's parents leave the observed columns; its
    // structure and data bits are then an unscored constant and left at 0.
    bool comparable = true;

    double local_bits() const noexcept { return structure_bits + data_bits; }
    double total() const noexcept { return local_bits() + deviation_bits; }
};

// Per-node description lengths. The constant mu (deviation of the nodes that
// are absent from the data, plus any unscored local terms) is never computed.
struct ScoreBreakdown {
    std::vector<NodeScore> nodes;
    double structure_bits = 0.0;
    double data_bits = 0.0;
    // (sum of per-node edit counts) * 2 * log2(n).
    double deviation_bits = 0.0;
    // Sum of NodeScore::total() in node order.
    double total = 0.0;
    std::size_t domain_size = 0;
    double bits_per_parameter = 0.0;
    static constexpr bool mu_omitted = true;

    const NodeScore& node(const std::string& name) const;
};

// k * log2(n) + d * (s_child - 1) * prod(s_parent) + data_dl(count(...)).
double node_dl_old(const std::string& child, const std::vector<std::string>& parents,
                   const Dataset& d, const ScorerConfig& cfg);

// The structure part alone: k * log2(n) + d * (s_child - 1) * prod(s_parent).
double structure_dl(const std::string& child, const std::vector<std::string>& parents,
                    const Dataset& d, const ScorerConfig& cfg);

double deviation_penalty(const std::string& node, const StructuralDiff& diff,
                         const ScorerConfig& cfg);

// node_dl_old plus the deviation of `child` with `parents_in_hp` from h_n.
double node_dl(const std::string& child, const std::vector<std::string>& parents_in_hp,
               const Dataset& d, const DagStructure& h_n, const ScorerConfig& cfg);

// Sum of node_dl over the nodes of h_p, which must be exactly the dataset
// columns and a subset of h_n.
ScoreBreakdown total_dl(const DagStructure& h_p, const Dataset& d, const DagStructure& h_n,
                        const ScorerConfig& cfg);

// Description length of a full-domain structure `h` (same nodes as h_n)
// against partial data. Nodes whose parents in h are all observed are scored
// in full; the rest contribute deviation bits only. Deviation counts come
// from a whole-graph structural_diff, so this is an independent route to the
// quantity the refinement search tracks incrementally.
ScoreBreakdown network_dl(const DagStructure& h, const Dataset& d, const DagStructure& h_n,
                          const ScorerConfig& cfg);

// Memoising front end for node_dl used by the search procedures. Not
// thread-safe; give each worker its own instance.
class FamilyScorer {
public:
    FamilyScorer(const Dataset& d, const DagStructure& h_n, const ScorerConfig& cfg);

    double local_bits(const std::string& child, const NodeSet& parents);
    double node_dl(const std::string& child, const NodeSet& parents);
    double arc_bits() const noexcept { return arc_bits_; }
    const ScorerConfig& config() const noexcept { return cfg_; }
    const DagStructure& existent() const noexcept { return *h_n_; }
    const Dataset& data() const noexcept { return *data_; }

private:
    const Dataset* data_;
    const DagStructure* h_n_;
    ScorerConfig cfg_;
    double arc_bits_;
    std::map<std::pair<std::string, NodeSet>, double> cache_;
};

}  // namespace bnrefine
