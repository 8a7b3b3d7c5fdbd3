#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace bnrefine {

using NodeSet = std::set<std::string>;

struct Arc {
    std::string from;
    std::string to;

    auto operator<=>(const Arc&) const = default;
};

// Directed graph over named nodes. Parent sets are kept sorted, so every
// enumeration (arcs, parents) is in lexicographic order. The graph is not
// required to be acyclic: search candidates may be built first and checked
// with is_acyclic() afterwards.
class DagStructure {
public:
    DagStructure() = default;
    explicit DagStructure(std::vector<std::string> nodes);
    DagStructure(std::vector<std::string> nodes, const std::vector<Arc>& arcs);

    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool contains(const std::string& node) const;

    const NodeSet& parents(const std::string& node) const;
    NodeSet children(const std::string& node) const;
    bool has_arc(const std::string& from, const std::string& to) const;

    void add_arc(const std::string& from, const std::string& to);
    void remove_arc(const std::string& from, const std::string& to);
    void set_parents(const std::string& node, NodeSet parents);

    std::vector<Arc> arcs() const;
    std::size_t arc_count() const;

    // Subgraph induced on `keep`, which must be a subset of the nodes. Node
    // order follows `keep`.
    DagStructure restricted_to(const std::vector<std::string>& keep) const;

    friend bool operator==(const DagStructure& a, const DagStructure& b) {
        return a.nodes_ == b.nodes_ && a.parents_ == b.parents_;
    }

private:
    void require_node(const std::string& node) const;

    std::vector<std::string> nodes_;
    std::map<std::string, NodeSet> parents_;
};

bool is_acyclic(const DagStructure& g);

// Parents precede children; among ready nodes the lexicographically smallest
// goes first. Throws CycleError naming one offending cycle.
std::vector<std::string> topological_order(const DagStructure& g);

// Copy of `g` with the listed nodes' parent sets replaced. The result may be
// cyclic; callers check.
DagStructure substitute_parents(const DagStructure& g,
                                const std::map<std::string, NodeSet>& assignments);

struct NodeDiffCounts {
    std::size_t reversed = 0;
    std::size_t additional = 0;
    std::size_t missing = 0;

    std::size_t total() const noexcept { return reversed + additional + missing; }
    auto operator<=>(const NodeDiffCounts&) const = default;
};

// Arc edits that recover `h_n` from `h_p`. Reversed and additional arcs are
// arcs of h_n and are charged to their h_n destination; missing arcs are arcs
// of h_p and are charged to their h_p destination.
struct StructuralDiff {
    std::map<std::string, NodeDiffCounts> per_node;  // every node of h_n
    std::vector<Arc> reversed;                       // as they appear in h_n
    std::vector<Arc> additional;
    std::vector<Arc> missing;                        // as they appear in h_p
    std::size_t domain_size = 0;                     // |nodes(h_n)|

    std::size_t arc_edit_count() const noexcept {
        return reversed.size() + additional.size() + missing.size();
    }
    // (r + a + m) * 2 * log2(n) from the arc lists.
    double description_length() const;
    // The same quantity assembled from the per-node counts.
    double localized_description_length() const;
};

StructuralDiff structural_diff(const DagStructure& h_n, const DagStructure& h_p);

// Bits needed to name one arc in a domain of `n` nodes: 2 * log2(n).
double arc_code_length(std::size_t n);

// Per-node deviation count for `node` carrying `parents`, measured against
// h_n. Equals structural_diff(h_n, h).per_node[node].total() for any h in
// which `node` has exactly these parents.
std::size_t local_deviation_count(const DagStructure& h_n, const std::string& node,
                                  const NodeSet& parents);

}  // namespace bnrefine
