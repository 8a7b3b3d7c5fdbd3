#include "bnrefine/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "bnrefine/error.hpp"

namespace bnrefine {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::unknown_node: return "unknown-node";
        case Errc::self_loop: return "self-loop";
        case Errc::cycle_detected: return "cycle-detected";
        case Errc::node_mismatch: return "node-mismatch";
        case Errc::duplicate_name: return "duplicate-name";
        case Errc::invalid_variable: return "invalid-variable";
        case Errc::unknown_state: return "unknown-state";
        case Errc::ragged_row: return "ragged-row";
        case Errc::unknown_column: return "unknown-column";
        case Errc::duplicate_column: return "duplicate-column";
        case Errc::empty_data: return "empty-data";
        case Errc::unknown_variable: return "unknown-variable";
        case Errc::child_in_parents: return "child-in-parents";
        case Errc::table_too_large: return "table-too-large";
        case Errc::too_many_variables: return "too-many-variables";
        case Errc::missing_cpt: return "missing-cpt";
        case Errc::cpt_not_normalized: return "cpt-not-normalized";
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::parse_error: return "parse-error";
        case Errc::io_error: return "io-error";
    }
    return "unknown";
}

namespace {

std::string join_cycle(const std::vector<std::string>& cycle) {
    std::string out;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i) out += " -> ";
        out += cycle[i];
    }
    return out;
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : Error(Errc::cycle_detected, "graph contains a directed cycle: " + join_cycle(cycle)),
      cycle_(std::move(cycle)) {}

DagStructure::DagStructure(std::vector<std::string> nodes) : nodes_(std::move(nodes)) {
    for (const auto& n : nodes_) {
        if (!parents_.emplace(n, NodeSet{}).second) {
            throw Error(Errc::duplicate_name, "duplicate node name '" + n + "'");
        }
    }
}

DagStructure::DagStructure(std::vector<std::string> nodes, const std::vector<Arc>& arcs)
    : DagStructure(std::move(nodes)) {
    for (const auto& a : arcs) add_arc(a.from, a.to);
}

bool DagStructure::contains(const std::string& node) const {
    return parents_.count(node) != 0;
}

void DagStructure::require_node(const std::string& node) const {
    if (!contains(node)) throw Error(Errc::unknown_node, "unknown node '" + node + "'");
}

const NodeSet& DagStructure::parents(const std::string& node) const {
    auto it = parents_.find(node);
    if (it == parents_.end()) throw Error(Errc::unknown_node, "unknown node '" + node + "'");
    return it->second;
}

NodeSet DagStructure::children(const std::string& node) const {
    require_node(node);
    NodeSet out;
    for (const auto& [child, ps] : parents_) {
        if (ps.count(node)) out.insert(child);
    }
    return out;
}

bool DagStructure::has_arc(const std::string& from, const std::string& to) const {
    auto it = parents_.find(to);
    return it != parents_.end() && it->second.count(from) != 0;
}

void DagStructure::add_arc(const std::string& from, const std::string& to) {
    require_node(from);
    require_node(to);
    if (from == to) throw Error(Errc::self_loop, "self-loop on '" + from + "'");
    parents_[to].insert(from);
}

void DagStructure::remove_arc(const std::string& from, const std::string& to) {
    require_node(to);
    parents_[to].erase(from);
}

void DagStructure::set_parents(const std::string& node, NodeSet parents) {
    require_node(node);
    for (const auto& p : parents) {
        require_node(p);
        if (p == node) throw Error(Errc::self_loop, "self-loop on '" + node + "'");
    }
    parents_[node] = std::move(parents);
}

std::vector<Arc> DagStructure::arcs() const {
    std::vector<Arc> out;
    for (const auto& [child, ps] : parents_) {
        for (const auto& p : ps) out.push_back({p, child});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t DagStructure::arc_count() const {
    std::size_t n = 0;
    for (const auto& [child, ps] : parents_) n += ps.size();
    return n;
}

DagStructure DagStructure::restricted_to(const std::vector<std::string>& keep) const {
    DagStructure out(keep);
    for (const auto& n : keep) {
        require_node(n);
        for (const auto& p : parents(n)) {
            if (out.contains(p)) out.add_arc(p, n);
        }
    }
    return out;
}

namespace {

// Kahn's algorithm with a min-heap on names. Returns the processed prefix;
// its length is short of g.size() exactly when g has a cycle.
std::vector<std::string> kahn(const DagStructure& g) {
    std::map<std::string, std::size_t> indegree;
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& n : g.nodes()) {
        indegree[n] = g.parents(n).size();
        for (const auto& p : g.parents(n)) children[p].push_back(n);
    }
    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [n, d] : indegree) {
        if (d == 0) ready.push(n);
    }
    std::vector<std::string> order;
    order.reserve(g.size());
    while (!ready.empty()) {
        std::string n = ready.top();
        ready.pop();
        order.push_back(n);
        for (const auto& c : children[n]) {
            if (--indegree[c] == 0) ready.push(c);
        }
    }
    return order;
}

std::vector<std::string> find_cycle(const DagStructure& g, const std::vector<std::string>& done) {
    std::unordered_set<std::string> removed(done.begin(), done.end());
    // Every remaining node keeps at least one remaining parent; walking
    // parents must revisit a node.
    std::string start;
    for (const auto& n : g.nodes()) {
        if (!removed.count(n)) {
            start = n;
            break;
        }
    }
    std::vector<std::string> path;
    std::map<std::string, std::size_t> seen;
    std::string cur = start;
    while (!seen.count(cur)) {
        seen[cur] = path.size();
        path.push_back(cur);
        for (const auto& p : g.parents(cur)) {
            if (!removed.count(p)) {
                cur = p;
                break;
            }
        }
    }
    // path walks child -> parent; reverse the loop so it reads along arcs.
    std::vector<std::string> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen[cur]), path.end());
    std::reverse(cycle.begin(), cycle.end());
    cycle.push_back(cycle.front());
    return cycle;
}

}  // namespace

bool is_acyclic(const DagStructure& g) {
    return kahn(g).size() == g.size();
}

std::vector<std::string> topological_order(const DagStructure& g) {
    auto order = kahn(g);
    if (order.size() != g.size()) throw CycleError(find_cycle(g, order));
    return order;
}

DagStructure substitute_parents(const DagStructure& g,
                                const std::map<std::string, NodeSet>& assignments) {
    DagStructure out = g;
    for (const auto& [node, ps] : assignments) out.set_parents(node, ps);
    return out;
}

double arc_code_length(std::size_t n) {
    return 2.0 * std::log2(static_cast<double>(n));
}

double StructuralDiff::description_length() const {
    return static_cast<double>(reversed.size() + additional.size() + missing.size()) *
           arc_code_length(domain_size);
}

double StructuralDiff::localized_description_length() const {
    std::size_t total = 0;
    for (const auto& [node, c] : per_node) total += c.reversed + c.additional + c.missing;
    return static_cast<double>(total) * arc_code_length(domain_size);
}

StructuralDiff structural_diff(const DagStructure& h_n, const DagStructure& h_p) {
    for (const auto& n : h_p.nodes()) {
        if (!h_n.contains(n)) {
            throw Error(Errc::node_mismatch,
                        "node '" + n + "' of the partial structure is not in the existent structure");
        }
    }
    StructuralDiff diff;
    diff.domain_size = h_n.size();
    for (const auto& n : h_n.nodes()) diff.per_node[n];

    for (const auto& arc : h_n.arcs()) {
        if (h_p.has_arc(arc.from, arc.to)) continue;
        if (h_p.has_arc(arc.to, arc.from)) {
            diff.reversed.push_back(arc);
            ++diff.per_node[arc.to].reversed;
        } else {
            diff.additional.push_back(arc);
            ++diff.per_node[arc.to].additional;
        }
    }
    for (const auto& arc : h_p.arcs()) {
        if (h_n.has_arc(arc.from, arc.to) || h_n.has_arc(arc.to, arc.from)) continue;
        diff.missing.push_back(arc);
        ++diff.per_node[arc.to].missing;
    }
    return diff;
}

std::size_t local_deviation_count(const DagStructure& h_n, const std::string& node,
                                  const NodeSet& parents) {
    const NodeSet& existent = h_n.parents(node);
    std::size_t count = 0;
    // Existent arcs into `node` that are not kept: reversed or additional.
    for (const auto& p : existent) {
        if (!parents.count(p)) ++count;
    }
    // New arcs into `node` with no counterpart in either direction: missing.
    for (const auto& p : parents) {
        if (existent.count(p)) continue;
        if (h_n.contains(p) && h_n.has_arc(node, p)) continue;
        ++count;
    }
    return count;
}

}  // namespace bnrefine
