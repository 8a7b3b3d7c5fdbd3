#include "bnrefine/score.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bnrefine/error.hpp"

namespace bnrefine {

ScorerConfig resolve(const ScorerConfig& cfg, const DagStructure& h_n) {
    if (!(cfg.bits_per_parameter > 0.0) || !std::isfinite(cfg.bits_per_parameter)) {
        throw Error(Errc::invalid_argument, "bits per parameter must be positive");
    }
    ScorerConfig out = cfg;
    if (out.domain_size == 0) out.domain_size = h_n.size();
    if (out.domain_size == 0) throw Error(Errc::invalid_argument, "domain size must be positive");
    return out;
}

const NodeScore& ScoreBreakdown::node(const std::string& name) const {
    for (const auto& n : nodes) {
        if (n.node == name) return n;
    }
    throw Error(Errc::unknown_node, "score breakdown has no node '" + name + "'");
}

double structure_dl(const std::string& child, const std::vector<std::string>& parents,
                    const Dataset& d, const ScorerConfig& cfg) {
    if (cfg.domain_size == 0) throw Error(Errc::invalid_argument, "domain size must be positive");
    double params = static_cast<double>(d.variables()[d.column_index(child)].cardinality() - 1);
    for (const auto& p : parents) {
        params *= static_cast<double>(d.variables()[d.column_index(p)].cardinality());
    }
    return static_cast<double>(parents.size()) * std::log2(static_cast<double>(cfg.domain_size)) +
           cfg.bits_per_parameter * params;
}

double node_dl_old(const std::string& child, const std::vector<std::string>& parents,
                   const Dataset& d, const ScorerConfig& cfg) {
    const double structure = structure_dl(child, parents, d, cfg);
    return structure + data_dl(count(d, child, parents));
}

double deviation_penalty(const std::string& node, const StructuralDiff& diff,
                         const ScorerConfig& cfg) {
    const std::size_t n = cfg.domain_size ? cfg.domain_size : diff.domain_size;
    auto it = diff.per_node.find(node);
    if (it == diff.per_node.end()) return 0.0;
    return static_cast<double>(it->second.total()) * arc_code_length(n);
}

double node_dl(const std::string& child, const std::vector<std::string>& parents_in_hp,
               const Dataset& d, const DagStructure& h_n, const ScorerConfig& cfg) {
    const ScorerConfig rc = resolve(cfg, h_n);
    const NodeSet parents(parents_in_hp.begin(), parents_in_hp.end());
    const std::vector<std::string> ordered(parents.begin(), parents.end());
    const double local = node_dl_old(child, ordered, d, rc);
    const auto edits = local_deviation_count(h_n, child, parents);
    return local + static_cast<double>(edits) * arc_code_length(rc.domain_size);
}

namespace {

NodeScore score_node(const std::string& node, const NodeSet& parents, const Dataset& d,
                     const NodeDiffCounts& counts, const ScorerConfig& cfg) {
    NodeScore ns;
    ns.node = node;
    ns.parents.assign(parents.begin(), parents.end());
    ns.counts = counts;
    ns.comparable = d.has_column(node) &&
                    std::all_of(parents.begin(), parents.end(),
                                [&](const std::string& p) { return d.has_column(p); });
    if (ns.comparable) {
        ns.structure_bits = structure_dl(node, ns.parents, d, cfg);
        ns.data_bits = data_dl(count(d, node, ns.parents));
    }
    ns.deviation_bits = static_cast<double>(counts.total()) * arc_code_length(cfg.domain_size);
    return ns;
}

void accumulate(ScoreBreakdown& b, const ScorerConfig& cfg) {
    std::size_t edits = 0;
    for (const auto& ns : b.nodes) {
        b.structure_bits += ns.structure_bits;
        b.data_bits += ns.data_bits;
        b.total += ns.total();
        edits += ns.counts.total();
    }
    b.deviation_bits = static_cast<double>(edits) * arc_code_length(cfg.domain_size);
    b.domain_size = cfg.domain_size;
    b.bits_per_parameter = cfg.bits_per_parameter;
}

}  // namespace

ScoreBreakdown total_dl(const DagStructure& h_p, const Dataset& d, const DagStructure& h_n,
                        const ScorerConfig& cfg) {
    const ScorerConfig rc = resolve(cfg, h_n);
    const std::set<std::string> hp_nodes(h_p.nodes().begin(), h_p.nodes().end());
    const auto cols = d.names();
    if (hp_nodes != std::set<std::string>(cols.begin(), cols.end())) {
        throw Error(Errc::node_mismatch, "partial structure nodes must equal the dataset columns");
    }
    if (rc.domain_size < h_p.size()) {
        throw Error(Errc::invalid_argument, "domain size is smaller than the partial structure");
    }
    const StructuralDiff diff = structural_diff(h_n, h_p);

    ScoreBreakdown b;
    for (const auto& node : h_p.nodes()) {
        b.nodes.push_back(score_node(node, h_p.parents(node), d, diff.per_node.at(node), rc));
    }
    accumulate(b, rc);
    return b;
}

ScoreBreakdown network_dl(const DagStructure& h, const Dataset& d, const DagStructure& h_n,
                          const ScorerConfig& cfg) {
    const ScorerConfig rc = resolve(cfg, h_n);
    if (std::set<std::string>(h.nodes().begin(), h.nodes().end()) !=
        std::set<std::string>(h_n.nodes().begin(), h_n.nodes().end())) {
        throw Error(Errc::node_mismatch, "refined structure must cover the existent domain");
    }
    for (const auto& col : d.names()) {
        if (!h.contains(col)) {
            throw Error(Errc::node_mismatch, "dataset column '" + col + "' is not a network node");
        }
    }
    const StructuralDiff diff = structural_diff(h_n, h);

    ScoreBreakdown b;
    for (const auto& node : h.nodes()) {
        b.nodes.push_back(score_node(node, h.parents(node), d, diff.per_node.at(node), rc));
    }
    accumulate(b, rc);
    return b;
}

FamilyScorer::FamilyScorer(const Dataset& d, const DagStructure& h_n, const ScorerConfig& cfg)
    : data_(&d), h_n_(&h_n), cfg_(resolve(cfg, h_n)), arc_bits_(arc_code_length(cfg_.domain_size)) {}

double FamilyScorer::local_bits(const std::string& child, const NodeSet& parents) {
    auto key = std::make_pair(child, parents);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v = node_dl_old(child, std::vector<std::string>(parents.begin(), parents.end()),
                                 *data_, cfg_);
    cache_.emplace(std::move(key), v);
    return v;
}

double FamilyScorer::node_dl(const std::string& child, const NodeSet& parents) {
    const double local = local_bits(child, parents);
    return local + static_cast<double>(local_deviation_count(*h_n_, child, parents)) * arc_bits_;
}

}  // namespace bnrefine
