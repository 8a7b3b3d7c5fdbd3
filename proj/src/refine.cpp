#include "bnrefine/refine.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "bnrefine/error.hpp"

namespace bnrefine {

MarkedSet marked_nodes(const DagStructure& h_n, const DagStructure& h_p) {
    MarkedSet marked;
    for (const auto& n : h_p.nodes()) {
        if (!h_n.contains(n)) {
            throw Error(Errc::node_mismatch,
                        "node '" + n + "' of the partial structure is not in the existent structure");
        }
        const auto& ps = h_n.parents(n);
        if (std::all_of(ps.begin(), ps.end(), [&](const std::string& p) { return h_p.contains(p); })) {
            marked.nodes.insert(n);
        }
    }
    return marked;
}

NodeSet reversal_partners(const std::string& node, const DagStructure& h_n, const DagStructure& h_p) {
    NodeSet partners;
    for (const auto& r : h_p.parents(node)) {
        if (h_n.contains(r) && h_n.has_arc(node, r)) partners.insert(r);
    }
    for (const auto& r : h_n.parents(node)) {
        if (h_p.contains(r) && h_p.has_arc(node, r)) partners.insert(r);
    }
    return partners;
}

namespace {

void grow(NodeSet& unit, const std::string& node, NodeSet& remaining, const MarkedSet& marked,
          const DagStructure& h_n, const DagStructure& h_p) {
    for (const auto& r : reversal_partners(node, h_n, h_p)) {
        remaining.erase(r);
        if (marked.contains(r) && !unit.count(r)) {
            unit.insert(r);
            grow(unit, r, remaining, marked, h_n, h_p);
        }
    }
}

}  // namespace

void construct_subgraph(NodeSet& unit, const std::string& seed, NodeSet& remaining,
                        const DagStructure& h_n, const DagStructure& h_p) {
    if (!unit.count(seed)) {
        throw Error(Errc::invalid_argument, "seed '" + seed + "' must already belong to the unit");
    }
    grow(unit, seed, remaining, marked_nodes(h_n, h_p), h_n, h_p);
}

std::vector<NodeSet> partition_into_subgraphs(const MarkedSet& marked, const DagStructure& h_n,
                                              const DagStructure& h_p) {
    std::vector<NodeSet> units;
    NodeSet remaining = marked.nodes;
    while (!remaining.empty()) {
        const std::string seed = *remaining.begin();
        remaining.erase(remaining.begin());
        NodeSet unit{seed};
        grow(unit, seed, remaining, marked, h_n, h_p);
        units.push_back(std::move(unit));
    }
    return units;
}

std::vector<SubgraphUnit> score_units(const std::vector<NodeSet>& member_sets,
                                      const DagStructure& h_n, const DagStructure& h_p,
                                      const Dataset& d, const ScorerConfig& cfg) {
    FamilyScorer scorer(d, h_n, cfg);
    std::vector<SubgraphUnit> units;
    for (const auto& members : member_sets) {
        SubgraphUnit u;
        u.members = members;
        for (const auto& m : members) {
            u.new_parents[m] = h_p.parents(m);
            u.existent_bits += scorer.node_dl(m, h_n.parents(m));
            u.partial_bits += scorer.node_dl(m, h_p.parents(m));
        }
        u.benefit = u.existent_bits - u.partial_bits;
        units.push_back(std::move(u));
    }
    return units;
}

std::vector<SubgraphUnit> rank_units(std::vector<SubgraphUnit> units) {
    std::stable_sort(units.begin(), units.end(), [](const SubgraphUnit& a, const SubgraphUnit& b) {
        if (a.benefit != b.benefit) return a.benefit > b.benefit;
        return a.members < b.members;
    });
    return units;
}

DagStructure apply_units(const DagStructure& h_n, const std::vector<SubgraphUnit>& units,
                         const std::vector<std::size_t>& which) {
    std::map<std::string, NodeSet> assignments;
    for (auto i : which) {
        for (const auto& [node, ps] : units.at(i).new_parents) assignments[node] = ps;
    }
    return substitute_parents(h_n, assignments);
}

namespace {

struct Element {
    double priority;
    double dl;
    std::vector<std::size_t> applied;
    std::size_t next;
    DagStructure structure;
};

struct LaterFirst {
    bool operator()(const Element& a, const Element& b) const {
        // priority_queue pops the largest; invert for lowest-priority-first.
        const auto na = a.applied.size();
        const auto nb = b.applied.size();
        return std::tie(a.priority, na, a.applied, a.next) > std::tie(b.priority, nb, b.applied, b.next);
    }
};

bool preferred(double dl, const std::vector<std::size_t>& applied, double best_dl,
               const std::vector<std::size_t>& best_applied) {
    if (dl != best_dl) return dl < best_dl;
    if (applied.size() != best_applied.size()) return applied.size() < best_applied.size();
    return applied < best_applied;
}

}  // namespace

UnitSearchResult search_units(const DagStructure& h_n, const std::vector<SubgraphUnit>& ranked,
                              double existent_bits, std::size_t max_expansions) {
    const std::size_t t = ranked.size();
    UnitSearchResult out;
    out.result = h_n;
    double best_dl = existent_bits;

    std::priority_queue<Element, std::vector<Element>, LaterFirst> open;
    std::set<std::pair<std::vector<std::size_t>, std::size_t>> seen;

    auto consider = [&](const DagStructure& h, const std::vector<std::size_t>& applied, double dl) {
        if (preferred(dl, applied, best_dl, out.applied)) {
            best_dl = dl;
            out.applied = applied;
            out.result = h;
        }
    };
    auto push = [&](const DagStructure& h, const std::vector<std::size_t>& applied, double dl,
                    std::size_t next) {
        if (next >= t) return;
        if (!seen.emplace(applied, next).second) return;
        open.push({dl - ranked[next].benefit, dl, applied, next, h});
    };

    push(h_n, {}, existent_bits, 0);
    for (std::size_t i = 0; i + 1 < t; ++i) {
        if (!(ranked[i].benefit > 0.0)) continue;
        DagStructure h = apply_units(h_n, ranked, {i});
        if (!is_acyclic(h)) continue;
        const double dl = existent_bits - ranked[i].benefit;
        consider(h, {i}, dl);
        push(h, {i}, dl, i + 1);
    }

    while (!open.empty()) {
        if (out.expansions_used >= max_expansions) {
            out.converged = false;
            break;
        }
        Element e = open.top();
        open.pop();
        ++out.expansions_used;

        const std::size_t i = e.next;
        push(e.structure, e.applied, e.dl, i + 1);
        if (!(ranked[i].benefit > 0.0)) continue;

        std::map<std::string, NodeSet> assignments(ranked[i].new_parents);
        DagStructure h_new = substitute_parents(e.structure, assignments);
        if (!is_acyclic(h_new)) continue;
        std::vector<std::size_t> applied = e.applied;
        applied.push_back(i);
        const double dl = e.dl - ranked[i].benefit;
        consider(h_new, applied, dl);
        push(h_new, applied, dl, i + 1);
    }

    for (auto i : out.applied) out.score_delta += ranked[i].benefit;
    return out;
}

RefinePlan refine(const DagStructure& h_n, const DagStructure& h_p, const Dataset& d,
                  const LearnConfig& cfg) {
    topological_order(h_n);
    topological_order(h_p);
    const auto cols = d.names();
    if (std::set<std::string>(cols.begin(), cols.end()) !=
        std::set<std::string>(h_p.nodes().begin(), h_p.nodes().end())) {
        throw Error(Errc::node_mismatch, "partial structure nodes must equal the dataset columns");
    }
    if (cfg.max_expansions == 0) throw Error(Errc::invalid_argument, "max_expansions must be positive");
    const ScorerConfig rc = resolve(cfg.scorer, h_n);

    RefinePlan plan;
    plan.marked = marked_nodes(h_n, h_p);
    plan.units = rank_units(score_units(partition_into_subgraphs(plan.marked, h_n, h_p), h_n, h_p, d, rc));
    plan.existent_bits = network_dl(h_n, d, h_n, rc).total;

    UnitSearchResult sr = search_units(h_n, plan.units, plan.existent_bits, cfg.max_expansions);
    plan.applied = std::move(sr.applied);
    plan.result = std::move(sr.result);
    plan.score_delta = sr.score_delta;
    plan.expansions_used = sr.expansions_used;
    plan.converged = sr.converged;

    for (std::size_t i = 0; i < plan.units.size(); ++i) {
        if (std::find(plan.applied.begin(), plan.applied.end(), i) != plan.applied.end()) continue;
        if (!(plan.units[i].benefit > 0.0)) {
            plan.not_beneficial.push_back(i);
            continue;
        }
        if (is_acyclic(apply_units(plan.result, plan.units, {i}))) {
            plan.unreached.push_back(i);
        } else {
            plan.skipped_for_cycle.push_back(i);
        }
    }
    return plan;
}

}  // namespace bnrefine
