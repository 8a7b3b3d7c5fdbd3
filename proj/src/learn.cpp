#include "bnrefine/learn.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>

#include "bnrefine/error.hpp"

namespace bnrefine {

const char* to_string(ArcOp op) noexcept {
    switch (op) {
        case ArcOp::remove: return "delete";
        case ArcOp::reverse: return "reverse";
        case ArcOp::add: return "add";
    }
    return "unknown";
}

std::vector<Neighbor> neighbors(const DagStructure& g, std::size_t max_parents) {
    std::vector<Neighbor> out;
    const auto arcs = g.arcs();
    for (const auto& a : arcs) {
        DagStructure h = g;
        h.remove_arc(a.from, a.to);
        out.push_back({ArcOp::remove, a, std::move(h)});
    }
    for (const auto& a : arcs) {
        if (g.parents(a.from).size() + 1 > max_parents) continue;
        DagStructure h = g;
        h.remove_arc(a.from, a.to);
        h.add_arc(a.to, a.from);
        if (is_acyclic(h)) out.push_back({ArcOp::reverse, a, std::move(h)});
    }
    std::vector<std::string> sorted = g.nodes();
    std::sort(sorted.begin(), sorted.end());
    for (const auto& u : sorted) {
        for (const auto& v : sorted) {
            if (u == v || g.has_arc(u, v) || g.has_arc(v, u)) continue;
            if (g.parents(v).size() + 1 > max_parents) continue;
            DagStructure h = g;
            h.add_arc(u, v);
            if (is_acyclic(h)) out.push_back({ArcOp::add, {u, v}, std::move(h)});
        }
    }
    return out;
}

namespace {

void validate(const Dataset& d, const DagStructure& h_n, const LearnConfig& cfg) {
    if (cfg.max_parents == 0) throw Error(Errc::invalid_argument, "max_parents must be positive");
    if (cfg.max_expansions == 0) throw Error(Errc::invalid_argument, "max_expansions must be positive");
    if (d.row_count() == 0) throw Error(Errc::empty_data, "cannot learn from an empty dataset");
    for (const auto& name : d.names()) {
        if (!h_n.contains(name)) {
            throw Error(Errc::node_mismatch,
                        "dataset column '" + name + "' is not a node of the existent structure");
        }
    }
}

// Summed in node order so the value is bit-identical to total_dl().total.
double structure_score(FamilyScorer& scorer, const DagStructure& g) {
    double total = 0.0;
    for (const auto& n : g.nodes()) total += scorer.node_dl(n, g.parents(n));
    return total;
}

}  // namespace

LearnResult learn_partial(const Dataset& d, const DagStructure& h_n, const LearnConfig& cfg) {
    validate(d, h_n, cfg);
    FamilyScorer scorer(d, h_n, cfg.scorer);
    const auto names = d.names();

    DagStructure current = cfg.seed_from_existent ? h_n.restricted_to(names) : DagStructure(names);
    double current_score = structure_score(scorer, current);

    LearnResult result;
    while (true) {
        if (result.expansions_used >= cfg.max_expansions) break;
        ++result.expansions_used;

        const Neighbor* best = nullptr;
        double best_score = std::numeric_limits<double>::infinity();
        const auto candidates = neighbors(current, cfg.max_parents);
        for (const auto& nb : candidates) {
            const double s = structure_score(scorer, nb.result);
            if (s < best_score) {
                best_score = s;
                best = &nb;
            }
        }
        if (best == nullptr || !(best_score < current_score)) {
            result.converged = true;
            break;
        }
        current = best->result;
        current_score = best_score;
    }

    result.score = total_dl(current, d, h_n, scorer.config());
    result.structure = std::move(current);
    return result;
}

LearnResult exhaustive_oracle(const Dataset& d, const DagStructure& h_n, const LearnConfig& cfg) {
    validate(d, h_n, cfg);
    const auto names = d.names();
    const std::size_t p = names.size();
    if (p > kOracleMaxVariables) {
        throw Error(Errc::too_many_variables, "exhaustive search supports at most " +
                                                  std::to_string(kOracleMaxVariables) +
                                                  " variables, got " + std::to_string(p));
    }
    FamilyScorer scorer(d, h_n, cfg.scorer);

    // Allowed parent masks and their node_dl, per node.
    std::vector<std::vector<std::uint32_t>> masks(p);
    std::vector<std::vector<double>> dl(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::uint32_t m = 0; m < (1u << p); ++m) {
            if (m & (1u << i)) continue;
            if (static_cast<std::size_t>(__builtin_popcount(m)) > cfg.max_parents) continue;
            NodeSet ps;
            for (std::size_t j = 0; j < p; ++j) {
                if (m & (1u << j)) ps.insert(names[j]);
            }
            masks[i].push_back(m);
            dl[i].push_back(scorer.node_dl(names[i], ps));
        }
    }

    auto acyclic = [p](const std::vector<std::uint32_t>& parent_mask) {
        std::uint32_t remaining = (1u << p) - 1;
        bool progress = true;
        while (remaining && progress) {
            progress = false;
            for (std::size_t i = 0; i < p; ++i) {
                if ((remaining & (1u << i)) && !(parent_mask[i] & remaining)) {
                    remaining &= ~(1u << i);
                    progress = true;
                }
            }
        }
        return remaining == 0;
    };
    auto arc_list = [&](const std::vector<std::uint32_t>& parent_mask) {
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                if (parent_mask[i] & (1u << j)) arcs.push_back({names[j], names[i]});
            }
        }
        std::sort(arcs.begin(), arcs.end());
        return arcs;
    };

    std::vector<std::size_t> choice(p, 0);
    std::vector<std::uint32_t> parent_mask(p, 0);
    std::optional<std::vector<std::uint32_t>> best;
    std::vector<Arc> best_arcs;
    double best_score = std::numeric_limits<double>::infinity();
    std::size_t enumerated = 0;

    while (true) {
        for (std::size_t i = 0; i < p; ++i) parent_mask[i] = masks[i][choice[i]];
        if (acyclic(parent_mask)) {
            ++enumerated;
            double s = 0.0;
            for (std::size_t i = 0; i < p; ++i) s += dl[i][choice[i]];
            if (s <= best_score) {
                auto arcs = arc_list(parent_mask);
                const bool better =
                    s < best_score || !best || arcs.size() < best_arcs.size() ||
                    (arcs.size() == best_arcs.size() && arcs < best_arcs);
                if (better) {
                    best_score = s;
                    best = parent_mask;
                    best_arcs = std::move(arcs);
                }
            }
        }
        std::size_t k = 0;
        while (k < p && ++choice[k] == masks[k].size()) choice[k++] = 0;
        if (k == p) break;
    }

    LearnResult result;
    result.structure = DagStructure(names, best_arcs);
    result.score = total_dl(result.structure, d, h_n, scorer.config());
    result.expansions_used = enumerated;
    result.converged = true;
    return result;
}

}  // namespace bnrefine
