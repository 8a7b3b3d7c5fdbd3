#pragma once

// Helpers shared by the unit tests and the acceptance driver. Nothing here
// calls into the scorer; the oracles recompute everything from raw rows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bnrefine/dataset.hpp"
#include "bnrefine/graph.hpp"
#include "bnrefine/network.hpp"

namespace testsupport {

using bnrefine::Arc;
using bnrefine::Cpt;
using bnrefine::Dataset;
using bnrefine::DagStructure;
using bnrefine::Network;
using bnrefine::NodeSet;
using bnrefine::Variable;
using Rng = std::mt19937_64;

inline std::vector<std::string> node_names(std::size_t n, const std::string& prefix = "V") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string idx = std::to_string(i);
        if (idx.size() < 2) idx = "0" + idx;
        out.push_back(prefix + idx);
    }
    return out;
}

inline Variable make_variable(const std::string& name, std::size_t states) {
    Variable v{name, {}};
    for (std::size_t s = 0; s < states; ++s) v.states.push_back("s" + std::to_string(s));
    return v;
}

inline std::vector<Variable> make_variables(const std::vector<std::string>& names,
                                            const std::vector<std::size_t>& cards) {
    std::vector<Variable> out;
    for (std::size_t i = 0; i < names.size(); ++i) out.push_back(make_variable(names[i], cards[i]));
    return out;
}

inline std::vector<Variable> binary_variables(const std::vector<std::string>& names) {
    return make_variables(names, std::vector<std::size_t>(names.size(), 2));
}

// Rows given as state labels, one inner vector per case.
inline Dataset dataset_from_rows(const std::vector<Variable>& vars,
                                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<Dataset::Code>> cols(vars.size());
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < vars.size(); ++c) {
            cols[c].push_back(static_cast<Dataset::Code>(vars[c].state_index(r.at(c))));
        }
    }
    return Dataset(vars, std::move(cols));
}

inline Dataset random_dataset(Rng& rng, const std::vector<Variable>& vars, std::size_t rows) {
    std::vector<std::vector<Dataset::Code>> cols(vars.size());
    for (std::size_t c = 0; c < vars.size(); ++c) {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(vars[c].cardinality()) - 1);
        for (std::size_t r = 0; r < rows; ++r) cols[c].push_back(static_cast<Dataset::Code>(pick(rng)));
    }
    return Dataset(vars, std::move(cols));
}

// Random DAG: arcs only go forward along a random permutation.
inline DagStructure random_dag(Rng& rng, const std::vector<std::string>& names, double p,
                               std::size_t max_parents = 64) {
    std::vector<std::string> order = names;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    DagStructure g(names);
    for (std::size_t j = 0; j < order.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (g.parents(order[j]).size() >= max_parents) break;
            if (coin(rng)) g.add_arc(order[i], order[j]);
        }
    }
    return g;
}

// CPT rows drawn so that one state dominates with probability `peak` on
// average; peak near 1 gives strong dependencies.
inline Network random_network(Rng& rng, const std::vector<Variable>& vars, const DagStructure& g,
                              double peak = 0.85) {
    std::map<std::string, Cpt> cpts;
    std::map<std::string, std::size_t> card;
    for (const auto& v : vars) card[v.name] = v.cardinality();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& v : vars) {
        Cpt c;
        for (const auto& p : g.parents(v.name)) {
            c.parents.push_back(p);
            c.parent_cardinalities.push_back(card[p]);
        }
        c.child_cardinality = v.cardinality();
        std::size_t configs = 1;
        for (auto k : c.parent_cardinalities) configs *= k;
        std::uniform_int_distribution<std::size_t> pick(0, v.cardinality() - 1);
        for (std::size_t cfg = 0; cfg < configs; ++cfg) {
            std::vector<double> row(v.cardinality());
            for (auto& x : row) x = unit(rng) + 0.05;
            const double rest = std::accumulate(row.begin(), row.end(), 0.0);
            for (auto& x : row) x = (1.0 - peak) * x / rest;
            row[pick(rng)] += peak;
            const double s = std::accumulate(row.begin(), row.end(), 0.0);
            for (auto& x : row) x /= s;
            c.probabilities.insert(c.probabilities.end(), row.begin(), row.end());
        }
        cpts[v.name] = std::move(c);
    }
    return Network(vars, g, std::move(cpts));
}

// N * (H(child, parents) - H(parents)) from a direct pass over the rows,
// keyed by label tuples so no code shares the library's indexing.
inline double brute_force_conditional_bits(const Dataset& d, const std::string& child,
                                           const std::vector<std::string>& parents) {
    std::map<std::vector<std::string>, double> joint, marg;
    const std::size_t n = d.row_count();
    std::vector<std::size_t> pcols;
    for (const auto& p : parents) pcols.push_back(d.column_index(p));
    const std::size_t ccol = d.column_index(child);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::string> key;
        for (auto c : pcols) key.push_back(d.value(r, c));
        marg[key] += 1.0;
        key.push_back(d.value(r, ccol));
        joint[key] += 1.0;
    }
    auto entropy = [n](const std::map<std::vector<std::string>, double>& m) {
        double h = 0.0;
        for (const auto& [k, c] : m) {
            const double p = c / static_cast<double>(n);
            h -= p * std::log2(p);
        }
        return h;
    };
    return static_cast<double>(n) * (entropy(joint) - entropy(marg));
}

// Binary network where each node equals the parity of its parents with
// probability `fidelity[node]` (roots: P(s1) = fidelity, default 0.5).
inline Network parity_network(const DagStructure& g, const std::map<std::string, double>& fidelity) {
    std::vector<Variable> vars;
    std::map<std::string, Cpt> cpts;
    for (const auto& name : g.nodes()) {
        vars.push_back(make_variable(name, 2));
        const auto it = fidelity.find(name);
        const NodeSet& ps = g.parents(name);
        const double q = it != fidelity.end() ? it->second : (ps.empty() ? 0.5 : 0.9);
        Cpt c;
        c.parents.assign(ps.begin(), ps.end());
        c.parent_cardinalities.assign(ps.size(), 2);
        c.child_cardinality = 2;
        const std::size_t configs = std::size_t{1} << ps.size();
        for (std::size_t cfg = 0; cfg < configs; ++cfg) {
            if (ps.empty()) {
                c.probabilities.push_back(1.0 - q);
                c.probabilities.push_back(q);
                continue;
            }
            const std::size_t parity = static_cast<std::size_t>(__builtin_popcountll(cfg)) % 2;
            c.probabilities.push_back(parity == 0 ? q : 1.0 - q);
            c.probabilities.push_back(parity == 0 ? 1.0 - q : q);
        }
        cpts[name] = std::move(c);
    }
    return Network(vars, g, std::move(cpts));
}

inline std::set<Arc> arc_set(const DagStructure& g) {
    const auto a = g.arcs();
    return {a.begin(), a.end()};
}

}  // namespace testsupport
