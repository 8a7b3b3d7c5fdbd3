#include "bnrefine/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bnrefine/error.hpp"

namespace bnrefine {

std::optional<std::size_t> Variable::find_state(const std::string& state) const {
    auto it = std::find(states.begin(), states.end(), state);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

std::size_t Variable::state_index(const std::string& state) const {
    if (auto idx = find_state(state)) return *idx;
    throw Error(Errc::unknown_state, "'" + state + "' is not a state of variable '" + name + "'");
}

void validate_variable(const Variable& v) {
    if (v.name.empty()) throw Error(Errc::invalid_variable, "variable with empty name");
    if (v.states.size() < 2) {
        throw Error(Errc::invalid_variable, "variable '" + v.name + "' needs at least 2 states");
    }
    std::set<std::string> seen;
    for (const auto& s : v.states) {
        if (s.empty()) {
            throw Error(Errc::invalid_variable, "variable '" + v.name + "' has an empty state label");
        }
        if (!seen.insert(s).second) {
            throw Error(Errc::invalid_variable,
                        "variable '" + v.name + "' repeats state '" + s + "'");
        }
    }
}

std::size_t Cpt::config_count() const noexcept {
    std::size_t n = 1;
    for (auto c : parent_cardinalities) n *= c;
    return n;
}

std::span<const double> Cpt::row(std::size_t config) const {
    return std::span<const double>(probabilities).subspan(config * child_cardinality,
                                                          child_cardinality);
}

Network::Network(std::vector<Variable> variables, DagStructure structure,
                 std::optional<std::map<std::string, Cpt>> cpts)
    : variables_(std::move(variables)), structure_(std::move(structure)), cpts_(std::move(cpts)) {
    std::vector<std::string> names;
    for (const auto& v : variables_) {
        validate_variable(v);
        names.push_back(v.name);
    }
    if (names != structure_.nodes()) {
        throw Error(Errc::node_mismatch, "network variables and structure nodes differ");
    }
    topological_order(structure_);  // throws CycleError

    if (!cpts_) return;
    for (const auto& v : variables_) {
        auto it = cpts_->find(v.name);
        if (it == cpts_->end()) {
            throw Error(Errc::missing_cpt, "no conditional table for node '" + v.name + "'");
        }
        const Cpt& cpt = it->second;
        const NodeSet& ps = structure_.parents(v.name);
        if (cpt.parents != std::vector<std::string>(ps.begin(), ps.end())) {
            throw Error(Errc::missing_cpt,
                        "conditional table of '" + v.name + "' does not match its parents");
        }
        for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
            if (cpt.parent_cardinalities.size() != cpt.parents.size() ||
                cpt.parent_cardinalities[i] != variable(cpt.parents[i]).cardinality()) {
                throw Error(Errc::missing_cpt,
                            "conditional table of '" + v.name + "' has wrong parent cardinalities");
            }
        }
        if (cpt.child_cardinality != v.cardinality() ||
            cpt.probabilities.size() != cpt.config_count() * v.cardinality()) {
            throw Error(Errc::missing_cpt, "conditional table of '" + v.name + "' has wrong size");
        }
        for (std::size_t c = 0; c < cpt.config_count(); ++c) {
            double sum = 0.0;
            for (double p : cpt.row(c)) {
                if (!(p >= 0.0) || p > 1.0 + kNormalisationTolerance) {
                    throw Error(Errc::cpt_not_normalized,
                                "conditional table of '" + v.name + "' has a probability outside [0,1]");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > kNormalisationTolerance) {
                throw Error(Errc::cpt_not_normalized,
                            "conditional table of '" + v.name + "' row " + std::to_string(c) +
                                " sums to " + std::to_string(sum));
            }
        }
    }
    if (cpts_->size() != variables_.size()) {
        throw Error(Errc::missing_cpt, "conditional tables given for unknown nodes");
    }
}

const Variable& Network::variable(const std::string& name) const {
    for (const auto& v : variables_) {
        if (v.name == name) return v;
    }
    throw Error(Errc::unknown_variable, "unknown variable '" + name + "'");
}

const Cpt& Network::cpt(const std::string& node) const {
    if (!cpts_) throw Error(Errc::missing_cpt, "network has no conditional tables");
    auto it = cpts_->find(node);
    if (it == cpts_->end()) throw Error(Errc::missing_cpt, "no conditional table for '" + node + "'");
    return it->second;
}

const std::map<std::string, Cpt>& Network::cpts() const {
    if (!cpts_) throw Error(Errc::missing_cpt, "network has no conditional tables");
    return *cpts_;
}

Network Network::with_structure(DagStructure structure) const {
    return Network(variables_, std::move(structure));
}

Network Network::restricted_to(const std::vector<std::string>& names) const {
    std::vector<Variable> vars;
    for (const auto& n : names) vars.push_back(variable(n));
    return Network(std::move(vars), structure_.restricted_to(names));
}

}  // namespace bnrefine
