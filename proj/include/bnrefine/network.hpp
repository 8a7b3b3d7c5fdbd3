#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnrefine/graph.hpp"

namespace bnrefine {

struct Variable {
    std::string name;
    std::vector<std::string> states;

    std::size_t cardinality() const noexcept { return states.size(); }
    // Throws Errc::unknown_state.
    std::size_t state_index(const std::string& state) const;
    std::optional<std::size_t> find_state(const std::string& state) const;

    friend bool operator==(const Variable&, const Variable&) = default;
};

// Checks the name is non-empty and the states are >= 2 distinct labels.
void validate_variable(const Variable& v);

// Conditional distribution of one node. Parent configurations are indexed in
// mixed radix over `parents` (lexicographic order), first parent most
// significant; rows hold one probability per child state in declared order.
struct Cpt {
    std::vector<std::string> parents;
    std::vector<std::size_t> parent_cardinalities;
    std::size_t child_cardinality = 0;
    std::vector<double> probabilities;  // config_count() * child_cardinality

    std::size_t config_count() const noexcept;
    std::span<const double> row(std::size_t config) const;
};

// Variables, their DAG and (optionally) one CPT per node. Construction
// validates names, acyclicity and normalisation.
class Network {
public:
    Network() = default;
    Network(std::vector<Variable> variables, DagStructure structure,
            std::optional<std::map<std::string, Cpt>> cpts = std::nullopt);

    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const DagStructure& structure() const noexcept { return structure_; }
    const Variable& variable(const std::string& name) const;
    bool has_cpts() const noexcept { return cpts_.has_value(); }
    const Cpt& cpt(const std::string& node) const;
    const std::map<std::string, Cpt>& cpts() const;

    // Same variables, new structure, no CPTs.
    Network with_structure(DagStructure structure) const;
    // Variables restricted to `names` (in that order), induced structure, no CPTs.
    Network restricted_to(const std::vector<std::string>& names) const;

private:
    std::vector<Variable> variables_;
    DagStructure structure_;
    std::optional<std::map<std::string, Cpt>> cpts_;
};

inline constexpr double kNormalisationTolerance = 1e-9;

}  // namespace bnrefine
