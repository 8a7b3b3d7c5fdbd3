#include "bnrefine/sampler.hpp"

#include <cmath>
#include <random>

#include "bnrefine/error.hpp"

namespace bnrefine {

namespace {

double unit_uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::size_t draw(std::span<const double> row, double u) {
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s] > 0.0) last_positive = s;
        cumulative += row[s];
        if (u < cumulative) return s;
    }
    // u landed in the rounding gap above the accumulated sum.
    return last_positive;
}

}  // namespace

Dataset forward_sample(const Network& net, const SampleSpec& spec) {
    if (spec.count == 0) throw Error(Errc::invalid_argument, "sample count must be at least 1");
    if (!net.has_cpts()) throw Error(Errc::missing_cpt, "sampling needs conditional tables on every node");
    const auto order = topological_order(net.structure());

    const auto& vars = net.variables();
    std::map<std::string, std::size_t> column_of;
    for (std::size_t j = 0; j < vars.size(); ++j) column_of[vars[j].name] = j;

    struct Step {
        std::size_t column;
        const Cpt* cpt;
        std::vector<std::size_t> parent_columns;
    };
    std::vector<Step> steps;
    for (const auto& node : order) {
        Step st{column_of.at(node), &net.cpt(node), {}};
        for (const auto& p : st.cpt->parents) st.parent_columns.push_back(column_of.at(p));
        for (std::size_t c = 0; c < st.cpt->config_count(); ++c) {
            double sum = 0.0;
            for (double p : st.cpt->row(c)) sum += p;
            if (std::abs(sum - 1.0) > kNormalisationTolerance) {
                throw Error(Errc::cpt_not_normalized,
                            "conditional table of '" + node + "' row " + std::to_string(c) + " is not normalised");
            }
        }
        steps.push_back(std::move(st));
    }

    std::mt19937_64 gen(spec.seed);
    std::vector<std::vector<Dataset::Code>> columns(vars.size(), std::vector<Dataset::Code>(spec.count));
    for (std::size_t r = 0; r < spec.count; ++r) {
        for (const auto& st : steps) {
            std::size_t config = 0;
            for (std::size_t k = 0; k < st.parent_columns.size(); ++k) {
                config = config * st.cpt->parent_cardinalities[k] + columns[st.parent_columns[k]][r];
            }
            const double u = unit_uniform(gen);
            columns[st.column][r] = static_cast<Dataset::Code>(draw(st.cpt->row(config), u));
        }
    }
    return Dataset(vars, std::move(columns));
}

}  // namespace bnrefine
