#include "bnrefine/experiment.hpp"

#include <set>

#include "bnrefine/error.hpp"
#include "bnrefine/report.hpp"
#include "bnrefine/sampler.hpp"

namespace bnrefine {

ExperimentOutcome run_experiment(const Network& truth, const Network& existent,
                                 const ExperimentSpec& spec) {
    if (truth.variables() != existent.variables()) {
        throw Error(Errc::node_mismatch, "truth and existent networks must declare the same variables");
    }
    if (spec.observed.empty()) throw Error(Errc::invalid_argument, "no observed variables given");
    std::set<std::string> seen;
    for (const auto& o : spec.observed) {
        truth.variable(o);
        if (!seen.insert(o).second) throw Error(Errc::invalid_argument, "observed variable '" + o + "' repeated");
    }

    ExperimentOutcome out;
    const Dataset full = forward_sample(truth, {spec.n_samples, spec.seed});
    out.data = project(full, spec.observed);
    const DagStructure& h_n = existent.structure();
    out.learned = learn_partial(out.data, h_n, spec.learn);
    out.plan = refine(h_n, out.learned.structure, out.data, spec.learn);
    out.refined = out.plan.result;

    for (const auto& o : spec.observed) {
        if (out.refined.parents(o) != truth.structure().parents(o)) out.observed_mismatches.push_back(o);
    }
    out.existent_vs_truth = structural_diff(truth.structure(), h_n);
    out.refined_vs_truth = structural_diff(truth.structure(), out.refined);
    return out;
}

nlohmann::json to_json(const ExperimentOutcome& outcome, const ExperimentSpec& spec,
                       const DagStructure& existent) {
    auto edits = [](const StructuralDiff& d) {
        return nlohmann::json{{"reversed", d.reversed.size()},
                              {"additional", d.additional.size()},
                              {"missing", d.missing.size()}};
    };
    nlohmann::json learned_arcs = nlohmann::json::array();
    for (const auto& a : outcome.learned.structure.arcs()) learned_arcs.push_back({a.from, a.to});
    return {
        {"format_version", kReportFormatVersion},
        {"kind", "experiment"},
        {"observed", spec.observed},
        {"n_samples", spec.n_samples},
        {"seed", spec.seed},
        {"bits_per_parameter", spec.learn.scorer.bits_per_parameter},
        {"learned_arcs", std::move(learned_arcs)},
        {"learned_total_bits", outcome.learned.score.total},
        {"learn_converged", outcome.learned.converged},
        {"refine", to_json(outcome.plan, existent)},
        {"existent_vs_truth", edits(outcome.existent_vs_truth)},
        {"refined_vs_truth", edits(outcome.refined_vs_truth)},
        {"observed_mismatches", outcome.observed_mismatches},
        {"matches_truth_on_observed", outcome.matches_truth_on_observed()},
        {"matches_truth", outcome.refined_vs_truth.arc_edit_count() == 0},
    };
}

}  // namespace bnrefine
