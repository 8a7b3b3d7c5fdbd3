#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnrefine/dataset.hpp"
#include "bnrefine/learn.hpp"
#include "bnrefine/network.hpp"
#include "bnrefine/refine.hpp"

namespace bnrefine {

// Sample complete data from `truth`, project onto `observed`, learn a
// partial structure against `existent` and refine `existent` with it.
struct ExperimentSpec {
    std::vector<std::string> observed;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    LearnConfig learn;
};

struct ExperimentOutcome {
    Dataset data;  // projected
    LearnResult learned;
    RefinePlan plan;
    DagStructure refined;
    // Observed nodes whose parent set in the refined network differs from truth.
    std::vector<std::string> observed_mismatches;
    StructuralDiff existent_vs_truth;
    StructuralDiff refined_vs_truth;

    bool matches_truth_on_observed() const { return observed_mismatches.empty(); }
};

ExperimentOutcome run_experiment(const Network& truth, const Network& existent,
                                 const ExperimentSpec& spec);

nlohmann::json to_json(const ExperimentOutcome& outcome, const ExperimentSpec& spec,
                       const DagStructure& existent);

}  // namespace bnrefine
