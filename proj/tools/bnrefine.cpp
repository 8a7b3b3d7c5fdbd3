// bnrefine: refine a Bayesian network structure from partially observed data.
//
// Exit status: 0 success, 1 usage error, 2 data or validation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bnrefine/dataset.hpp"
#include "bnrefine/error.hpp"
#include "bnrefine/experiment.hpp"
#include "bnrefine/graph.hpp"
#include "bnrefine/learn.hpp"
#include "bnrefine/network_io.hpp"
#include "bnrefine/refine.hpp"
#include "bnrefine/report.hpp"
#include "bnrefine/sampler.hpp"
#include "bnrefine/score.hpp"

namespace fs = std::filesystem;
using namespace bnrefine;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_file_atomic(path, content);
    }
}

void add_learn_flags(CLI::App* cmd, LearnConfig& cfg) {
    cmd->add_option("--bits-per-param", cfg.scorer.bits_per_parameter, "Bits per CPT parameter")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-parents", cfg.max_parents, "Parent cap for the learner")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-expansions", cfg.max_expansions, "Search budget")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--seed-from-existent", cfg.seed_from_existent,
                  "Start the learner from the existent structure restricted to the data");
}

DagStructure structure_over_columns(const Network& net, const Dataset& d) {
    const auto cols = d.names();
    const auto& nodes = net.structure().nodes();
    if (std::set<std::string>(nodes.begin(), nodes.end()) != std::set<std::string>(cols.begin(), cols.end())) {
        throw Error(Errc::node_mismatch, "partial network variables must equal the dataset columns");
    }
    return net.structure().restricted_to(cols);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refine a Bayesian network structure from partially observed data (MDL)"};
    app.require_subcommand(1);

    // sample
    std::string net_path, data_path, out_path, json_path;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::string project_list;
    auto* sample = app.add_subcommand("sample", "Forward-sample a dataset from a network with CPTs");
    sample->add_option("--net", net_path, "Network JSON with CPTs")->required();
    sample->add_option("--n", n_samples, "Number of rows")->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Generator seed (mt19937_64)");
    sample->add_option("--project", project_list, "Comma-separated columns to keep");
    sample->add_option("--out", out_path, "Output CSV (default stdout)");

    // learn
    LearnConfig learn_cfg;
    auto* learn = app.add_subcommand("learn", "Learn a partial structure over the data columns");
    learn->add_option("--net", net_path, "Existent network JSON")->required();
    learn->add_option("--data", data_path, "CSV over a subset of the variables")->required();
    learn->add_option("--out", out_path, "Learned partial network JSON (default stdout)");
    learn->add_option("--json", json_path, "Score breakdown JSON");
    add_learn_flags(learn, learn_cfg);

    // score
    std::string structure_path;
    auto* score = app.add_subcommand("score", "Description length of a partial structure");
    score->add_option("--net", net_path, "Existent network JSON")->required();
    score->add_option("--data", data_path, "CSV over a subset of the variables")->required();
    score->add_option("--structure", structure_path, "Partial network JSON over the data columns")
        ->required();
    score->add_option("--json", json_path, "Score breakdown JSON");
    score->add_option("--bits-per-param", learn_cfg.scorer.bits_per_parameter, "Bits per CPT parameter")
        ->check(CLI::PositiveNumber);

    // diff
    std::string diff_existent, diff_partial;
    auto* diff = app.add_subcommand("diff", "Arc edits recovering the first network from the second");
    diff->add_option("existent", diff_existent, "Existent network JSON")->required();
    diff->add_option("partial", diff_partial, "Partial or candidate network JSON")->required();
    diff->add_option("--json", json_path, "Diff report JSON");

    // refine
    std::string partial_path;
    auto* refine_cmd = app.add_subcommand("refine", "Refine the existent network with new data");
    refine_cmd->add_option("--net", net_path, "Existent network JSON")->required();
    refine_cmd->add_option("--data", data_path, "CSV over a subset of the variables")->required();
    refine_cmd->add_option("--partial", partial_path, "Precomputed partial network JSON");
    refine_cmd->add_option("--out", out_path, "Refined network JSON (default stdout)");
    refine_cmd->add_option("--json", json_path, "Refinement plan JSON");
    add_learn_flags(refine_cmd, learn_cfg);

    // experiment
    std::string truth_path, existent_path, observed_list, spec_path;
    auto* experiment = app.add_subcommand("experiment", "Sample, project, learn and refine; compare to truth");
    experiment->add_option("--spec", spec_path, "Experiment JSON (truth, existent, observed, n_samples, seed)");
    experiment->add_option("--truth", truth_path, "Ground-truth network JSON with CPTs");
    experiment->add_option("--existent", existent_path, "Existent network JSON");
    experiment->add_option("--observed", observed_list, "Comma-separated observed variables");
    experiment->add_option("--n", n_samples, "Number of sampled rows")->check(CLI::PositiveNumber);
    experiment->add_option("--seed", seed, "Generator seed");
    experiment->add_option("--out", out_path, "Refined network JSON");
    experiment->add_option("--json", json_path, "Experiment report JSON");
    add_learn_flags(experiment, learn_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sample) {
            const Network net = read_network_file(net_path);
            Dataset data = forward_sample(net, {n_samples, seed});
            if (!project_list.empty()) data = project(data, split_list(project_list));
            std::ostringstream csv;
            write_csv(csv, data);
            emit(out_path, csv.str());
        } else if (*learn) {
            const Network h_n = read_network_file(net_path);
            const Dataset data = load_dataset_file(data_path, h_n.variables());
            const LearnResult result = learn_partial(data, h_n.structure(), learn_cfg);
            emit(out_path, write_network(Network(data.variables(), result.structure)));
            if (!json_path.empty()) write_file_atomic(json_path, dump_report(to_json(result)));
            if (!out_path.empty()) {
                std::cout << score_table(result.score) << "expansions: " << result.expansions_used
                          << (result.converged ? " (converged)" : " (budget exhausted)") << '\n';
            }
        } else if (*score) {
            const Network h_n = read_network_file(net_path);
            const Dataset data = load_dataset_file(data_path, h_n.variables());
            const Network h_p = read_network_file(structure_path);
            const ScoreBreakdown b =
                total_dl(structure_over_columns(h_p, data), data, h_n.structure(), learn_cfg.scorer);
            std::cout << score_table(b);
            if (!json_path.empty()) write_file_atomic(json_path, dump_report(to_json(b)));
        } else if (*diff) {
            const Network h_n = read_network_file(diff_existent);
            const Network h_p = read_network_file(diff_partial);
            const StructuralDiff d = structural_diff(h_n.structure(), h_p.structure());
            std::cout << diff_summary(d);
            if (!json_path.empty()) write_file_atomic(json_path, dump_report(to_json(d)));
        } else if (*refine_cmd) {
            const Network h_n = read_network_file(net_path);
            const Dataset data = load_dataset_file(data_path, h_n.variables());
            DagStructure h_p;
            if (!partial_path.empty()) {
                h_p = structure_over_columns(read_network_file(partial_path), data);
            } else {
                h_p = learn_partial(data, h_n.structure(), learn_cfg).structure;
            }
            const RefinePlan plan = refine(h_n.structure(), h_p, data, learn_cfg);
            emit(out_path, write_network(h_n.with_structure(plan.result)));
            if (!json_path.empty()) write_file_atomic(json_path, dump_report(to_json(plan, h_n.structure())));
            if (!out_path.empty()) std::cout << plan_summary(plan, h_n.structure());
        } else if (*experiment) {
            ExperimentSpec spec;
            spec.learn = learn_cfg;
            if (!spec_path.empty()) {
                std::ifstream in(spec_path);
                if (!in) throw Error(Errc::io_error, "cannot open '" + spec_path + "'");
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw Error(Errc::parse_error, spec_path + ": " + e.what());
                }
                const fs::path base = fs::path(spec_path).parent_path();
                auto rel = [&](const std::string& p) { return (base / p).string(); };
                if (truth_path.empty() && j.contains("truth")) truth_path = rel(j["truth"].get<std::string>());
                if (existent_path.empty() && j.contains("existent")) {
                    existent_path = rel(j["existent"].get<std::string>());
                }
                if (observed_list.empty() && j.contains("observed")) {
                    spec.observed = j["observed"].get<std::vector<std::string>>();
                }
                if (experiment->count("--n") == 0 && j.contains("n_samples")) {
                    n_samples = j["n_samples"].get<std::size_t>();
                }
                if (experiment->count("--seed") == 0 && j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
                if (experiment->count("--bits-per-param") == 0 && j.contains("bits_per_parameter")) {
                    spec.learn.scorer.bits_per_parameter = j["bits_per_parameter"].get<double>();
                }
            }
            if (!observed_list.empty()) spec.observed = split_list(observed_list);
            if (truth_path.empty() || existent_path.empty() || spec.observed.empty() || n_samples == 0) {
                std::cerr << "experiment needs --truth, --existent, --observed and --n (or --spec)\n";
                return kExitUsage;
            }
            spec.n_samples = n_samples;
            spec.seed = seed;
            const Network truth = read_network_file(truth_path);
            const Network existent = read_network_file(existent_path);
            const ExperimentOutcome outcome = run_experiment(truth, existent, spec);
            if (!out_path.empty()) write_file_atomic(out_path, write_network(existent.with_structure(outcome.refined)));
            const nlohmann::json report = to_json(outcome, spec, existent.structure());
            if (!json_path.empty()) write_file_atomic(json_path, dump_report(report));
            std::cout << plan_summary(outcome.plan, existent.structure());
            std::cout << "refined matches truth on observed nodes: "
                      << (outcome.matches_truth_on_observed() ? "yes" : "no") << '\n';
            for (const auto& m : outcome.observed_mismatches) std::cout << "  mismatch at " << m << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "bnrefine: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bnrefine: parse-error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
