#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bnrefine/graph.hpp"
#include "bnrefine/learn.hpp"
#include "bnrefine/refine.hpp"
#include "bnrefine/score.hpp"

namespace bnrefine {

// Version stamped into every JSON report as "format_version".
inline constexpr int kReportFormatVersion = 1;

nlohmann::json to_json(const ScoreBreakdown& score);
nlohmann::json to_json(const StructuralDiff& diff);
nlohmann::json to_json(const LearnResult& result);
nlohmann::json to_json(const RefinePlan& plan, const DagStructure& h_n);

std::string score_table(const ScoreBreakdown& score);
std::string diff_summary(const StructuralDiff& diff);
std::string plan_summary(const RefinePlan& plan, const DagStructure& h_n);

// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string dump_report(const nlohmann::json& j);

}  // namespace bnrefine
