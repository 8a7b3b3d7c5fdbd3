#include "bnrefine/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "bnrefine/error.hpp"

namespace bnrefine {

using nlohmann::json;

namespace {

json arcs_json(const std::vector<Arc>& arcs) {
    json out = json::array();
    for (const auto& a : arcs) out.push_back({a.from, a.to});
    return out;
}

std::string fixed(double v, int decimals = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width, bool right) {
    if (s.size() >= width) return s;
    const std::string fill(width - s.size(), ' ');
    return right ? fill + s : s + fill;
}

std::string arc_text(const Arc& a) {
    return a.from + " -> " + a.to;
}

}  // namespace

json to_json(const ScoreBreakdown& score) {
    json nodes = json::array();
    for (const auto& ns : score.nodes) {
        nodes.push_back({
            {"node", ns.node},
            {"parents", ns.parents},
            {"comparable", ns.comparable},
            {"structure_bits", ns.structure_bits},
            {"data_bits", ns.data_bits},
            {"deviation_bits", ns.deviation_bits},
            {"reversed", ns.counts.reversed},
            {"additional", ns.counts.additional},
            {"missing", ns.counts.missing},
            {"total_bits", ns.total()},
        });
    }
    return {
        {"format_version", kReportFormatVersion},
        {"kind", "score"},
        {"domain_size", score.domain_size},
        {"bits_per_parameter", score.bits_per_parameter},
        {"nodes", std::move(nodes)},
        {"structure_bits", score.structure_bits},
        {"data_bits", score.data_bits},
        {"deviation_bits", score.deviation_bits},
        {"total_bits", score.total},
        {"mu_omitted", ScoreBreakdown::mu_omitted},
        {"note", "constant term for nodes absent from the data is omitted"},
    };
}

json to_json(const StructuralDiff& diff) {
    json per_node = json::object();
    for (const auto& [node, c] : diff.per_node) {
        per_node[node] = {{"reversed", c.reversed}, {"additional", c.additional}, {"missing", c.missing}};
    }
    return {
        {"format_version", kReportFormatVersion},
        {"kind", "diff"},
        {"domain_size", diff.domain_size},
        {"reversed_arcs", arcs_json(diff.reversed)},
        {"additional_arcs", arcs_json(diff.additional)},
        {"missing_arcs", arcs_json(diff.missing)},
        {"per_node", std::move(per_node)},
        {"arc_edits", diff.arc_edit_count()},
        {"description_length_bits", diff.description_length()},
        {"localized_description_length_bits", diff.localized_description_length()},
    };
}

json to_json(const LearnResult& result) {
    json j = to_json(result.score);
    j["kind"] = "learn";
    j["arcs"] = arcs_json(result.structure.arcs());
    j["expansions_used"] = result.expansions_used;
    j["converged"] = result.converged;
    return j;
}

json to_json(const RefinePlan& plan, const DagStructure& h_n) {
    json units = json::array();
    for (std::size_t i = 0; i < plan.units.size(); ++i) {
        const auto& u = plan.units[i];
        json parents = json::object();
        for (const auto& [node, ps] : u.new_parents) parents[node] = ps;
        units.push_back({
            {"rank", i},
            {"members", u.members},
            {"new_parents", std::move(parents)},
            {"existent_bits", u.existent_bits},
            {"partial_bits", u.partial_bits},
            {"benefit_bits", u.benefit},
        });
    }
    const StructuralDiff change = structural_diff(plan.result, h_n);
    std::vector<Arc> added = change.additional;   // in result, not in h_n
    std::vector<Arc> removed = change.missing;    // in h_n, not in result
    std::vector<Arc> reversed = change.reversed;  // as oriented in result
    return {
        {"format_version", kReportFormatVersion},
        {"kind", "refine"},
        {"marked_nodes", plan.marked.nodes},
        {"units", std::move(units)},
        {"applied", plan.applied},
        {"skipped_for_cycle", plan.skipped_for_cycle},
        {"not_beneficial", plan.not_beneficial},
        {"unreached", plan.unreached},
        {"existent_bits", plan.existent_bits},
        {"score_delta_bits", plan.score_delta},
        {"refined_bits", plan.existent_bits - plan.score_delta},
        {"expansions_used", plan.expansions_used},
        {"converged", plan.converged},
        {"arcs", arcs_json(plan.result.arcs())},
        {"arcs_added", arcs_json(added)},
        {"arcs_removed", arcs_json(removed)},
        {"arcs_reversed", arcs_json(reversed)},
    };
}

std::string score_table(const ScoreBreakdown& score) {
    std::size_t name_w = 4;
    for (const auto& ns : score.nodes) name_w = std::max(name_w, ns.node.size());
    std::ostringstream out;
    const std::size_t w = 14;
    out << pad("node", name_w, false) << "  " << pad("structure", w, true) << pad("data", w, true)
        << pad("deviation", w, true) << pad("total", w, true) << "  r a m\n";
    for (const auto& ns : score.nodes) {
        out << pad(ns.node, name_w, false) << "  ";
        if (ns.comparable) {
            out << pad(fixed(ns.structure_bits), w, true) << pad(fixed(ns.data_bits), w, true);
        } else {
            out << pad("-", w, true) << pad("-", w, true);
        }
        out << pad(fixed(ns.deviation_bits), w, true) << pad(fixed(ns.total()), w, true) << "  "
            << ns.counts.reversed << ' ' << ns.counts.additional << ' ' << ns.counts.missing << '\n';
    }
    out << pad("total", name_w, false) << "  " << pad(fixed(score.structure_bits), w, true)
        << pad(fixed(score.data_bits), w, true) << pad(fixed(score.deviation_bits), w, true)
        << pad(fixed(score.total), w, true) << '\n';
    out << "(n = " << score.domain_size << ", " << fixed(score.bits_per_parameter, 2)
        << " bits/parameter; constant term omitted)\n";
    return out.str();
}

std::string diff_summary(const StructuralDiff& diff) {
    std::ostringstream out;
    auto list = [&](const char* title, const std::vector<Arc>& arcs) {
        out << title << " (" << arcs.size() << ")";
        if (arcs.empty()) {
            out << ": none\n";
            return;
        }
        out << ":\n";
        for (const auto& a : arcs) out << "  " << arc_text(a) << '\n';
    };
    list("reversed", diff.reversed);
    list("additional", diff.additional);
    list("missing", diff.missing);
    out << "description length: " << fixed(diff.description_length(), 6) << " bits (n = "
        << diff.domain_size << ")\n";
    return out.str();
}

std::string plan_summary(const RefinePlan& plan, const DagStructure& h_n) {
    std::ostringstream out;
    out << "marked nodes: " << plan.marked.nodes.size() << ", units: " << plan.units.size() << '\n';
    for (std::size_t i = 0; i < plan.units.size(); ++i) {
        const auto& u = plan.units[i];
        const bool applied = std::find(plan.applied.begin(), plan.applied.end(), i) != plan.applied.end();
        const bool cyclic = std::find(plan.skipped_for_cycle.begin(), plan.skipped_for_cycle.end(), i) !=
                            plan.skipped_for_cycle.end();
        out << "  [" << i << "] {";
        bool first = true;
        for (const auto& m : u.members) {
            out << (first ? "" : ", ") << m;
            first = false;
        }
        out << "} benefit " << fixed(u.benefit) << " bits"
            << (applied ? "  applied" : cyclic ? "  skipped (cycle)" : "") << '\n';
    }
    const StructuralDiff change = structural_diff(plan.result, h_n);
    for (const auto& a : change.additional) out << "  + " << arc_text(a) << '\n';
    for (const auto& a : change.missing) out << "  - " << arc_text(a) << '\n';
    for (const auto& a : change.reversed) out << "  ~ " << arc_text(a) << " (was reversed)\n";
    out << "description length: " << fixed(plan.existent_bits) << " -> "
        << fixed(plan.existent_bits - plan.score_delta) << " bits (saved " << fixed(plan.score_delta)
        << ")\n";
    return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io_error, "cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw Error(Errc::io_error, "failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(Errc::io_error, "cannot move output into place at '" + path.string() + "'");
    }
}

std::string dump_report(const json& j) {
    return j.dump(2) + "\n";
}

}  // namespace bnrefine
