#include "bnrefine/network_io.hpp"

#include <fstream>
#include <istream>
#include <set>

#include "bnrefine/error.hpp"

namespace bnrefine {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    throw Error(Errc::parse_error, "network JSON: " + what);
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) parse_fail(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) parse_fail(std::string(what) + " must be a string");
    return j.get<std::string>();
}

Cpt parse_cpt(const Variable& child, const std::vector<const Variable*>& parents, const json& entries) {
    if (!entries.is_array()) parse_fail("cpt of '" + child.name + "' must be a list");
    Cpt cpt;
    cpt.child_cardinality = child.cardinality();
    for (const auto* p : parents) {
        cpt.parents.push_back(p->name);
        cpt.parent_cardinalities.push_back(p->cardinality());
    }
    const std::size_t configs = cpt.config_count();
    cpt.probabilities.assign(configs * cpt.child_cardinality, 0.0);
    std::vector<bool> seen(configs, false);

    for (const auto& entry : entries) {
        const json& pc = field(entry, "parent_config");
        if (!pc.is_object() || pc.size() != parents.size()) {
            parse_fail("cpt of '" + child.name + "': parent_config must name exactly its parents");
        }
        std::size_t config = 0;
        for (const auto* p : parents) {
            if (!pc.contains(p->name)) {
                parse_fail("cpt of '" + child.name + "': parent_config lacks '" + p->name + "'");
            }
            config = config * p->cardinality() + p->state_index(as_string(pc.at(p->name), "state"));
        }
        if (seen[config]) parse_fail("cpt of '" + child.name + "' repeats a parent configuration");
        seen[config] = true;

        const json& dist = field(entry, "distribution");
        if (!dist.is_object()) parse_fail("cpt of '" + child.name + "': distribution must be an object");
        for (const auto& [state, prob] : dist.items()) {
            if (!prob.is_number()) parse_fail("cpt of '" + child.name + "': probability must be a number");
            cpt.probabilities[config * cpt.child_cardinality + child.state_index(state)] =
                prob.get<double>();
        }
    }
    for (std::size_t c = 0; c < configs; ++c) {
        if (!seen[c]) {
            throw Error(Errc::missing_cpt, "cpt of '" + child.name + "' lacks parent configuration " +
                                               std::to_string(c));
        }
    }
    return cpt;
}

}  // namespace

Network network_from_json(const json& j) {
    std::vector<Variable> variables;
    std::vector<std::string> names;
    const json& vars = field(j, "variables");
    if (!vars.is_array()) parse_fail("'variables' must be a list");
    for (const auto& v : vars) {
        Variable var;
        var.name = as_string(field(v, "name"), "variable name");
        const json& states = field(v, "states");
        if (!states.is_array()) parse_fail("states of '" + var.name + "' must be a list");
        for (const auto& s : states) var.states.push_back(as_string(s, "state"));
        names.push_back(var.name);
        variables.push_back(std::move(var));
    }

    DagStructure structure(names);
    if (j.contains("arcs")) {
        const json& arcs = j.at("arcs");
        if (!arcs.is_array()) parse_fail("'arcs' must be a list");
        for (const auto& a : arcs) {
            if (!a.is_array() || a.size() != 2) parse_fail("each arc must be a [parent, child] pair");
            structure.add_arc(as_string(a[0], "arc endpoint"), as_string(a[1], "arc endpoint"));
        }
    }

    std::optional<std::map<std::string, Cpt>> cpts;
    if (j.contains("cpts") && !j.at("cpts").is_null()) {
        const json& jc = j.at("cpts");
        if (!jc.is_object()) parse_fail("'cpts' must be an object keyed by node");
        cpts.emplace();
        for (const auto& [node, entries] : jc.items()) {
            const Variable* child = nullptr;
            for (const auto& v : variables) {
                if (v.name == node) child = &v;
            }
            if (!child) throw Error(Errc::unknown_node, "cpt given for unknown node '" + node + "'");
            std::vector<const Variable*> parents;
            for (const auto& p : structure.parents(node)) {
                for (const auto& v : variables) {
                    if (v.name == p) parents.push_back(&v);
                }
            }
            (*cpts)[node] = parse_cpt(*child, parents, entries);
        }
    }
    return Network(std::move(variables), std::move(structure), std::move(cpts));
}

json network_to_json(const Network& net) {
    json j;
    j["variables"] = json::array();
    for (const auto& v : net.variables()) {
        j["variables"].push_back({{"name", v.name}, {"states", v.states}});
    }
    j["arcs"] = json::array();
    for (const auto& a : net.structure().arcs()) j["arcs"].push_back({a.from, a.to});

    if (net.has_cpts()) {
        json cpts = json::object();
        for (const auto& v : net.variables()) {
            const Cpt& cpt = net.cpt(v.name);
            json entries = json::array();
            std::vector<const Variable*> parents;
            for (const auto& p : cpt.parents) parents.push_back(&net.variable(p));
            for (std::size_t c = 0; c < cpt.config_count(); ++c) {
                json pc = json::object();
                std::size_t rest = c;
                for (std::size_t k = parents.size(); k-- > 0;) {
                    const auto card = parents[k]->cardinality();
                    pc[parents[k]->name] = parents[k]->states[rest % card];
                    rest /= card;
                }
                json dist = json::object();
                auto row = cpt.row(c);
                for (std::size_t s = 0; s < v.cardinality(); ++s) dist[v.states[s]] = row[s];
                entries.push_back({{"parent_config", pc}, {"distribution", dist}});
            }
            cpts[v.name] = std::move(entries);
        }
        j["cpts"] = std::move(cpts);
    }
    return j;
}

Network read_network(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string("network JSON: ") + e.what());
    }
    return network_from_json(j);
}

Network read_network_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
    try {
        return read_network(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::string write_network(const Network& net) {
    return network_to_json(net).dump(2) + "\n";
}

}  // namespace bnrefine
