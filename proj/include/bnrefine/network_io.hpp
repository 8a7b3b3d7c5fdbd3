#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bnrefine/network.hpp"

namespace bnrefine {

// Network JSON:
//   { "variables": [ {"name": ..., "states": [...]}, ... ],
//     "arcs": [ [parent, child], ... ],
//     "cpts": { node: [ {"parent_config": {parent: state}, "distribution": {state: p}} ] } }
// `cpts` is optional. Output arcs are sorted lexicographically and object
// keys are sorted, so serialisation is byte-stable.
Network network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const Network& net);

Network read_network(std::istream& in);
Network read_network_file(const std::filesystem::path& path);
std::string write_network(const Network& net);

}  // namespace bnrefine
