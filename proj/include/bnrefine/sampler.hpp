#pragma once

#include <cstddef>
#include <cstdint>

#include "bnrefine/dataset.hpp"
#include "bnrefine/network.hpp"

namespace bnrefine {

struct SampleSpec {
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

// Ancestral sampling. The generator is std::mt19937_64 seeded with
// `spec.seed`; each draw takes one 64-bit output x and forms
// u = (x >> 11) * 2^-53 in [0, 1). Rows are produced one at a time, nodes in
// topological_order(); a node takes the first state (declared order) whose
// cumulative probability exceeds u. Output columns follow the network's
// declared variable order.
Dataset forward_sample(const Network& net, const SampleSpec& spec);

}  // namespace bnrefine
