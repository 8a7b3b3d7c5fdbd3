#include "bnrefine/kernels.hpp"

namespace bnrefine::kernels::scalar {

void joint_index(std::span<const std::span<const std::uint16_t>> columns,
                 std::span<const std::uint32_t> strides, std::span<std::uint32_t> out) {
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = 0;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto col = columns[j];
        const std::uint32_t stride = strides[j];
        for (std::size_t r = 0; r < out.size(); ++r) out[r] += col[r] * stride;
    }
}

double weighted_log_ratio_sum(std::span<const std::uint32_t> counts,
                              std::span<const std::uint32_t> marginals,
                              std::span<const double> log2_table) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = counts.size();
    const std::size_t blocked = n - n % 4;
    for (std::size_t i = 0; i < blocked; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double c = static_cast<double>(counts[i + k]);
            lane[k] += c * (log2_table[marginals[i + k]] - log2_table[counts[i + k]]);
        }
    }
    double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocked; i < n; ++i) {
        const double c = static_cast<double>(counts[i]);
        sum += c * (log2_table[marginals[i]] - log2_table[counts[i]]);
    }
    return sum;
}

}  // namespace bnrefine::kernels::scalar
