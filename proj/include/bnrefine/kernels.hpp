#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Inner loops of contingency counting and the conditional-entropy data term.
//
// Each kernel has a scalar reference and, on x86-64, an AVX2 variant chosen at
// runtime. Variants are bit-identical: integer kernels trivially, and the
// floating-point reduction uses the same four-lane striped accumulation order
// in both (lane k sums elements i with i % 4 == k over the full blocks, lanes
// are combined as (l0 + l1) + (l2 + l3), then the tail is added in order).
namespace bnrefine::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa) noexcept;

// Best variant the running CPU supports.
Isa detected_isa() noexcept;
// Variant currently used by the dispatching entry points.
Isa active_isa() noexcept;
// Pin the dispatching entry points to `isa` (tests, benchmarks). Returns false
// and leaves the selection unchanged if the CPU or build lacks it.
bool force_isa(Isa isa) noexcept;
void reset_isa() noexcept;

// out[r] = sum_j columns[j][r] * strides[j]; every column has out.size() rows.
void joint_index(std::span<const std::span<const std::uint16_t>> columns,
                 std::span<const std::uint32_t> strides, std::span<std::uint32_t> out);

// sum_i counts[i] * (log2_table[marginals[i]] - log2_table[counts[i]]).
// log2_table[0] must be finite (0 by convention); every count and marginal
// indexes the table.
double weighted_log_ratio_sum(std::span<const std::uint32_t> counts,
                              std::span<const std::uint32_t> marginals,
                              std::span<const double> log2_table);

// bins[idx[r]] += 1 for every r. Scatter-bound, so there is only one variant.
void histogram(std::span<const std::uint32_t> idx, std::span<std::uint32_t> bins);

namespace scalar {
void joint_index(std::span<const std::span<const std::uint16_t>> columns,
                 std::span<const std::uint32_t> strides, std::span<std::uint32_t> out);
double weighted_log_ratio_sum(std::span<const std::uint32_t> counts,
                              std::span<const std::uint32_t> marginals,
                              std::span<const double> log2_table);
}  // namespace scalar

#if defined(BNREFINE_HAVE_AVX2)
namespace avx2 {
void joint_index(std::span<const std::span<const std::uint16_t>> columns,
                 std::span<const std::uint32_t> strides, std::span<std::uint32_t> out);
double weighted_log_ratio_sum(std::span<const std::uint32_t> counts,
                              std::span<const std::uint32_t> marginals,
                              std::span<const double> log2_table);
}  // namespace avx2
#endif

}  // namespace bnrefine::kernels
