#include <atomic>

#include "bnrefine/kernels.hpp"

namespace bnrefine::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(BNREFINE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Isa>& selected() noexcept {
    static std::atomic<Isa> isa{detected_isa()};
    return isa;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

Isa detected_isa() noexcept {
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() noexcept {
    return selected().load(std::memory_order_relaxed);
}

bool force_isa(Isa isa) noexcept {
    if (isa == Isa::avx2 && !cpu_has_avx2()) return false;
    selected().store(isa, std::memory_order_relaxed);
    return true;
}

void reset_isa() noexcept {
    selected().store(detected_isa(), std::memory_order_relaxed);
}

void joint_index(std::span<const std::span<const std::uint16_t>> columns,
                 std::span<const std::uint32_t> strides, std::span<std::uint32_t> out) {
#if defined(BNREFINE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::joint_index(columns, strides, out);
#endif
    scalar::joint_index(columns, strides, out);
}

double weighted_log_ratio_sum(std::span<const std::uint32_t> counts,
                              std::span<const std::uint32_t> marginals,
                              std::span<const double> log2_table) {
#if defined(BNREFINE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::weighted_log_ratio_sum(counts, marginals, log2_table);
#endif
    return scalar::weighted_log_ratio_sum(counts, marginals, log2_table);
}

void histogram(std::span<const std::uint32_t> idx, std::span<std::uint32_t> bins) {
    for (auto i : idx) ++bins[i];
}

}  // namespace bnrefine::kernels
