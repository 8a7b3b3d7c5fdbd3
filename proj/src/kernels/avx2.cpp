#include <immintrin.h>

#include "bnrefine/kernels.hpp"

namespace bnrefine::kernels::avx2 {

void joint_index(std::span<const std::span<const std::uint16_t>> columns,
                 std::span<const std::uint32_t> strides, std::span<std::uint32_t> out) {
    const std::size_t n = out.size();
    const std::size_t blocked = n - n % 8;
    for (std::size_t r = 0; r < blocked; r += 8) {
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const __m128i raw =
                _mm_loadu_si128(reinterpret_cast<const __m128i*>(columns[j].data() + r));
            const __m256i codes = _mm256_cvtepu16_epi32(raw);
            const __m256i stride = _mm256_set1_epi32(static_cast<int>(strides[j]));
            acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(codes, stride));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + r), acc);
    }
    for (std::size_t r = blocked; r < n; ++r) {
        std::uint32_t v = 0;
        for (std::size_t j = 0; j < columns.size(); ++j) v += columns[j][r] * strides[j];
        out[r] = v;
    }
}

double weighted_log_ratio_sum(std::span<const std::uint32_t> counts,
                              std::span<const std::uint32_t> marginals,
                              std::span<const double> log2_table) {
    const std::size_t n = counts.size();
    const std::size_t blocked = n - n % 4;
    const double* table = log2_table.data();
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m128i c = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts.data() + i));
        const __m128i m = _mm_loadu_si128(reinterpret_cast<const __m128i*>(marginals.data() + i));
        const __m256d log_m = _mm256_i32gather_pd(table, m, 8);
        const __m256d log_c = _mm256_i32gather_pd(table, c, 8);
        const __m256d cd = _mm256_cvtepi32_pd(c);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(cd, _mm256_sub_pd(log_m, log_c)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocked; i < n; ++i) {
        const double c = static_cast<double>(counts[i]);
        sum += c * (table[marginals[i]] - table[counts[i]]);
    }
    return sum;
}

}  // namespace bnrefine::kernels::avx2
