#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "bnrefine/dataset.hpp"
#include "bnrefine/kernels.hpp"
#include "support.hpp"

using namespace bnrefine;
namespace k = bnrefine::kernels;

namespace {

struct IsaGuard {
    ~IsaGuard() { k::reset_isa(); }
};

bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

std::vector<double> log2_table(std::size_t n) {
    std::vector<double> t(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) t[i] = std::log2(static_cast<double>(i));
    return t;
}

}  // namespace

TEST_CASE("scalar joint_index matches a direct mixed-radix computation") {
    std::mt19937_64 rng(1);
    const std::vector<std::uint32_t> cards{3, 2, 5};
    std::vector<std::vector<std::uint16_t>> cols(3, std::vector<std::uint16_t>(37));
    for (std::size_t c = 0; c < 3; ++c) {
        for (auto& v : cols[c]) v = static_cast<std::uint16_t>(rng() % cards[c]);
    }
    const std::vector<std::uint32_t> strides{1, 3, 6};
    std::vector<std::span<const std::uint16_t>> spans(cols.begin(), cols.end());
    std::vector<std::uint32_t> out(37);
    k::scalar::joint_index(spans, strides, out);
    for (std::size_t r = 0; r < 37; ++r) {
        CHECK(out[r] == cols[0][r] + 3u * cols[1][r] + 6u * cols[2][r]);
    }
}

TEST_CASE("histogram") {
    std::vector<std::uint32_t> idx{0, 2, 2, 3, 0, 2};
    std::vector<std::uint32_t> bins(4, 0);
    k::histogram(idx, bins);
    CHECK(bins == std::vector<std::uint32_t>{2, 0, 3, 1});
}

TEST_CASE("weighted_log_ratio_sum scalar value") {
    // counts {3, 1} against marginal 4: 3*(2 - log2 3) + 1*(2 - 0)
    const std::vector<std::uint32_t> counts{3, 1};
    const std::vector<std::uint32_t> margs{4, 4};
    const auto table = log2_table(4);
    CHECK(k::scalar::weighted_log_ratio_sum(counts, margs, table) ==
          doctest::Approx(3 * (2 - std::log2(3.0)) + 2.0).epsilon(1e-14));
}

#if defined(BNREFINE_HAVE_AVX2)
TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
    if (k::detected_isa() != k::Isa::avx2) {
        MESSAGE("CPU lacks AVX2; vector variants not exercised");
        return;
    }
    std::mt19937_64 rng(42);
    for (std::size_t len : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 1023u, 4099u}) {
        CAPTURE(len);
        for (std::size_t ncols : {0u, 1u, 2u, 3u, 5u}) {
            std::vector<std::vector<std::uint16_t>> cols(ncols, std::vector<std::uint16_t>(len));
            std::vector<std::uint32_t> strides;
            std::uint32_t stride = 1;
            for (std::size_t c = 0; c < ncols; ++c) {
                const std::uint32_t card = 2 + static_cast<std::uint32_t>(rng() % 9);
                for (auto& v : cols[c]) v = static_cast<std::uint16_t>(rng() % card);
                strides.push_back(stride);
                stride *= card;
            }
            std::vector<std::span<const std::uint16_t>> spans(cols.begin(), cols.end());
            std::vector<std::uint32_t> a(len, 7), b(len, 9);
            k::scalar::joint_index(spans, strides, a);
            k::avx2::joint_index(spans, strides, b);
            CHECK(a == b);
        }

        // Large codes and strides exercise the full 32-bit product range.
        std::vector<std::uint16_t> big(len);
        for (auto& v : big) v = static_cast<std::uint16_t>(rng() % 65535);
        std::vector<std::span<const std::uint16_t>> one{big};
        const std::vector<std::uint32_t> wide{65536};
        std::vector<std::uint32_t> a(len), b(len);
        k::scalar::joint_index(one, wide, a);
        k::avx2::joint_index(one, wide, b);
        CHECK(a == b);

        const std::size_t total = 5000;
        const auto table = log2_table(total);
        std::vector<std::uint32_t> counts(len), margs(len);
        for (std::size_t i = 0; i < len; ++i) {
            margs[i] = 1 + static_cast<std::uint32_t>(rng() % total);
            counts[i] = (rng() % 4 == 0) ? 0 : static_cast<std::uint32_t>(rng() % (margs[i] + 1));
        }
        const double s = k::scalar::weighted_log_ratio_sum(counts, margs, table);
        const double v = k::avx2::weighted_log_ratio_sum(counts, margs, table);
        CHECK(same_bits(s, v));
    }
}

TEST_CASE("dispatch switches variants and data_dl agrees exactly") {
    IsaGuard guard;
    if (k::detected_isa() != k::Isa::avx2) return;
    testsupport::Rng rng(3);
    const auto vars = testsupport::make_variables({"A", "B", "C", "D"}, {3, 4, 2, 5});
    for (int trial = 0; trial < 20; ++trial) {
        const Dataset d = testsupport::random_dataset(rng, vars, 1 + rng() % 3000);
        REQUIRE(k::force_isa(k::Isa::scalar));
        CHECK(k::active_isa() == k::Isa::scalar);
        const auto ts = count(d, "C", {"A", "D", "B"});
        const double bs = data_dl(ts);
        REQUIRE(k::force_isa(k::Isa::avx2));
        CHECK(k::active_isa() == k::Isa::avx2);
        const auto tv = count(d, "C", {"A", "D", "B"});
        const double bv = data_dl(tv);
        CHECK(ts.counts == tv.counts);
        CHECK(same_bits(bs, bv));
    }
}
#endif

TEST_CASE("forcing the scalar variant always succeeds") {
    IsaGuard guard;
    CHECK(k::force_isa(k::Isa::scalar));
    CHECK(k::active_isa() == k::Isa::scalar);
    k::reset_isa();
    CHECK(k::active_isa() == k::detected_isa());
}
