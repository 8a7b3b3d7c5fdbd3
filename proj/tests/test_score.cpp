#include <doctest.h>

#include <cmath>

#include "bnrefine/error.hpp"
#include "bnrefine/score.hpp"
#include "support.hpp"

using namespace bnrefine;

namespace {

// Ten rows of a binary child "C" (5 t, 5 f) and a parent "P" equal to C.
Dataset ten_rows() {
    const std::vector<Variable> vars{{"P", {"t", "f"}}, {"C", {"t", "f"}}};
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < 5; ++i) rows.push_back({"t", "t"});
    for (int i = 0; i < 5; ++i) rows.push_back({"f", "f"});
    return testsupport::dataset_from_rows(vars, rows);
}

ScorerConfig with_n(std::size_t n, double d = 10.0) {
    ScorerConfig cfg;
    cfg.domain_size = n;
    cfg.bits_per_parameter = d;
    return cfg;
}

// Independent restatement of the local score for oracle comparisons.
double oracle_node_dl(const Dataset& d, const DagStructure& h_n, const std::string& child,
                      const NodeSet& parents, double bits_per_param) {
    const double n = static_cast<double>(h_n.size());
    double params = bits_per_param * static_cast<double>(d.variables()[d.column_index(child)].cardinality() - 1);
    for (const auto& p : parents) params *= static_cast<double>(d.variables()[d.column_index(p)].cardinality());
    const double data = testsupport::brute_force_conditional_bits(d, child, {parents.begin(), parents.end()});
    // Deviation: h_n parents dropped, plus new parents with no h_n arc either way.
    std::size_t dev = 0;
    for (const auto& p : h_n.parents(child)) dev += parents.count(p) ? 0 : 1;
    for (const auto& p : parents) {
        if (!h_n.parents(child).count(p) && !h_n.parents(p).count(child)) ++dev;
    }
    return static_cast<double>(parents.size()) * std::log2(n) + params + data +
           static_cast<double>(dev) * 2.0 * std::log2(n);
}

}  // namespace

TEST_CASE("node_dl_old examples") {
    const Dataset d = ten_rows();
    CHECK(node_dl_old("C", {}, d, with_n(5)) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(node_dl_old("C", {"P"}, d, with_n(5)) == doctest::Approx(std::log2(5.0) + 20.0).epsilon(1e-12));
    CHECK(node_dl_old("C", {"P"}, d, with_n(5)) == doctest::Approx(22.322).epsilon(1e-4));

    const std::vector<Variable> vars{{"C", {"t", "f"}}};
    const auto same = testsupport::dataset_from_rows(vars, std::vector<std::vector<std::string>>(6, {"t"}));
    CHECK(node_dl_old("C", {}, same, with_n(5)) == 10.0);
}

TEST_CASE("deviation_penalty examples") {
    StructuralDiff diff;
    diff.domain_size = 37;
    diff.per_node["X"] = {};
    diff.per_node["Y"] = {1, 0, 0};
    diff.per_node["Z"] = {1, 1, 1};
    CHECK(deviation_penalty("X", diff, with_n(37)) == 0.0);
    CHECK(deviation_penalty("Y", diff, with_n(37)) == doctest::Approx(10.418).epsilon(1e-4));
    CHECK(deviation_penalty("Z", diff, with_n(2)) == 6.0);
    CHECK(deviation_penalty("absent", diff, with_n(37)) == 0.0);
}

TEST_CASE("node_dl examples") {
    const Dataset d = ten_rows();
    const ScorerConfig cfg = with_n(5);
    const std::vector<std::string> domain{"P", "C", "U", "V", "W"};

    const DagStructure agree(domain, {{"P", "C"}});
    CHECK(node_dl("C", {"P"}, d, agree, cfg) == node_dl_old("C", {"P"}, d, cfg));

    CHECK(node_dl("C", {}, d, agree, cfg) ==
          doctest::Approx(node_dl_old("C", {}, d, cfg) + 2 * std::log2(5.0)).epsilon(1e-12));

    const DagStructure none(domain, std::vector<Arc>{});
    CHECK(node_dl("C", {"P"}, d, none, cfg) ==
          doctest::Approx(node_dl_old("C", {"P"}, d, cfg) + 2 * std::log2(5.0)).epsilon(1e-12));

    // The reversed arc is charged at its existent destination (P), not here.
    const DagStructure rev(domain, {{"C", "P"}});
    CHECK(node_dl("C", {"P"}, d, rev, cfg) == node_dl_old("C", {"P"}, d, cfg));
    CHECK(node_dl("P", {}, d, rev, cfg) ==
          doctest::Approx(node_dl_old("P", {}, d, cfg) + 2 * std::log2(5.0)).epsilon(1e-12));
}

TEST_CASE("total_dl") {
    SUBCASE("single variable") {
        const std::vector<Variable> vars{{"C", {"t", "f"}}};
        const auto d = testsupport::dataset_from_rows(vars, {{"t"}, {"f"}, {"t"}});
        const DagStructure h({"C"});
        const auto b = total_dl(h, d, h, {});
        CHECK(b.total == node_dl("C", {}, d, h, {}));
        CHECK(b.nodes.size() == 1);
        CHECK(ScoreBreakdown::mu_omitted);
    }
    SUBCASE("breakdown matches the independent oracle on random instances") {
        testsupport::Rng rng(8);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 4 + rng() % 5;
            const auto names = testsupport::node_names(n);
            std::vector<std::size_t> cards;
            for (std::size_t i = 0; i < n; ++i) cards.push_back(2 + rng() % 3);
            const auto vars = testsupport::make_variables(names, cards);
            const auto h_n = testsupport::random_dag(rng, names, 0.3);
            std::vector<std::string> obs = names;
            std::shuffle(obs.begin(), obs.end(), rng);
            obs.resize(2 + rng() % (n - 1));
            std::vector<Variable> ovars;
            for (const auto& v : vars) {
                if (std::find(obs.begin(), obs.end(), v.name) != obs.end()) ovars.push_back(v);
            }
            const Dataset d = testsupport::random_dataset(rng, ovars, 20 + rng() % 100);
            const auto h_p = testsupport::random_dag(rng, d.names(), 0.4, 3);
            const double bpp = 1.0 + static_cast<double>(rng() % 20);
            ScorerConfig cfg;
            cfg.bits_per_parameter = bpp;
            const auto b = total_dl(h_p, d, h_n, cfg);
            double sum = 0.0, dev = 0.0;
            for (const auto& ns : b.nodes) {
                const double o = oracle_node_dl(d, h_n, ns.node, h_p.parents(ns.node), bpp);
                CHECK(std::abs(ns.total() - o) <= 1e-9 * std::max(1.0, o));
                CHECK(ns.structure_bits >= 0.0);
                CHECK(ns.data_bits >= 0.0);
                CHECK(ns.deviation_bits >= 0.0);
                CHECK(ns.total() == node_dl(ns.node, {h_p.parents(ns.node).begin(), h_p.parents(ns.node).end()},
                                            d, h_n, cfg));
                sum += ns.total();
                dev += ns.deviation_bits;
            }
            CHECK(b.total == sum);

            // Per-node deviation counts agree with the whole-graph diff.
            const auto diff = structural_diff(h_n, h_p);
            double from_diff = 0.0;
            for (const auto& ns : b.nodes) {
                CHECK(ns.counts == diff.per_node.at(ns.node));
                from_diff += static_cast<double>(diff.per_node.at(ns.node).total());
            }
            CHECK(std::abs(dev - from_diff * arc_code_length(n)) <= 1e-9 * std::max(1.0, dev));
        }
    }
    SUBCASE("locality: changing one family moves the total by that node's difference") {
        testsupport::Rng rng(31);
        const auto names = testsupport::node_names(5);
        const auto vars = testsupport::binary_variables(names);
        const auto h_n = testsupport::random_dag(rng, names, 0.4);
        const Dataset d = testsupport::random_dataset(rng, vars, 200);
        DagStructure a(names);
        a.add_arc(names[0], names[1]);
        DagStructure b = a;
        b.add_arc(names[2], names[4]);
        const auto sa = total_dl(a, d, h_n, {});
        const auto sb = total_dl(b, d, h_n, {});
        CHECK(sb.total - sa.total ==
              doctest::Approx(sb.node(names[4]).total() - sa.node(names[4]).total()).epsilon(1e-12));
        for (const auto& v : names) {
            if (v != names[4]) CHECK(sa.node(v).total() == sb.node(v).total());
        }
    }
    SUBCASE("errors") {
        const auto d = ten_rows();
        const DagStructure h_n({"P", "C"});
        const DagStructure wrong({"P"});
        CHECK_THROWS_AS(total_dl(wrong, d, h_n, {}), Error);
        ScorerConfig bad;
        bad.bits_per_parameter = 0.0;
        CHECK_THROWS_AS(total_dl(h_n, d, h_n, bad), Error);
    }
}

TEST_CASE("spurious arc on independent data") {
    testsupport::Rng rng(1234);
    const std::vector<std::string> names{"A", "B"};
    const auto vars = testsupport::binary_variables(names);
    const Dataset d = testsupport::random_dataset(rng, vars, 20000);
    const DagStructure h_n(names);
    const DagStructure empty(names);
    const DagStructure spurious(names, {{"A", "B"}});
    const auto s0 = total_dl(empty, d, h_n, {});
    const auto s1 = total_dl(spurious, d, h_n, {});
    const double n = 2.0;
    CHECK(s1.structure_bits - s0.structure_bits == doctest::Approx(std::log2(n) + 10.0));
    CHECK(s1.deviation_bits - s0.deviation_bits == doctest::Approx(2 * std::log2(n)));
    const double drop = s0.data_bits - s1.data_bits;
    CHECK(drop >= 0.0);
    CHECK(drop <= std::log2(n) + 10.0 + 2 * std::log2(n));
    CHECK(s1.total > s0.total);
}

TEST_CASE("network_dl scores comparable nodes and charges deviations everywhere") {
    const std::vector<std::string> domain{"A", "B", "C", "D"};
    // A->B->C, D->C ; observed A, B, C. C's existent parent D is unobserved.
    const DagStructure h_n(domain, {{"A", "B"}, {"B", "C"}, {"D", "C"}});
    const auto vars = testsupport::binary_variables({"A", "B", "C"});
    testsupport::Rng rng(4);
    const Dataset d = testsupport::random_dataset(rng, vars, 100);
    const auto base = network_dl(h_n, d, h_n, {});
    CHECK(base.deviation_bits == 0.0);
    CHECK(base.node("A").comparable);
    CHECK(base.node("B").comparable);
    CHECK_FALSE(base.node("C").comparable);
    CHECK(base.total == doctest::Approx(node_dl("A", {}, d, h_n, {}) + node_dl("B", {"A"}, d, h_n, {})));

    const DagStructure flipped(domain, {{"B", "A"}, {"B", "C"}, {"D", "C"}});
    const auto s = network_dl(flipped, d, h_n, {});
    CHECK(s.total == doctest::Approx(node_dl("A", {"B"}, d, h_n, {}) + node_dl("B", {}, d, h_n, {})));
}
