#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "common.hpp"
#include "hcpack/hcpack.hpp"

using namespace hcpack;

namespace {

/// Arbitrary (usually illegal) configuration drawn from a seeded generator.
Configuration random_config(const PeriodicGraph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rho(0.0, 1.0);
    std::bernoulli_distribution bit(rho(rng));
    Configuration c(g);
    for (int x = 0; x < g.site_count(); ++x) c.set(x, bit(rng));
    return c;
}

/// Random legal configuration: greedy insertion over a shuffled site order.
Configuration random_legal(const PeriodicGraph& g, std::mt19937_64& rng) {
    std::vector<int> order(static_cast<std::size_t>(g.site_count()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution keep(0.7);
    Configuration c(g);
    for (int x : order)
        if (keep(rng) && !blocked(g, c, x)) c.set(x, true);
    return c;
}

}  // namespace

TEST(Configuration, OptimalPackingsHitTableDensity) {
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, test::dims_at_least(s));
        for (int ph = 0; ph < phase_count(g); ++ph) {
            const auto c = optimal_packing(g, ph);
            EXPECT_TRUE(is_legal(c)) << s.name << " phase " << ph;
            EXPECT_EQ(density(c).rho_total(), s.table.density) << s.name << " phase " << ph;
        }
        try {
            (void)optimal_packing(g, phase_count(g));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::PhaseOutOfRange);
        }
    }
}

TEST(Configuration, OptimalPhasesAreDistinct) {
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, test::dims_at_least(s));
        for (int a = 0; a < phase_count(g); ++a)
            for (int b = a + 1; b < phase_count(g); ++b) EXPECT_NE(optimal_packing(g, a), optimal_packing(g, b)) << s.name;
    }
}

TEST(Configuration, DensityReportIsExact) {
    const auto g = build_lattice("3^6", {6, 6});
    const auto c = class_full(g, 1);
    const auto r = density(c);
    EXPECT_EQ(r.rho_total(), Rational(1, 3));
    EXPECT_EQ(r.rho_class(1), Rational(1));
    EXPECT_EQ(r.rho_class(0), Rational(0));
}

TEST(Configuration, BernoulliInitDeterministic) {
    const auto g = build_lattice("4^4", {20, 20});
    EXPECT_EQ(bernoulli_init(g, 0.3, 5), bernoulli_init(g, 0.3, 5));
    EXPECT_NE(bernoulli_init(g, 0.3, 5), bernoulli_init(g, 0.3, 6));
    EXPECT_EQ(bernoulli_init(g, 0.0, 5).occupancy(), 0);
    EXPECT_EQ(bernoulli_init(g, 1.0, 5).occupancy(), g.site_count());
    EXPECT_THROW((void)bernoulli_init(g, 1.5, 5), Error);
}

TEST(Configuration, TranslationPreservesLegalityAndDensity) {
    std::mt19937_64 rng(3);
    for (const auto& name : {"3.4.6.4", "3^3.4^2", "Z2M"}) {
        const auto& s = lattice_spec(name);
        const auto g = build_lattice(name, test::dims_at_least(s, 6));
        for (int trial = 0; trial < 20; ++trial) {
            const auto c = random_legal(g, rng);
            const auto t = translate(c, trial % 3, trial % 5);
            EXPECT_TRUE(is_legal(t));
            EXPECT_EQ(t.occupancy(), c.occupancy());
        }
    }
}

TEST(Snapshot, RoundTrip) {
    std::mt19937_64 rng(9);
    const auto g = build_lattice("3.6.3.6", {6, 6});
    for (int i = 0; i < 10; ++i) {
        const auto c = random_config(g, rng);
        std::istringstream in(snapshot_to_string(c));
        EXPECT_EQ(read_snapshot(in, g), c);
    }
}

TEST(Snapshot, RejectsMismatchAndGarbage) {
    const auto g = build_lattice("4^4", {4, 4});
    const auto other = build_lattice("4^4", {6, 6});
    std::istringstream in(snapshot_to_string(Configuration(other)));
    try {
        (void)read_snapshot(in, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
    std::istringstream bad("config 4^4 4 4\nrle 16 3 x\n");
    try {
        (void)read_snapshot(bad, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
    }
}

TEST(Pressure, Validation) {
    EXPECT_THROW((void)Pressure::single(-0.1), Error);
    EXPECT_THROW((void)Pressure::single(1.1), Error);
    EXPECT_THROW((void)Pressure::pair(0.5, 2.0), Error);
    const auto uj = build_lattice("UJ", {4, 4});
    EXPECT_THROW(check_pressure(uj, Pressure::single(0.5)), Error);
    const auto z = build_lattice("4^4", {4, 4});
    EXPECT_THROW(check_pressure(z, Pressure::pair(0.5, 0.5)), Error);
    EXPECT_DOUBLE_EQ(Pressure::fugacity(0.5), 1.0);
}

// Property: one full cycle from any input is legal, on every lattice.
TEST(PcaProperty, LegalAfterEveryCycle) {
    std::mt19937_64 rng(11);
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, test::dims_at_least(s, 6));
        const auto pr = s.two_parameter ? Pressure::pair(0.4, 0.9) : Pressure::single(0.8);
        for (int trial = 0; trial < 10; ++trial) {
            auto c = random_config(g, rng);
            for (std::uint64_t t = 0; t < 3; ++t) {
                full_cycle(g, c, pr, rng(), t);
                ASSERT_TRUE(is_legal(c)) << s.name;
            }
        }
    }
}

TEST(PcaProperty, ThreadCountDoesNotChangeResults) {
    const auto g = build_lattice("4^4", {128, 128});
    const auto pr = Pressure::single(0.85);
    auto a = bernoulli_init(g, 0.5, 4);
    auto b = a;
    RunOptions one;
    RunOptions four;
    four.threads = 4;
    const auto ta = run(g, a, pr, 30, 17, one);
    const auto tb = run(g, b, pr, 30, 17, four);
    EXPECT_EQ(a, b);
    ASSERT_EQ(ta.rows.size(), tb.rows.size());
    for (std::size_t i = 0; i < ta.rows.size(); ++i) EXPECT_EQ(ta.rows[i].density.occupied, tb.rows[i].density.occupied);
}

TEST(PcaProperty, ClassPassOrderIndependent) {
    std::mt19937_64 rng(21);
    for (const auto& name : {"3^6", "3.4.6.4", "Z2M", "Q"}) {
        const auto& s = lattice_spec(name);
        const auto g = build_lattice(name, test::dims_at_least(s, 6));
        const auto pr = s.two_parameter ? Pressure::pair(0.3, 0.7) : Pressure::single(0.7);
        for (int trial = 0; trial < 5; ++trial) {
            const auto c0 = random_config(g, rng);
            for (int k = 0; k < g.class_count(); ++k) {
                auto a = c0;
                auto b = c0;
                const PassKey key{99, static_cast<std::uint64_t>(trial), static_cast<std::uint32_t>(k)};
                class_pass(g, a, k, pr, key);
                auto order = g.class_members(k);
                std::shuffle(order.begin(), order.end(), rng);
                class_pass_ordered(g, b, order, pr, key);
                EXPECT_EQ(a, b) << name;
            }
        }
    }
}

TEST(Pca, ExtremePressures) {
    const auto g = build_lattice("6^3", {6, 6});
    auto c = bernoulli_init(g, 0.5, 2);
    full_cycle(g, c, Pressure::single(0.0), 1, 0);
    EXPECT_EQ(c.occupancy(), 0);
    // from empty at p = 1 the first class fills and blocks the rest
    Configuration e(g);
    full_cycle(g, e, Pressure::single(1.0), 1, 0);
    EXPECT_EQ(e, class_full(g, 0));
}

TEST(Pca, RunIsReproducible) {
    const auto g = build_lattice("3^6", {12, 12});
    auto a = bernoulli_init(g, 0.4, 8);
    auto b = a;
    const auto ta = run(g, a, Pressure::single(0.9), 50, 3);
    const auto tb = run(g, b, Pressure::single(0.9), 50, 3);
    EXPECT_EQ(a, b);
    std::ostringstream sa;
    std::ostringstream sb;
    write_trace_csv(sa, ta, g.class_count());
    write_trace_csv(sb, tb, g.class_count());
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_TRUE(ta.all_legal);
}

TEST(Pca, RunArgumentChecks) {
    const auto g = build_lattice("4^4", {4, 4});
    Configuration c(g);
    EXPECT_THROW((void)run(g, c, Pressure::single(0.5), 0, 1), Error);
    RunOptions bad;
    bad.thinning = 0;
    EXPECT_THROW((void)run(g, c, Pressure::single(0.5), 5, 1, bad), Error);
}

TEST(Pca, ThinningKeepsLastRow) {
    const auto g = build_lattice("4^4", {8, 8});
    Configuration c(g);
    RunOptions opt;
    opt.thinning = 4;
    const auto tr = run(g, c, Pressure::single(0.5), 10, 1, opt);
    ASSERT_EQ(tr.rows.size(), 3u);
    EXPECT_EQ(tr.rows.back().cycle, 10u);
}

// Property: replaying the witness steps with draws meeting each event
// reaches the vacuum and then the target.
TEST(Reachability, WitnessReplays) {
    std::mt19937_64 rng(5);
    for (const auto& name : {"4^4", "3^6", "3.6.3.6", "UJ"}) {
        const auto& s = lattice_spec(name);
        const auto g = build_lattice(name, test::dims_at_least(s));
        const auto pr = s.two_parameter ? Pressure::pair(0.4, 0.6) : Pressure::single(0.6);
        for (int trial = 0; trial < 5; ++trial) {
            const auto ca = random_legal(g, rng);
            const auto cb = random_legal(g, rng);
            const auto w = reachability_check(g, ca, cb, pr);
            EXPECT_GT(w.probability, 0.0);
            const auto vac = replay_step(g, ca, w.to_vacuum, pr);
            EXPECT_EQ(vac.occupancy(), 0) << name;
            EXPECT_EQ(replay_step(g, vac, w.to_target, pr), cb) << name;
        }
    }
}

TEST(Reachability, Errors) {
    const auto g = build_lattice("4^4", {4, 4});
    const auto legal = optimal_packing(g, 0);
    Configuration full(g, 1);
    EXPECT_THROW((void)reachability_check(g, full, legal, Pressure::single(0.5)), Error);
    EXPECT_THROW((void)reachability_check(g, legal, legal, Pressure::single(1.0)), Error);
}

TEST(TraceIo, CsvHeaderAndMetadata) {
    const auto g = build_lattice("6^3", {4, 4});
    Configuration c(g);
    const auto tr = run(g, c, Pressure::single(0.5), 2, 7);
    std::ostringstream os;
    write_trace_csv(os, tr, g.class_count());
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "cycle,rho_total,rho_class_0,rho_class_1,order_param");
    const auto meta = run_metadata(g, Pressure::single(0.5), tr);
    EXPECT_EQ(meta["lattice"], "6^3");
    EXPECT_EQ(meta["seed"], 7);
    EXPECT_EQ(meta["cycles"], 2);
}
