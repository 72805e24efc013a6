#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "common.hpp"
#include "hcpack/hcpack.hpp"

using namespace hcpack;

TEST(Rational, NormalizesAndOrders) {
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(3, -9).str(), "-1/3");
    EXPECT_LT(Rational(1, 3), Rational(2, 5));
    EXPECT_EQ(Rational(1, 4) + Rational(1, 12), Rational(1, 3));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswerZero) {
    const auto out = Philox4x32::apply({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = Philox4x32::apply({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
    const auto out = Philox4x32::apply({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, UniformIsPureAndInRange) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < 20000; ++i) {
        const double u = keyed_uniform(7, i, 3, 11);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_EQ(u, keyed_uniform(7, i, 3, 11));
        sum += u;
    }
    EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
    EXPECT_NE(keyed_uniform(7, 0, 3, 11), keyed_uniform(8, 0, 3, 11));
    EXPECT_NE(keyed_uniform(7, 0, 3, 11), keyed_uniform(7, 0, 3, 11 + (std::uint64_t{1} << 32)));
}

TEST(Catalog, FourteenEntriesInOrder) {
    const std::vector<std::string> expected{"4^4",     "6^3",     "3^6",     "4.8^2",   "4.6.12",
                                            "3^2.4.3.4", "3^4.6", "3^3.4^2", "3.4.6.4", "3.6.3.6",
                                            "3.12^2",  "Z2M",     "UJ",      "Q"};
    EXPECT_EQ(lattice_names(), expected);
}

TEST(Catalog, EveryEntryValidates) {
    for (const auto& s : catalog()) {
        const auto rep = validate(s);
        EXPECT_TRUE(rep.ok()) << s.name;
    }
}

TEST(Catalog, DegreesAndClassCounts) {
    const std::map<std::string, std::pair<std::set<int>, int>> want{
        {"4^4", {{4}, 2}},        {"6^3", {{3}, 2}},     {"3^6", {{6}, 3}},       {"4.8^2", {{3}, 2}},
        {"4.6.12", {{3}, 2}},     {"3^2.4.3.4", {{5}, 3}}, {"3^4.6", {{5}, 3}},   {"3^3.4^2", {{5}, 3}},
        {"3.4.6.4", {{4}, 3}},    {"3.6.3.6", {{4}, 3}}, {"3.12^2", {{3}, 3}},    {"Z2M", {{8}, 4}},
        {"UJ", {{4, 8}, 3}},      {"Q", {{4, 6}, 3}}};
    for (const auto& s : catalog()) {
        const auto& [deg, classes] = want.at(s.name);
        EXPECT_EQ(std::set<int>(s.expected_degrees.begin(), s.expected_degrees.end()), deg) << s.name;
        EXPECT_EQ(s.class_count(), classes) << s.name;
        EXPECT_EQ(s.uniform_degree, deg.size() == 1) << s.name;
    }
}

TEST(Catalog, TableDensities) {
    const std::map<std::string, Rational> rho{
        {"4^4", {1, 2}},       {"6^3", {1, 2}},     {"3^6", {1, 3}},     {"4.8^2", {1, 2}},   {"4.6.12", {1, 2}},
        {"3^2.4.3.4", {1, 3}}, {"3^4.6", {1, 3}},   {"3^3.4^2", {1, 3}}, {"3.4.6.4", {1, 3}}, {"3.6.3.6", {1, 3}},
        {"3.12^2", {1, 3}},    {"Z2M", {1, 4}},     {"UJ", {1, 2}},      {"Q", {1, 3}}};
    for (const auto& s : catalog()) EXPECT_EQ(s.table.density, rho.at(s.name)) << s.name;
}

TEST(Catalog, AliasesAndUnknown) {
    EXPECT_EQ(lattice_spec("Z2").name, "4^4");
    EXPECT_EQ(lattice_spec("H").name, "6^3");
    EXPECT_EQ(lattice_spec("T").name, "3^6");
    EXPECT_EQ(lattice_spec("K").name, "3.6.3.6");
    try {
        (void)lattice_spec("5^4");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownLattice);
    }
}

TEST(Catalog, EdgeLengthsMatchGeometry) {
    for (const auto& s : catalog()) {
        for (const auto& e : s.edges) {
            EXPECT_NEAR(s.edge_length(e), e.length, 1e-9) << s.name;
            if (!s.two_parameter && s.name != "Z2M") {
                EXPECT_NEAR(e.length, 1.0, 1e-9) << s.name;
            }
        }
    }
}

TEST(LatticeIo, RoundTripsEveryEntry) {
    for (const auto& s : catalog()) {
        const auto text = lattice_to_string(s);
        const auto back = lattice_from_string(text);
        EXPECT_EQ(back, s) << s.name;
        EXPECT_EQ(lattice_to_string(back), text);
    }
}

TEST(LatticeIo, RejectsGarbage) {
    try {
        (void)lattice_from_string("lattice X\nbasis 1 0\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
    }
}

TEST(PeriodicGraph, SymmetricIrreflexiveOnAllLattices) {
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, test::dims_at_least(s));
        for (int x = 0; x < g.site_count(); ++x) {
            for (int y : g.neighbors(x)) {
                ASSERT_NE(x, y);
                ASSERT_TRUE(g.adjacent(y, x)) << s.name;
            }
        }
        EXPECT_TRUE(validate(g).ok()) << s.name;
    }
}

TEST(PeriodicGraph, IncommensurateDims) {
    for (auto [name, dims] : std::vector<std::pair<std::string, std::array<int, 2>>>{
             {"3^6", {4, 3}}, {"3.6.3.6", {2, 2}}, {"4^4", {1, 4}}, {"Z2M", {3, 4}}}) {
        try {
            (void)build_lattice(name, dims);
            FAIL() << name;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::IncommensurateDims) << name;
        }
    }
}

TEST(PeriodicGraph, SmallTorusThatMergesNeighborsIsRejected) {
    try {
        (void)build_lattice("4^4", {2, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncommensurateDims);
    }
}

TEST(PeriodicGraph, ShellSizes) {
    const auto z = build_lattice("4^4", {8, 8});
    EXPECT_EQ(hop_shell(z, 0, 1).size(), 4u);
    EXPECT_EQ(hop_shell(z, 0, 2).size(), 8u);
    const auto h = build_lattice("6^3", {6, 6});
    EXPECT_EQ(hop_shell(h, 0, 2).size(), 6u);
    const auto t = build_lattice("3^6", {9, 9});
    EXPECT_EQ(hop_shell(t, 0, 2).size(), 12u);
}

TEST(PeriodicGraph, ClassesPartitionAndAreIndependent) {
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, test::dims_at_least(s));
        int total = 0;
        for (int k = 0; k < g.class_count(); ++k) {
            total += static_cast<int>(g.class_members(k).size());
            for (int x : g.class_members(k))
                for (int y : g.neighbors(x)) ASSERT_NE(g.class_of(y), k) << s.name;
        }
        EXPECT_EQ(total, g.site_count());
    }
}
