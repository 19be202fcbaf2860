#include "cbwb/genus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cbwb;

namespace {

std::vector<Integer> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

std::vector<Integer> scaled(std::vector<Integer> v, const Integer& s)
{
    for (auto& x : v)
        x *= s;
    return v;
}

} // namespace

TEST(Fiber, Layers)
{
    auto rs = build_root_system("A1");
    auto f = fiber_character(rs, Weight{0}, 3);
    ASSERT_EQ(f.N(), 3);
    EXPECT_EQ(f.layers[0], (WeightMultiset{{Weight{0}, 1}}));
    EXPECT_EQ(f.layers[1], (WeightMultiset{{Weight{2}, 1}, {Weight{-2}, 1}}));
    for (const char* name : {"A1", "A2", "B2"}) {
        auto r = build_root_system(name);
        auto g = fiber_character(r, r.rho(), 5);
        auto expected = oracle::colored_partitions(2 * r.dim_flag_manifold(), 5);
        for (int n = 0; n <= 5; ++n)
            EXPECT_EQ(g.total(n), expected[n]) << name;
    }
    EXPECT_THROW(fiber_character(rs, Weight(std::vector<Rational>{Rational(1, 2)}), 2), InvalidInput);
}

TEST(LineBundle, Examples)
{
    auto rs = build_root_system("A2");
    auto dom = line_bundle_euler(rs, Weight{2, 1});
    EXPECT_EQ(dom.sign, 1);
    EXPECT_EQ(dom.dominant, (Weight{2, 1}));
    EXPECT_EQ(line_bundle_euler(rs, rs.zero() - rs.rho()).sign, 0);
    auto a1 = build_root_system("A1");
    auto v = line_bundle_euler(a1, Weight{-2});
    EXPECT_EQ(v.sign, -1);
    EXPECT_EQ(v.dominant, Weight{0});
    EXPECT_THROW(line_bundle_euler(a1, Weight(std::vector<Rational>{Rational(1, 3)})), InvalidInput);
}

TEST(LineBundle, DotOrbitConsistency)
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coord(-6, 6);
    for (const char* name : {"A2", "B2", "G2"}) {
        auto rs = build_root_system(name);
        WeylGroup W(rs);
        for (int trial = 0; trial < 30; ++trial) {
            Weight mu{coord(rng), coord(rng)};
            auto base = line_bundle_euler(rs, mu);
            for (const auto& w : W.elements()) {
                auto moved = line_bundle_euler(rs, dot_action(rs, w, mu));
                EXPECT_EQ(moved.sign, w.sign() * base.sign);
                if (base.sign != 0)
                    EXPECT_EQ(moved.dominant, base.dominant);
            }
        }
    }
}

TEST(Genus, Examples)
{
    auto a1 = build_root_system("A1");
    auto g = elliptic_genus(a1, Weight{1}, 4, Truncation{4, 12});
    EXPECT_EQ(g.q_series, QSeries::from(ints({2, 4, 10, 20, 40})));
    EXPECT_TRUE(g.pass());
    EXPECT_TRUE(g.positive);
    ASSERT_TRUE(g.versus_euler);
    EXPECT_TRUE(g.versus_euler->equal);

    auto a2 = build_root_system("A2");
    auto h = elliptic_genus(a2, a2.rho(), 3);
    EXPECT_EQ(h.q_series.coeffs, scaled(oracle::colored_partitions(6, 3), 8));
    EXPECT_EQ(h.q_series, QSeries::from(ints({8, 48, 216, 784})));
    EXPECT_TRUE(h.q_matches);
}

TEST(Genus, DegreeZeroIsWeylDimension)
{
    for (const char* name : {"A2", "B2", "G2"}) {
        auto rs = build_root_system(name);
        for (const auto& lambda : {rs.zero(), rs.rho(), Weight{2, 0}})
            EXPECT_EQ(elliptic_genus(rs, lambda, 0).q_series[0], weyl_dimension(rs, lambda));
    }
}

TEST(Genus, FullCharacterMatchesEulerCharacter)
{
    for (const char* name : {"A2", "B2"}) {
        auto rs = build_root_system(name);
        for (const auto& lambda : {rs.rho(), Weight{0, 1}}) {
            auto g = elliptic_genus(rs, lambda, 2, Truncation{2, 10});
            EXPECT_TRUE(g.pass()) << name << lambda.str();
            if (rs.is_regular_dominant_integral(lambda))
                EXPECT_TRUE(window_equal(*g.character, euler_chiral(rs, lambda, {2, 10}, EulerPath::wakimoto_sum)).equal);
        }
    }
}

TEST(Genus, PositiveForSmallWeights)
{
    for (const char* name : {"A1", "A2", "B2", "G2"}) {
        auto rs = build_root_system(name);
        Weight w = rs.zero();
        for (int a = 0; a <= 2; ++a) {
            w.coords[0] = a;
            auto g = elliptic_genus(rs, w, 5);
            EXPECT_TRUE(g.positive) << name << w.str();
            EXPECT_TRUE(g.q_matches) << name << w.str();
        }
    }
}

TEST(Genus, CsvAndErrors)
{
    auto a1 = build_root_system("A1");
    auto g = elliptic_genus(a1, Weight{1}, 2);
    EXPECT_EQ(g.csv(), "degree,coefficient\n0,2\n1,4\n2,10\n");
    EXPECT_THROW(elliptic_genus(a1, Weight{-1}, 2), InvalidInput);
}
