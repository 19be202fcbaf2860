#include "cbwb/characters.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cbwb;

namespace {

const RootSystem& sys(const char* name)
{
    static std::map<std::string, RootSystem> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, build_root_system(name)).first;
    return it->second;
}

std::vector<Integer> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

// Kostant multiplicity formula: m(mu) = sum_w sign(w) P(w o lambda - mu)
Integer kostant_multiplicity(const RootSystem& rs, const WeylGroup& W, const Weight& lambda, const Weight& mu)
{
    std::vector<std::vector<int>> roots;
    for (const auto& a : rs.positive_roots())
        roots.push_back(a.simple);
    Integer m = 0;
    for (const auto& w : W.elements()) {
        auto c = rs.root_lattice_coords(dot_action(rs, w, lambda) - mu);
        if (c)
            m += w.sign() * oracle::kostant_partition(roots, *c);
    }
    return m;
}

} // namespace

TEST(WeylCharacter, Examples)
{
    auto a1w = weyl_character(sys("A1"), Weight{1});
    EXPECT_EQ(a1w.dimension, 2);
    EXPECT_EQ(a1w.multiplicities.size(), 2u);
    EXPECT_EQ(a1w.multiplicity(Weight{1}), 1);
    EXPECT_EQ(a1w.multiplicity(Weight{-1}), 1);
    auto triv = weyl_character(sys("A1"), Weight{0});
    EXPECT_EQ(triv.dimension, 1);
    auto adj = weyl_character(sys("A2"), sys("A2").rho());
    EXPECT_EQ(adj.dimension, 8);
    EXPECT_EQ(adj.multiplicity(Weight{0, 0}), 2);
    EXPECT_THROW(weyl_character(sys("A1"), Weight{-1}), InvalidInput);
    EXPECT_THROW(weyl_character(sys("A1"), Weight(std::vector<Rational>{Rational(1, 2)})), InvalidInput);
}

TEST(WeylCharacter, MatchesKostantMultiplicityFormula)
{
    for (const char* name : {"A2", "B2", "G2", "A3"}) {
        const auto& rs = sys(name);
        WeylGroup W(rs);
        std::vector<Weight> lambdas{rs.rho()};
        Weight w1 = rs.zero();
        w1.coords[0] = 2;
        lambdas.push_back(w1);
        Weight w2 = rs.zero();
        w2.coords.back() = 1;
        lambdas.push_back(w2);
        for (const auto& lambda : lambdas) {
            auto ch = weyl_character(rs, lambda);
            Integer total = 0;
            for (const auto& [mu, m] : ch.multiplicities) {
                EXPECT_EQ(m, kostant_multiplicity(rs, W, lambda, mu)) << name << " " << lambda.str() << " " << mu.str();
                total += m;
            }
            EXPECT_EQ(total, ch.dimension);
            EXPECT_EQ(ch.dimension, weyl_dimension(rs, lambda));
            // a dominant weight just outside the support has multiplicity zero by Kostant too
            EXPECT_EQ(kostant_multiplicity(rs, W, lambda, lambda + rs.simple_roots()[0]), 0);
        }
    }
}

TEST(WeylCharacter, KnownDimensions)
{
    EXPECT_EQ(weyl_dimension(sys("G2"), sys("G2").rho()), 64);
    EXPECT_EQ(weyl_dimension(sys("B2"), sys("B2").rho()), 16);
    EXPECT_EQ(weyl_dimension(sys("G2"), Weight{1, 0}), 7); // short simple root first
    EXPECT_EQ(weyl_dimension(sys("G2"), Weight{0, 1}), 14);
    EXPECT_EQ(weyl_dimension(sys("E8"), Weight{0, 0, 0, 0, 0, 0, 0, 1}), 248);
}

TEST(VermaCharacters, Examples)
{
    const auto& rs = sys("A1");
    const Weight alpha = rs.simple_roots()[0];
    Truncation t{3, 8};
    for (int l : {-3, 0, 2}) {
        Weight lambda{l};
        auto v = ch_verma_affine(rs, lambda, t);
        EXPECT_EQ(v.coefficient_of(lambda, 0), 1);
        EXPECT_EQ(v.coefficient_of(lambda - alpha, 0), 1);
        EXPECT_EQ(v.coefficient_of(lambda, 1), 2);
        for (int k = 0; k <= 5; ++k)
            EXPECT_EQ(v.coefficient_of(lambda - Rational(k) * alpha, 0), 1);
        auto r = ch_restricted_verma(rs, lambda, t);
        EXPECT_EQ(r.coefficient_of(lambda, 0), 1);
        EXPECT_EQ(r.coefficient_of(lambda, 1), 1); // e_{-1} f_0 v; h_{-1} v is removed
        EXPECT_EQ(r.coefficient_of(lambda + alpha, 1), 1);
        EXPECT_EQ(r.coefficient_of(lambda - alpha, 1), 2);
        auto imag = affine_real_root_product(rs, RootProduct::imaginary_mult_r, t);
        EXPECT_TRUE(window_equal(v, r * imag).equal);
    }
    // A1, lambda = 0: the two real level-one directions e_{-1}, f_{-1} each start a string at q^1
    auto r0 = ch_restricted_verma(rs, Weight{0}, t);
    EXPECT_EQ(r0.coefficient_of(alpha, 1), 1);
    EXPECT_EQ(r0.coefficient_of(Weight{0} - alpha, 1), 2);
}

TEST(VermaCharacters, LevelOnePbwCounts)
{
    // q^1 layer of the affine Verma module: one copy of finite Verma shifted by each level -1 generator
    for (const char* name : {"A1", "A2", "B2"}) {
        const auto& rs = sys(name);
        Truncation t{1, 10};
        auto v = ch_verma_affine(rs, rs.zero(), t);
        std::vector<std::vector<int>> roots;
        for (const auto& a : rs.positive_roots())
            roots.push_back(a.simple);
        // coefficient of e^{-gamma - delta} = sum over level -1 generators x of P(gamma + wt x)
        std::vector<std::vector<int>> gammas{std::vector<int>(rs.rank(), 0), std::vector<int>(rs.rank(), 1)};
        for (const auto& gamma : gammas) {
            Integer expected = rs.rank() * oracle::kostant_partition(roots, gamma);
            for (const auto& a : rs.positive_roots()) {
                std::vector<int> up(gamma), down(gamma);
                for (int i = 0; i < rs.rank(); ++i) {
                    up[i] -= a.simple[i];
                    down[i] += a.simple[i];
                }
                expected += oracle::kostant_partition(roots, up) + oracle::kostant_partition(roots, down);
            }
            Weight mu = rs.zero() - rs.from_simple_coords(gamma);
            EXPECT_EQ(v.coefficient_of(mu, 1), expected) << name;
        }
    }
}

TEST(Wakimoto, Examples)
{
    const auto& rs = sys("A1");
    WeylGroup W(rs);
    Truncation t{3, 8};
    EXPECT_TRUE(window_equal(ch_wakimoto(rs, W.identity(), Weight{1}, t), ch_restricted_verma(rs, Weight{1}, t)).equal);
    auto s = ch_wakimoto(rs, W.longest(), Weight{1}, t);
    EXPECT_EQ(s.leading(), Weight{-3});
    EXPECT_EQ(s.coefficient_of(Weight{-3}, 0), 1);
    for (const char* name : {"A2", "B2"}) {
        const auto& r = sys(name);
        WeylGroup G(r);
        for (const auto& w : G.elements())
            EXPECT_TRUE(window_equal(ch_wakimoto(r, w, r.rho(), {2, 5}), ch_restricted_verma(r, dot_action(r, w, r.rho()), {2, 5})).equal);
    }
    EXPECT_THROW(ch_wakimoto(rs, W.identity(), Weight(std::vector<Rational>{Rational(1, 2)}), t), InvalidInput);
}

TEST(EulerChiral, Examples)
{
    const auto& rs = sys("A1");
    auto e = euler_chiral(rs, Weight{1}, {4, 10}, EulerPath::wakimoto_sum);
    EXPECT_EQ(e.coefficient_of(Weight{1}, 0), 1);
    EXPECT_EQ(specialize_q(e), QSeries::from(ints({2, 4, 10, 20, 40})));
    auto f = euler_chiral(rs, Weight{1}, {4, 10}, EulerPath::factored);
    EXPECT_TRUE(window_equal(e, f).equal);
    EXPECT_THROW(euler_chiral(rs, Weight{0}, {2, 4}, EulerPath::factored), InvalidInput);
    EXPECT_THROW(euler_chiral(rs, Weight{-1}, {2, 4}, EulerPath::factored), InvalidInput);
}

TEST(EulerChiral, SpecializationMatchesColoredPartitions)
{
    for (const char* name : {"A1", "A2", "B2"}) {
        const auto& rs = sys(name);
        const int N = 3;
        const int D = 2 * N * rs.theta_height() + static_cast<int>(to_ll(2 * rs.rho_check(rs.rho()))) + 1;
        auto e = euler_chiral(rs, rs.rho(), {N, D}, EulerPath::factored);
        auto expected = oracle::colored_partitions(2 * rs.dim_flag_manifold(), N);
        for (auto& c : expected)
            c *= weyl_dimension(rs, rs.rho());
        EXPECT_EQ(specialize_q(e).coeffs, expected) << name;
    }
}

TEST(Irreducible, Examples)
{
    const auto& rs = sys("A1");
    auto irr = ch_irreducible_critical(rs, Weight{1}, {3, 9});
    EXPECT_EQ(irr.coefficient_of(Weight{1}, 0), 1);
    EXPECT_EQ(specialize_q(irr), QSeries::from(ints({2, 4, 12, 24})));
    EXPECT_EQ(oracle::product_series(2, {2}, 3), ints({1, 2, 6, 12}));
    auto euler = euler_chiral(rs, Weight{1}, {3, 9}, EulerPath::factored);
    EXPECT_TRUE(window_equal(euler, mul_q_polynomial(irr, verify_denominator_identity(rs, Weight{1}).product)).equal);
}

TEST(Shifts, Examples)
{
    ShiftMultiset a1{{0, {0}}, {1, {2}}};
    EXPECT_EQ(cohomology_shifts(sys("A1"), Weight{1}), a1);
    ShiftMultiset a2{{0, {0}}, {1, {2, 2}}, {2, {6, 6}}, {3, {8}}};
    EXPECT_EQ(cohomology_shifts(sys("A2"), sys("A2").rho()), a2);
    for (const char* name : {"B2", "G2", "A3"}) {
        const auto& rs = sys(name);
        WeylGroup W(rs);
        auto s = cohomology_shifts(rs, rs.rho(), &W);
        EXPECT_EQ(s.at(0), std::vector<int>{0});
        for (const auto& [i, v] : s)
            EXPECT_EQ(v.size(), W.strata_sizes()[i]);
    }
}

TEST(Denominator, Examples)
{
    auto a1 = verify_denominator_identity(sys("A1"), Weight{1});
    EXPECT_TRUE(a1.equal);
    EXPECT_EQ(a1.product.str(), "1 - q^2");
    auto a2 = verify_denominator_identity(sys("A2"), sys("A2").rho());
    EXPECT_TRUE(a2.equal);
    EXPECT_EQ(a2.alternating_sum.str(), "1 - 2q^2 + 2q^6 - q^8");
    auto g2 = verify_denominator_identity(sys("G2"), sys("G2").rho());
    EXPECT_TRUE(g2.equal);
    for (const char* name : {"B2", "G2", "A3"}) {
        const auto& rs = sys(name);
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) {
                Weight nu = rs.rho();
                nu.coords[0] = a;
                nu.coords[1] = b;
                EXPECT_TRUE(verify_denominator_identity(rs, nu).equal) << name << nu.str();
            }
    }
}

TEST(Bwb, SmallWindowsPass)
{
    auto a1 = verify_chiral_bwb(sys("A1"), Weight{1}, {8, 12});
    EXPECT_TRUE(a1.pass);
    EXPECT_TRUE(a1.paths.equal && a1.assembly.equal && a1.q_check);
    EXPECT_FALSE(a1.tables.empty());
    for (const auto& [n, rows] : a1.tables)
        for (const auto& row : rows)
            EXPECT_EQ(row.lhs, row.rhs);
    EXPECT_TRUE(verify_chiral_bwb(sys("A2"), sys("A2").rho(), {3, 6}).pass);
    EXPECT_TRUE(verify_chiral_bwb(sys("B2"), Weight{2, 1}, {2, 5}).pass);
}

TEST(QDim, Examples)
{
    const auto& rs = sys("A1");
    auto wm = q_dim_formula(rs, QDimKind::weyl_module, Weight{1}, 2);
    EXPECT_EQ(wm, QSeries::from(ints({2, 6, 18})));
    EXPECT_EQ(q_dim_formula(rs, QDimKind::chiral_euler, Weight{1}, 4), QSeries::from(ints({2, 4, 10, 20, 40})));
    for (const char* name : {"A2", "B2", "G2"}) {
        const auto& r = sys(name);
        auto q = q_dim_formula(r, QDimKind::chiral_euler, r.rho(), 5);
        EXPECT_EQ(q[0], weyl_dimension(r, r.rho()));
        for (int d = 0; d <= 5; ++d)
            EXPECT_GT(q[d], 0);
        auto irr = q_dim_formula(r, QDimKind::irreducible, r.rho(), 4);
        auto expected = oracle::product_series(2 * r.dim_flag_manifold(), q_denominator_exponents(r, r.rho()), 4);
        for (auto& c : expected)
            c *= weyl_dimension(r, r.rho());
        EXPECT_EQ(irr.coeffs, expected);
    }
}

TEST(KacKazhdan, Examples)
{
    const auto& rs = sys("A1");
    EXPECT_TRUE(kac_kazhdan_singular_weights(rs, Weight{0}, 4).empty());
    auto s = kac_kazhdan_singular_weights(rs, Weight{-3}, 4);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].n, -2);
    EXPECT_EQ(s[0].root, rs.simple_roots()[0]);
    EXPECT_EQ(s[0].height_family.weight, Weight{1});
    EXPECT_EQ(s[0].height_family.delta_degree, 2);
    EXPECT_EQ(rs.pairing(Weight{-3} + rs.rho(), s[0].root_index), s[0].n);
    ASSERT_EQ(s[0].predicted.size(), 2u);
    EXPECT_EQ(s[0].predicted[1].delta_degree, 4);
    for (const auto& p : s[0].predicted)
        EXPECT_EQ(block_representative(rs, p.weight).representative, block_representative(rs, Weight{-3}).representative);
    // the predicted set is closed and stays inside the dot-orbit block
    auto set = predicted_singular_set(sys("A2"), Weight{-3, 0}, 4);
    const auto block = block_representative(sys("A2"), Weight{-3, 0}).representative;
    for (const auto& p : set)
        EXPECT_EQ(block_representative(sys("A2"), p.weight).representative, block);
    EXPECT_TRUE(set.contains(PredictedWeight{Weight{-3, 0}, 0}));
}

TEST(Blocks, Examples)
{
    const auto& rs = sys("A2");
    EXPECT_EQ(block_representative(rs, Weight{2, 1}).representative, (Weight{2, 1}));
    EXPECT_FALSE(block_representative(rs, Weight{2, 1}).singular);
    EXPECT_EQ(block_representative(sys("A1"), Weight{-3}).representative, Weight{1});
    auto neg = block_representative(rs, Weight{0, 0} - rs.rho());
    EXPECT_TRUE(neg.singular);
    EXPECT_EQ(neg.representative, rs.zero() - rs.rho());
}

TEST(Wakimoto, InvariantsTimesComplementIsWakimoto)
{
    for (const char* name : {"A1", "A2", "B2"}) {
        const auto& rs = sys(name);
        WeylGroup W(rs);
        Truncation t{2, 6};
        for (const auto& w : W.elements()) {
            auto inv = wakimoto_invariants_character(rs, w, rs.rho(), t);
            auto comp = wakimoto_complement_character(rs, w, t);
            EXPECT_TRUE(window_equal(inv * comp, ch_wakimoto(rs, w, rs.rho(), t)).equal) << name << w.word_string();
            const Weight top = dot_action(rs, w, rs.rho());
            EXPECT_EQ(inv.coefficient_of(top, 0), 1);
            int at_top = 0;
            for (const auto& [k, c] : inv.terms())
                if (k.n() == 0 && inv.weight_of(k) == top)
                    ++at_top;
            EXPECT_EQ(at_top, 1);
        }
        // identity: no finite directions at delta-degree 0
        auto id = wakimoto_invariants_character(rs, W.identity(), rs.rho(), t);
        for (const auto& [k, c] : id.terms())
            if (k.n() == 0)
                EXPECT_EQ(id.weight_of(k), rs.rho());
    }
}
