#pragma once

// Character formulas: finite Weyl characters, critical-level Verma / Wakimoto /
// irreducible characters, the chiral Euler character and its checks.

#include "charseries.hpp"
#include "weyl.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cbwb {

// ---------------------------------------------------------------------------
// Finite-dimensional characters

struct FiniteCharacter {
    RootSystem rs;
    Weight highest;
    std::map<Weight, Integer> multiplicities; // every weight, not only dominant ones
    Integer dimension;

    Integer multiplicity(const Weight& mu) const
    {
        auto it = multiplicities.find(mu);
        return it == multiplicities.end() ? Integer(0) : it->second;
    }
    /// Largest height of highest - mu over the weights.
    int depth() const
    {
        int d = 0;
        for (const auto& [mu, m] : multiplicities) {
            auto c = rs.root_lattice_coords(highest - mu);
            int h = 0;
            for (int x : *c)
                h += x;
            d = std::max(d, h);
        }
        return d;
    }
    /// As a CharSeries at delta-degree 0 (terms outside the window are dropped).
    CharSeries series(Truncation t) const
    {
        CharSeries s(rs, highest, t);
        for (const auto& [mu, m] : multiplicities)
            if (auto d = s.depth_of(mu, 0))
                s.add(*d, 0, m);
        return s;
    }
};

namespace detail {

inline void require_dominant_integral(const RootSystem& rs, const Weight& lambda)
{
    rs.check_rank(lambda);
    if (!lambda.is_integral() || !rs.is_dominant(lambda))
        throw InvalidInput("weight " + lambda.str() + " is not dominant integral");
}

inline void require_regular_dominant(const RootSystem& rs, const Weight& nu0)
{
    rs.check_rank(nu0);
    if (!rs.is_regular_dominant_integral(nu0))
        throw InvalidInput("weight " + nu0.str() + " is not regular dominant integral (all coordinates >= 1)");
}

inline Weight dominant_conjugate(const RootSystem& rs, Weight v)
{
    for (;;) {
        int i = 0;
        while (i < rs.rank() && v[i] >= 0)
            ++i;
        if (i == rs.rank())
            return v;
        v = rs.reflect(v, i);
    }
}

inline std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& dominant)
{
    std::set<Weight> seen{dominant};
    std::deque<Weight> todo{dominant};
    while (!todo.empty()) {
        Weight v = todo.front();
        todo.pop_front();
        for (int i = 0; i < rs.rank(); ++i)
            if (v[i] != 0) {
                Weight u = rs.reflect(v, i);
                if (seen.insert(u).second)
                    todo.push_back(u);
            }
    }
    return {seen.begin(), seen.end()};
}

inline int height_below(const RootSystem& rs, const Weight& top, const Weight& mu)
{
    auto c = rs.root_lattice_coords(top - mu);
    int h = 0;
    for (int x : *c)
        h += x;
    return h;
}

} // namespace detail

/// Freudenthal recursion over dominant weights, then W-orbits.
inline FiniteCharacter weyl_character(const RootSystem& rs, const Weight& lambda)
{
    detail::require_dominant_integral(rs, lambda);

    // dominant weights below lambda: connected to lambda by subtracting positive roots
    std::set<Weight> dominant{lambda};
    std::deque<Weight> todo{lambda};
    while (!todo.empty()) {
        Weight v = todo.front();
        todo.pop_front();
        for (const auto& a : rs.positive_roots()) {
            Weight u = v - a.root;
            if (rs.is_dominant(u) && dominant.insert(u).second)
                todo.push_back(u);
        }
    }
    std::vector<Weight> order(dominant.begin(), dominant.end());
    std::stable_sort(order.begin(), order.end(), [&](const Weight& x, const Weight& y) {
        return detail::height_below(rs, lambda, x) < detail::height_below(rs, lambda, y);
    });

    std::map<Weight, Integer> dom_mult;
    const Weight lr = lambda + rs.rho();
    const Rational top = rs.form(lr, lr);
    auto mult_of = [&](const Weight& v) -> Integer {
        auto it = dom_mult.find(detail::dominant_conjugate(rs, v));
        return it == dom_mult.end() ? Integer(0) : it->second;
    };
    for (const auto& mu : order) {
        if (mu == lambda) {
            dom_mult[mu] = 1;
            continue;
        }
        const Weight mr = mu + rs.rho();
        const Rational denom = top - rs.form(mr, mr);
        if (denom == 0) {
            dom_mult[mu] = 0;
            continue;
        }
        Rational sum = 0;
        for (const auto& a : rs.positive_roots()) {
            Weight v = mu + a.root;
            for (;;) {
                Integer m = mult_of(v);
                if (m == 0)
                    break;
                sum += Rational(m) * rs.form(v, a.root);
                v = v + a.root;
            }
        }
        Rational m = 2 * sum / denom;
        if (!is_integral(m))
            throw ConsistencyError("non-integral Freudenthal multiplicity at " + mu.str());
        dom_mult[mu] = to_integer(m);
    }

    FiniteCharacter ch{rs, lambda, {}, 0};
    for (const auto& [mu, m] : dom_mult) {
        if (m == 0)
            continue;
        for (const auto& v : detail::weyl_orbit(rs, mu)) {
            ch.multiplicities[v] = m;
            ch.dimension += m;
        }
    }
    return ch;
}

/// prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>.
inline Integer weyl_dimension(const RootSystem& rs, const Weight& lambda)
{
    detail::require_dominant_integral(rs, lambda);
    Rational d = 1;
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k)
        d *= rs.pairing(lambda + rs.rho(), k) / rs.pairing(rs.rho(), k);
    return to_integer(d);
}

// ---------------------------------------------------------------------------
// Critical-level characters

/// e^lambda times all positive affine root factors; imaginary roots with multiplicity rank.
inline CharSeries ch_verma_affine(const RootSystem& rs, const Weight& lambda, Truncation t)
{
    CharSeries s = monomial(rs, lambda, 0, 1, t);
    divide_by_root_product(s, RootProduct::positive_real);
    divide_by_root_product(s, RootProduct::imaginary_mult_r);
    return s;
}

/// Verma character with the imaginary factors removed (freeness over the centre).
inline CharSeries ch_restricted_verma(const RootSystem& rs, const Weight& lambda, Truncation t)
{
    CharSeries s = monomial(rs, lambda, 0, 1, t);
    divide_by_root_product(s, RootProduct::positive_real);
    return s;
}

inline CharSeries ch_wakimoto(const RootSystem& rs, const WeylElement& w, const Weight& nu0, Truncation t)
{
    rs.check_rank(nu0);
    if (!nu0.is_integral())
        throw InvalidInput("Wakimoto character needs an integral weight");
    return ch_restricted_verma(rs, dot_action(rs, w, nu0), t);
}

enum class EulerPath { wakimoto_sum, factored };

/// Character of the chiral Euler characteristic of the line bundle with weight nu0.
inline CharSeries euler_chiral(const RootSystem& rs, const Weight& nu0, Truncation t, EulerPath path,
                               const WeylGroup* group = nullptr)
{
    detail::require_regular_dominant(rs, nu0);
    if (path == EulerPath::factored) {
        CharSeries s = weyl_character(rs, nu0).series(t);
        divide_by_root_product(s, RootProduct::real_n_ge_1);
        return s;
    }
    std::optional<WeylGroup> own;
    if (!group)
        group = &own.emplace(rs);
    std::vector<std::pair<Integer, CharSeries>> terms;
    for (const auto& w : group->elements())
        terms.emplace_back(w.sign(), ch_wakimoto(rs, w, nu0, t));
    return linear_combine(terms);
}

/// q-exponent m_alpha = <nu0 + rho, alpha^vee> of each positive root.
inline std::vector<int> q_denominator_exponents(const RootSystem& rs, const Weight& nu0)
{
    std::vector<int> m;
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k)
        m.push_back(static_cast<int>(to_ll(rs.pairing(nu0 + rs.rho(), k))));
    return m;
}

/// Alternating numerator over W divided by the real-root and q-denominators.
inline CharSeries ch_irreducible_critical(const RootSystem& rs, const Weight& nu0, Truncation t,
                                          const WeylGroup* group = nullptr)
{
    detail::require_regular_dominant(rs, nu0);
    std::optional<WeylGroup> own;
    if (!group)
        group = &own.emplace(rs);
    std::vector<std::pair<Integer, CharSeries>> terms;
    for (const auto& w : group->elements())
        terms.emplace_back(w.sign(), monomial(rs, dot_action(rs, w, nu0), 0, 1, t));
    CharSeries s = linear_combine(terms);
    divide_by_root_product(s, RootProduct::positive_real);
    const std::vector<int> zero(rs.rank(), 0);
    for (int m : q_denominator_exponents(rs, nu0))
        if (m <= t.N)
            detail::divide_by_factor(s, zero, m);
    return s;
}

/// Cohomological degree -> sorted shifts <nu0 - w o nu0, rho^vee> over elements of that length.
using ShiftMultiset = std::map<int, std::vector<int>>;

inline ShiftMultiset cohomology_shifts(const RootSystem& rs, const Weight& nu0, const WeylGroup* group = nullptr)
{
    detail::require_regular_dominant(rs, nu0);
    std::optional<WeylGroup> own;
    if (!group)
        group = &own.emplace(rs);
    ShiftMultiset out;
    for (const auto& w : group->elements()) {
        Rational s = rs.rho_check(nu0 - dot_action(rs, w, nu0));
        out[w.length].push_back(static_cast<int>(to_ll(s)));
    }
    for (auto& [i, v] : out)
        std::sort(v.begin(), v.end());
    return out;
}

/// Integer polynomial in q.
struct IntPoly {
    std::vector<Integer> c;

    static IntPoly one() { return IntPoly{{1}}; }
    void add(int degree, const Integer& v)
    {
        if (static_cast<int>(c.size()) <= degree)
            c.resize(degree + 1);
        c[degree] += v;
        trim();
    }
    void trim()
    {
        while (!c.empty() && c.back() == 0)
            c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b)
    {
        IntPoly r;
        if (a.c.empty() || b.c.empty())
            return r;
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    bool operator==(const IntPoly&) const = default;

    /// e.g. "1 - 2q^2 + 2q^6 - q^8"
    std::string str() const
    {
        if (c.empty())
            return "0";
        std::string s;
        for (std::size_t d = 0; d < c.size(); ++d) {
            if (c[d] == 0)
                continue;
            Integer a = abs(c[d]);
            const bool neg = c[d] < 0;
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            const std::string mono = d == 0 ? "" : (d == 1 ? "q" : "q^" + std::to_string(d));
            if (d == 0 || a != 1)
                s += a.str();
            s += mono;
        }
        return s;
    }
};

/// Sum over W of sign(w) q^{shift(w)}.
inline IntPoly shift_polynomial(const ShiftMultiset& shifts)
{
    IntPoly p;
    for (const auto& [i, v] : shifts)
        for (int s : v)
            p.add(s, i % 2 ? -1 : 1);
    return p;
}

struct DenominatorCheck {
    bool equal = false;
    IntPoly alternating_sum; // sum_w sign(w) q^{shift}
    IntPoly product;         // prod_{alpha>0} (1 - q^{m_alpha})
};

inline DenominatorCheck verify_denominator_identity(const RootSystem& rs, const Weight& nu0,
                                                    const WeylGroup* group = nullptr)
{
    DenominatorCheck r;
    r.alternating_sum = shift_polynomial(cohomology_shifts(rs, nu0, group));
    r.product = IntPoly::one();
    for (int m : q_denominator_exponents(rs, nu0)) {
        IntPoly f;
        f.add(0, 1);
        f.add(m, -1);
        r.product = r.product * f;
    }
    r.equal = r.alternating_sum == r.product;
    return r;
}

enum class QDimKind { weyl_module, chiral_euler, irreducible };

/// Closed product formulas for graded dimensions.
inline QSeries q_dim_formula(const RootSystem& rs, QDimKind kind, const Weight& lambda, int N)
{
    if (N < 0)
        throw InvalidInput("N must be non-negative");
    QSeries q = QSeries::one(N);
    q *= weyl_dimension(rs, lambda);
    const int colors = kind == QDimKind::weyl_module ? rs.dim_g() : 2 * rs.dim_flag_manifold();
    for (int j = 1; j <= N; ++j)
        q.divide_by_one_minus_q_power(j, colors);
    if (kind == QDimKind::irreducible) {
        detail::require_regular_dominant(rs, lambda);
        for (int m : q_denominator_exponents(rs, lambda))
            q.divide_by_one_minus_q_power(m);
    }
    return q;
}

/// Multiplies s by a polynomial in q = e^{-delta}.
inline CharSeries mul_q_polynomial(const CharSeries& s, const IntPoly& p)
{
    const auto& rs = s.root_system();
    std::vector<std::pair<Integer, CharSeries>> terms;
    for (int d = 0; d <= p.degree(); ++d)
        if (p.c[d] != 0 && d <= s.trunc().N)
            terms.emplace_back(p.c[d], monomial(rs, rs.zero(), d, 1, s.trunc()));
    if (terms.empty())
        return CharSeries(rs, s.leading(), s.trunc());
    return mul(linear_combine(terms), s);
}

struct LayerRow {
    Weight weight;
    Integer lhs, rhs;
};

struct BwbReport {
    std::string claim;
    Weight nu0;
    Truncation window;
    bool pass = false;
    WindowComparison paths;       // Wakimoto sum vs factored
    WindowComparison assembly;    // Wakimoto sum vs sum_i (-1)^i sum_s q^s ch L
    IntPoly euler_polynomial;     // sum_i (-1)^i sum_s q^s
    bool q_check = false;         // polynomial * dim_q L == dim_q of the Euler character
    std::map<int, std::vector<LayerRow>> tables; // dominant weights per delta-degree
};

inline BwbReport verify_chiral_bwb(const RootSystem& rs, const Weight& nu0, Truncation t)
{
    detail::require_regular_dominant(rs, nu0);
    WeylGroup group(rs);
    BwbReport r;
    r.claim = "euler_chiral(wakimoto_sum) == euler_chiral(factored) == sum_i (-1)^i sum_s q^s ch_irreducible";
    r.nu0 = nu0;
    r.window = t;

    const CharSeries wak = euler_chiral(rs, nu0, t, EulerPath::wakimoto_sum, &group);
    const CharSeries fac = euler_chiral(rs, nu0, t, EulerPath::factored, &group);
    const CharSeries irr = ch_irreducible_critical(rs, nu0, t, &group);
    r.euler_polynomial = shift_polynomial(cohomology_shifts(rs, nu0, &group));
    const CharSeries rhs = mul_q_polynomial(irr, r.euler_polynomial);

    r.paths = window_equal(wak, fac);
    r.assembly = window_equal(wak, rhs);

    QSeries poly(t.N);
    for (int d = 0; d <= std::min(t.N, r.euler_polynomial.degree()); ++d)
        poly[d] = r.euler_polynomial.c[d];
    r.q_check = poly * q_dim_formula(rs, QDimKind::irreducible, nu0, t.N) ==
                q_dim_formula(rs, QDimKind::chiral_euler, nu0, t.N);

    for (const auto& [k, c] : wak.terms()) {
        Weight mu = wak.weight_of(k);
        if (!rs.is_dominant(mu))
            continue;
        r.tables[k.n()].push_back({mu, c, rhs.coefficient_of(mu, k.n())});
    }
    r.pass = r.paths.equal && r.assembly.equal && r.q_check;
    return r;
}

// ---------------------------------------------------------------------------
// Kac-Kazhdan data and blocks at the critical level

struct PredictedWeight {
    Weight weight;
    int delta_degree = 0;
    bool operator==(const PredictedWeight&) const = default;
    bool operator<(const PredictedWeight& o) const
    {
        return delta_degree != o.delta_degree ? delta_degree < o.delta_degree : weight < o.weight;
    }
};

struct KKSolution {
    std::size_t root_index = 0;
    Weight root;
    int n = 0; // <lambda + rho, alpha^vee>, a negative integer
    std::vector<PredictedWeight> predicted; // lambda + n(-alpha + m delta), m = 1..; includes m = ht(alpha)
    PredictedWeight height_family;          // lambda + |n|(alpha - ht(alpha) delta)
};

/// Roots with <lambda + rho, alpha^vee> a negative integer, with the singular weights they predict.
inline std::vector<KKSolution> kac_kazhdan_singular_weights(const RootSystem& rs, const Weight& lambda, int delta_bound)
{
    rs.check_rank(lambda);
    std::vector<KKSolution> out;
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
        const Rational p = rs.pairing(lambda + rs.rho(), k);
        if (!is_integral(p) || p >= 0)
            continue;
        KKSolution s;
        s.root_index = k;
        s.root = rs.positive_roots()[k].root;
        s.n = static_cast<int>(to_ll(p));
        const int a = -s.n;
        for (int m = 1; a * m <= delta_bound; ++m)
            s.predicted.push_back({lambda + s.root * Rational(a), a * m});
        const int ht = rs.positive_roots()[k].height;
        s.height_family = {lambda + s.root * Rational(a), a * ht};
        out.push_back(std::move(s));
    }
    return out;
}

/// All weights (mu, delta-degree <= bound) where a critical-level Verma module of highest
/// weight lambda can carry singular vectors: lambda itself, the Kac-Kazhdan families
/// of real affine roots applied recursively (singular vectors of submodules), and
/// the imaginary shifts mu - m delta produced by the Sugawara centre.
inline std::set<PredictedWeight> predicted_singular_set(const RootSystem& rs, const Weight& lambda, int delta_bound)
{
    std::set<PredictedWeight> seen{{lambda, 0}};
    std::deque<PredictedWeight> todo{{lambda, 0}};
    auto push = [&](PredictedWeight p) {
        if (p.delta_degree <= delta_bound && seen.insert(p).second)
            todo.push_back(p);
    };
    while (!todo.empty()) {
        PredictedWeight cur = todo.front();
        todo.pop_front();
        for (int m = 1; cur.delta_degree + m <= delta_bound; ++m)
            push({cur.weight, cur.delta_degree + m});
        for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
            const Rational p = rs.pairing(cur.weight + rs.rho(), k);
            if (!is_integral(p) || p == 0)
                continue;
            const int j = static_cast<int>(to_ll(p));
            const Weight& alpha = rs.positive_roots()[k].root;
            if (j < 0) {
                // root -alpha + m delta, m >= 1
                for (int m = 1; cur.delta_degree - j * m <= delta_bound; ++m)
                    push({cur.weight - alpha * Rational(j), cur.delta_degree - j * m});
            } else {
                // root alpha + m delta, m >= 0
                for (int m = 0; cur.delta_degree + j * m <= delta_bound; ++m)
                    push({cur.weight - alpha * Rational(j), cur.delta_degree + j * m});
            }
        }
    }
    return seen;
}

struct BlockRepresentative {
    Weight representative;
    bool singular = false;
};

/// Dominant-after-rho-shift element of the dot orbit of lambda.
inline BlockRepresentative block_representative(const RootSystem& rs, const Weight& lambda)
{
    auto d = dot_normalize(rs, lambda);
    return {d.dominant, d.singular};
}

namespace detail {

/// Whether w^{-1} sends the positive root to a negative root.
inline bool inverse_makes_negative(const RootSystem& rs, const WeylElement& w, const PositiveRoot& a)
{
    auto c = rs.to_simple_coords(inverse_action(rs, w, a.root));
    return std::any_of(c.begin(), c.end(), [](const Rational& q) { return q < 0; });
}

} // namespace detail

/// Character of the n-hat_+ invariants-side factor of a w-twisted Wakimoto module:
/// e^{w o nu0} times the factors over w(Delta_-) (n >= 0 for positive roots, n >= 1 for negative).
inline CharSeries wakimoto_invariants_character(const RootSystem& rs, const WeylElement& w, const Weight& nu0,
                                                Truncation t)
{
    rs.check_rank(nu0);
    if (!nu0.is_integral())
        throw InvalidInput("Wakimoto character needs an integral weight");
    CharSeries s = monomial(rs, dot_action(rs, w, nu0), 0, 1, t);
    for (const auto& a : rs.positive_roots()) {
        std::vector<int> neg(a.simple.size());
        std::transform(a.simple.begin(), a.simple.end(), neg.begin(), [](int x) { return -x; });
        if (detail::inverse_makes_negative(rs, w, a)) {
            for (int n = 0; n <= t.N; ++n)
                detail::divide_by_factor(s, a.simple, n);
        } else {
            for (int n = 1; n <= t.N; ++n)
                detail::divide_by_factor(s, neg, n);
        }
    }
    return s;
}

/// Character of U(L w(n_-) cap n-hat_-), the complementary factor.
inline CharSeries wakimoto_complement_character(const RootSystem& rs, const WeylElement& w, Truncation t)
{
    CharSeries s = monomial(rs, rs.zero(), 0, 1, t);
    for (const auto& a : rs.positive_roots()) {
        std::vector<int> neg(a.simple.size());
        std::transform(a.simple.begin(), a.simple.end(), neg.begin(), [](int x) { return -x; });
        if (detail::inverse_makes_negative(rs, w, a)) {
            for (int n = 1; n <= t.N; ++n)
                detail::divide_by_factor(s, neg, n);
        } else {
            for (int n = 0; n <= t.N; ++n)
                detail::divide_by_factor(s, a.simple, n);
        }
    }
    return s;
}

} // namespace cbwb
