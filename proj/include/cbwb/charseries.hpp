#pragma once

// Truncated formal characters over the affine weight lattice.
//
// A CharSeries stores coefficients of e^{mu0 - beta}, where beta runs over the
// positive cone of the affine root lattice. beta is written in affine simple
// root coordinates (c_0; c_1..c_r) with alpha_0 = delta - theta, and we call
// n = c_0 the delta-exponent and depth = (c_1..c_r). Decoded:
//
//     weight(depth, n) = mu0 - sum_i depth_i alpha_i + n theta - n delta.
//
// Every character in the library (Verma, Wakimoto, Euler, genus bundles) is
// supported in such a cone, so products are exact on the window
// {n <= N, |depth| <= D}.

#include "root_data.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cbwb {

inline constexpr int kMaxWindow = 63;

struct Truncation {
    int N = 0; // max delta exponent
    int D = 0; // max height of the finite part of the depth

    bool operator==(const Truncation&) const = default;
    void validate() const
    {
        if (N < 0 || D < 0 || N > kMaxWindow || D > kMaxWindow)
            throw InvalidInput("truncation (N=" + std::to_string(N) + ", D=" + std::to_string(D) +
                               ") outside [0, " + std::to_string(kMaxWindow) + "]");
    }
    static Truncation meet(Truncation a, Truncation b) { return {std::min(a.N, b.N), std::min(a.D, b.D)}; }
};

/// Packed cone coordinates: 7-bit fields (n, depth_0, ..., depth_7), n most significant,
/// so integer order is lexicographic order on (n, depth).
class ConeKey {
public:
    static constexpr int kBits = 7;
    static constexpr std::uint64_t kMask = (1u << kBits) - 1;

    ConeKey() = default;
    explicit ConeKey(std::uint64_t raw) : raw_(raw) {}
    ConeKey(std::span<const int> depth, int n)
    {
        raw_ = static_cast<std::uint64_t>(n) << shift_n();
        for (std::size_t i = 0; i < depth.size(); ++i)
            raw_ |= static_cast<std::uint64_t>(depth[i]) << shift(i);
    }

    std::uint64_t raw() const { return raw_; }
    int n() const { return static_cast<int>((raw_ >> shift_n()) & kMask); }
    int depth(std::size_t i) const { return static_cast<int>((raw_ >> shift(i)) & kMask); }
    std::vector<int> depth_vector(int rank) const
    {
        std::vector<int> d(rank);
        for (int i = 0; i < rank; ++i)
            d[i] = depth(i);
        return d;
    }
    int height(int rank) const
    {
        int h = 0;
        for (int i = 0; i < rank; ++i)
            h += depth(i);
        return h;
    }
    /// Field-wise sum; callers keep each field below 64 so nothing carries.
    friend ConeKey operator+(ConeKey a, ConeKey b) { return ConeKey(a.raw_ + b.raw_); }
    auto operator<=>(const ConeKey&) const = default;

private:
    static constexpr int shift_n() { return 8 * kBits; }
    static constexpr int shift(std::size_t i) { return static_cast<int>(7 - i) * kBits; }
    std::uint64_t raw_ = 0;
};

class CharSeries {
public:
    using Terms = std::map<ConeKey, Integer>;

    CharSeries(RootSystem rs, Weight leading, Truncation trunc)
        : rs_(std::move(rs)), leading_(std::move(leading)), trunc_(trunc)
    {
        trunc_.validate();
        rs_.check_rank(leading_);
    }

    const RootSystem& root_system() const { return rs_; }
    const Weight& leading() const { return leading_; }
    Truncation trunc() const { return trunc_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    int rank() const { return rs_.rank(); }

    bool in_window(std::span<const int> depth, int n) const
    {
        if (n < 0 || n > trunc_.N)
            return false;
        int h = 0;
        for (int d : depth) {
            if (d < 0)
                return false;
            h += d;
        }
        return h <= trunc_.D;
    }
    bool in_window(ConeKey k) const { return k.n() <= trunc_.N && k.height(rank()) <= trunc_.D; }

    Integer coefficient(std::span<const int> depth, int n) const
    {
        if (!in_window(depth, n))
            throw TruncationError("coefficient requested outside the truncation window");
        auto it = terms_.find(ConeKey(depth, n));
        return it == terms_.end() ? Integer(0) : it->second;
    }
    Integer coefficient(const std::vector<int>& depth, int n) const { return coefficient(std::span<const int>(depth), n); }

    /// Cone coordinates of e^{mu - n delta}, if mu - n delta lies in the cone below the leading weight.
    std::optional<std::vector<int>> depth_of(const Weight& mu, int n) const
    {
        Weight diff = leading_ - mu;
        auto c = rs_.root_lattice_coords(diff);
        if (!c)
            return std::nullopt;
        const auto& th = rs_.theta();
        for (int i = 0; i < rank(); ++i) {
            (*c)[i] += n * th[i];
            if ((*c)[i] < 0)
                return std::nullopt;
        }
        return c;
    }

    /// Coefficient of e^{mu - n delta}. Outside the cone the coefficient is zero;
    /// outside the window it is unknown and we throw.
    Integer coefficient_of(const Weight& mu, int n) const
    {
        if (n < 0)
            return 0;
        auto d = depth_of(mu, n);
        if (!d)
            return 0;
        return coefficient(*d, n);
    }

    /// Finite weight of the term with the given cone coordinates (the delta part is -n delta).
    Weight weight_of(std::span<const int> depth, int n) const
    {
        std::vector<long long> c(rank());
        const auto& th = rs_.theta();
        for (int i = 0; i < rank(); ++i)
            c[i] = static_cast<long long>(n) * th[i] - depth[i];
        return leading_ + rs_.from_simple_coords(std::span<const long long>(c));
    }
    Weight weight_of(ConeKey k) const { return weight_of(k.depth_vector(rank()), k.n()); }

    /// Adds c to the coefficient at (depth, n); terms outside the window are dropped.
    void add(std::span<const int> depth, int n, const Integer& c)
    {
        if (!in_window(depth, n) || c == 0)
            return;
        add(ConeKey(depth, n), c);
    }
    void add(const std::vector<int>& depth, int n, const Integer& c) { add(std::span<const int>(depth), n, c); }
    void add(ConeKey k, const Integer& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Adds c * e^{mu - n delta}; must lie in the cone.
    void add_weight(const Weight& mu, int n, const Integer& c)
    {
        auto d = depth_of(mu, n);
        if (!d)
            throw InvalidInput("weight " + mu.str() + " - " + std::to_string(n) + " delta lies outside the cone of " +
                               leading_.str());
        add(*d, n, c);
    }

    /// Same series with a lower truncation window.
    CharSeries restricted(Truncation t) const
    {
        t = Truncation::meet(t, trunc_);
        CharSeries out(rs_, leading_, t);
        for (const auto& [k, c] : terms_)
            if (out.in_window(k))
                out.terms_.emplace(k, c);
        return out;
    }

    /// Same series re-anchored at a leading weight higher by shift (simple-root coords, all >= 0).
    CharSeries reanchored(const std::vector<int>& shift) const
    {
        Weight lead = leading_ + rs_.from_simple_coords(shift);
        CharSeries out(rs_, lead, trunc_);
        int hs = 0;
        for (int s : shift)
            hs += s;
        ConeKey ks(shift, 0);
        for (const auto& [k, c] : terms_)
            if (k.height(rank()) + hs <= trunc_.D)
                out.terms_.emplace(k + ks, c);
        return out;
    }

    CharSeries& operator*=(const Integer& s)
    {
        if (s == 0)
            terms_.clear();
        for (auto& [k, c] : terms_)
            c *= s;
        return *this;
    }

    /// Multiplies in place by (1 - x)^{-1} where x = e^{-(shift, n)} in cone coordinates,
    /// via the recurrence R[k] = S[k] + R[k - x].
    void divide_by_one_minus(ConeKey x)
    {
        if (x.raw() == 0)
            throw InvalidInput("cannot invert 1 - 1");
        const int hx = x.height(rank()), nx = x.n();
        if (nx > trunc_.N || hx > trunc_.D)
            return;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            const ConeKey k = it->first;
            if (k.n() + nx > trunc_.N || k.height(rank()) + hx > trunc_.D)
                continue;
            add(k + x, it->second);
        }
    }

private:
    RootSystem rs_;
    Weight leading_;
    Truncation trunc_;
    Terms terms_;
};

/// Truncated power series in q = e^{-delta} with integer coefficients.
struct QSeries {
    std::vector<Integer> coeffs; // degrees 0..N

    QSeries() = default;
    explicit QSeries(int N) : coeffs(static_cast<std::size_t>(N) + 1) {}
    static QSeries one(int N)
    {
        QSeries q(N);
        q.coeffs[0] = 1;
        return q;
    }
    static QSeries from(std::vector<Integer> c) { QSeries q; q.coeffs = std::move(c); return q; }

    int N() const { return static_cast<int>(coeffs.size()) - 1; }
    const Integer& operator[](int d) const { return coeffs[d]; }
    Integer& operator[](int d) { return coeffs[d]; }

    QSeries& operator*=(const Integer& s)
    {
        for (auto& c : coeffs)
            c *= s;
        return *this;
    }
    friend QSeries operator*(const QSeries& a, const QSeries& b)
    {
        QSeries r(std::min(a.N(), b.N()));
        for (int i = 0; i <= r.N(); ++i)
            if (a.coeffs[i] != 0)
                for (int j = 0; i + j <= r.N(); ++j)
                    r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        return r;
    }
    /// Multiplies by (1 - q^m)^{-power}.
    QSeries& divide_by_one_minus_q_power(int m, int power = 1)
    {
        if (m <= 0)
            throw InvalidInput("(1 - q^m)^{-1} needs m > 0");
        for (int p = 0; p < power; ++p)
            for (int d = m; d <= N(); ++d)
                coeffs[d] += coeffs[d - m];
        return *this;
    }
    QSeries truncated(int n) const
    {
        QSeries r(std::min(n, N()));
        std::copy_n(coeffs.begin(), r.coeffs.size(), r.coeffs.begin());
        return r;
    }
    bool operator==(const QSeries&) const = default;
    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            s += (i ? ", " : "") + coeffs[i].str();
        return "[" + s + "]";
    }
};

// ---------------------------------------------------------------------------
// Ring operations

/// c * e^{mu - n delta} with leading weight mu.
inline CharSeries monomial(const RootSystem& rs, const Weight& mu, int n, const Integer& c, Truncation trunc)
{
    if (n < 0)
        throw InvalidInput("delta exponent must be non-negative");
    CharSeries s(rs, mu, trunc);
    std::vector<int> depth(rs.theta().begin(), rs.theta().end());
    for (auto& d : depth)
        d *= n;
    s.add(depth, n, c);
    return s;
}

namespace detail {

inline void check_same_system(const CharSeries& a, const CharSeries& b)
{
    if (!(a.root_system().type() == b.root_system().type()))
        throw InvalidInput("series over different root systems");
}

/// Q_+-join of the leading weights and, per input, the simple-root shift to reach it.
inline std::pair<Weight, std::vector<std::vector<int>>> join_leadings(const std::vector<const CharSeries*>& xs)
{
    const auto& rs = xs.front()->root_system();
    std::vector<std::vector<int>> diffs;
    std::vector<int> top(rs.rank(), 0);
    for (const auto* s : xs) {
        auto d = rs.root_lattice_coords(s->leading() - xs.front()->leading());
        if (!d)
            throw InvalidInput("leading weights " + s->leading().str() + " and " + xs.front()->leading().str() +
                               " do not differ by a root-lattice element; windows are disjoint");
        for (int i = 0; i < rs.rank(); ++i)
            top[i] = std::max(top[i], (*d)[i]);
        diffs.push_back(std::move(*d));
    }
    Weight join = xs.front()->leading() + rs.from_simple_coords(top);
    std::vector<std::vector<int>> shifts;
    for (auto& d : diffs) {
        std::vector<int> sh(rs.rank());
        for (int i = 0; i < rs.rank(); ++i)
            sh[i] = top[i] - d[i];
        shifts.push_back(std::move(sh));
    }
    return {join, shifts};
}

} // namespace detail

/// Coefficientwise sum on the common window, anchored at the join of the leading weights.
inline CharSeries linear_combine(const std::vector<std::pair<Integer, CharSeries>>& addends)
{
    if (addends.empty())
        throw InvalidInput("linear_combine needs at least one addend");
    std::vector<const CharSeries*> xs;
    Truncation t = addends.front().second.trunc();
    for (const auto& [c, s] : addends) {
        detail::check_same_system(addends.front().second, s);
        xs.push_back(&s);
        t = Truncation::meet(t, s.trunc());
    }
    auto [join, shifts] = detail::join_leadings(xs);
    CharSeries out(xs.front()->root_system(), join, t);
    for (std::size_t k = 0; k < addends.size(); ++k) {
        const auto& [coef, s] = addends[k];
        if (coef == 0)
            continue;
        int hs = 0;
        for (int v : shifts[k])
            hs += v;
        ConeKey ks(shifts[k], 0);
        for (const auto& [key, c] : s.terms())
            if (key.n() <= t.N && key.height(s.rank()) + hs <= t.D)
                out.add(key + ks, coef * c);
    }
    return out;
}

inline CharSeries operator+(const CharSeries& a, const CharSeries& b) { return linear_combine({{1, a}, {1, b}}); }
inline CharSeries operator-(const CharSeries& a, const CharSeries& b) { return linear_combine({{1, a}, {-1, b}}); }

/// Cauchy product truncated to the meet of both windows.
inline CharSeries mul(const CharSeries& a, const CharSeries& b)
{
    detail::check_same_system(a, b);
    Truncation t = Truncation::meet(a.trunc(), b.trunc());
    CharSeries out(a.root_system(), a.leading() + b.leading(), t);
    const int r = a.rank();
    std::vector<std::pair<ConeKey, const Integer*>> bt;
    for (const auto& [k, c] : b.terms())
        if (k.n() <= t.N && k.height(r) <= t.D)
            bt.emplace_back(k, &c);
    for (const auto& [ka, ca] : a.terms()) {
        const int na = ka.n(), ha = ka.height(r);
        if (na > t.N || ha > t.D)
            continue;
        for (const auto& [kb, cb] : bt)
            if (na + kb.n() <= t.N && ha + kb.height(r) <= t.D)
                out.add(ka + kb, ca * *cb);
    }
    return out;
}

inline CharSeries operator*(const CharSeries& a, const CharSeries& b) { return mul(a, b); }

namespace detail {

/// Multiplies s by (1 - e^{-(root + n delta)})^{-1}; root in simple-root coordinates.
/// Factors lying entirely outside the window act as the identity there.
inline void divide_by_factor(CharSeries& s, std::span<const int> root_simple, int n)
{
    const auto& rs = s.root_system();
    std::vector<int> depth(rs.rank());
    int h = 0;
    for (int i = 0; i < rs.rank(); ++i) {
        depth[i] = root_simple[i] + n * rs.theta()[i];
        if (depth[i] < 0)
            throw ConsistencyError("factor outside the affine cone");
        h += depth[i];
    }
    if (n > s.trunc().N || h > s.trunc().D)
        return;
    s.divide_by_one_minus(ConeKey(depth, n));
}
inline void divide_by_factor(CharSeries& s, const std::vector<int>& root_simple, int n)
{
    divide_by_factor(s, std::span<const int>(root_simple), n);
}

/// Classifies root (given as a weight) as 0, a root, or neither; returns simple-root coordinates.
inline std::vector<int> root_or_zero_coords(const RootSystem& rs, const Weight& root, bool& is_positive)
{
    auto c = rs.root_lattice_coords(root);
    if (c) {
        if (std::all_of(c->begin(), c->end(), [](int x) { return x == 0; })) {
            is_positive = false;
            return *c;
        }
        std::vector<int> neg(c->size());
        std::transform(c->begin(), c->end(), neg.begin(), [](int x) { return -x; });
        if (rs.find_positive_root(std::span<const int>(*c))) {
            is_positive = true;
            return *c;
        }
        if (rs.find_positive_root(std::span<const int>(neg))) {
            is_positive = false;
            return *c;
        }
    }
    throw InvalidInput(root.str() + " is neither zero nor a root");
}

} // namespace detail

/// Geometric series sum_k e^{-k(root + n delta)}; root in Delta union {0}.
inline CharSeries invert_factor(const RootSystem& rs, const Weight& root, int n, Truncation trunc)
{
    if (n < 0)
        throw InvalidInput("delta exponent must be non-negative");
    bool positive = false;
    auto c = detail::root_or_zero_coords(rs, root, positive);
    const bool zero = std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
    if (n == 0 && (zero || !positive))
        throw InvalidInput("(1 - e^{-(" + root.str() + ")})^{-1} does not converge in the cone");
    CharSeries s = monomial(rs, rs.zero(), 0, 1, trunc);
    detail::divide_by_factor(s, c, n);
    return s;
}

enum class RootProduct {
    positive_real,   // prod over alpha in Delta_+, n >= 0 and alpha in Delta_-, n >= 1
    real_n_ge_1,     // prod over alpha in Delta, n >= 1
    imaginary_mult_r // prod over n >= 1 of (1 - q^n)^{-rank}
};

/// Multiplies s in place by the selected product of inverse factors.
inline void divide_by_root_product(CharSeries& s, RootProduct which)
{
    const auto& rs = s.root_system();
    const int N = s.trunc().N;
    if (which == RootProduct::positive_real) {
        for (const auto& a : rs.positive_roots())
            detail::divide_by_factor(s, a.simple, 0);
        which = RootProduct::real_n_ge_1;
    }
    if (which == RootProduct::real_n_ge_1) {
        for (int n = 1; n <= N; ++n)
            for (const auto& a : rs.positive_roots()) {
                std::vector<int> neg(a.simple.size());
                std::transform(a.simple.begin(), a.simple.end(), neg.begin(), [](int x) { return -x; });
                detail::divide_by_factor(s, a.simple, n);
                detail::divide_by_factor(s, neg, n);
            }
        return;
    }
    std::vector<int> zero(rs.rank(), 0);
    for (int n = 1; n <= N; ++n)
        for (int k = 0; k < rs.rank(); ++k)
            detail::divide_by_factor(s, zero, n);
}

inline CharSeries affine_real_root_product(const RootSystem& rs, RootProduct which, Truncation trunc)
{
    CharSeries s = monomial(rs, rs.zero(), 0, 1, trunc);
    divide_by_root_product(s, which);
    return s;
}

/// e^alpha -> 1, e^{-delta} -> q. Requires every delta layer to stay at least one step
/// inside the depth cutoff, otherwise the sum over a layer could be incomplete.
inline QSeries specialize_q(const CharSeries& s)
{
    QSeries q(s.trunc().N);
    for (const auto& [k, c] : s.terms()) {
        if (k.height(s.rank()) >= s.trunc().D)
            throw TruncationError("layer q^" + std::to_string(k.n()) +
                                  " reaches the depth cutoff D=" + std::to_string(s.trunc().D) +
                                  "; its weight support is not certified finite");
        q[k.n()] += c;
    }
    return q;
}

struct Discrepancy {
    std::vector<int> depth;
    int n = 0;
    Weight weight; // finite part of the differing term
    Integer lhs, rhs;
};

struct WindowComparison {
    bool equal = true;
    Weight anchor;
    Truncation window;
    std::optional<Discrepancy> first;
};

/// Compares two series on their common window after aligning leading weights.
inline WindowComparison window_equal(const CharSeries& a, const CharSeries& b)
{
    CharSeries diff = linear_combine({{1, a}, {-1, b}});
    WindowComparison res{true, diff.leading(), diff.trunc(), std::nullopt};
    if (diff.is_zero())
        return res;
    res.equal = false;
    const auto& [k, c] = *diff.terms().begin();
    Discrepancy d;
    d.depth = k.depth_vector(diff.rank());
    d.n = k.n();
    d.weight = diff.weight_of(k);
    d.lhs = a.coefficient_of(d.weight, d.n);
    d.rhs = b.coefficient_of(d.weight, d.n);
    res.first = std::move(d);
    return res;
}

} // namespace cbwb
