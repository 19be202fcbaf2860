#pragma once

// Finite-type root data in the fundamental-weight basis.
//
// Conventions: cartan(i, j) = <alpha_j, alpha_i^vee>, so the simple root
// alpha_j has fundamental coordinates given by column j of the Cartan matrix.
// The invariant form is normalized so that long roots have squared length 2.

#include "arith.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace cbwb {

inline constexpr int kMaxRank = 8;

struct CartanType {
    char series = 'A';
    int rank = 1;

    static CartanType parse(std::string_view s)
    {
        if (s.size() < 2)
            throw InvalidInput("cartan type must look like 'A2', got '" + std::string(s) + "'");
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
        int r = 0;
        for (char d : s.substr(1)) {
            if (d < '0' || d > '9')
                throw InvalidInput("cartan type must look like 'A2', got '" + std::string(s) + "'");
            r = r * 10 + (d - '0');
            if (r > 1000)
                break;
        }
        CartanType t{c, r};
        t.validate();
        return t;
    }

    void validate() const
    {
        bool ok = false;
        switch (series) {
        case 'A': ok = rank >= 1; break;
        case 'B': ok = rank >= 2; break;
        case 'C': ok = rank >= 2; break;
        case 'D': ok = rank >= 4; break;
        case 'E': ok = rank >= 6 && rank <= 8; break;
        case 'F': ok = rank == 4; break;
        case 'G': ok = rank == 2; break;
        default: throw InvalidInput(std::string("unknown Cartan series '") + series + "'");
        }
        if (!ok)
            throw InvalidInput("invalid rank " + std::to_string(rank) + " for series " + series);
        if (rank > kMaxRank)
            throw InvalidInput("rank " + std::to_string(rank) + " exceeds the supported maximum " +
                               std::to_string(kMaxRank));
    }

    std::string name() const { return series + std::to_string(rank); }
    bool operator==(const CartanType&) const = default;
};

/// Exact weight in fundamental-weight coordinates.
struct Weight {
    std::vector<Rational> coords;

    Weight() = default;
    explicit Weight(std::size_t rank) : coords(rank) {}
    explicit Weight(std::vector<Rational> c) : coords(std::move(c)) {}
    Weight(std::initializer_list<int> c)
    {
        for (int x : c)
            coords.emplace_back(x);
    }
    static Weight from_ints(std::span<const int> c)
    {
        Weight w(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            w.coords[i] = c[i];
        return w;
    }
    static Weight from_ints(std::span<const long long> c)
    {
        Weight w(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            w.coords[i] = c[i];
        return w;
    }

    std::size_t rank() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }

    bool is_integral() const
    {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return cbwb::is_integral(q); });
    }
    bool is_zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q == 0; });
    }
    std::vector<long long> to_ints() const
    {
        std::vector<long long> out;
        out.reserve(coords.size());
        for (const auto& q : coords)
            out.push_back(to_ll(q));
        return out;
    }

    Weight& operator+=(const Weight& o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < coords.size(); ++i)
            coords[i] += o.coords[i];
        return *this;
    }
    Weight& operator-=(const Weight& o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < coords.size(); ++i)
            coords[i] -= o.coords[i];
        return *this;
    }
    Weight& operator*=(const Rational& s)
    {
        for (auto& c : coords)
            c *= s;
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
    friend Weight operator*(Weight a, const Rational& s) { return a *= s; }
    friend Weight operator-(Weight a)
    {
        for (auto& c : a.coords)
            c = -c;
        return a;
    }
    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator<(const Weight& o) const
    {
        return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(), o.coords.end());
    }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i)
            s += (i ? "," : "") + coords[i].str();
        return s + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

private:
    void check_rank(const Weight& o) const
    {
        if (o.coords.size() != coords.size())
            throw InvalidInput("weight rank mismatch: " + std::to_string(coords.size()) + " vs " +
                               std::to_string(o.coords.size()));
    }
};

struct PositiveRoot {
    Weight root;                   // fundamental-weight coordinates
    std::vector<int> simple;       // coordinates over the simple roots
    std::vector<int> coroot;       // coordinates over the simple coroots
    int height = 0;
    bool is_long = true;
};

namespace detail {

inline std::vector<std::vector<int>> cartan_matrix(CartanType t)
{
    const int n = t.rank;
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (t.series) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i)
            link(i, i + 1);
        break;
    case 'B': // alpha_n short
        for (int i = 0; i + 1 < n; ++i)
            link(i, i + 1);
        a[n - 1][n - 2] = -2;
        break;
    case 'C': // alpha_n long
        for (int i = 0; i + 1 < n; ++i)
            link(i, i + 1);
        a[n - 2][n - 1] = -2;
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i)
            link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'E': // Bourbaki: 1-3-4-5-..., 2 attached to 4
        link(0, 2);
        link(1, 3);
        for (int i = 2; i + 1 < n; ++i)
            link(i, i + 1);
        break;
    case 'F': // alpha_1, alpha_2 long
        link(0, 1);
        link(1, 2);
        link(2, 3);
        a[2][1] = -2;
        break;
    case 'G': // alpha_1 short
        a[0][1] = -3;
        a[1][0] = -1;
        break;
    }
    return a;
}

inline std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m)
{
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0)
            ++piv;
        if (piv == n)
            throw ConsistencyError("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0)
                continue;
            Rational f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace detail

/// Immutable root system. Copies share the underlying tables.
class RootSystem {
public:
    explicit RootSystem(CartanType t) : d_(std::make_shared<Data>(build(t))) {}

    const CartanType& type() const { return d_->type; }
    int rank() const { return d_->type.rank; }
    int cartan(int i, int j) const { return d_->cartan[i][j]; }
    const std::vector<std::vector<int>>& cartan_matrix() const { return d_->cartan; }
    const std::vector<Weight>& simple_roots() const { return d_->simple_roots; }
    const std::vector<Weight>& fundamental_weights() const { return d_->fundamental; }
    const std::vector<PositiveRoot>& positive_roots() const { return d_->positive; }
    std::size_t num_positive_roots() const { return d_->positive.size(); }
    int dim_flag_manifold() const { return static_cast<int>(d_->positive.size()); }
    int dim_g() const { return rank() + 2 * dim_flag_manifold(); }
    const Weight& rho() const { return d_->rho; }
    /// <alpha_i, rho^vee> for every simple root (identically 1).
    std::vector<Rational> rho_check_pairings() const { return std::vector<Rational>(rank(), Rational(1)); }
    /// Symmetric Gram matrix of the fundamental weights.
    const std::vector<std::vector<Rational>>& form_matrix() const { return d_->form; }
    /// Squared-length ratio d_i = (alpha_i, alpha_i) / 2.
    const std::vector<Rational>& symmetrizer() const { return d_->sym; }
    int dual_coxeter() const { return d_->dual_coxeter; }
    std::size_t highest_root_index() const { return d_->highest; }
    const PositiveRoot& highest_root() const { return d_->positive[d_->highest]; }
    /// Simple-root coordinates of the highest root.
    const std::vector<int>& theta() const { return d_->positive[d_->highest].simple; }
    int theta_height() const { return d_->positive[d_->highest].height; }

    Weight zero() const { return Weight(static_cast<std::size_t>(rank())); }

    void check_rank(const Weight& w) const
    {
        if (static_cast<int>(w.rank()) != rank())
            throw InvalidInput("weight " + w.str() + " has rank " + std::to_string(w.rank()) + ", expected " +
                               std::to_string(rank()) + " for " + type().name());
    }

    /// <lambda, alpha^vee> for the positive root with the given index.
    Rational pairing(const Weight& lambda, std::size_t root_index) const
    {
        check_rank(lambda);
        if (root_index >= d_->positive.size())
            throw InvalidInput("root index out of range");
        Rational s = 0;
        const auto& cr = d_->positive[root_index].coroot;
        for (int j = 0; j < rank(); ++j)
            s += lambda[j] * cr[j];
        return s;
    }

    /// <lambda, alpha^vee> where alpha is given as a weight; alpha must be a positive root.
    Rational pairing(const Weight& lambda, const Weight& alpha) const
    {
        auto idx = find_positive_root(alpha);
        if (!idx)
            throw InvalidInput("not a positive root: " + alpha.str());
        return pairing(lambda, *idx);
    }

    std::optional<std::size_t> find_positive_root(const Weight& alpha) const
    {
        check_rank(alpha);
        for (std::size_t k = 0; k < d_->positive.size(); ++k)
            if (d_->positive[k].root == alpha)
                return k;
        return std::nullopt;
    }

    /// Index of the positive root with given simple-root coordinates.
    std::optional<std::size_t> find_positive_root(std::span<const int> simple) const
    {
        for (std::size_t k = 0; k < d_->positive.size(); ++k)
            if (std::equal(simple.begin(), simple.end(), d_->positive[k].simple.begin(), d_->positive[k].simple.end()))
                return k;
        return std::nullopt;
    }

    /// Coordinates of lambda over the simple roots (rational in general).
    std::vector<Rational> to_simple_coords(const Weight& lambda) const
    {
        check_rank(lambda);
        std::vector<Rational> c(rank());
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                c[i] += d_->cartan_inv[i][j] * lambda[j];
        return c;
    }

    /// Simple-root coordinates of lambda, which must lie in the root lattice.
    std::optional<std::vector<int>> root_lattice_coords(const Weight& lambda) const
    {
        auto c = to_simple_coords(lambda);
        std::vector<int> out(rank());
        for (int i = 0; i < rank(); ++i) {
            if (!cbwb::is_integral(c[i]))
                return std::nullopt;
            out[i] = static_cast<int>(to_ll(c[i]));
        }
        return out;
    }

    template <class Int>
    Weight from_simple_coords(std::span<const Int> c) const
    {
        Weight w(static_cast<std::size_t>(rank()));
        for (int i = 0; i < rank(); ++i) {
            long long s = 0;
            for (int j = 0; j < rank(); ++j)
                s += static_cast<long long>(d_->cartan[i][j]) * static_cast<long long>(c[j]);
            w[i] = s;
        }
        return w;
    }
    Weight from_simple_coords(const std::vector<int>& c) const { return from_simple_coords(std::span<const int>(c)); }

    /// <lambda, rho^vee>.
    Rational rho_check(const Weight& lambda) const
    {
        Rational s = 0;
        for (const auto& c : to_simple_coords(lambda))
            s += c;
        return s;
    }

    Rational form(const Weight& a, const Weight& b) const
    {
        check_rank(a);
        check_rank(b);
        Rational s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                if (d_->form[i][j] != 0)
                    s += a[i] * d_->form[i][j] * b[j];
        return s;
    }

    bool is_dominant(const Weight& lambda) const
    {
        check_rank(lambda);
        return std::all_of(lambda.coords.begin(), lambda.coords.end(), [](const Rational& q) { return q >= 0; });
    }
    /// lambda + rho is not fixed by any reflection.
    bool is_regular(const Weight& lambda) const
    {
        auto shifted = lambda + rho();
        for (std::size_t k = 0; k < d_->positive.size(); ++k)
            if (pairing(shifted, k) == 0)
                return false;
        return true;
    }
    /// Regular dominant integral in the sense of the chiral BWB theorem: all coordinates >= 1.
    bool is_regular_dominant_integral(const Weight& lambda) const
    {
        check_rank(lambda);
        return lambda.is_integral() &&
               std::all_of(lambda.coords.begin(), lambda.coords.end(), [](const Rational& q) { return q >= 1; });
    }

    /// Simple reflection s_i acting linearly.
    Weight reflect(const Weight& lambda, int i) const
    {
        Weight out = lambda;
        const Rational c = lambda[i];
        if (c != 0)
            for (int k = 0; k < rank(); ++k)
                out[k] -= c * d_->cartan[k][i];
        return out;
    }

    bool operator==(const RootSystem& o) const { return d_ == o.d_ || d_->type == o.d_->type; }

private:
    struct Data {
        CartanType type;
        std::vector<std::vector<int>> cartan;
        std::vector<std::vector<Rational>> cartan_inv;
        std::vector<Weight> simple_roots, fundamental;
        std::vector<PositiveRoot> positive;
        Weight rho;
        std::vector<Rational> sym;
        std::vector<std::vector<Rational>> form;
        std::size_t highest = 0;
        int dual_coxeter = 0;
    };

    static Data build(CartanType t)
    {
        t.validate();
        Data d;
        d.type = t;
        const int n = t.rank;
        d.cartan = detail::cartan_matrix(t);

        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[i][j] = d.cartan[i][j];
        d.cartan_inv = detail::invert(a);

        for (int j = 0; j < n; ++j) {
            Weight s(static_cast<std::size_t>(n)), f(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                s[i] = d.cartan[i][j];
            f[j] = 1;
            d.simple_roots.push_back(s);
            d.fundamental.push_back(f);
        }

        // symmetrizer: d_i A_ij = d_j A_ji, propagated along the (connected) Dynkin diagram
        d.sym.assign(n, Rational(0));
        d.sym[0] = 1;
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (int j = 0; j < n; ++j)
                if (j != i && d.cartan[i][j] != 0 && d.sym[j] == 0) {
                    d.sym[j] = d.sym[i] * d.cartan[i][j] / d.cartan[j][i];
                    queue.push_back(j);
                }
        }
        Rational mx = *std::max_element(d.sym.begin(), d.sym.end());
        for (auto& x : d.sym)
            x /= mx;

        d.form.assign(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d.form[i][j] = d.sym[i] * d.cartan_inv[i][j];

        // positive roots: closure of the simple roots under simple reflections, staying positive
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> order;
        std::deque<std::vector<int>> todo;
        for (int j = 0; j < n; ++j) {
            std::vector<int> e(n, 0);
            e[j] = 1;
            seen.insert(e);
            todo.push_back(e);
        }
        while (!todo.empty()) {
            auto beta = todo.front();
            todo.pop_front();
            order.push_back(beta);
            for (int i = 0; i < n; ++i) {
                int p = 0;
                for (int j = 0; j < n; ++j)
                    p += beta[j] * d.cartan[i][j];
                if (p == 0)
                    continue;
                auto img = beta;
                img[i] -= p;
                if (std::all_of(img.begin(), img.end(), [](int x) { return x >= 0; }) && seen.insert(img).second)
                    todo.push_back(img);
            }
        }
        std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
            int hx = 0, hy = 0;
            for (int v : x)
                hx += v;
            for (int v : y)
                hy += v;
            return hx != hy ? hx < hy : x > y;
        });
        for (const auto& beta : order) {
            PositiveRoot r;
            r.simple = beta;
            r.root = Weight(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                long long s = 0;
                for (int j = 0; j < n; ++j)
                    s += static_cast<long long>(d.cartan[i][j]) * beta[j];
                r.root[i] = s;
            }
            r.height = 0;
            for (int v : beta)
                r.height += v;
            // (alpha, alpha)/2 = sum_jk c_j c_k d_j A_jk / 2
            Rational half_len = 0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    half_len += Rational(beta[j] * beta[k]) * d.sym[j] * d.cartan[j][k];
            half_len /= 2;
            r.is_long = (half_len == 1);
            r.coroot.resize(n);
            for (int j = 0; j < n; ++j) {
                Rational c = Rational(beta[j]) * d.sym[j] / half_len;
                r.coroot[j] = static_cast<int>(to_ll(c));
            }
            d.positive.push_back(std::move(r));
        }
        d.highest = d.positive.size() - 1;
        for (std::size_t k = 0; k < d.positive.size(); ++k)
            if (d.positive[k].height > d.positive[d.highest].height)
                d.highest = k;

        d.rho = Weight(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            d.rho[i] = 1;

        Rational pr = 0;
        for (int j = 0; j < n; ++j)
            pr += d.positive[d.highest].coroot[j];
        d.dual_coxeter = static_cast<int>(to_ll(pr)) + 1;
        return d;
    }

    std::shared_ptr<const Data> d_;
};

inline RootSystem build_root_system(CartanType t) { return RootSystem(t); }
inline RootSystem build_root_system(std::string_view s) { return RootSystem(CartanType::parse(s)); }

} // namespace cbwb
