#pragma once

// Drinfeld-Sokolov reduction for affine sl2 on truncated modules.
//
// Module vectors are PBW monomials in the creation operators
// f_0, e_{-n}, h_{-n}, f_{-n} (n >= 1) applied to v_lambda, ordered by mode
// (most negative first) and then e < h < f. The ghost sector has creators
// phi_{-n} (n >= 1, ghost number -1) and phi*_{-n} (n >= 0, ghost number +1).
// The differential is d = sum_n e_n (x) phi*_{-n} + phi*_1, and the twisted
// degree of a state, measured from v_lambda, is
//     conformal weight - (alpha-weight relative to lambda) - (#phi - #phi*).

#include "linalg.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cbwb::sl2 {

inline constexpr int kMaxCutoff = 24;

enum GenType : int { E = 0, H = 1, F = 2 };

struct Gen {
    GenType type;
    int mode;
    /// Creation operators: negative modes and f_0.
    bool creates() const { return mode < 0 || (mode == 0 && type == F); }
    /// Change of the alpha-weight (e raises by one, f lowers).
    int weight() const { return type == E ? 1 : (type == F ? -1 : 0); }
    std::string str() const { return std::string(1, "ehf"[type]) + "_" + std::to_string(mode); }
};

/// Sorted creation-operator codes; code = (kMaxCutoff + mode) * 3 + type.
using Monomial = std::vector<std::int8_t>;
using Vec = std::map<Monomial, Rational>;

inline std::int8_t code_of(Gen g) { return static_cast<std::int8_t>((kMaxCutoff + g.mode) * 3 + g.type); }
inline Gen gen_of(std::int8_t c) { return {static_cast<GenType>(c % 3), c / 3 - kMaxCutoff}; }

inline int conformal(const Monomial& m)
{
    int c = 0;
    for (auto x : m)
        c -= gen_of(x).mode;
    return c;
}
inline int alpha_weight(const Monomial& m)
{
    int w = 0;
    for (auto x : m)
        w += gen_of(x).weight();
    return w;
}
inline std::string monomial_str(const Monomial& m)
{
    if (m.empty())
        return "v";
    std::string s;
    for (auto x : m)
        s += gen_of(x).str() + " ";
    return s + "v";
}

inline void axpy(Vec& out, const Rational& a, const Vec& v)
{
    if (a == 0)
        return;
    for (const auto& [m, c] : v) {
        auto [it, ins] = out.try_emplace(m, Rational(a * c));
        if (!ins) {
            it->second += a * c;
            if (it->second == 0)
                out.erase(it);
        }
    }
}

/// Verma module M_{lambda,k} over affine sl2 in the PBW basis; no truncation.
class VermaEngine {
public:
    VermaEngine(Rational lambda, Rational level) : lambda_(std::move(lambda)), level_(std::move(level)) {}

    const Rational& lambda() const { return lambda_; }
    const Rational& level() const { return level_; }

    /// g . m, by straightening g y_1 rest = y_1 (g rest) + [g, y_1] rest.
    const Vec& apply(Gen g, const Monomial& m)
    {
        auto key = std::make_tuple(static_cast<int>(g.type), g.mode, m);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Vec out;
        if (m.empty()) {
            if (g.creates())
                out.emplace(Monomial{code_of(g)}, 1);
            else if (g.type == H && g.mode == 0 && lambda_ != 0)
                out.emplace(Monomial{}, lambda_);
        } else {
            const std::int8_t y = m.front();
            if (g.creates() && code_of(g) <= y) {
                Monomial r;
                r.reserve(m.size() + 1);
                r.push_back(code_of(g));
                r.insert(r.end(), m.begin(), m.end());
                out.emplace(std::move(r), 1);
            } else {
                const Monomial rest(m.begin() + 1, m.end());
                const Gen yg = gen_of(y);
                const Vec inner = apply(g, rest);
                for (const auto& [mm, c] : inner)
                    axpy(out, c, apply(yg, mm));
                auto [terms, central] = bracket(g, yg);
                for (const auto& [c, gg] : terms)
                    axpy(out, c, apply(gg, rest));
                if (central != 0)
                    axpy(out, central, Vec{{rest, 1}});
            }
        }
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    Vec apply(Gen g, const Vec& v)
    {
        Vec out;
        for (const auto& [m, c] : v)
            axpy(out, c, apply(g, m));
        return out;
    }

    /// [x_m, y_n] = [x, y]_{m+n} + m delta_{m+n,0} k (x, y), with (e, f) = 1, (h, h) = 2.
    std::pair<std::vector<std::pair<Rational, Gen>>, Rational> bracket(Gen a, Gen b) const
    {
        std::vector<std::pair<Rational, Gen>> t;
        Rational central = 0;
        const int s = a.mode + b.mode;
        const bool zero_sum = s == 0;
        auto form = [&](int v) { return zero_sum ? Rational(a.mode) * level_ * v : Rational(0); };
        if (a.type == E && b.type == F) {
            t.push_back({1, {H, s}});
            central = form(1);
        } else if (a.type == F && b.type == E) {
            t.push_back({-1, {H, s}});
            central = form(1);
        } else if (a.type == H && b.type == E) {
            t.push_back({2, {E, s}});
        } else if (a.type == E && b.type == H) {
            t.push_back({-2, {E, s}});
        } else if (a.type == H && b.type == F) {
            t.push_back({-2, {F, s}});
        } else if (a.type == F && b.type == H) {
            t.push_back({2, {F, s}});
        } else if (a.type == H && b.type == H) {
            central = form(2);
        }
        return {t, central};
    }

    /// PBW monomials of conformal weight c and alpha-weight j.
    const std::vector<Monomial>& layer(int j, int c)
    {
        if (c < 0 || c > kMaxCutoff)
            throw InvalidInput("conformal weight outside [0, " + std::to_string(kMaxCutoff) + "]");
        auto key = std::make_pair(j, c);
        if (auto it = layers_.find(key); it != layers_.end())
            return it->second;
        std::vector<Monomial> out;
        for (const auto& m : nonzero_mode_monomials(c)) {
            const int k = alpha_weight(m) - j; // number of f_0 factors
            if (k < 0)
                continue;
            Monomial full = m;
            full.insert(full.end(), k, code_of({F, 0}));
            out.push_back(std::move(full));
        }
        std::sort(out.begin(), out.end());
        return layers_.emplace(key, std::move(out)).first->second;
    }

    /// Sugawara mode S_n = 1/2 sum_m :(e_m f_{n-m} + f_m e_{n-m} + 1/2 h_m h_{n-m}):,
    /// the non-negative mode acting first.
    Vec sugawara(int n, const Vec& v)
    {
        Vec out;
        if (v.empty())
            return out;
        int cmax = 0;
        for (const auto& [m, c] : v)
            cmax = std::max(cmax, conformal(m));
        auto ordered = [&](GenType x, GenType y, const Rational& coef) {
            for (int m = n - cmax; m <= cmax; ++m) {
                const Gen gx{x, m}, gy{y, n - m};
                Vec r = m < 0 ? apply(gx, apply(gy, v)) : apply(gy, apply(gx, v));
                axpy(out, coef, r);
            }
        };
        ordered(E, F, Rational(1, 2));
        ordered(F, E, Rational(1, 2));
        ordered(H, H, Rational(1, 4));
        return out;
    }

    /// Eigenvalue of S_0 on v_lambda.
    Rational casimir_eigenvalue() const { return lambda_ * (lambda_ + 2) / 4; }

private:
    const std::vector<Monomial>& nonzero_mode_monomials(int c)
    {
        if (auto it = by_conf_.find(c); it != by_conf_.end())
            return it->second;
        std::vector<Monomial> out;
        Monomial cur;
        // generators ordered by code; pick non-decreasing codes with modes <= -1
        std::vector<std::int8_t> gens;
        for (int n = c; n >= 1; --n)
            for (int t = 0; t < 3; ++t)
                gens.push_back(code_of({static_cast<GenType>(t), -n}));
        std::sort(gens.begin(), gens.end());
        auto rec = [&](auto&& self, std::size_t start, int left) -> void {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < gens.size(); ++i) {
                const int d = -gen_of(gens[i]).mode;
                if (d > left)
                    continue;
                cur.push_back(gens[i]);
                self(self, i, left - d);
                cur.pop_back();
            }
        };
        rec(rec, 0, c);
        return by_conf_.emplace(c, std::move(out)).first->second;
    }

    Rational lambda_, level_;
    std::map<std::tuple<int, int, Monomial>, Vec> memo_;
    std::map<std::pair<int, int>, std::vector<Monomial>> layers_;
    std::map<int, std::vector<Monomial>> by_conf_;
};

/// A graded quotient of a truncated Verma module (possibly the Verma module itself),
/// with layers indexed by (alpha-weight j relative to lambda, conformal weight c <= cutoff).
class TruncatedModule {
public:
    enum class Kind { verma, restricted };

    struct Layer {
        std::vector<Monomial> verma_basis;
        std::map<Monomial, std::size_t> verma_index;
        Echelon relations;            // submodule part, in Verma coordinates
        std::vector<Monomial> basis;  // non-pivot monomials: a basis of the quotient
        std::map<Monomial, std::size_t> index;
    };

    TruncatedModule(Kind kind, Rational lambda, Rational level, int cutoff)
        : kind_(kind), engine_(std::make_shared<VermaEngine>(lambda, level)), cutoff_(cutoff)
    {
        if (cutoff < 0 || cutoff > kMaxCutoff)
            throw InvalidInput("cutoff must lie in [0, " + std::to_string(kMaxCutoff) + "]");
    }

    Kind kind() const { return kind_; }
    const Rational& lambda() const { return engine_->lambda(); }
    const Rational& level() const { return engine_->level(); }
    int cutoff() const { return cutoff_; }
    VermaEngine& engine() { return *engine_; }

    const Layer& layer(int j, int c)
    {
        auto key = std::make_pair(j, c);
        if (auto it = layers_.find(key); it != layers_.end())
            return it->second;
        Layer L;
        if (c >= 0 && c <= cutoff_) {
            L.verma_basis = engine_->layer(j, c);
            for (std::size_t i = 0; i < L.verma_basis.size(); ++i)
                L.verma_index.emplace(L.verma_basis[i], i);
            RatMatrix rel;
            if (kind_ == Kind::restricted)
                for (int n = 1; n <= c; ++n)
                    for (const auto& m : engine_->layer(j, c - n)) {
                        Vec s = engine_->sugawara(-n, Vec{{m, 1}});
                        std::vector<Rational> row(L.verma_basis.size());
                        for (const auto& [mm, x] : s)
                            row.at(L.verma_index.at(mm)) = x;
                        rel.push_back(std::move(row));
                    }
            L.relations = row_reduce(std::move(rel), L.verma_basis.size());
            std::vector<bool> pivot(L.verma_basis.size(), false);
            for (auto p : L.relations.pivots)
                pivot[p] = true;
            for (std::size_t i = 0; i < L.verma_basis.size(); ++i)
                if (!pivot[i]) {
                    L.index.emplace(L.verma_basis[i], L.basis.size());
                    L.basis.push_back(L.verma_basis[i]);
                }
        }
        return layers_.emplace(key, std::move(L)).first->second;
    }

    const std::vector<Monomial>& basis(int j, int c) { return layer(j, c).basis; }
    std::size_t dim(int j, int c) { return basis(j, c).size(); }

    /// Reduces a homogeneous Verma vector of layer (j, c) to quotient coordinates.
    Vec reduce(const Vec& v, int j, int c)
    {
        if (v.empty() || kind_ == Kind::verma)
            return v;
        const Layer& L = layer(j, c);
        std::vector<Rational> x(L.verma_basis.size());
        for (const auto& [m, a] : v)
            x.at(L.verma_index.at(m)) = a;
        for (std::size_t r = 0; r < L.relations.rank(); ++r) {
            const Rational a = x[L.relations.pivots[r]];
            if (a == 0)
                continue;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (L.relations.reduced[r][k] != 0)
                    x[k] -= a * L.relations.reduced[r][k];
        }
        Vec out;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k] != 0)
                out.emplace(L.verma_basis[k], x[k]);
        return out;
    }

    /// Action of a mode on a basis monomial; empty if the result leaves the truncation.
    Vec act(Gen g, const Monomial& m)
    {
        const int c = conformal(m) - g.mode;
        if (c < 0 || c > cutoff_)
            return {};
        return reduce(engine_->apply(g, m), alpha_weight(m) + g.weight(), c);
    }

private:
    Kind kind_;
    std::shared_ptr<VermaEngine> engine_;
    int cutoff_;
    std::map<std::pair<int, int>, Layer> layers_;
};

inline TruncatedModule build_truncated_verma_sl2(const Rational& lambda, const Rational& level, int cutoff)
{
    return TruncatedModule(TruncatedModule::Kind::verma, lambda, level, cutoff);
}

/// Central character values: chi[n] for the Sugawara modes S_n, n <= 0.
using CentralCharacter = std::map<int, Rational>;

inline void check_central_character(const Rational& lambda, const CentralCharacter& chi)
{
    for (const auto& [n, v] : chi) {
        if (n > 0)
            throw InvalidInput("central character values are given for modes n <= 0");
        if (n == 0 && v != lambda * (lambda + 2) / 4)
            throw InvalidInput("zero-mode value " + v.str() + " incompatible with lambda = " + lambda.str() +
                               " (S_0 acts by " + Rational(lambda * (lambda + 2) / 4).str() + ")");
    }
}

/// Critical-level Verma module modulo the negative Sugawara modes (the homogeneous
/// central character). Non-zero negative-mode values give an inhomogeneous quotient;
/// use restricted_filtered_dimensions for those.
inline TruncatedModule sugawara_restricted_verma(const Rational& lambda, const CentralCharacter& chi, int cutoff)
{
    check_central_character(lambda, chi);
    for (const auto& [n, v] : chi)
        if (n < 0 && v != 0)
            throw InvalidInput("graded restricted module needs vanishing negative-mode values");
    return TruncatedModule(TruncatedModule::Kind::restricted, lambda, Rational(-2), cutoff);
}

/// dim F_c(M / sum_n (S_n - chi_n) M) - dim F_{c-1}(...) at alpha-weight j, for c = 0..cutoff,
/// where F_c is the conformal filtration.
inline std::vector<std::size_t> restricted_filtered_dimensions(const Rational& lambda, const CentralCharacter& chi,
                                                               int j, int cutoff)
{
    check_central_character(lambda, chi);
    VermaEngine eng(lambda, Rational(-2));
    std::vector<Monomial> all;
    std::map<Monomial, std::size_t> index;
    std::vector<std::size_t> upto; // size of F_c
    for (int c = 0; c <= cutoff; ++c) {
        for (const auto& m : eng.layer(j, c)) {
            index.emplace(m, all.size());
            all.push_back(m);
        }
        upto.push_back(all.size());
    }
    std::vector<std::size_t> dims;
    std::size_t prev = 0;
    for (int c = 0; c <= cutoff; ++c) {
        RatMatrix rel;
        for (int n = 1; n <= c; ++n) {
            const Rational x = chi.count(-n) ? chi.at(-n) : Rational(0);
            for (int c0 = 0; c0 + n <= c; ++c0)
                for (const auto& m : eng.layer(j, c0)) {
                    Vec s = eng.sugawara(-n, Vec{{m, 1}});
                    axpy(s, -x, Vec{{m, 1}});
                    std::vector<Rational> row(upto[c]);
                    for (const auto& [mm, a] : s)
                        row.at(index.at(mm)) = a;
                    rel.push_back(std::move(row));
                }
        }
        const std::size_t q = upto[c] - rank(rel, upto[c]);
        dims.push_back(q - prev);
        prev = q;
    }
    return dims;
}

// ---------------------------------------------------------------------------
// Ghosts

/// Sorted ghost creator codes: phi_{-n} -> 40 - n, phi*_{-n} -> 100 - n.
using GhostState = std::vector<std::int8_t>;

inline std::int8_t phi_code(int n) { return static_cast<std::int8_t>(40 - n); }
inline std::int8_t phistar_code(int n) { return static_cast<std::int8_t>(100 - n); }
inline bool is_phi(std::int8_t c) { return c < 50; }
inline int ghost_conformal(const GhostState& g)
{
    int s = 0;
    for (auto c : g)
        s += is_phi(c) ? 40 - c : 100 - c;
    return s;
}
/// #phi* - #phi
inline int ghost_number(const GhostState& g)
{
    int s = 0;
    for (auto c : g)
        s += is_phi(c) ? -1 : 1;
    return s;
}

/// phi*_m on a ghost state: m <= 0 creates phi*_m, m > 0 removes phi_{-m}. Returns the sign and new state.
inline std::optional<std::pair<int, GhostState>> apply_phistar(int m, const GhostState& g)
{
    const std::int8_t code = m <= 0 ? phistar_code(-m) : phi_code(m);
    auto it = std::lower_bound(g.begin(), g.end(), code);
    const bool present = it != g.end() && *it == code;
    const int pos = static_cast<int>(it - g.begin());
    GhostState out = g;
    if (m <= 0) {
        if (present)
            return std::nullopt;
        out.insert(out.begin() + pos, code);
    } else {
        if (!present)
            return std::nullopt;
        out.erase(out.begin() + pos);
    }
    return std::make_pair(pos % 2 ? -1 : 1, out);
}

inline std::vector<GhostState> ghost_states(int max_conf)
{
    std::vector<std::int8_t> gens;
    for (int n = 1; n <= max_conf; ++n)
        gens.push_back(phi_code(n));
    for (int n = 0; n <= max_conf; ++n)
        gens.push_back(phistar_code(n));
    std::sort(gens.begin(), gens.end());
    std::vector<GhostState> out;
    GhostState cur;
    auto rec = [&](auto&& self, std::size_t start, int conf) -> void {
        out.push_back(cur);
        for (std::size_t i = start; i < gens.size(); ++i) {
            const int d = is_phi(gens[i]) ? 40 - gens[i] : 100 - gens[i];
            if (conf + d > max_conf)
                continue;
            cur.push_back(gens[i]);
            self(self, i + 1, conf + d);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// The complex

struct State {
    Monomial module;
    GhostState ghost;
    bool operator<(const State& o) const { return std::tie(module, ghost) < std::tie(o.module, o.ghost); }
    bool operator==(const State& o) const = default;
};

inline int state_conformal(const State& s) { return conformal(s.module) + ghost_conformal(s.ghost); }
inline int twisted_degree(const State& s)
{
    return state_conformal(s) - alpha_weight(s.module) - ghost_number(s.ghost);
}

using SparseRow = std::map<std::size_t, Rational>;

/// One twisted-degree block: bases per ghost degree and the differential between them.
struct Block {
    int twisted = 0;
    std::map<int, std::vector<State>> states;
    std::map<int, std::map<State, std::size_t>> index;
    std::map<int, std::vector<SparseRow>> d; // d[g][i] = image of states[g][i] in degree g + 1
    bool d_squared_zero = true;

    std::size_t dim(int g) const
    {
        auto it = states.find(g);
        return it == states.end() ? 0 : it->second.size();
    }
};

struct ComplexOptions {
    bool include_chi = true;
    std::optional<int> exact_conformal; // restrict to states of this total conformal weight
};

/// Differential applied to a state, as a map state -> coefficient.
inline std::map<State, Rational> differential(TruncatedModule& M, const State& s, bool include_chi)
{
    std::map<State, Rational> out;
    const int cm = conformal(s.module), cg = ghost_conformal(s.ghost);
    for (int n = -cg; n <= cm; ++n) {
        auto gh = apply_phistar(-n, s.ghost);
        if (!gh)
            continue;
        for (const auto& [m, c] : M.act({E, n}, s.module)) {
            auto [it, ins] = out.try_emplace(State{m, gh->second}, Rational(gh->first * c));
            if (!ins)
                it->second += gh->first * c;
        }
    }
    if (include_chi)
        if (auto gh = apply_phistar(1, s.ghost)) {
            auto [it, ins] = out.try_emplace(State{s.module, gh->second}, gh->first);
            if (!ins)
                it->second += gh->first;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

/// The block of the truncated complex at twisted degree T (total conformal weight <= cutoff).
inline Block build_block(TruncatedModule& M, int T, const ComplexOptions& opt = {})
{
    const int C = M.cutoff();
    Block b;
    b.twisted = T;
    for (const auto& g : ghost_states(C)) {
        const int gc = ghost_conformal(g);
        for (int cm = 0; cm + gc <= C; ++cm) {
            if (opt.exact_conformal && cm + gc != *opt.exact_conformal)
                continue;
            const int j = cm + gc - (-ghost_number(g)) - T; // #phi - #phi* = -ghost_number
            for (const auto& m : M.basis(j, cm)) {
                const int gd = ghost_number(g);
                b.index[gd].emplace(State{m, g}, b.states[gd].size());
                b.states[gd].push_back(State{m, g});
            }
        }
    }
    for (auto& [gd, sts] : b.states) {
        auto& rows = b.d[gd];
        for (const auto& s : sts) {
            SparseRow row;
            for (const auto& [t, c] : differential(M, s, opt.include_chi)) {
                if (opt.exact_conformal && state_conformal(t) != *opt.exact_conformal)
                    continue;
                auto tgt = b.index.find(gd + 1);
                if (tgt == b.index.end() || !tgt->second.count(t))
                    throw ConsistencyError("differential leaves the truncated block at twisted degree " +
                                           std::to_string(T));
                row[tgt->second.at(t)] += c;
            }
            rows.push_back(std::move(row));
        }
    }
    // d^2 = 0
    for (const auto& [gd, rows] : b.d) {
        auto next = b.d.find(gd + 1);
        if (next == b.d.end())
            continue;
        for (const auto& row : rows) {
            SparseRow sq;
            for (const auto& [k, c] : row)
                for (const auto& [k2, c2] : next->second[k])
                    sq[k2] += c * c2;
            for (const auto& [k2, v] : sq)
                if (v != 0) {
                    b.d_squared_zero = false;
                    break;
                }
        }
    }
    return b;
}

inline RatMatrix dense(const std::vector<SparseRow>& rows, std::size_t cols)
{
    RatMatrix m = zero_matrix(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r])
            m[r][c] = v;
    return m;
}

struct BlockCohomology {
    int twisted = 0;
    bool certified = false;
    bool d_squared_zero = true;
    std::map<int, std::size_t> dims;       // basis size per ghost degree
    std::map<int, std::size_t> ranks;      // rank of d out of each ghost degree
    std::map<int, std::size_t> cohomology; // dim H^g
    std::vector<std::pair<int, std::size_t>> dst_check; // (conformal c, total dim H(d_st)) for c in (T, cutoff]
};

inline BlockCohomology block_cohomology(TruncatedModule& M, int T)
{
    Block b = build_block(M, T);
    BlockCohomology r;
    r.twisted = T;
    r.d_squared_zero = b.d_squared_zero;
    if (!b.d_squared_zero)
        throw ConsistencyError("d^2 != 0 on the block at twisted degree " + std::to_string(T));
    for (const auto& [gd, sts] : b.states) {
        r.dims[gd] = sts.size();
        r.ranks[gd] = rank(dense(b.d[gd], b.dim(gd + 1)), b.dim(gd + 1));
    }
    for (const auto& [gd, n] : r.dims) {
        const std::size_t in = r.ranks.count(gd - 1) ? r.ranks[gd - 1] : 0;
        r.cohomology[gd] = n - r.ranks[gd] - in;
    }
    bool dst_clean = true;
    for (int c = T + 1; c <= M.cutoff(); ++c) {
        Block s = build_block(M, T, {false, c});
        std::size_t total = 0;
        std::map<int, std::size_t> rk;
        for (const auto& [gd, sts] : s.states)
            rk[gd] = rank(dense(s.d[gd], s.dim(gd + 1)), s.dim(gd + 1));
        for (const auto& [gd, sts] : s.states)
            total += sts.size() - rk[gd] - (rk.count(gd - 1) ? rk[gd - 1] : 0);
        r.dst_check.emplace_back(c, total);
        dst_clean = dst_clean && total == 0;
    }
    r.certified = T <= M.cutoff() && dst_clean;
    return r;
}

struct DSResult {
    int cutoff = 0;
    std::vector<BlockCohomology> blocks; // twisted degrees 0..cutoff + extra

    /// Twisted-degree series of H^g over certified blocks.
    std::vector<std::size_t> h_series(int g) const
    {
        std::vector<std::size_t> out;
        for (const auto& b : blocks)
            if (b.certified)
                out.push_back(b.cohomology.count(g) ? b.cohomology.at(g) : 0);
        return out;
    }
    bool vanishing_off_zero() const
    {
        for (const auto& b : blocks)
            if (b.certified)
                for (const auto& [g, h] : b.cohomology)
                    if (g != 0 && h != 0)
                        return false;
        return true;
    }
    bool d_squared_zero() const
    {
        return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.d_squared_zero; });
    }
};

/// Cohomology on the blocks of twisted degree 0..cutoff + extra_uncertified.
inline DSResult ds_cohomology(TruncatedModule& M, int extra_uncertified = 0)
{
    DSResult r;
    r.cutoff = M.cutoff();
    for (int T = 0; T <= M.cutoff() + extra_uncertified; ++T)
        r.blocks.push_back(block_cohomology(M, T));
    return r;
}

// ---------------------------------------------------------------------------
// Singular vectors

struct SingularVector {
    int j = 0; // alpha-weight relative to lambda
    int conformal = 0;
    Vec vector;
    bool cocycle = false;          // d(v (x) 1) = 0
    std::optional<bool> nonzero_class; // set when the block is within the cutoff
};

/// Joint kernel of e_n (n >= 0), h_n, f_n (n >= 1) on layer (j, c), with BRST classes.
inline std::vector<SingularVector> find_singular_vectors(TruncatedModule& M, int j, int c)
{
    std::vector<SingularVector> out;
    const auto& B = M.basis(j, c);
    if (B.empty())
        return out;
    RatMatrix rows;
    auto add_op = [&](Gen g) {
        const int tj = j + g.weight(), tc = c - g.mode;
        const auto& T = M.basis(tj, tc);
        if (T.empty())
            return;
        std::map<Monomial, std::size_t> ti;
        for (std::size_t i = 0; i < T.size(); ++i)
            ti.emplace(T[i], i);
        RatMatrix block = zero_matrix(T.size(), B.size());
        for (std::size_t k = 0; k < B.size(); ++k)
            for (const auto& [m, x] : M.act(g, B[k]))
                block[ti.at(m)][k] = x;
        for (auto& r : block)
            rows.push_back(std::move(r));
    };
    for (int n = 0; n <= c; ++n)
        add_op({E, n});
    for (int n = 1; n <= c; ++n) {
        add_op({H, n});
        add_op({F, n});
    }
    const auto ker = nullspace(rows, B.size());
    if (ker.empty())
        return out;

    const int T = c - j;
    std::optional<Block> blk;
    if (T >= 0)
        blk = build_block(M, T);
    for (const auto& k : ker) {
        SingularVector sv;
        sv.j = j;
        sv.conformal = c;
        for (std::size_t i = 0; i < B.size(); ++i)
            if (k[i] != 0)
                sv.vector.emplace(B[i], k[i]);
        std::map<State, Rational> dv;
        for (const auto& [m, x] : sv.vector)
            for (const auto& [t, y] : differential(M, State{m, {}}, true))
                dv[t] += x * y;
        sv.cocycle = std::all_of(dv.begin(), dv.end(), [](const auto& kv) { return kv.second == 0; });
        if (blk && T <= M.cutoff() && sv.cocycle) {
            const std::size_t n0 = blk->dim(0);
            std::vector<Rational> v(n0);
            for (const auto& [m, x] : sv.vector)
                v.at(blk->index.at(0).at(State{m, {}})) = x;
            std::vector<std::vector<Rational>> image;
            if (blk->d.count(-1))
                for (const auto& row : blk->d.at(-1)) {
                    std::vector<Rational> r(n0);
                    for (const auto& [col, y] : row)
                        r[col] = y;
                    image.push_back(std::move(r));
                }
            sv.nonzero_class = !in_span(image, v, n0);
        }
        out.push_back(std::move(sv));
    }
    return out;
}

} // namespace cbwb::sl2
