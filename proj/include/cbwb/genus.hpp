#pragma once

// Elliptic genus of the flag manifold: the fiber of the generating bundle
// E_lambda = L_lambda (x) prod_n Sym_{q^n}(T) (x) Sym_{q^n}(T^*), pushed forward
// weight by weight with Borel-Weil-Bott.

#include "characters.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cbwb {

using WeightMultiset = std::map<Weight, Integer>;

struct FiberCharacter {
    std::vector<WeightMultiset> layers; // index = q-degree

    int N() const { return static_cast<int>(layers.size()) - 1; }
    Integer total(int n) const
    {
        Integer t = 0;
        for (const auto& [w, m] : layers[n])
            t += m;
        return t;
    }
};

/// Torus character of the fiber at the base point: tangent weights Delta_+, cotangent Delta_-.
inline FiberCharacter fiber_character(const RootSystem& rs, const Weight& lambda, int N)
{
    rs.check_rank(lambda);
    if (!lambda.is_integral())
        throw InvalidInput("fiber character needs an integral weight");
    if (N < 0)
        throw InvalidInput("N must be non-negative");
    FiberCharacter f;
    f.layers.resize(N + 1);
    f.layers[0][lambda] = 1;
    auto divide = [&](const Weight& beta, int n) {
        for (int d = n; d <= N; ++d)
            for (const auto& [w, m] : f.layers[d - n]) {
                Integer& slot = f.layers[d][w + beta];
                slot += m;
            }
    };
    for (int n = 1; n <= N; ++n)
        for (const auto& a : rs.positive_roots()) {
            divide(a.root, n);
            divide(a.root * Rational(-1), n);
        }
    return f;
}

/// Euler characteristic of the line bundle with weight mu as a virtual character.
struct VirtualCharacter {
    int sign = 0; // 0 when mu + rho is singular
    Weight dominant;
};

inline VirtualCharacter line_bundle_euler(const RootSystem& rs, const Weight& mu)
{
    rs.check_rank(mu);
    if (!mu.is_integral())
        throw InvalidInput("line bundle weight " + mu.str() + " is not integral");
    auto d = dot_normalize(rs, mu);
    if (d.singular)
        return {0, d.dominant};
    return {d.length % 2 ? -1 : 1, d.dominant};
}

struct GenusResult {
    Weight lambda;
    QSeries q_series;                        // dimensions per degree
    std::optional<CharSeries> character;     // full virtual character on the window
    QSeries expected;                        // closed product formula
    bool q_matches = false;
    std::optional<WindowComparison> versus_euler;
    bool positive = false;

    bool pass() const { return q_matches && (!versus_euler || versus_euler->equal); }

    std::string csv() const
    {
        std::ostringstream os;
        os << "degree,coefficient\n";
        for (int d = 0; d <= q_series.N(); ++d)
            os << d << ',' << q_series[d] << '\n';
        return os.str();
    }
};

/// Genus series to q^N. With a window, also the full character, compared with euler_chiral.
inline GenusResult elliptic_genus(const RootSystem& rs, const Weight& lambda, int N,
                                  std::optional<Truncation> window = std::nullopt)
{
    detail::require_dominant_integral(rs, lambda);
    const FiberCharacter fiber = fiber_character(rs, lambda, N);
    GenusResult g;
    g.lambda = lambda;
    g.q_series = QSeries(N);

    std::map<Weight, Integer> dims;
    std::map<Weight, FiniteCharacter> chars;
    if (window)
        g.character.emplace(rs, lambda, Truncation::meet(*window, {N, kMaxWindow}));

    for (int n = 0; n <= N; ++n)
        for (const auto& [mu, m] : fiber.layers[n]) {
            const auto vc = line_bundle_euler(rs, mu);
            if (vc.sign == 0)
                continue;
            auto it = dims.find(vc.dominant);
            if (it == dims.end())
                it = dims.emplace(vc.dominant, weyl_dimension(rs, vc.dominant)).first;
            g.q_series[n] += vc.sign * m * it->second;
            if (!g.character || n > g.character->trunc().N)
                continue;
            auto ct = chars.find(vc.dominant);
            if (ct == chars.end())
                ct = chars.emplace(vc.dominant, weyl_character(rs, vc.dominant)).first;
            for (const auto& [nu, k] : ct->second.multiplicities) {
                auto depth = g.character->depth_of(nu, n);
                if (!depth)
                    throw ConsistencyError("genus weight " + nu.str() + " escapes the cone of " + lambda.str());
                g.character->add(*depth, n, vc.sign * m * k);
            }
        }

    g.expected = q_dim_formula(rs, QDimKind::chiral_euler, lambda, N);
    g.q_matches = g.q_series == g.expected;
    g.positive = std::all_of(g.q_series.coeffs.begin(), g.q_series.coeffs.end(), [](const Integer& c) { return c > 0; });
    if (g.character) {
        // the chiral Euler character ch V_lambda * prod_{n>=1, alpha} (1 - e^{-alpha - n delta})^{-1};
        // for regular lambda this is euler_chiral's factored path
        CharSeries euler = weyl_character(rs, lambda).series(g.character->trunc());
        divide_by_root_product(euler, RootProduct::real_n_ge_1);
        g.versus_euler = window_equal(*g.character, euler);
    }
    return g;
}

} // namespace cbwb
