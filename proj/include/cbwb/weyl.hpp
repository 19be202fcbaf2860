#pragma once

#include "root_data.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace cbwb {

inline constexpr std::size_t kDefaultWeylCap = 1'000'000;

/// Thrown when the group is larger than the configured enumeration cap.
struct WeylCapExceeded : InvalidInput {
    std::size_t partial_count;
    WeylCapExceeded(std::size_t count, std::size_t cap)
        : InvalidInput("Weyl group enumeration exceeded the cap of " + std::to_string(cap) + " elements (" +
                       std::to_string(count) + " enumerated so far)"),
          partial_count(count)
    {
    }
};

enum class Action { linear, dot };

struct WeylElement {
    std::vector<int> word;   // reduced word, 0-based simple reflection indices; w = s_word[0] s_word[1] ...
    std::vector<int> matrix; // row-major rank x rank, acting on fundamental coordinates
    int length = 0;

    int sign() const { return length % 2 ? -1 : 1; }
    int rank() const
    {
        int r = 0;
        while (r * r < static_cast<int>(matrix.size()))
            ++r;
        return r;
    }
    int at(int i, int j) const { return matrix[i * rank() + j]; }

    /// "s1 s2 s1" (1-based), "e" for the identity.
    std::string word_string() const
    {
        if (word.empty())
            return "e";
        std::string s;
        for (std::size_t k = 0; k < word.size(); ++k)
            s += (k ? " s" : "s") + std::to_string(word[k] + 1);
        return s;
    }
};

/// Parses "s1 s2 s1" or "e"/"" into 0-based indices.
inline std::vector<int> parse_word(std::string_view s, int rank)
{
    std::vector<int> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        if (tok == "e" || tok == "id")
            continue;
        if (tok.size() < 2 || tok[0] != 's')
            throw InvalidInput("malformed Weyl word token '" + tok + "'");
        int i = 0;
        for (char c : tok.substr(1)) {
            if (c < '0' || c > '9')
                throw InvalidInput("malformed Weyl word token '" + tok + "'");
            i = i * 10 + (c - '0');
        }
        if (i < 1 || i > rank)
            throw InvalidInput("simple reflection index out of range in '" + tok + "'");
        out.push_back(i - 1);
    }
    return out;
}

/// Linear or dot action of a Weyl element.
inline Weight weyl_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda, Action mode)
{
    rs.check_rank(lambda);
    if (w.rank() != rs.rank())
        throw InvalidInput("Weyl element rank does not match the weight");
    const int n = rs.rank();
    Weight src = mode == Action::dot ? lambda + rs.rho() : lambda;
    Weight out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (int m = w.matrix[i * n + j])
                out[i] += src[j] * m;
    if (mode == Action::dot)
        out -= rs.rho();
    return out;
}

inline Weight dot_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda)
{
    return weyl_action(rs, w, lambda, Action::dot);
}

/// w^{-1}(lambda): the letters of w's word applied left to right.
inline Weight inverse_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda)
{
    Weight v = lambda;
    for (int i : w.word)
        v = rs.reflect(v, i);
    return v;
}

/// Finite Weyl group, enumerated by breadth-first search over reduced words.
class WeylGroup {
public:
    explicit WeylGroup(const RootSystem& rs, std::size_t cap = kDefaultWeylCap) : rs_(rs)
    {
        const int n = rs.rank();
        std::vector<std::vector<int>> refl(n, std::vector<int>(n * n, 0));
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    refl[i][r * n + c] = (r == c ? 1 : 0) - (c == i ? rs.cartan(r, i) : 0);

        WeylElement id;
        id.matrix.assign(n * n, 0);
        for (int i = 0; i < n; ++i)
            id.matrix[i * n + i] = 1;

        // w is identified by w(rho), rho being regular
        std::map<std::vector<int>, std::size_t> index;
        auto image_of_rho = [n](const std::vector<int>& m) {
            std::vector<int> v(n, 0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    v[r] += m[r * n + c];
            return v;
        };
        index.emplace(image_of_rho(id.matrix), 0);
        elements_.push_back(std::move(id));
        std::size_t level_begin = 0;
        while (level_begin < elements_.size()) {
            std::size_t level_end = elements_.size();
            for (std::size_t e = level_begin; e < level_end; ++e)
                for (int i = 0; i < n; ++i) {
                    std::vector<int> m(n * n, 0);
                    const auto& a = elements_[e].matrix;
                    for (int r = 0; r < n; ++r)
                        for (int k = 0; k < n; ++k)
                            if (int x = a[r * n + k])
                                for (int c = 0; c < n; ++c)
                                    m[r * n + c] += x * refl[i][k * n + c];
                    auto key = image_of_rho(m);
                    if (index.count(key))
                        continue;
                    if (elements_.size() >= cap)
                        throw WeylCapExceeded(elements_.size(), cap);
                    WeylElement w;
                    w.word = elements_[e].word;
                    w.word.push_back(i);
                    w.matrix = std::move(m);
                    w.length = elements_[e].length + 1;
                    index.emplace(std::move(key), elements_.size());
                    elements_.push_back(std::move(w));
                }
            level_begin = level_end;
        }
        for (const auto& w : elements_) {
            if (static_cast<std::size_t>(w.length) >= strata_.size())
                strata_.resize(w.length + 1, 0);
            ++strata_[w.length];
        }
    }

    const RootSystem& root_system() const { return rs_; }
    std::size_t order() const { return elements_.size(); }
    /// Elements sorted by length (non-decreasing).
    const std::vector<WeylElement>& elements() const { return elements_; }
    const WeylElement& identity() const { return elements_.front(); }
    const WeylElement& longest() const { return elements_.back(); }
    /// Number of elements of each length: the Poincare polynomial coefficients.
    const std::vector<std::size_t>& strata_sizes() const { return strata_; }
    int max_length() const { return static_cast<int>(strata_.size()) - 1; }

    /// Element with the given (not necessarily reduced) word.
    const WeylElement& from_word(const std::vector<int>& word) const
    {
        Weight v = rs_.rho();
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            if (*it < 0 || *it >= rs_.rank())
                throw InvalidInput("simple reflection index out of range");
            v = rs_.reflect(v, *it);
        }
        for (const auto& w : elements_)
            if (weyl_action(rs_, w, rs_.rho(), Action::linear) == v)
                return w;
        throw ConsistencyError("word not found in the enumerated Weyl group");
    }

    /// Number of positive roots sent to negative roots by w.
    int inversions(const WeylElement& w) const
    {
        int count = 0;
        for (const auto& a : rs_.positive_roots()) {
            auto img = weyl_action(rs_, w, a.root, Action::linear);
            auto c = rs_.to_simple_coords(img);
            if (std::any_of(c.begin(), c.end(), [](const Rational& q) { return q < 0; }))
                ++count;
        }
        return count;
    }

private:
    RootSystem rs_;
    std::vector<WeylElement> elements_;
    std::vector<std::size_t> strata_;
};

inline WeylGroup enumerate_weyl_group(const RootSystem& rs, std::size_t cap = kDefaultWeylCap)
{
    return WeylGroup(rs, cap);
}

/// Dominant representative of the dot orbit of lambda together with the element reaching it.
/// `singular` is set when lambda + rho lies on a wall.
struct DotNormalization {
    Weight dominant;
    std::vector<int> word; // w = s_word[0] ... ; w o lambda = dominant
    int length = 0;
    bool singular = false;
};

inline DotNormalization dot_normalize(const RootSystem& rs, const Weight& lambda)
{
    rs.check_rank(lambda);
    Weight v = lambda + rs.rho();
    DotNormalization out;
    for (;;) {
        int i = 0;
        while (i < rs.rank() && v[i] >= 0)
            ++i;
        if (i == rs.rank())
            break;
        v = rs.reflect(v, i);
        out.word.insert(out.word.begin(), i);
        ++out.length;
    }
    out.singular = std::any_of(v.coords.begin(), v.coords.end(), [](const Rational& q) { return q == 0; });
    out.dominant = v - rs.rho();
    return out;
}

} // namespace cbwb
