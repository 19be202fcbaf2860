#pragma once

// Independent reference computations used by the tests. None of these call into the
// series ring, the Weyl group enumerator or the Freudenthal code they check.

#include "cbwb/arith.hpp"

#include <functional>
#include <map>
#include <vector>

namespace oracle {

using cbwb::Integer;

/// Number of c-colored partitions of n for n = 0..N, by enumerating partitions
/// and counting color assignments (multiset choices) part size by part size.
inline std::vector<Integer> colored_partitions(int colors, int N)
{
    auto multichoose = [](int c, int m) {
        Integer r = 1;
        for (int i = 0; i < m; ++i)
            r = r * (c + i) / (i + 1);
        return r;
    };
    std::vector<Integer> out(N + 1, 0);
    // partitions of n as (part size, multiplicity) with strictly decreasing part sizes
    for (int n = 0; n <= N; ++n) {
        Integer total = 0;
        std::function<void(int, int, Integer)> go = [&](int left, int max_part, Integer ways) {
            if (left == 0) {
                total += ways;
                return;
            }
            for (int part = std::min(left, max_part); part >= 1; --part)
                for (int m = 1; m * part <= left; ++m)
                    go(left - m * part, part - 1, ways * multichoose(colors, m));
        };
        go(n, n, 1);
        out[n] = total;
    }
    return out;
}

/// Coefficients of prod_{j>=1} (1 - q^j)^{-colors} * prod_{m in extra} (1 - q^m)^{-1} by naive
/// truncated polynomial multiplication of explicit geometric series.
inline std::vector<Integer> product_series(int colors, const std::vector<int>& extra, int N)
{
    std::vector<Integer> acc(N + 1, 0);
    acc[0] = 1;
    auto times_geometric = [&](int step) {
        std::vector<Integer> g(N + 1, 0);
        for (int d = 0; d <= N; d += step)
            g[d] = 1;
        std::vector<Integer> r(N + 1, 0);
        for (int a = 0; a <= N; ++a)
            for (int b = 0; a + b <= N; ++b)
                r[a + b] += acc[a] * g[b];
        acc = r;
    };
    for (int j = 1; j <= N; ++j)
        for (int c = 0; c < colors; ++c)
            times_geometric(j);
    for (int m : extra)
        if (m <= N)
            times_geometric(m);
    return acc;
}

/// Kostant partition function: ways to write gamma (simple-root coordinates) as a
/// non-negative integer combination of the given positive roots.
inline Integer kostant_partition(const std::vector<std::vector<int>>& roots, const std::vector<int>& gamma)
{
    std::map<std::pair<std::size_t, std::vector<int>>, Integer> memo;
    std::function<Integer(std::size_t, const std::vector<int>&)> go = [&](std::size_t i, const std::vector<int>& g) -> Integer {
        for (int x : g)
            if (x < 0)
                return 0;
        if (i == roots.size())
            return std::all_of(g.begin(), g.end(), [](int x) { return x == 0; }) ? 1 : 0;
        auto key = std::make_pair(i, g);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        Integer total = 0;
        std::vector<int> cur = g;
        for (;;) {
            total += go(i + 1, cur);
            bool neg = false;
            for (std::size_t k = 0; k < cur.size(); ++k) {
                cur[k] -= roots[i][k];
                neg = neg || cur[k] < 0;
            }
            if (neg)
                break;
        }
        memo.emplace(key, total);
        return total;
    };
    return go(0, gamma);
}

/// Multiset generating function: coefficients of prod over generators (each a
/// (finite weight change, delta degree) pair, free commuting) of 1/(1 - x_gen),
/// restricted to total delta degree <= N and finite part within the predicate.
/// Keys: (finite weight as integer vector, delta degree).
using RawKey = std::pair<std::vector<int>, int>;
inline std::map<RawKey, Integer> raw_free_product(std::vector<int> start, const std::vector<RawKey>& generators, int N,
                                                  const std::function<bool(const std::vector<int>&)>& keep)
{
    std::map<RawKey, Integer> acc{{{start, 0}, 1}};
    for (const auto& [w, d] : generators) {
        std::map<RawKey, Integer> next;
        for (const auto& [k, c] : acc) {
            std::vector<int> cur = k.first;
            int deg = k.second;
            for (int m = 0;; ++m) {
                if (deg > N || !keep(cur))
                    break;
                next[{cur, deg}] += c;
                for (std::size_t i = 0; i < cur.size(); ++i)
                    cur[i] += w[i];
                deg += d;
                if (d == 0 && m > 64)
                    break;
            }
        }
        acc = std::move(next);
    }
    return acc;
}

/// Partition numbers by brute-force enumeration.
inline std::vector<Integer> partition_numbers(int N) { return colored_partitions(1, N); }

} // namespace oracle
