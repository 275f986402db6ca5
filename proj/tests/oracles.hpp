// Independent reference computations used as test oracles.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "espdesign/finite_field.hpp"

namespace oracle {

using espd::Elem;
using espd::GaloisField;
using espd::Point;
using espd::UnitCircle;

/// Shared circles so each binary builds a field once.
inline const UnitCircle& circle(int m) {
    static std::map<int, UnitCircle> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, UnitCircle::build(m)).first;
    return it->second;
}

/// sigma_l of xs by summing products over all l-subsets.
inline Elem esp_bruteforce(const GaloisField& f, std::span<const Elem> xs, int l) {
    const int k = static_cast<int>(xs.size());
    if (l == 0) return espd::kOne;
    Elem acc = espd::kZero;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (std::popcount(mask) != l) continue;
        Elem p = espd::kOne;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) p = f.mul(p, xs[static_cast<std::size_t>(i)]);
        acc = acc + p;
    }
    return acc;
}

inline std::vector<Elem> elems_of(const UnitCircle& uc, std::span<const Point> b) {
    std::vector<Elem> out;
    for (Point p : b) out.push_back(uc[p]);
    return out;
}

/// Random sorted k-subset of {0..n-1}.
inline std::vector<Point> random_subset(std::mt19937_64& rng, int n, int k) {
    std::vector<Point> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = static_cast<Point>(i);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(k));
    std::sort(all.begin(), all.end());
    return all;
}

/// Coverage of every t-subset by direct membership tests; returns the distinct counts.
inline std::set<std::uint64_t> coverage_values(int v, int t, const std::vector<std::vector<Point>>& blocks) {
    std::set<std::uint64_t> vals;
    std::vector<Point> T(static_cast<std::size_t>(t));
    std::function<void(int, int)> rec = [&](int start, int d) {
        if (d == t) {
            std::uint64_t c = 0;
            for (const auto& b : blocks)
                c += std::includes(b.begin(), b.end(), T.begin(), T.end());
            vals.insert(c);
            return;
        }
        for (int p = start; p < v; ++p) {
            T[static_cast<std::size_t>(d)] = static_cast<Point>(p);
            rec(p + 1, d + 1);
        }
    };
    rec(0, 0);
    return vals;
}

}  // namespace oracle
