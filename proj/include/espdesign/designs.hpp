/**
 * @file designs.hpp
 * @brief Exhaustive t-design verification and the standard index transforms.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "block.hpp"
#include "subsets.hpp"

namespace espd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A design is its block set; v and k are the block set's point count and block size.
using Design = BlockSet;

/// Two t-subsets covered a different number of times.
struct DesignWitness {
    std::vector<Point> first;
    std::uint64_t first_count = 0;
    std::vector<Point> second;
    std::uint64_t second_count = 0;
};

struct DesignVerdict {
    int v = 0, k = 0, t = 0;
    std::size_t num_blocks = 0;
    std::optional<std::uint64_t> lambda;   ///< present iff uniform
    std::optional<DesignWitness> witness;  ///< present iff not uniform
    bool complete = false;                 ///< every k-subset is a block
    bool empty = false;

    [[nodiscard]] bool is_design() const noexcept { return lambda.has_value(); }
};

namespace details {

/// Binomial table for hot loops (n <= 128, k <= 8).
struct SmallBinomials {
    std::uint64_t c[129][9]{};
    SmallBinomials() {
        for (int n = 0; n <= 128; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= 8; ++k) c[n][k] = n == 0 ? 0 : c[n - 1][k - 1] + c[n - 1][k];
        }
    }
    static const SmallBinomials& get() {
        static const SmallBinomials t;
        return t;
    }
};

/// Increments counts[colex rank] of every t-subset of `pts` (sorted).
inline void add_t_subsets(std::span<const Point> pts, int t, std::vector<std::uint32_t>& counts) {
    const auto& bc = SmallBinomials::get();
    const int k = static_cast<int>(pts.size());
    std::array<int, 9> idx{};
    std::array<std::uint64_t, 10> partial{};
    // iterative lex enumeration of t positions within pts with partial colex sums
    int d = 0;
    idx[0] = 0;
    while (d >= 0) {
        if (idx[static_cast<std::size_t>(d)] > k - t + d) {
            --d;
            if (d >= 0) ++idx[static_cast<std::size_t>(d)];
            continue;
        }
        const std::uint64_t r = partial[static_cast<std::size_t>(d)] + bc.c[pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])]][d + 1];
        if (d == t - 1) {
            ++counts[r];
            ++idx[static_cast<std::size_t>(d)];
        } else {
            partial[static_cast<std::size_t>(d) + 1] = r;
            idx[static_cast<std::size_t>(d) + 1] = idx[static_cast<std::size_t>(d)] + 1;
            ++d;
        }
    }
}

inline constexpr std::uint64_t kMaxCounterEntries = std::uint64_t{1} << 28;

/// Coverage counts of all s-subsets (colex indexed), summed over workers.
inline std::vector<std::uint32_t> coverage_counts(const BlockSet& bs, int s, unsigned jobs) {
    if (s > 8) throw std::invalid_argument("verify_t_design: t > 8 unsupported");
    const std::uint64_t cells = binom(bs.v(), s);
    if (cells > kMaxCounterEntries) throw std::length_error("verify_t_design: C(v,t) too large for a flat counter");
    const std::size_t n = bs.size();
    const unsigned workers = std::max(1u, std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max<std::size_t>(n / 4096, 1))));
    std::vector<std::vector<std::uint32_t>> local(workers);
    parallel_branches(static_cast<int>(workers), workers, [&](int w) {
        auto& c = local[static_cast<std::size_t>(w)];
        c.assign(cells, 0);
        for (std::size_t i = static_cast<std::size_t>(w); i < n; i += workers) add_t_subsets(bs[i], s, c);
    });
    for (unsigned w = 1; w < workers; ++w)
        for (std::size_t i = 0; i < cells; ++i) local[0][i] += local[w][i];
    return std::move(local[0]);
}

}  // namespace details

/**
 * @brief Coverage count of every t-subset; lambda if they all agree, a witness otherwise.
 *
 * Blocks larger than v/2 are counted through their complements by inclusion-exclusion,
 * so supplementary designs cost no more than the originals.
 */
inline DesignVerdict verify_t_design(const Design& d, int t, unsigned jobs = 0) {
    if (t < 1 || t > d.k() || d.k() > d.v()) throw std::invalid_argument("verify_t_design: need 1 <= t <= k <= v");
    DesignVerdict out;
    out.v = d.v();
    out.k = d.k();
    out.t = t;
    out.num_blocks = d.size();
    out.empty = d.empty();
    out.complete = d.size() == binom(d.v(), d.k());
    if (d.empty()) {
        out.lambda = 0;
        return out;
    }

    std::vector<std::uint64_t> counts;
    const int v = d.v(), k = d.k();
    if (v - k < k) {
        // blocks containing T = complements disjoint from T; sum_{S subset T} (-1)^{|S|} r(S)
        BlockSet comp(v, v - k);
        comp.reserve(d.size());
        std::vector<Point> c;
        for (std::size_t i = 0; i < d.size(); ++i) {
            c.clear();
            auto b = d[i];
            std::size_t j = 0;
            for (int p = 0; p < v; ++p) {
                if (j < b.size() && b[j] == p)
                    ++j;
                else
                    c.push_back(static_cast<Point>(p));
            }
            comp.append(c);
        }
        std::vector<std::vector<std::uint32_t>> r(static_cast<std::size_t>(t) + 1);
        for (int s = 1; s <= std::min(t, v - k); ++s) r[static_cast<std::size_t>(s)] = details::coverage_counts(comp, s, jobs);
        counts.assign(binom(v, t), 0);
        std::vector<Point> sub;
        for_each_subset(v, t, [&](std::span<const Point> T) {
            std::int64_t acc = static_cast<std::int64_t>(d.size());
            for (unsigned mask = 1; mask < (1u << t); ++mask) {
                sub.clear();
                for (int i = 0; i < t; ++i)
                    if (mask & (1u << i)) sub.push_back(T[static_cast<std::size_t>(i)]);
                const auto& rs = r[sub.size()];
                const auto val = rs.empty() ? std::int64_t{0} : static_cast<std::int64_t>(rs[colex_rank(sub)]);
                acc += (std::popcount(mask) % 2 ? -val : val);
            }
            counts[colex_rank(T)] = static_cast<std::uint64_t>(acc);
        });
    } else {
        const auto c = details::coverage_counts(d, t, jobs);
        counts.assign(c.begin(), c.end());
    }

    std::vector<Point> first(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) first[static_cast<std::size_t>(i)] = static_cast<Point>(i);
    const std::uint64_t ref = counts[colex_rank(first)];
    std::optional<DesignWitness> w;
    for_each_subset(v, t, [&](std::span<const Point> T) {
        if (w) return;
        const std::uint64_t c = counts[colex_rank(T)];
        if (c != ref) w = DesignWitness{first, ref, std::vector<Point>(T.begin(), T.end()), c};
    });
    if (w)
        out.witness = std::move(w);
    else
        out.lambda = ref;
    return out;
}

/// lambda_s = lambda C(v-s, t-s) / C(k-s, t-s), exact.
inline Rational lambda_s(int v, int k, int t, const BigInt& lambda, int s) {
    if (s < 1 || s > t || t > k || k > v) throw std::invalid_argument("lambda_s: need 1 <= s <= t <= k <= v");
    return Rational(lambda * BigInt(binom(v - s, t - s)), BigInt(binom(k - s, t - s)));
}

/// Index of the supplementary design: lambda C(v-t, k) / C(v-t, k-t).
inline Rational supplementary_lambda(int v, int k, int t, const BigInt& lambda) {
    return Rational(lambda * BigInt(binom(v - t, k)), BigInt(binom(v - t, k - t)));
}

/// Index of the complementary design: C(v-t, k-t) - lambda.
inline BigInt complementary_lambda(int v, int k, int t, const BigInt& lambda) { return BigInt(binom(v - t, k - t)) - lambda; }

/// Blocks replaced by their complements in {0..v-1}.
inline Design supplementary(const Design& d) {
    BlockSet out(d.v(), d.v() - d.k(), d.family().empty() ? std::string() : "supplementary(" + d.family() + ")");
    out.reserve(d.size());
    std::vector<Point> c;
    for (std::size_t i = 0; i < d.size(); ++i) {
        c.clear();
        auto b = d[i];
        std::size_t j = 0;
        for (int p = 0; p < d.v(); ++p) {
            if (j < b.size() && b[j] == p)
                ++j;
            else
                c.push_back(static_cast<Point>(p));
        }
        out.append(c);
    }
    if (d.k() == 0 || d.k() == d.v()) return out;
    out.normalize();
    return out;
}

/// All k-subsets of {0..v-1} that are not blocks of d.
inline Design complementary(const Design& d) {
    if (!d.is_sorted_unique()) throw std::invalid_argument("complementary: block set must be normalized");
    BlockSet out(d.v(), d.k(), d.family().empty() ? std::string() : "complementary(" + d.family() + ")");
    std::size_t j = 0;
    for_each_subset(d.v(), d.k(), [&](std::span<const Point> s) {
        if (j < d.size() && std::ranges::equal(d[j], s)) {
            ++j;
            return;
        }
        out.append(s);
    });
    return out;
}

/// Largest |B1 n B2| over distinct blocks.
inline int max_pairwise_intersection(const Design& d) {
    if (d.size() < 2) throw std::invalid_argument("max_pairwise_intersection: need at least 2 blocks");
    struct Mask {
        std::uint64_t lo = 0, hi = 0;
    };
    std::vector<Mask> masks(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (Point p : d[i]) (p < 64 ? masks[i].lo : masks[i].hi) |= std::uint64_t{1} << (p % 64);
    int best = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const Mask a = masks[i];
        for (std::size_t j = i + 1; j < masks.size(); ++j) {
            const int c = std::popcount(a.lo & masks[j].lo) + std::popcount(a.hi & masks[j].hi);
            best = std::max(best, c);
        }
        if (best == d.k() - 1) break;  // distinct blocks cannot share more
    }
    return best;
}

inline nlohmann::ordered_json verdict_to_json(const DesignVerdict& r) {
    nlohmann::ordered_json j;
    j["v"] = r.v;
    j["k"] = r.k;
    j["t"] = r.t;
    if (r.lambda) {
        j["lambda"] = *r.lambda;
    } else if (r.witness) {
        auto pts = [](const std::vector<Point>& s) {
            auto a = nlohmann::ordered_json::array();
            for (Point p : s) a.push_back(static_cast<int>(p));
            return a;
        };
        j["witness"] = {{"first", pts(r.witness->first)},
                        {"first_count", r.witness->first_count},
                        {"second", pts(r.witness->second)},
                        {"second_count", r.witness->second_count}};
    }
    j["num_blocks"] = r.num_blocks;
    j["complete"] = r.complete;
    j["empty"] = r.empty;
    return j;
}

}  // namespace espd
