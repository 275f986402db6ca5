/**
 * @file subsets.hpp
 * @brief k-subset machinery: binomials, colex ranking, depth-first enumeration.
 *
 * Enumeration is depth first in lexicographic order. A visitor receives push/pop events so
 * it can keep incremental state (running ESP values, partial eliminations) per depth.
 * Parallel scans split on the first (smallest) element; per-branch results are concatenated
 * in branch order, so outputs do not depend on the worker count.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "finite_field.hpp"

namespace espd {

/// Exact binomial coefficients C(n, k) for n <= 130 that fit in 64 bits.
class Binomials {
   public:
    static constexpr int kMaxN = 130;

    static std::uint64_t get(int n, int k) {
        static const Binomials table;
        if (k < 0 || n < 0 || k > n) return 0;
        if (n > kMaxN) throw std::out_of_range("binomial: n too large");
        const std::uint64_t v = table.c_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        if (v == kOverflow) throw std::overflow_error("binomial: C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
        return v;
    }

   private:
    static constexpr std::uint64_t kOverflow = ~std::uint64_t{0};

    Binomials() : c_(kMaxN + 1, std::vector<std::uint64_t>(kMaxN + 1, 0)) {
        for (int n = 0; n <= kMaxN; ++n) {
            c_[n][0] = c_[n][n] = 1;
            for (int k = 1; k < n; ++k) {
                const std::uint64_t a = c_[n - 1][k - 1], b = c_[n - 1][k];
                c_[n][k] = (a == kOverflow || b == kOverflow || a > kOverflow - 1 - b) ? kOverflow : a + b;
            }
        }
    }
    std::vector<std::vector<std::uint64_t>> c_;
};

inline std::uint64_t binom(int n, int k) { return Binomials::get(n, k); }

/// C(n, k) mod 2 by Lucas' theorem: odd iff the bits of k are a subset of the bits of n.
constexpr bool binom_is_odd(int n, int k) noexcept { return k >= 0 && n >= k && (k & ~n) == 0; }

/// Colex rank of a strictly increasing index list: sum_i C(c_i, i+1).
inline std::uint64_t colex_rank(std::span<const Point> s) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) r += binom(s[i], static_cast<int>(i) + 1);
    return r;
}

/// Inverse of colex_rank for k-subsets.
inline std::vector<Point> colex_unrank(std::uint64_t rank, int k) {
    std::vector<Point> out(static_cast<std::size_t>(k));
    for (int i = k; i >= 1; --i) {
        int c = i - 1;
        while (binom(c + 1, i) <= rank) ++c;
        out[static_cast<std::size_t>(i - 1)] = static_cast<Point>(c);
        rank -= binom(c, i);
    }
    return out;
}

/// Calls fn(span) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<Point> s(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = static_cast<Point>(i);
    while (true) {
        fn(std::span<const Point>(s));
        int i = k - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++s[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = static_cast<Point>(s[static_cast<std::size_t>(j - 1)] + 1);
    }
}

/**
 * Visitor for dfs_subsets_from:
 *   void push(int depth, Point p);   // p becomes element number `depth` (0-based)
 *   void leaf(std::span<const Point> subset);
 * Pops are implicit: state at depth d is overwritten by the next push at depth d.
 */
template <class V>
concept SubsetVisitor = requires(V v, int d, Point p, std::span<const Point> s) {
    v.push(d, p);
    v.leaf(s);
};

/// Depth-first lexicographic enumeration of k-subsets of {0..n-1} whose first element is `first`.
template <SubsetVisitor V>
void dfs_subsets_from(int n, int k, int first, V& vis) {
    if (k == 0 || first > n - k) return;
    std::vector<Point> s(static_cast<std::size_t>(k));
    s[0] = static_cast<Point>(first);
    vis.push(0, s[0]);
    if (k == 1) {
        vis.leaf(std::span<const Point>(s));
        return;
    }
    int d = 1;
    int next = first + 1;
    while (d >= 1) {
        if (next > n - k + d) {  // exhausted at depth d, backtrack
            --d;
            if (d == 0) break;
            next = s[static_cast<std::size_t>(d)] + 1;
            continue;
        }
        s[static_cast<std::size_t>(d)] = static_cast<Point>(next);
        vis.push(d, s[static_cast<std::size_t>(d)]);
        if (d == k - 1) {
            vis.leaf(std::span<const Point>(s));
            ++next;
        } else {
            ++d;
            next = s[static_cast<std::size_t>(d - 1)] + 1;
        }
    }
}

/// Worker count; 0 means hardware concurrency.
inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/**
 * @brief Runs `branch(first)` for first = 0..branches-1 on `jobs` workers.
 *
 * Branches are claimed dynamically; `branch` must only touch state owned by its index.
 */
inline void parallel_branches(int branches, unsigned jobs, const std::function<void(int)>& branch) {
    jobs = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max(branches, 1)));
    if (jobs <= 1) {
        for (int b = 0; b < branches; ++b) branch(b);
        return;
    }
    std::atomic<int> counter{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            try {
                for (int b = counter++; b < branches; b = counter++) branch(b);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                counter = branches;
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace espd
