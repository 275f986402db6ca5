/**
 * @file union_find.hpp
 * @brief Disjoint sets over 0..n-1 with path halving and union by size.
 */
#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace espd {

class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// True if x and y were in different sets.
    bool unite(std::uint32_t x, std::uint32_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (size_[x] < size_[y]) std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    [[nodiscard]] std::size_t size() const noexcept { return parent_.size(); }
    std::uint32_t set_size(std::uint32_t x) { return size_[find(x)]; }

   private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace espd
