/**
 * @file block.hpp
 * @brief Blocks (sorted point subsets) and duplicate-free block sets.
 */
#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"

namespace espd {

/// Point subsets as bit masks; 128 bits cover every supported q + 1 <= 129.
using PointMask = std::bitset<128>;

/// A strictly increasing list of unit-circle indices.
class Block {
   public:
    Block() = default;
    explicit Block(std::vector<Point> pts) : pts_(std::move(pts)) {
        std::sort(pts_.begin(), pts_.end());
        if (std::adjacent_find(pts_.begin(), pts_.end()) != pts_.end()) throw std::invalid_argument("Block: repeated point");
    }
    Block(std::initializer_list<int> pts) {
        for (int p : pts) {
            if (p < 0 || p > 255) throw std::invalid_argument("Block: point out of range");
            pts_.push_back(static_cast<Point>(p));
        }
        *this = Block(std::move(pts_));
    }
    explicit Block(std::span<const Point> pts) : Block(std::vector<Point>(pts.begin(), pts.end())) {}

    [[nodiscard]] std::size_t size() const noexcept { return pts_.size(); }
    [[nodiscard]] Point operator[](std::size_t i) const noexcept { return pts_[i]; }
    [[nodiscard]] std::span<const Point> points() const noexcept { return pts_; }
    operator std::span<const Point>() const noexcept { return pts_; }
    [[nodiscard]] auto begin() const noexcept { return pts_.begin(); }
    [[nodiscard]] auto end() const noexcept { return pts_.end(); }
    [[nodiscard]] bool contains(Point p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

    friend bool operator==(const Block&, const Block&) = default;
    friend auto operator<=>(const Block& a, const Block& b) { return a.pts_ <=> b.pts_; }

   private:
    std::vector<Point> pts_;
};

inline PointMask to_mask(std::span<const Point> pts) {
    PointMask m;
    for (Point p : pts) m.set(p);
    return m;
}

inline std::vector<Point> from_mask(const PointMask& m, int v) {
    std::vector<Point> out;
    for (int p = 0; p < v; ++p)
        if (m.test(static_cast<std::size_t>(p))) out.push_back(static_cast<Point>(p));
    return out;
}

/// Descriptive tag of the condition that produced a block set, e.g. "u:7,3".
using FamilyTag = std::string;

/**
 * @brief A duplicate-free set of k-subsets of {0..v-1}, stored flat and kept lex-sorted.
 *
 * v is the point count (q + 1 for unit-circle families). Blocks are contiguous runs of k
 * points; `normalize()` restores the sorted, duplicate-free invariant after bulk appends.
 */
class BlockSet {
   public:
    BlockSet() = default;
    BlockSet(int v, int k, FamilyTag family = {}) : v_(v), k_(k), family_(std::move(family)) {
        if (k < 0 || k > v) throw std::invalid_argument("BlockSet: need 0 <= k <= v");
        if (v > 128) throw std::invalid_argument("BlockSet: at most 128 points");
    }

    [[nodiscard]] int v() const noexcept { return v_; }
    /// Subfield size for unit-circle families (v - 1).
    [[nodiscard]] int q() const noexcept { return v_ - 1; }
    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] const FamilyTag& family() const noexcept { return family_; }
    void set_family(FamilyTag f) { family_ = std::move(f); }

    [[nodiscard]] std::size_t size() const noexcept { return k_ == 0 ? empty_blocks_ : data_.size() / static_cast<std::size_t>(k_); }
    [[nodiscard]] bool empty() const noexcept { return size() == 0; }

    [[nodiscard]] std::span<const Point> operator[](std::size_t i) const noexcept {
        return {data_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }
    [[nodiscard]] const std::vector<Point>& raw() const noexcept { return data_; }

    /// Appends without re-sorting; call normalize() afterwards unless appending in lex order.
    void append(std::span<const Point> b) {
        if (static_cast<int>(b.size()) != k_) throw std::invalid_argument("BlockSet::append: block size mismatch");
        if (k_ == 0) {
            empty_blocks_ = 1;
            return;
        }
        data_.insert(data_.end(), b.begin(), b.end());
    }
    void append_all(const std::vector<Point>& flat) {
        if (k_ == 0 || flat.size() % static_cast<std::size_t>(k_) != 0) throw std::invalid_argument("BlockSet::append_all: size mismatch");
        data_.insert(data_.end(), flat.begin(), flat.end());
    }
    void reserve(std::size_t blocks) { data_.reserve(blocks * static_cast<std::size_t>(k_)); }

    /// Validates each block (increasing, in range), then sorts and removes duplicates.
    void normalize() {
        if (k_ == 0) return;
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            auto b = (*this)[i];
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j] >= v_) throw std::invalid_argument("BlockSet: point out of range in block " + std::to_string(i));
                if (j > 0 && b[j] <= b[j - 1]) throw std::invalid_argument("BlockSet: block " + std::to_string(i) + " not strictly increasing");
            }
        }
        if (is_sorted_unique()) return;
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return less((*this)[a], (*this)[b]); });
        std::vector<Point> out;
        out.reserve(data_.size());
        for (std::size_t idx = 0; idx < n; ++idx) {
            auto b = (*this)[order[idx]];
            if (idx > 0 && std::ranges::equal(b, (*this)[order[idx - 1]])) continue;
            out.insert(out.end(), b.begin(), b.end());
        }
        data_ = std::move(out);
    }

    [[nodiscard]] bool is_sorted_unique() const {
        for (std::size_t i = 1; i < size(); ++i)
            if (!less((*this)[i - 1], (*this)[i])) return false;
        return true;
    }

    [[nodiscard]] bool contains(std::span<const Point> b) const {
        if (static_cast<int>(b.size()) != k_) return false;
        if (k_ == 0) return empty_blocks_ > 0;
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (less((*this)[mid], b))
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo < size() && std::ranges::equal((*this)[lo], b);
    }

    [[nodiscard]] std::vector<Block> blocks() const {
        std::vector<Block> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.emplace_back((*this)[i]);
        return out;
    }

    /// Equal point sets and block sets; the family tag is descriptive and ignored.
    friend bool operator==(const BlockSet& a, const BlockSet& b) {
        return a.v_ == b.v_ && a.k_ == b.k_ && a.data_ == b.data_ && a.empty_blocks_ == b.empty_blocks_;
    }

    static bool less(std::span<const Point> a, std::span<const Point> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

   private:
    int v_ = 0;
    int k_ = 0;
    FamilyTag family_;
    std::vector<Point> data_;
    std::size_t empty_blocks_ = 0;  // the empty block can only occur once when k == 0
};

/// Blocks of `a` not in `b` (both sorted), preserving order.
inline BlockSet set_difference(const BlockSet& a, const BlockSet& b) {
    if (a.v() != b.v() || a.k() != b.k()) throw std::invalid_argument("set_difference: incompatible block sets");
    BlockSet out(a.v(), a.k(), a.family());
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        while (j < b.size() && BlockSet::less(b[j], a[i])) ++j;
        if (j < b.size() && std::ranges::equal(b[j], a[i])) continue;
        out.append(a[i]);
    }
    return out;
}

inline BlockSet set_union(const BlockSet& a, const BlockSet& b) {
    if (a.v() != b.v() || a.k() != b.k()) throw std::invalid_argument("set_union: incompatible block sets");
    BlockSet out(a.v(), a.k(), a.family());
    out.reserve(a.size() + b.size());
    out.append_all(a.raw());
    out.append_all(b.raw());
    out.normalize();
    return out;
}

inline BlockSet set_intersection(const BlockSet& a, const BlockSet& b) {
    if (a.v() != b.v() || a.k() != b.k()) throw std::invalid_argument("set_intersection: incompatible block sets");
    BlockSet out(a.v(), a.k(), a.family());
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        while (j < b.size() && BlockSet::less(b[j], a[i])) ++j;
        if (j < b.size() && std::ranges::equal(b[j], a[i])) out.append(a[i]);
    }
    return out;
}

}  // namespace espd
