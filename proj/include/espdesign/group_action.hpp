/**
 * @file group_action.hpp
 * @brief The setwise stabilizer of U_{q+1} in PGL(2, q^2) and its action on k-subsets.
 *
 * Group elements are kept both as normalized matrices and as permutations of the circle
 * indices; all subset-level work uses the permutations.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "block.hpp"
#include "esp_blocks.hpp"
#include "finite_field.hpp"
#include "subsets.hpp"
#include "union_find.hpp"

namespace espd {

/// u -> (a u + b) / (c u + d), normalized so the first nonzero of (a, b, c, d) is 1.
class Moebius {
   public:
    Moebius(const GaloisField& f, Elem a, Elem b, Elem c, Elem d) : a_(a), b_(b), c_(c), d_(d) {
        if ((f.mul(a, d) + f.mul(b, c)).is_zero()) throw std::invalid_argument("Moebius: ad = bc");
        const Elem lead = !a.is_zero() ? a : !b.is_zero() ? b : c;
        const Elem inv = f.inv(lead);
        a_ = f.mul(a_, inv);
        b_ = f.mul(b_, inv);
        c_ = f.mul(c_, inv);
        d_ = f.mul(d_, inv);
    }

    static Moebius identity(const GaloisField& f) { return Moebius(f, kOne, kZero, kZero, kOne); }

    [[nodiscard]] Elem a() const noexcept { return a_; }
    [[nodiscard]] Elem b() const noexcept { return b_; }
    [[nodiscard]] Elem c() const noexcept { return c_; }
    [[nodiscard]] Elem d() const noexcept { return d_; }

    /// Image of u; nullopt when u is the pole.
    [[nodiscard]] std::optional<Elem> apply(const GaloisField& f, Elem u) const {
        const Elem den = f.mul(c_, u) + d_;
        if (den.is_zero()) return std::nullopt;
        return f.div(f.mul(a_, u) + b_, den);
    }

    /// this o other.
    [[nodiscard]] Moebius compose(const GaloisField& f, const Moebius& o) const {
        return Moebius(f, f.mul(a_, o.a_) + f.mul(b_, o.c_), f.mul(a_, o.b_) + f.mul(b_, o.d_), f.mul(c_, o.a_) + f.mul(d_, o.c_),
                       f.mul(c_, o.b_) + f.mul(d_, o.d_));
    }

    [[nodiscard]] Moebius inverse(const GaloisField& f) const { return Moebius(f, d_, b_, c_, a_); }  // signs vanish in char 2

    [[nodiscard]] std::uint64_t key() const noexcept {
        return std::uint64_t{a_.bits} | std::uint64_t{b_.bits} << 16 | std::uint64_t{c_.bits} << 32 | std::uint64_t{d_.bits} << 48;
    }
    friend bool operator==(const Moebius& x, const Moebius& y) noexcept { return x.key() == y.key(); }

   private:
    Elem a_, b_, c_, d_;
};

using Permutation = std::vector<Point>;

/// The permutation of circle indices induced by g; throws if g does not preserve U_{q+1}.
inline Permutation as_permutation(const UnitCircle& uc, const Moebius& g) {
    Permutation p(static_cast<std::size_t>(uc.size()));
    std::vector<bool> hit(p.size(), false);
    for (int i = 0; i < uc.size(); ++i) {
        const auto img = g.apply(uc.field(), uc[static_cast<std::size_t>(i)]);
        const int j = img ? uc.index_of(*img) : -1;
        if (j < 0 || hit[static_cast<std::size_t>(j)]) throw std::logic_error("Moebius map does not permute U_{q+1}");
        hit[static_cast<std::size_t>(j)] = true;
        p[static_cast<std::size_t>(i)] = static_cast<Point>(j);
    }
    return p;
}

/// type 1: u -> u0 u
inline Moebius rotation(const UnitCircle& uc, Elem u0) { return Moebius(uc.field(), u0, kZero, kZero, kOne); }
/// type 2: u -> 1/u
inline Moebius inversion(const UnitCircle& uc) { return Moebius(uc.field(), kZero, kOne, kOne, kZero); }
/// type 3: u -> (u + c^q) / (c u + 1), c outside U_{q+1}
inline Moebius type3(const UnitCircle& uc, Elem c) {
    if (c.is_zero() || uc.contains(c)) throw std::invalid_argument("type3: c must be nonzero and outside U_{q+1}");
    return Moebius(uc.field(), kOne, uc.field().frobenius(c), c, kOne);
}

/// Nonzero field elements outside U_{q+1}, in increasing bit order.
inline std::vector<Elem> type3_parameters(const UnitCircle& uc) {
    std::vector<Elem> out;
    for (std::uint32_t x = 1; x < uc.field().size(); ++x)
        if (!uc.contains(Elem(static_cast<std::uint16_t>(x)))) out.emplace_back(static_cast<std::uint16_t>(x));
    return out;
}

/// Rotation by beta, inversion, and type-3 maps (the first `type3_count`, or all when negative).
inline std::vector<Moebius> stab_generators(const UnitCircle& uc, int type3_count = -1) {
    std::vector<Moebius> g = {rotation(uc, uc.beta()), inversion(uc)};
    const auto cs = type3_parameters(uc);
    const std::size_t take = type3_count < 0 ? cs.size() : std::min<std::size_t>(cs.size(), static_cast<std::size_t>(type3_count));
    for (std::size_t i = 0; i < take; ++i) g.push_back(type3(uc, cs[i]));
    return g;
}

inline std::uint64_t pgl2_order(std::uint64_t q) { return q * q * q - q; }

class GroupClosure {
   public:
    /// Breadth-first closure of `gens`; fails hard if it outgrows q^3 - q.
    GroupClosure(const UnitCircle& uc, std::vector<Moebius> gens) : q_(uc.q()), gens_(std::move(gens)) {
        const GaloisField& f = uc.field();
        const std::uint64_t target = pgl2_order(q_);
        for (const auto& g : gens_) gen_perms_.push_back(as_permutation(uc, g));
        std::unordered_map<std::uint64_t, std::uint32_t> seen;
        seen.reserve(static_cast<std::size_t>(target) * 2);
        const Moebius id = Moebius::identity(f);
        elements_.push_back(id);
        seen.emplace(id.key(), 0);
        for (std::size_t head = 0; head < elements_.size(); ++head) {
            for (const auto& g : gens_) {
                const Moebius h = g.compose(f, elements_[head]);
                if (seen.emplace(h.key(), static_cast<std::uint32_t>(elements_.size())).second) {
                    elements_.push_back(h);
                    if (elements_.size() > target)
                        throw std::logic_error("close_group: closure exceeds q^3 - q = " + std::to_string(target) + " elements");
                }
            }
        }
        perms_.reserve(elements_.size() * static_cast<std::size_t>(uc.size()));
        for (const auto& e : elements_) {
            const auto p = as_permutation(uc, e);
            perms_.insert(perms_.end(), p.begin(), p.end());
        }
        n_ = static_cast<std::size_t>(uc.size());
    }

    [[nodiscard]] std::uint64_t q() const noexcept { return q_; }
    [[nodiscard]] std::size_t order() const noexcept { return elements_.size(); }
    [[nodiscard]] const std::vector<Moebius>& elements() const noexcept { return elements_; }
    [[nodiscard]] const std::vector<Moebius>& generators() const noexcept { return gens_; }
    [[nodiscard]] const std::vector<Permutation>& generator_perms() const noexcept { return gen_perms_; }
    [[nodiscard]] std::span<const Point> perm(std::size_t i) const noexcept { return {perms_.data() + i * n_, n_}; }
    [[nodiscard]] int points() const noexcept { return static_cast<int>(n_); }

   private:
    std::uint64_t q_;
    std::vector<Moebius> gens_;
    std::vector<Permutation> gen_perms_;
    std::vector<Moebius> elements_;
    std::vector<Point> perms_;
    std::size_t n_ = 0;
};

/**
 * @brief Closure seeded with rotation, inversion and `seed_type3` type-3 maps.
 *
 * The order must come out as q^3 - q; on a shortfall every type-3 map is added.
 */
inline GroupClosure close_group(const UnitCircle& uc, int seed_type3 = 4) {
    const std::uint64_t target = pgl2_order(uc.q());
    GroupClosure g(uc, stab_generators(uc, seed_type3));
    if (g.order() == target) return g;
    GroupClosure full(uc, stab_generators(uc, -1));
    if (full.order() != target)
        throw std::logic_error("close_group: order " + std::to_string(full.order()) + " != q^3 - q = " + std::to_string(target));
    return full;
}

// ---------------------------------------------------------------------------------------------
// Element statistics

inline std::uint64_t permutation_order(std::span<const Point> p) {
    std::vector<bool> done(p.size(), false);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (done[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !done[j]; j = p[j]) {
            done[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

inline int fixed_points(std::span<const Point> p) {
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) c += p[i] == i;
    return c;
}

/// Fixed points of an order-2 element; throws if the element does not have order 2.
inline int order2_fixed_points(const GroupClosure& g, std::size_t element) {
    const auto p = g.perm(element);
    if (permutation_order(p) != 2) throw std::invalid_argument("order2_fixed_points: element does not have order 2");
    return fixed_points(p);
}

/// Element counts by (order class, fixed-point count) against the permutation character.
struct CharacterCheck {
    std::uint64_t identity = 0, involutions = 0, split = 0, nonsplit = 0;  ///< order 1, 2, d | q-1, d | q+1
    std::uint64_t violations = 0;  ///< elements whose order or fixed-point count fits no class
};

/// Checks every element, or `sample` random ones when sample > 0.
inline CharacterCheck character_check(const GroupClosure& g, std::size_t sample = 0, std::uint64_t seed = 1) {
    CharacterCheck r;
    const std::uint64_t q = g.q();
    auto visit = [&](std::size_t i) {
        const auto p = g.perm(i);
        const std::uint64_t ord = permutation_order(p);
        const int fix = fixed_points(p);
        if (ord == 1) {
            r.identity++;
            if (fix != static_cast<int>(q + 1)) r.violations++;
        } else if (ord == 2) {
            r.involutions++;
            if (fix != 1) r.violations++;
        } else if ((q - 1) % ord == 0) {
            r.split++;
            if (fix != 2) r.violations++;
        } else if ((q + 1) % ord == 0) {
            r.nonsplit++;
            if (fix != 0) r.violations++;
        } else {
            r.violations++;
        }
    };
    if (sample == 0) {
        for (std::size_t i = 0; i < g.order(); ++i) visit(i);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> d(0, g.order() - 1);
        for (std::size_t s = 0; s < sample; ++s) visit(d(rng));
    }
    return r;
}

/// Size of the orbit of the ordered triple (0, 1, 2); equals (q+1)q(q-1) iff the action is 3-transitive.
inline std::size_t ordered_triple_orbit_size(const GroupClosure& g) {
    std::vector<std::uint32_t> seen;
    const std::uint32_t n = static_cast<std::uint32_t>(g.points());
    seen.reserve(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
        const auto p = g.perm(i);
        seen.push_back((p[0] * n + p[1]) * n + p[2]);
    }
    std::sort(seen.begin(), seen.end());
    return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

inline void apply_to_block(std::span<const Point> perm, std::span<const Point> block, std::vector<Point>& out) {
    out.resize(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) out[i] = perm[block[i]];
    std::sort(out.begin(), out.end());
}

// ---------------------------------------------------------------------------------------------
// Orbits on k-subsets

struct Orbit {
    std::vector<Point> rep;  ///< colex-minimal member
    std::uint64_t length = 0;
    std::uint64_t stabilizer_order = 0;
};

struct OrbitReport {
    int k = 0;
    std::uint64_t group_order = 0;
    std::vector<Orbit> orbits;               ///< by increasing colex rank of rep
    std::vector<std::uint32_t> orbit_of;     ///< orbit index per colex rank

    [[nodiscard]] std::vector<std::size_t> short_orbits() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < orbits.size(); ++i)
            if (orbits[i].stabilizer_order > 1) out.push_back(i);
        return out;
    }
};

/// Partition of all k-subsets into orbits, by union-find over generator images.
inline OrbitReport orbit_partition(const GroupClosure& g, int k) {
    if (k < 1 || k > 7) throw std::invalid_argument("orbit_partition: k must be in 1..7");
    const int n = g.points();
    const std::uint64_t total = binom(n, k);
    if (total > (std::uint64_t{1} << 31)) throw std::length_error("orbit_partition: too many subsets");
    UnionFind uf(static_cast<std::size_t>(total));
    std::vector<Point> img;
    for_each_subset(n, k, [&](std::span<const Point> s) {
        const auto r = static_cast<std::uint32_t>(colex_rank(s));
        for (const auto& p : g.generator_perms()) {
            apply_to_block(p, s, img);
            uf.unite(r, static_cast<std::uint32_t>(colex_rank(img)));
        }
    });
    OrbitReport rep;
    rep.k = k;
    rep.group_order = g.order();
    rep.orbit_of.assign(static_cast<std::size_t>(total), 0);
    std::unordered_map<std::uint32_t, std::uint32_t> index_of_root;
    for (std::uint64_t r = 0; r < total; ++r) {  // increasing rank: first hit is the colex-minimal member
        const std::uint32_t root = uf.find(static_cast<std::uint32_t>(r));
        auto [it, fresh] = index_of_root.emplace(root, static_cast<std::uint32_t>(rep.orbits.size()));
        if (fresh) {
            Orbit o;
            o.rep = colex_unrank(r, k);
            o.length = uf.set_size(root);
            if (g.order() % o.length != 0) throw std::logic_error("orbit_partition: orbit length does not divide the group order");
            o.stabilizer_order = g.order() / o.length;
            rep.orbits.push_back(std::move(o));
        }
        rep.orbit_of[static_cast<std::size_t>(r)] = it->second;
    }
    return rep;
}

inline nlohmann::ordered_json orbit_report_to_json(const OrbitReport& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["group_order"] = r.group_order;
    j["num_orbits"] = r.orbits.size();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& o : r.orbits) {
        nlohmann::ordered_json e;
        auto pts = nlohmann::ordered_json::array();
        for (Point p : o.rep) pts.push_back(static_cast<int>(p));
        e["rep"] = std::move(pts);
        e["length"] = o.length;
        e["stabilizer_order"] = o.stabilizer_order;
        arr.push_back(std::move(e));
    }
    j["orbits"] = std::move(arr);
    return j;
}

/// All members of the orbits selected by `take(orbit index)`, lex-sorted.
template <class Pred>
BlockSet union_of_orbits(const OrbitReport& r, int n, const Pred& take, FamilyTag tag = {}) {
    BlockSet out(n, r.k, std::move(tag));
    for_each_subset(n, r.k, [&](std::span<const Point> s) {
        if (take(r.orbit_of[static_cast<std::size_t>(colex_rank(s))])) out.append(s);
    });
    return out;
}

struct SetComparison {
    bool equal = false;
    std::optional<std::vector<Point>> only_left;   ///< first block of left \ right
    std::optional<std::vector<Point>> only_right;  ///< first block of right \ left
    std::size_t left_minus_right = 0, right_minus_left = 0;
};

inline SetComparison compare_blocksets(const BlockSet& l, const BlockSet& r) {
    SetComparison c;
    const BlockSet a = set_difference(l, r), b = set_difference(r, l);
    c.left_minus_right = a.size();
    c.right_minus_left = b.size();
    if (!a.empty()) c.only_left = std::vector<Point>(a[0].begin(), a[0].end());
    if (!b.empty()) c.only_right = std::vector<Point>(b[0].begin(), b[0].end());
    c.equal = a.empty() && b.empty() && l.k() == r.k() && l.v() == r.v();
    return c;
}

class SetMismatch : public std::logic_error {
   public:
    SetMismatch(const std::string& what, SetComparison c) : std::logic_error(what), cmp(std::move(c)) {}
    SetComparison cmp;
};

/// Union of all short 5-subset orbits; must equal the b-variant (5,3) block set exactly.
inline BlockSet alltop_design(const UnitCircle& uc, const GroupClosure& g, ScanOptions opt = {}) {
    if (uc.field().m() % 2 == 0) throw std::invalid_argument("alltop_design: requires odd m");
    const OrbitReport five = orbit_partition(g, 5);
    const BlockSet shorts =
        union_of_orbits(five, uc.size(), [&](std::uint32_t o) { return five.orbits[o].stabilizer_order > 1; }, "short-orbits:5");
    const BlockSet bvar = blockset_b_variant(uc, 5, 3, opt);
    auto cmp = compare_blocksets(shorts, bvar);
    if (!cmp.equal) throw SetMismatch("alltop_design: union of short orbits differs from the b-variant block set", cmp);
    return shorts;
}

struct InvarianceResult {
    bool invariant = true;
    std::size_t elements_checked = 0;
    std::optional<std::size_t> element;  ///< witness element index
    std::optional<std::vector<Point>> block, image;
};

/// Image of every block under every element (or `sample` random elements) lies in bs.
inline InvarianceResult invariance_check(const GroupClosure& g, const BlockSet& bs, std::size_t sample = 0, std::uint64_t seed = 1) {
    InvarianceResult res;
    std::vector<std::size_t> which;
    if (sample == 0) {
        which.resize(g.order());
        std::iota(which.begin(), which.end(), 0);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> d(0, g.order() - 1);
        for (std::size_t s = 0; s < sample; ++s) which.push_back(d(rng));
    }
    std::vector<Point> img;
    for (std::size_t e : which) {
        const auto p = g.perm(e);
        ++res.elements_checked;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            apply_to_block(p, bs[i], img);
            if (!bs.contains(img)) {
                res.invariant = false;
                res.element = e;
                res.block = std::vector<Point>(bs[i].begin(), bs[i].end());
                res.image = img;
                return res;
            }
        }
    }
    return res;
}

/// Some order-2 element maps the block onto itself.
inline bool fixed_by_involution(const GroupClosure& g, std::span<const Point> block, const std::vector<std::size_t>& involutions) {
    std::vector<Point> img;
    for (std::size_t e : involutions) {
        apply_to_block(g.perm(e), block, img);
        if (std::ranges::equal(img, block)) return true;
    }
    return false;
}

inline std::vector<std::size_t> involution_indices(const GroupClosure& g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (permutation_order(g.perm(i)) == 2) out.push_back(i);
    return out;
}

/// Orbit `o` has a member {x, 1/x, y, 1/y, 1}: contains index 0 and is closed under i -> -i.
inline bool has_inverse_pair_rep(const OrbitReport& r, std::size_t o, int n) {
    bool found = false;
    std::vector<Point> inv;
    for_each_subset(n, r.k, [&](std::span<const Point> s) {
        if (found || s[0] != 0 || r.orbit_of[static_cast<std::size_t>(colex_rank(s))] != o) return;
        inv.clear();
        for (Point p : s) inv.push_back(static_cast<Point>((n - p) % n));
        std::sort(inv.begin(), inv.end());
        found = std::ranges::equal(inv, s);
    });
    return found;
}

}  // namespace espd
