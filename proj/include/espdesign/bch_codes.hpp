/**
 * @file bch_codes.hpp
 * @brief The narrow-sense BCH code C_(q,q+1,4,1), its dual trace code and weight distributions.
 *
 * Coordinates are indexed by U_{q+1} in discrete-log order: position j carries u = beta^j.
 * A vector c over GF(q) is a codeword iff sum_j c_j u_j^i = 0 for i = 1, 2, 3.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "block.hpp"
#include "designs.hpp"
#include "esp_blocks.hpp"
#include "finite_field.hpp"
#include "subsets.hpp"

namespace espd {

// ---------------------------------------------------------------------------------------------
// Polynomials over GF(q^2), lowest degree first

using FieldPoly = std::vector<Elem>;

inline void poly_trim(FieldPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int poly_degree(const FieldPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<int>(i);
    return -1;
}

inline FieldPoly poly_mul(const GaloisField& f, const FieldPoly& a, const FieldPoly& b) {
    if (a.empty() || b.empty()) return {};
    FieldPoly r(a.size() + b.size() - 1, kZero);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += f.mul(a[i], b[j]);
    poly_trim(r);
    return r;
}

/// Quotient and remainder of a / b; b must be nonzero.
inline std::pair<FieldPoly, FieldPoly> poly_divmod(const GaloisField& f, FieldPoly a, const FieldPoly& b) {
    const int db = poly_degree(b);
    if (db < 0) throw std::domain_error("poly_divmod: division by the zero polynomial");
    poly_trim(a);
    const int da = poly_degree(a);
    if (da < db) return {{}, a};
    FieldPoly quot(static_cast<std::size_t>(da - db) + 1, kZero);
    const Elem lead_inv = f.inv(b[static_cast<std::size_t>(db)]);
    for (int i = da; i >= db; --i) {
        const Elem c = f.mul(a[static_cast<std::size_t>(i)], lead_inv);
        if (c.is_zero()) continue;
        quot[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(i - db + j)] += f.mul(c, b[static_cast<std::size_t>(j)]);
    }
    poly_trim(a);
    poly_trim(quot);
    return {quot, a};
}

inline Elem poly_eval(const GaloisField& f, const FieldPoly& p, Elem x) {
    Elem acc = kZero;
    for (std::size_t i = p.size(); i-- > 0;) acc = f.mul(acc, x) + p[i];
    return acc;
}

/// Minimal polynomial of beta^s over GF(q).
inline FieldPoly minimal_poly(const UnitCircle& uc, int s) {
    if (s < 0 || s > uc.size() - 1) throw std::out_of_range("minimal_poly: s out of range");
    const GaloisField& f = uc.field();
    const Elem r = uc[static_cast<std::size_t>(s)];
    if (f.in_subfield(r)) return {r, kOne};
    const Elem rc = f.frobenius(r);  // = beta^{-s}
    FieldPoly m = {f.mul(r, rc), r + rc, kOne};
    for (Elem c : m)
        if (!f.in_subfield(c)) throw std::logic_error("minimal_poly: coefficient outside GF(q)");
    return m;
}

struct CodeSpec {
    int q = 0;
    int n = 0;
    FieldPoly generator;
    int dimension = 0;
    std::array<int, 3> parity_exponents{1, 2, 3};
};

/// g = lcm(M_beta, M_beta^2, M_beta^3), checked to divide x^{q+1} - 1.
inline CodeSpec build_code(const UnitCircle& uc) {
    const GaloisField& f = uc.field();
    CodeSpec c;
    c.q = static_cast<int>(uc.q());
    c.n = uc.size();
    std::vector<FieldPoly> factors;
    for (int s : c.parity_exponents) {
        FieldPoly m = minimal_poly(uc, s);
        if (std::find(factors.begin(), factors.end(), m) == factors.end()) factors.push_back(std::move(m));
    }
    FieldPoly g = {kOne};
    for (const auto& m : factors) g = poly_mul(f, g, m);
    FieldPoly xn(static_cast<std::size_t>(c.n) + 1, kZero);
    xn[0] = kOne;
    xn.back() = kOne;
    if (!poly_divmod(f, xn, g).second.empty()) throw std::logic_error("build_code: generator does not divide x^n - 1");
    for (Elem e : g)
        if (!f.in_subfield(e)) throw std::logic_error("build_code: generator coefficient outside GF(q)");
    c.generator = std::move(g);
    c.dimension = c.n - poly_degree(c.generator);
    return c;
}

/// Generator-matrix rows: the q-5 shifts x^s g(x) as length-n vectors over GF(q).
inline std::vector<std::vector<Elem>> code_basis(const CodeSpec& c) {
    std::vector<std::vector<Elem>> rows;
    for (int s = 0; s < c.dimension; ++s) {
        std::vector<Elem> r(static_cast<std::size_t>(c.n), kZero);
        for (std::size_t i = 0; i < c.generator.size(); ++i) r[static_cast<std::size_t>(s) + i] = c.generator[i];
        rows.push_back(std::move(r));
    }
    return rows;
}

/// sum_j c_j beta^{ij} for i in the parity exponents; all zero iff c is a codeword.
inline bool is_codeword(const UnitCircle& uc, const CodeSpec& c, std::span<const Elem> word) {
    const GaloisField& f = uc.field();
    if (static_cast<int>(word.size()) != c.n) return false;
    for (Elem x : word)
        if (!f.in_subfield(x)) return false;
    for (int i : c.parity_exponents) {
        Elem acc = kZero;
        for (int j = 0; j < c.n; ++j) acc += f.mul(word[static_cast<std::size_t>(j)], uc[static_cast<std::size_t>((i * j) % c.n)]);
        if (!acc.is_zero()) return false;
    }
    return true;
}

/// Generator coefficients as "a^<log_alpha>" strings, "0" for zero, lowest degree first.
inline nlohmann::ordered_json code_to_json(const GaloisField& f, const CodeSpec& c, std::optional<int> min_distance = std::nullopt) {
    nlohmann::ordered_json j;
    j["q"] = c.q;
    j["n"] = c.n;
    j["dimension"] = c.dimension;
    j["generator_degree"] = poly_degree(c.generator);
    auto g = nlohmann::ordered_json::array();
    for (Elem e : c.generator) g.push_back(e.is_zero() ? std::string("0") : "a^" + std::to_string(f.log(e)));
    j["generator_poly"] = std::move(g);
    j["parity_exponents"] = c.parity_exponents;
    if (min_distance) j["min_distance"] = *min_distance;
    return j;
}

// ---------------------------------------------------------------------------------------------
// Supports of low-weight codewords

struct SupportScan {
    int k = 0;
    std::uint64_t count = 0;     ///< |B_k(C)|
    BigInt codewords = 0;        ///< number of weight-k codewords, A_k
    std::array<std::uint64_t, 4> kernel_dim_hist{};  ///< supports by kernel dimension 1, 2 (index 0 and 3 unused)
    std::uint64_t flagged = 0;   ///< subsets whose kernel dimension exceeded 2
    BlockSet blocks;             ///< empty unless materialized
};

namespace details {

inline constexpr int kRows = 6;
inline constexpr int kMaxSupport = 7;
inline constexpr int kMaxDeps = 3;

using Column = std::array<Elem, kRows>;

/// Per-depth elimination state for the columns pushed so far.
struct ElimState {
    int rank = 0;
    int ndeps = 0;
    std::array<Column, kRows> basis{};                          // pivot entry normalized to 1
    std::array<int, kRows> pivot{};
    std::array<std::array<Elem, kMaxSupport>, kRows> comb{};   // basis[r] = sum_j comb[r][j] col_j
    std::array<std::array<Elem, kMaxSupport>, kMaxDeps> deps{};  // kernel vectors
};

struct SupportVisitor {
    const GaloisField& f;
    std::span<const Column> cols;  // per point
    int k;
    int q;
    bool materialize;
    std::array<ElimState, kMaxSupport + 1> st{};
    std::uint64_t count = 0;
    BigInt codewords = 0;
    std::array<std::uint64_t, 4> hist{};
    std::uint64_t flagged = 0;
    std::vector<Point> out;

    void push(int d, Point p) {
        const ElimState& prev = st[static_cast<std::size_t>(d)];
        ElimState& cur = st[static_cast<std::size_t>(d) + 1];
        Column v = cols[p];
        std::array<Elem, kRows> factor{};
        for (int r = 0; r < prev.rank; ++r) {
            const Elem fr = v[static_cast<std::size_t>(prev.pivot[static_cast<std::size_t>(r)])];
            factor[static_cast<std::size_t>(r)] = fr;
            if (fr.is_zero()) continue;
            const Column& b = prev.basis[static_cast<std::size_t>(r)];
            for (int i = 0; i < kRows; ++i) v[static_cast<std::size_t>(i)] += f.mul(fr, b[static_cast<std::size_t>(i)]);
        }
        int lead = -1;
        for (int i = 0; i < kRows; ++i)
            if (!v[static_cast<std::size_t>(i)].is_zero()) {
                lead = i;
                break;
            }
        const bool is_leaf = d == k - 1;
        if (lead >= 0 && is_leaf) {
            // independent last column: the kernel is inherited unchanged
            cur.ndeps = prev.ndeps;
            cur.deps = prev.deps;
            cur.rank = -1;  // basis not needed below a leaf
            return;
        }
        cur = prev;
        std::array<Elem, kMaxSupport> comb{};
        comb[static_cast<std::size_t>(d)] = kOne;
        for (int r = 0; r < prev.rank; ++r) {
            const Elem fr = factor[static_cast<std::size_t>(r)];
            if (fr.is_zero()) continue;
            const auto& cr = prev.comb[static_cast<std::size_t>(r)];
            for (int j = 0; j < d; ++j) comb[static_cast<std::size_t>(j)] += f.mul(fr, cr[static_cast<std::size_t>(j)]);
        }
        if (lead < 0) {
            if (cur.ndeps < kMaxDeps) cur.deps[static_cast<std::size_t>(cur.ndeps)] = comb;
            ++cur.ndeps;
            return;
        }
        const Elem inv = f.inv(v[static_cast<std::size_t>(lead)]);
        for (auto& x : v) x = f.mul(x, inv);
        for (auto& x : comb) x = f.mul(x, inv);
        cur.basis[static_cast<std::size_t>(cur.rank)] = v;
        cur.comb[static_cast<std::size_t>(cur.rank)] = comb;
        cur.pivot[static_cast<std::size_t>(cur.rank)] = lead;
        ++cur.rank;
    }

    void leaf(std::span<const Point> s) {
        const ElimState& e = st[static_cast<std::size_t>(k)];
        if (e.ndeps == 0) return;
        if (e.ndeps > 2) {
            ++flagged;
            return;
        }
        std::uint64_t words = 0;
        if (e.ndeps == 1) {
            for (int j = 0; j < k; ++j)
                if (e.deps[0][static_cast<std::size_t>(j)].is_zero()) return;
            words = static_cast<std::uint64_t>(q - 1);
        } else {
            // x d1 + y d2 vanishes at j for one projective ratio, or always if both entries are 0
            std::array<std::uint32_t, kMaxSupport> bad{};
            int nbad = 0;
            for (int j = 0; j < k; ++j) {
                const Elem a = e.deps[0][static_cast<std::size_t>(j)], b = e.deps[1][static_cast<std::size_t>(j)];
                if (a.is_zero() && b.is_zero()) return;
                const std::uint32_t key = a.is_zero() ? 0xFFFFFFFFu : f.div(b, a).bits;
                bool seen = false;
                for (int t = 0; t < nbad; ++t) seen = seen || bad[static_cast<std::size_t>(t)] == key;
                if (!seen) bad[static_cast<std::size_t>(nbad++)] = key;
            }
            words = static_cast<std::uint64_t>(q - 1) * static_cast<std::uint64_t>(q + 1 - nbad);
        }
        ++hist[static_cast<std::size_t>(e.ndeps)];
        ++count;
        codewords += words;
        if (materialize) out.insert(out.end(), s.begin(), s.end());
    }
};

}  // namespace details

/**
 * @brief B_k(C): all k-subsets of U_{q+1} (k <= 7) supporting a codeword of weight k.
 *
 * Each point contributes the column (u, u^2, u^3) split over the basis {1, alpha} of
 * GF(q^2)/GF(q); columns are eliminated incrementally along the subset DFS.
 */
inline SupportScan supports_of_weight(const UnitCircle& uc, int k, ScanOptions opt = {}) {
    if (k < 1 || k > details::kMaxSupport) throw std::invalid_argument("supports_of_weight: k must be in 1..7");
    const GaloisField& f = uc.field();
    const int n = uc.size();
    std::vector<details::Column> cols(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        const Elem u = uc[static_cast<std::size_t>(p)];
        Elem pw = kOne;
        for (int i = 0; i < 3; ++i) {
            pw = f.mul(pw, u);
            const auto [x0, x1] = f.split_over_subfield(pw);
            cols[static_cast<std::size_t>(p)][static_cast<std::size_t>(2 * i)] = x0;
            cols[static_cast<std::size_t>(p)][static_cast<std::size_t>(2 * i + 1)] = x1;
        }
    }
    const int branches = n - k + 1;
    std::vector<SupportScan> parts(static_cast<std::size_t>(branches));
    std::vector<std::vector<Point>> chunks(static_cast<std::size_t>(branches));
    parallel_branches(branches, opt.jobs, [&](int first) {
        details::SupportVisitor vis{f, cols, k, static_cast<int>(uc.q()), opt.materialize, {}, {}, 0, {}, 0, {}};
        dfs_subsets_from(n, k, first, vis);
        auto& part = parts[static_cast<std::size_t>(first)];
        part.count = vis.count;
        part.codewords = vis.codewords;
        part.kernel_dim_hist = vis.hist;
        part.flagged = vis.flagged;
        chunks[static_cast<std::size_t>(first)] = std::move(vis.out);
    });
    SupportScan res;
    res.k = k;
    res.blocks = BlockSet(n, k, "supports:" + std::to_string(k));
    for (int b = 0; b < branches; ++b) {
        const auto& part = parts[static_cast<std::size_t>(b)];
        res.count += part.count;
        res.codewords += part.codewords;
        res.flagged += part.flagged;
        for (std::size_t i = 0; i < res.kernel_dim_hist.size(); ++i) res.kernel_dim_hist[i] += part.kernel_dim_hist[i];
        if (!chunks[static_cast<std::size_t>(b)].empty()) res.blocks.append_all(chunks[static_cast<std::size_t>(b)]);
    }
    return res;
}

/// Smallest k <= 7 with a nonempty B_k(C), found by scanning; nullopt if none.
inline std::optional<int> minimum_distance(const UnitCircle& uc, ScanOptions opt = {}) {
    opt.materialize = false;
    for (int k = 1; k <= details::kMaxSupport; ++k)
        if (supports_of_weight(uc, k, opt).count > 0) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Weight distributions

/// A_0..A_n as exact integers.
struct WeightTable {
    std::vector<BigInt> a;

    WeightTable() = default;
    explicit WeightTable(int n) : a(static_cast<std::size_t>(n) + 1, 0) {}

    [[nodiscard]] int n() const noexcept { return static_cast<int>(a.size()) - 1; }
    BigInt& operator[](std::size_t i) { return a[i]; }
    const BigInt& operator[](std::size_t i) const { return a[i]; }
    [[nodiscard]] BigInt total() const {
        BigInt s = 0;
        for (const auto& x : a) s += x;
        return s;
    }
    friend bool operator==(const WeightTable&, const WeightTable&) = default;
};

inline nlohmann::json weights_to_json(const WeightTable& w) {
    auto j = nlohmann::json::array();
    for (const auto& x : w.a) j.push_back(x.str());
    return j;
}

inline BigInt big_binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline BigInt big_pow(const BigInt& base, int e) {
    if (e < 0) throw std::invalid_argument("big_pow: negative exponent");
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

class WeightError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace details {

inline void check_table(const WeightTable& w, const BigInt& q, int dim) {
    for (int i = 0; i <= w.n(); ++i)
        if (w[static_cast<std::size_t>(i)] < 0) throw WeightError("weight table: negative A_" + std::to_string(i));
    if (w.total() != big_pow(q, dim)) throw WeightError("weight table: sum of A_i differs from q^dim");
}

}  // namespace details

/// Full distribution of an [n, k, n-k] near-MDS code over GF(q) from A_{n-k}.
inline WeightTable weight_dist_nmds(int n, int k, const BigInt& q, const BigInt& a_nk) {
    if (k < 1 || k >= n) throw std::invalid_argument("weight_dist_nmds: need 1 <= k < n");
    WeightTable w(n);
    w[0] = 1;
    w[static_cast<std::size_t>(n - k)] = a_nk;
    for (int s = 1; s <= k; ++s) {
        BigInt acc = 0;
        for (int j = 0; j <= s - 1; ++j) {
            const BigInt term = big_binom(n - k + s, j) * (big_pow(q, s - j) - 1);
            acc += (j % 2 ? -term : term);
        }
        acc *= big_binom(n, k - s);
        const BigInt last = big_binom(k, s) * a_nk;
        acc += (s % 2 ? -last : last);
        w[static_cast<std::size_t>(n - k + s)] = acc;
    }
    details::check_table(w, q, k);
    return w;
}

/**
 * @brief Full distribution of an [n, k, d] code whose dual has minimum distance d_dual,
 * from the values A_d..A_{n-d_dual} (`known[0]` is A_d).
 */
inline WeightTable weight_dist_asmds(int n, int k, int d, int d_dual, const BigInt& q, std::span<const BigInt> known) {
    if (d < 1 || d_dual < 1 || d > n - d_dual + 1 || static_cast<int>(known.size()) != n - d_dual - d + 1)
        throw std::invalid_argument("weight_dist_asmds: need A_d..A_{n-d_dual}");
    WeightTable w(n);
    w[0] = 1;
    for (int i = d; i <= n - d_dual; ++i) w[static_cast<std::size_t>(i)] = known[static_cast<std::size_t>(i - d)];
    for (int r = 1; r <= d_dual; ++r) {
        BigInt acc = 0;
        for (int j = d_dual; j <= n - d; ++j) {
            BigInt inner = 0;
            for (int i = d_dual; i <= j; ++i) {
                const BigInt t = big_binom(j - d_dual + r, j - i);
                inner += ((i - d_dual + r) % 2 ? -t : t);
            }
            acc += big_binom(j, d_dual - r) * inner * w[static_cast<std::size_t>(n - j)];
        }
        BigInt tail = 0;
        for (int i = 0; i <= r - 1; ++i) {
            const BigInt t = big_binom(n - d_dual + r, i) * (big_pow(q, k - d_dual + r - i) - 1);
            tail += (i % 2 ? -t : t);
        }
        acc += big_binom(n, d_dual - r) * tail;
        w[static_cast<std::size_t>(n - d_dual + r)] = acc;
    }
    details::check_table(w, q, k);
    return w;
}

/// Dual distribution by the MacWilliams identity with Krawtchouk polynomials.
inline WeightTable macwilliams(const WeightTable& wt, int n, int dim, const BigInt& q) {
    if (wt.n() != n) throw WeightError("macwilliams: table length does not match n");
    if (wt.total() != big_pow(q, dim)) throw WeightError("macwilliams: input fails the mass check");
    const BigInt scale = big_pow(q, dim);
    WeightTable out(n);
    for (int j = 0; j <= n; ++j) {
        BigInt acc = 0;
        for (int i = 0; i <= n; ++i) {
            if (wt[static_cast<std::size_t>(i)] == 0) continue;
            BigInt kr = 0;
            for (int h = 0; h <= j; ++h) {
                const BigInt t = big_binom(i, h) * big_binom(n - i, j - h) * big_pow(q - 1, j - h);
                kr += (h % 2 ? -t : t);
            }
            acc += wt[static_cast<std::size_t>(i)] * kr;
        }
        if (acc % scale != 0) throw WeightError("macwilliams: non-integral coefficient at weight " + std::to_string(j));
        out[static_cast<std::size_t>(j)] = acc / scale;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// The trace code (Tr(a u + b u^2 + c u^3))_{u in U_{q+1}}

/// f(u) = Tr(a u + b u^2 + c u^3).
inline Elem trace_poly_value(const GaloisField& f, Elem a, Elem b, Elem c, Elem u) {
    const Elem u2 = f.mul(u, u);
    return f.trace(f.mul(a, u) + f.mul(b, u2) + f.mul(c, f.mul(u2, u)));
}

struct TraceCodeword {
    Elem a, b, c;
    std::vector<Elem> values;

    [[nodiscard]] int weight() const {
        int w = 0;
        for (Elem x : values) w += x.is_zero() ? 0 : 1;
        return w;
    }
};

inline TraceCodeword trace_codeword(const UnitCircle& uc, Elem a, Elem b, Elem c) {
    TraceCodeword w{a, b, c, {}};
    w.values.reserve(static_cast<std::size_t>(uc.size()));
    for (Elem u : uc.elements()) w.values.push_back(trace_poly_value(uc.field(), a, b, c, u));
    return w;
}

/// A GF(q)-basis of the trace code: (a,b,c) running over {1, alpha} in each slot.
inline std::vector<TraceCodeword> trace_code_basis(const UnitCircle& uc) {
    const Elem al = uc.field().alpha();
    std::vector<TraceCodeword> out;
    for (int slot = 0; slot < 3; ++slot)
        for (Elem s : {kOne, al}) {
            std::array<Elem, 3> p{kZero, kZero, kZero};
            p[static_cast<std::size_t>(slot)] = s;
            out.push_back(trace_codeword(uc, p[0], p[1], p[2]));
        }
    return out;
}

/// sum_j x_j y_j over GF(q).
inline Elem dot(const GaloisField& f, std::span<const Elem> x, std::span<const Elem> y) {
    Elem acc = kZero;
    for (std::size_t j = 0; j < x.size(); ++j) acc += f.mul(x[j], y[j]);
    return acc;
}

/// Rank over GF(q) of a list of GF(q) vectors.
inline int subfield_rank(const GaloisField& f, std::vector<std::vector<Elem>> rows) {
    int rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        const Elem inv = f.inv(rows[static_cast<std::size_t>(rank)][c]);
        for (auto& x : rows[static_cast<std::size_t>(rank)]) x = f.mul(x, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c].is_zero()) continue;
            const Elem fac = rows[r][c];
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] += f.mul(fac, rows[static_cast<std::size_t>(rank)][j]);
        }
        ++rank;
    }
    return rank;
}

struct TraceEnumeration {
    WeightTable weights;
    std::uint64_t orthogonality_failures = 0;  ///< codewords not orthogonal to every `against` row
    std::uint64_t non_subfield = 0;           ///< coordinates outside GF(q)
};

/**
 * @brief Weight table of the trace code by evaluating all q^6 parameter triples.
 *
 * Codewords are XORs of per-slot tables; with `against` rows given, each codeword's inner
 * products with them are assembled the same way (the inner product is additive).
 */
inline TraceEnumeration enumerate_trace_code(const UnitCircle& uc, const std::vector<std::vector<Elem>>& against = {}, ScanOptions opt = {},
                                             bool allow_large = false) {
    if (uc.q() != 16 && !allow_large) throw std::invalid_argument("enumerate_trace_code: full enumeration is limited to q = 16");
    if (against.size() > 16) throw std::invalid_argument("enumerate_trace_code: at most 16 check rows");
    const GaloisField& f = uc.field();
    const std::size_t N = f.size();
    const std::size_t n = static_cast<std::size_t>(uc.size());
    // slot tables: T[s][x][j] = Tr(x u_j^{s+1}); P[s][x][r] = <T[s][x], against[r]>
    std::array<std::vector<std::uint16_t>, 3> T;
    std::array<std::vector<std::array<std::uint16_t, 16>>, 3> P;
    for (int s = 0; s < 3; ++s) {
        T[static_cast<std::size_t>(s)].assign(N * n, 0);
        P[static_cast<std::size_t>(s)].assign(N, {});
        for (std::size_t x = 0; x < N; ++x) {
            std::vector<Elem> row(n);
            for (std::size_t j = 0; j < n; ++j) {
                const Elem v = f.trace(f.mul(Elem(static_cast<std::uint16_t>(x)), f.pow(uc[j], static_cast<std::uint64_t>(s + 1))));
                row[j] = v;
                T[static_cast<std::size_t>(s)][x * n + j] = v.bits;
            }
            for (std::size_t r = 0; r < against.size(); ++r) P[static_cast<std::size_t>(s)][x][r] = dot(f, against[r], row).bits;
        }
    }
    const bool check = !against.empty();
    std::vector<std::vector<std::uint64_t>> hist(N, std::vector<std::uint64_t>(n + 1, 0));
    std::vector<std::uint64_t> fails(N, 0), nonsub(N, 0);
    std::vector<bool> subfield(N);
    for (std::size_t x = 0; x < N; ++x) subfield[x] = f.in_subfield(Elem(static_cast<std::uint16_t>(x)));
    parallel_branches(static_cast<int>(N), opt.jobs, [&](int ai) {
        const std::size_t a = static_cast<std::size_t>(ai);
        std::vector<std::uint16_t> ab(n);
        auto& h = hist[a];
        for (std::size_t b = 0; b < N; ++b) {
            for (std::size_t j = 0; j < n; ++j) ab[j] = static_cast<std::uint16_t>(T[0][a * n + j] ^ T[1][b * n + j]);
            std::array<std::uint16_t, 16> pab{};
            if (check)
                for (std::size_t r = 0; r < against.size(); ++r) pab[r] = static_cast<std::uint16_t>(P[0][a][r] ^ P[1][b][r]);
            for (std::size_t c = 0; c < N; ++c) {
                const std::uint16_t* t3 = &T[2][c * n];
                int w = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    const std::uint16_t v = static_cast<std::uint16_t>(ab[j] ^ t3[j]);
                    w += v != 0;
                    nonsub[a] += !subfield[v];
                }
                ++h[static_cast<std::size_t>(w)];
                if (check) {
                    bool ok = true;
                    for (std::size_t r = 0; r < against.size(); ++r) ok = ok && (pab[r] ^ P[2][c][r]) == 0;
                    fails[a] += !ok;
                }
            }
        }
    });
    TraceEnumeration res;
    res.weights = WeightTable(static_cast<int>(n));
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t w = 0; w <= n; ++w) res.weights[w] += hist[a][w];
        res.orthogonality_failures += fails[a];
        res.non_subfield += nonsub[a];
    }
    return res;
}

// ---------------------------------------------------------------------------------------------
// Zero sets of f(u) = Tr(a u + b u^2 + c u^3)

class ZeroSetError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// {u in U_{q+1} : f(u) = 0} as a block; more than 6 zeros is a hard failure.
inline Block zero_set_classify(const UnitCircle& uc, Elem a, Elem b, Elem c) {
    if (a.is_zero() && b.is_zero() && c.is_zero()) throw std::invalid_argument("zero_set_classify: (a,b,c) must be nonzero");
    std::vector<Point> zs;
    for (int p = 0; p < uc.size(); ++p)
        if (trace_poly_value(uc.field(), a, b, c, uc[static_cast<std::size_t>(p)]).is_zero()) zs.push_back(static_cast<Point>(p));
    if (zs.size() > 6) throw ZeroSetError("zero_set_classify: f has " + std::to_string(zs.size()) + " zeros on U_{q+1}");
    return Block(std::move(zs));
}

struct TraceParams {
    Elem a, b, c;
};

/// (a,b,c) with zero set B for a 6-block with sigma_{6,3}(B) = 0, scaled by tau in GF(q)^*.
inline TraceParams parameterize_six_zeros(const UnitCircle& uc, std::span<const Point> block, Elem tau) {
    const GaloisField& f = uc.field();
    if (block.size() != 6) throw std::invalid_argument("parameterize_six_zeros: need a 6-subset");
    if (tau.is_zero() || !f.in_subfield(tau)) throw std::invalid_argument("parameterize_six_zeros: tau must lie in GF(q)^*");
    const auto e = esp_all(uc, block);
    if (!e[3].is_zero()) throw PreconditionError("parameterize_six_zeros: sigma_{6,3}(B) != 0");
    const Elem s = f.div(tau, f.sqrt(e[6]));
    return {f.mul(s, e[2]), f.mul(s, e[1]), s};
}

/**
 * @brief (a,b,c) with zero set B (|B| = 5) and double root u_i = B[i], scaled by tau.
 *
 * Only the distinguished point u_i = sigma_{5,3}/sigma_{5,2} is a valid double root; other
 * choices are rejected unless `check` is false, in which case the raw formula is returned.
 */
inline TraceParams parameterize_double_root(const UnitCircle& uc, std::span<const Point> block, std::size_t i, Elem tau, bool check = true) {
    const GaloisField& f = uc.field();
    if (block.size() != 5 || i >= 5) throw std::invalid_argument("parameterize_double_root: need a 5-subset and i < 5");
    if (tau.is_zero() || !f.in_subfield(tau)) throw std::invalid_argument("parameterize_double_root: tau must lie in GF(q)^*");
    const auto e = esp_all(uc, block);
    const Elem ui = uc[block[i]];
    if (check && !(e[3] + f.mul(ui, e[2])).is_zero())
        throw PreconditionError("parameterize_double_root: point " + std::to_string(block[i]) + " is not the double root sigma_{5,3}/sigma_{5,2}");
    const Elem s = f.div(tau, f.sqrt(f.mul(ui, e[5])));
    return {f.mul(s, e[2] + f.mul(ui, e[1])), f.mul(s, e[1] + ui), s};
}

/// Uniform (a,b,c) in GF(q^2)^3 minus zero.
inline TraceParams random_trace_params(const GaloisField& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, f.size() - 1);
    TraceParams p{};
    do {
        p = {Elem(static_cast<std::uint16_t>(d(rng))), Elem(static_cast<std::uint16_t>(d(rng))), Elem(static_cast<std::uint16_t>(d(rng)))};
    } while (p.a.is_zero() && p.b.is_zero() && p.c.is_zero());
    return p;
}

}  // namespace espd
