/**
 * @file esp_blocks.hpp
 * @brief Elementary symmetric polynomials over U_{q+1} and the block families they cut out.
 *
 * Every family is produced by one depth-first scan over the k-subsets of U_{q+1}: the
 * running ESP values sigma_{d,0..d} are updated in O(k) per pushed point and a family
 * predicate decides each leaf. Scans split across workers by smallest point.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "block.hpp"
#include "finite_field.hpp"
#include "subsets.hpp"

namespace espd {

/// Largest block size handled by the subset scanners.
inline constexpr int kMaxScanK = 7;

// ---------------------------------------------------------------------------------------------
// ESP evaluation

/// sigma_{k,0..k} of an arbitrary list of field elements.
inline std::vector<Elem> esp_all_elems(const GaloisField& f, std::span<const Elem> xs) {
    std::vector<Elem> e(xs.size() + 1, kZero);
    e[0] = kOne;
    for (std::size_t n = 0; n < xs.size(); ++n)
        for (std::size_t l = n + 1; l >= 1; --l) e[l] += f.mul(e[l - 1], xs[n]);
    return e;
}

inline std::vector<Elem> block_elems(const UnitCircle& uc, std::span<const Point> b) {
    std::vector<Elem> xs;
    xs.reserve(b.size());
    for (Point p : b) xs.push_back(uc[p]);
    return xs;
}

/// sigma_{k,0..k}(B) for a block of unit-circle indices.
inline std::vector<Elem> esp_all(const UnitCircle& uc, std::span<const Point> b) {
    return esp_all_elems(uc.field(), block_elems(uc, b));
}

/// sigma_{k,l}(B) with sigma_{k,0} = 1.
inline Elem esp(const UnitCircle& uc, std::span<const Point> b, int l) {
    if (l < 0 || l > static_cast<int>(b.size()))
        throw std::out_of_range("esp: l = " + std::to_string(l) + " outside 0.." + std::to_string(b.size()));
    return esp_all(uc, b)[static_cast<std::size_t>(l)];
}

/// sigma_{k,l}(B - a) evaluated directly on the shifted elements {b - a}.
inline Elem esp_shifted_direct(const UnitCircle& uc, std::span<const Point> b, Elem a, int l) {
    if (l < 0 || l > static_cast<int>(b.size())) throw std::out_of_range("esp_shifted: l out of range");
    std::vector<Elem> xs = block_elems(uc, b);
    for (Elem& x : xs) x = x - a;
    return esp_all_elems(uc.field(), xs)[static_cast<std::size_t>(l)];
}

/// sum_{i=0}^{l} a^{l-i} C(k-i, l-i) sigma_{k,i}, binomials reduced mod 2 (signs vanish in char 2).
inline Elem shifted_from_esp(const GaloisField& f, std::span<const Elem> sigma, int k, int l, Elem a) {
    Elem acc = kZero;
    for (int i = 0; i <= l; ++i) {  // Horner in a: sigma_{k,0} carries the top power a^l
        acc = f.mul(acc, a);
        if (binom_is_odd(k - i, l - i)) acc += sigma[static_cast<std::size_t>(i)];
    }
    return acc;
}

inline Elem esp_shifted_expansion(const UnitCircle& uc, std::span<const Point> b, Elem a, int l) {
    if (l < 0 || l > static_cast<int>(b.size())) throw std::out_of_range("esp_shifted: l out of range");
    const auto sigma = esp_all(uc, b);
    return shifted_from_esp(uc.field(), sigma, static_cast<int>(b.size()), l, a);
}

/// sigma_{k,l}(B - a); both routes are computed and must agree.
inline Elem esp_shifted(const UnitCircle& uc, std::span<const Point> b, Elem a, int l) {
    const Elem direct = esp_shifted_direct(uc, b, a, l);
    const Elem expanded = esp_shifted_expansion(uc, b, a, l);
    if (direct != expanded) throw std::logic_error("esp_shifted: direct and binomial-expansion values disagree");
    return direct;
}

/// ESP values of B \ {a} from those of B (a in B): e'_j = e_j + a e'_{j-1}.
inline void deflate(const GaloisField& f, std::span<const Elem> sigma, Elem a, std::span<Elem> out) {
    out[0] = kOne;
    for (std::size_t j = 1; j < out.size(); ++j) out[j] = sigma[j] + f.mul(a, out[j - 1]);
}

// ---------------------------------------------------------------------------------------------
// Symmetric polynomials written in the sigma_{k,i}

/**
 * @brief A polynomial in the ESP values sigma_{k,0..k} with GF(q^2) coefficients.
 *
 * Text form: terms joined by '+', each a '*'-product of factors `s<i>`, `s<i>^<e>` or an
 * integer (reduced mod 2). "0" is the zero polynomial; "s0" is the constant 1.
 */
class EspPolynomial {
   public:
    struct Term {
        Elem coeff = kOne;
        std::vector<int> exponents;  // exponents[i] applies to sigma_{k,i}
    };

    EspPolynomial() = default;
    explicit EspPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static EspPolynomial parse(const std::string& text) {
        std::vector<Term> terms;
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw std::invalid_argument("EspPolynomial: empty expression");
        std::size_t pos = 0;
        auto read_int = [&](std::size_t& p) {
            if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p])))
                throw std::invalid_argument("EspPolynomial: expected integer at offset " + std::to_string(p) + " in '" + text + "'");
            long v = 0;
            while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) v = v * 10 + (s[p++] - '0');
            return v;
        };
        while (pos <= s.size()) {
            Term t;
            bool odd = true;
            while (true) {
                if (pos < s.size() && (s[pos] == 's' || s[pos] == 'S')) {
                    ++pos;
                    const long idx = read_int(pos);
                    long e = 1;
                    if (pos < s.size() && s[pos] == '^') {
                        ++pos;
                        e = read_int(pos);
                    }
                    if (t.exponents.size() <= static_cast<std::size_t>(idx)) t.exponents.resize(static_cast<std::size_t>(idx) + 1, 0);
                    t.exponents[static_cast<std::size_t>(idx)] += static_cast<int>(e);
                } else {
                    odd = odd && (read_int(pos) % 2 == 1);
                }
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    continue;
                }
                break;
            }
            if (odd) terms.push_back(std::move(t));
            if (pos == s.size()) break;
            if (s[pos] != '+') throw std::invalid_argument("EspPolynomial: unexpected '" + std::string(1, s[pos]) + "' in '" + text + "'");
            ++pos;
        }
        return EspPolynomial(std::move(terms));
    }

    [[nodiscard]] int max_index() const {
        int mx = 0;
        for (const auto& t : terms_) mx = std::max(mx, static_cast<int>(t.exponents.size()) - 1);
        return mx;
    }

    [[nodiscard]] Elem eval(const GaloisField& f, std::span<const Elem> sigma) const {
        Elem acc = kZero;
        for (const auto& t : terms_) {
            Elem v = t.coeff;
            for (std::size_t i = 0; i < t.exponents.size() && !v.is_zero(); ++i)
                if (t.exponents[i] > 0) v = f.mul(v, f.pow(sigma[i], static_cast<std::uint64_t>(t.exponents[i])));
            acc += v;
        }
        return acc;
    }

    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }

   private:
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------------------------
// Scanning

struct ScanOptions {
    unsigned jobs = 0;         ///< 0 = hardware concurrency
    bool materialize = true;  ///< false: count only
};

struct ScanResult {
    std::uint64_t count = 0;
    BlockSet blocks;  ///< empty unless materialized
};

/// What a family predicate sees at each leaf.
struct LeafView {
    const GaloisField& field;
    const UnitCircle& circle;
    std::span<const Point> points;
    std::span<const Elem> elems;
    std::span<const Elem> sigma;  ///< sigma_{k,0..k}
};

namespace details {

template <class Pred>
struct EspVisitor {
    const UnitCircle& uc;
    int k;
    const Pred& pred;
    bool materialize;
    std::uint64_t count = 0;
    std::vector<Point> out;
    // sig[d] holds sigma_{d,0..d} of the first d pushed points
    std::array<std::array<Elem, kMaxScanK + 1>, kMaxScanK + 1> sig{};
    std::array<Elem, kMaxScanK> elems{};

    EspVisitor(const UnitCircle& c, int kk, const Pred& p, bool mat) : uc(c), k(kk), pred(p), materialize(mat) {
        sig[0][0] = kOne;
    }

    void push(int d, Point p) {
        const GaloisField& f = uc.field();
        const Elem x = uc[p];
        elems[static_cast<std::size_t>(d)] = x;
        auto& prev = sig[static_cast<std::size_t>(d)];
        auto& cur = sig[static_cast<std::size_t>(d) + 1];
        cur[0] = kOne;
        for (int l = 1; l <= d; ++l) cur[static_cast<std::size_t>(l)] = prev[static_cast<std::size_t>(l)] + f.mul(prev[static_cast<std::size_t>(l) - 1], x);
        cur[static_cast<std::size_t>(d) + 1] = f.mul(prev[static_cast<std::size_t>(d)], x);
    }

    void leaf(std::span<const Point> s) {
        LeafView view{uc.field(), uc, s, std::span<const Elem>(elems.data(), static_cast<std::size_t>(k)),
                      std::span<const Elem>(sig[static_cast<std::size_t>(k)].data(), static_cast<std::size_t>(k) + 1)};
        if (pred(view)) {
            ++count;
            if (materialize) out.insert(out.end(), s.begin(), s.end());
        }
    }
};

}  // namespace details

/**
 * @brief All k-subsets B of U_{q+1} (k <= 7) for which `pred(LeafView)` holds.
 *
 * Output is lex-sorted and independent of the worker count. `pred` must be safe to call
 * concurrently.
 */
template <class Pred>
ScanResult scan_subsets(const UnitCircle& uc, int k, const Pred& pred, const FamilyTag& family, ScanOptions opt = {}) {
    if (k < 1 || k > kMaxScanK) throw std::invalid_argument("scan_subsets: k must be in 1.." + std::to_string(kMaxScanK));
    const int n = uc.size();
    const int branches = n - k + 1;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(branches), 0);
    std::vector<std::vector<Point>> chunks(static_cast<std::size_t>(branches));
    parallel_branches(branches, opt.jobs, [&](int first) {
        details::EspVisitor<Pred> vis(uc, k, pred, opt.materialize);
        dfs_subsets_from(n, k, first, vis);
        counts[static_cast<std::size_t>(first)] = vis.count;
        chunks[static_cast<std::size_t>(first)] = std::move(vis.out);
    });
    ScanResult res;
    res.blocks = BlockSet(n, k, family);
    std::size_t total = 0;
    for (const auto& c : chunks) total += c.size();
    std::vector<Point> flat;
    flat.reserve(total);
    for (int b = 0; b < branches; ++b) {
        res.count += counts[static_cast<std::size_t>(b)];
        flat.insert(flat.end(), chunks[static_cast<std::size_t>(b)].begin(), chunks[static_cast<std::size_t>(b)].end());
    }
    if (!flat.empty()) res.blocks.append_all(flat);
    return res;
}

// ---------------------------------------------------------------------------------------------
// Families

/// Which of the scanned families a block set belongs to.
enum class FamilyKind { Plain, General, U, B, BBar, Zero63, Zero73 };

struct FamilySpec {
    FamilyKind kind = FamilyKind::Plain;
    int k = 0;
    int l = 0;
    std::string expr;  ///< General only

    /// Text form used in block-set files and on the command line.
    [[nodiscard]] std::string tag() const {
        switch (kind) {
            case FamilyKind::Plain: return "plain:" + std::to_string(k) + "," + std::to_string(l);
            case FamilyKind::U: return "u:" + std::to_string(k) + "," + std::to_string(l);
            case FamilyKind::B: return "b:" + std::to_string(k) + "," + std::to_string(l);
            case FamilyKind::BBar: return "bbar:" + std::to_string(k) + "," + std::to_string(l);
            case FamilyKind::Zero63: return "zero63";
            case FamilyKind::Zero73: return "zero73";
            case FamilyKind::General: return "general:" + std::to_string(k) + ":" + expr;
        }
        return {};
    }

    /// Parses plain:k,l | u:k,l | b:k,l | bbar:k,l | zero63 | zero73 | general:k:<expr>.
    /// `general:<expr>` is accepted when `general_k` supplies the block size.
    static FamilySpec parse(const std::string& text, int general_k = 0) {
        FamilySpec s;
        const auto colon = text.find(':');
        const std::string head = text.substr(0, colon);
        const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
        auto parse_kl = [&](const std::string& r) {
            const auto comma = r.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("family '" + text + "': expected k,l");
            try {
                std::size_t used = 0;
                s.k = std::stoi(r.substr(0, comma), &used);
                if (used != comma) throw std::invalid_argument("k");
                const std::string ls = r.substr(comma + 1);
                s.l = std::stoi(ls, &used);
                if (used != ls.size()) throw std::invalid_argument("l");
            } catch (const std::logic_error&) {
                throw std::invalid_argument("family '" + text + "': malformed k,l");
            }
        };
        if (head == "plain") {
            s.kind = FamilyKind::Plain;
            parse_kl(rest);
        } else if (head == "u") {
            s.kind = FamilyKind::U;
            parse_kl(rest);
        } else if (head == "b") {
            s.kind = FamilyKind::B;
            parse_kl(rest);
        } else if (head == "bbar") {
            s.kind = FamilyKind::BBar;
            parse_kl(rest);
        } else if (head == "zero63" && rest.empty()) {
            s.kind = FamilyKind::Zero63;
            s.k = 6;
            s.l = 3;
        } else if (head == "zero73" && rest.empty()) {
            s.kind = FamilyKind::Zero73;
            s.k = 7;
            s.l = 3;
        } else if (head == "general") {
            s.kind = FamilyKind::General;
            const auto c2 = rest.find(':');
            const bool has_k = c2 != std::string::npos && c2 > 0 &&
                               std::all_of(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(c2), [](unsigned char ch) { return std::isdigit(ch); });
            if (has_k) {
                s.k = std::stoi(rest.substr(0, c2));
                s.expr = rest.substr(c2 + 1);
            } else if (general_k > 0) {
                s.k = general_k;
                s.expr = rest;
            } else {
                throw std::invalid_argument("family '" + text + "': expected general:k:<expr> or a block size");
            }
            if (s.k < 1 || s.k > kMaxScanK) throw std::invalid_argument("family '" + text + "': k must be in 1.." + std::to_string(kMaxScanK));
            if (EspPolynomial::parse(s.expr).max_index() > s.k) throw std::invalid_argument("family '" + text + "': index exceeds k");
        } else {
            throw std::invalid_argument("unknown family '" + text + "'");
        }
        return s;
    }
};

/// How blockset_u_variant decides membership.
enum class UVariantPath {
    Definitional,     ///< scan a over all of U_{q+1}
    Characterization  ///< (7,3) only: sigma_{6,3}(B \ {a}) = 0 for some a in B
};

namespace details {

inline bool is_supported_u(int k, int l) {
    return (k == 4 && l == 2) || (k == 5 && l == 2) || (k == 5 && l == 3) || (k == 6 && l == 3) || (k == 7 && l == 3);
}
inline bool is_supported_b(int k, int l) { return (k == 5 && l == 3) || (k == 6 && l == 2); }

/// exists a in U_{q+1}: sigma_{k,l}(B - a) = 0
inline bool shift_vanishes_on_circle(const LeafView& v, int l) {
    const int k = static_cast<int>(v.points.size());
    for (Elem a : v.circle.elements())
        if (shifted_from_esp(v.field, v.sigma, k, l, a).is_zero()) return true;
    return false;
}

/// exists a in B: sigma_{k,l}(B - a) = 0
inline bool shift_vanishes_in_block(const LeafView& v, int l) {
    const int k = static_cast<int>(v.points.size());
    for (Elem a : v.elems)
        if (shifted_from_esp(v.field, v.sigma, k, l, a).is_zero()) return true;
    return false;
}

/// exists a in U_{q+1} \ B: sigma_{k,l}(B - a) = 0
inline bool shift_vanishes_off_block(const LeafView& v, int l) {
    const int k = static_cast<int>(v.points.size());
    std::size_t j = 0;
    for (int p = 0; p < v.circle.size(); ++p) {
        if (j < v.points.size() && v.points[j] == p) {
            ++j;
            continue;
        }
        if (shifted_from_esp(v.field, v.sigma, k, l, v.circle[static_cast<std::size_t>(p)]).is_zero()) return true;
    }
    return false;
}

/// exists a in B with sigma_{k-1,l}(B \ {a}) = 0
inline bool some_deletion_vanishes(const LeafView& v, int l) {
    std::array<Elem, kMaxScanK + 1> d{};
    const std::span<Elem> out(d.data(), static_cast<std::size_t>(l) + 1);
    for (Elem a : v.elems) {
        deflate(v.field, v.sigma, a, out);
        if (out[static_cast<std::size_t>(l)].is_zero()) return true;
    }
    return false;
}

/// exists a != b in B with sigma_{k-2,l}(B \ {a, b}) = 0
inline bool some_double_deletion_vanishes(const LeafView& v, int l) {
    std::array<Elem, kMaxScanK + 1> d1{}, d2{};
    const std::size_t len = static_cast<std::size_t>(l) + 1;
    for (std::size_t i = 0; i < v.elems.size(); ++i) {
        deflate(v.field, v.sigma, v.elems[i], std::span<Elem>(d1.data(), std::min(len + 1, v.sigma.size())));
        for (std::size_t j = i + 1; j < v.elems.size(); ++j) {
            deflate(v.field, std::span<const Elem>(d1.data(), len), v.elems[j], std::span<Elem>(d2.data(), len));
            if (d2[static_cast<std::size_t>(l)].is_zero()) return true;
        }
    }
    return false;
}

inline void check_kl(int k, int l) {
    if (k < 1 || k > kMaxScanK || l < 0 || l > k)
        throw std::invalid_argument("unsupported (k,l) = (" + std::to_string(k) + "," + std::to_string(l) + ")");
}

}  // namespace details

/// All k-subsets with sigma_{k,l}(B) = 0.
inline ScanResult scan_plain(const UnitCircle& uc, int k, int l, ScanOptions opt = {}) {
    details::check_kl(k, l);
    const std::size_t li = static_cast<std::size_t>(l);
    return scan_subsets(
        uc, k, [li](const LeafView& v) { return v.sigma[li].is_zero(); }, FamilySpec{FamilyKind::Plain, k, l, {}}.tag(), opt);
}

inline BlockSet blockset_plain(const UnitCircle& uc, int k, int l, ScanOptions opt = {}) {
    return scan_plain(uc, k, l, opt).blocks;
}

/// All k-subsets with f(B) = 0 for a polynomial f in the sigma_{k,i}.
inline BlockSet blockset_general(const UnitCircle& uc, int k, const EspPolynomial& fpoly, ScanOptions opt = {}, const std::string& expr = {}) {
    if (fpoly.max_index() > k) throw std::invalid_argument("blockset_general: polynomial references sigma beyond k");
    return scan_subsets(
               uc, k, [&fpoly](const LeafView& v) { return fpoly.eval(v.field, v.sigma).is_zero(); },
               FamilySpec{FamilyKind::General, k, 0, expr}.tag(), opt)
        .blocks;
}

/// u-variant: sigma_{k,l}(B - a) = 0 for some a in U_{q+1}.
inline ScanResult scan_u_variant(const UnitCircle& uc, int k, int l, ScanOptions opt = {}, UVariantPath path = UVariantPath::Definitional) {
    if (!details::is_supported_u(k, l))
        throw std::invalid_argument("blockset_u_variant: unsupported (k,l) = (" + std::to_string(k) + "," + std::to_string(l) + ")");
    const auto tag = FamilySpec{FamilyKind::U, k, l, {}}.tag();
    if (path == UVariantPath::Characterization) {
        if (k != 7 || l != 3) throw std::invalid_argument("blockset_u_variant: characterization path exists for (7,3) only");
        return scan_subsets(uc, k, [](const LeafView& v) { return details::some_deletion_vanishes(v, 3); }, tag, opt);
    }
    return scan_subsets(uc, k, [l](const LeafView& v) { return details::shift_vanishes_on_circle(v, l); }, tag, opt);
}

inline BlockSet blockset_u_variant(const UnitCircle& uc, int k, int l, ScanOptions opt = {}, UVariantPath path = UVariantPath::Definitional) {
    return scan_u_variant(uc, k, l, opt, path).blocks;
}

/// b-variant: the shift point a ranges over B itself.
inline ScanResult scan_b_variant(const UnitCircle& uc, int k, int l, ScanOptions opt = {}) {
    if (!details::is_supported_b(k, l))
        throw std::invalid_argument("blockset_b_variant: unsupported (k,l) = (" + std::to_string(k) + "," + std::to_string(l) + ")");
    return scan_subsets(uc, k, [l](const LeafView& v) { return details::shift_vanishes_in_block(v, l); }, FamilySpec{FamilyKind::B, k, l, {}}.tag(), opt);
}

inline BlockSet blockset_b_variant(const UnitCircle& uc, int k, int l, ScanOptions opt = {}) { return scan_b_variant(uc, k, l, opt).blocks; }

/// b-bar variant: the shift point a ranges over U_{q+1} \ B. Not disjoint from the b-variant in general.
inline ScanResult scan_bbar_variant(const UnitCircle& uc, int k, int l, ScanOptions opt = {}) {
    if (!details::is_supported_b(k, l))
        throw std::invalid_argument("blockset_bbar_variant: unsupported (k,l) = (" + std::to_string(k) + "," + std::to_string(l) + ")");
    return scan_subsets(uc, k, [l](const LeafView& v) { return details::shift_vanishes_off_block(v, l); }, FamilySpec{FamilyKind::BBar, k, l, {}}.tag(), opt);
}

inline BlockSet blockset_bbar_variant(const UnitCircle& uc, int k, int l, ScanOptions opt = {}) { return scan_bbar_variant(uc, k, l, opt).blocks; }

/// 6-subsets containing a 5-subset with vanishing sigma_{5,2}.
inline ScanResult scan_zero63(const UnitCircle& uc, ScanOptions opt = {}) {
    return scan_subsets(uc, 6, [](const LeafView& v) { return details::some_deletion_vanishes(v, 2); }, FamilySpec{FamilyKind::Zero63, 6, 3, {}}.tag(), opt);
}
inline BlockSet blockset_zero63(const UnitCircle& uc, ScanOptions opt = {}) { return scan_zero63(uc, opt).blocks; }

/// 7-subsets containing a 5-subset with vanishing sigma_{5,2}.
inline ScanResult scan_zero73(const UnitCircle& uc, ScanOptions opt = {}) {
    return scan_subsets(uc, 7, [](const LeafView& v) { return details::some_double_deletion_vanishes(v, 2); }, FamilySpec{FamilyKind::Zero73, 7, 3, {}}.tag(),
                        opt);
}
inline BlockSet blockset_zero73(const UnitCircle& uc, ScanOptions opt = {}) { return scan_zero73(uc, opt).blocks; }

/// Dispatches a parsed family specification.
inline ScanResult scan_family(const UnitCircle& uc, const FamilySpec& spec, ScanOptions opt = {}) {
    switch (spec.kind) {
        case FamilyKind::Plain: return scan_plain(uc, spec.k, spec.l, opt);
        case FamilyKind::U: return scan_u_variant(uc, spec.k, spec.l, opt);
        case FamilyKind::B: return scan_b_variant(uc, spec.k, spec.l, opt);
        case FamilyKind::BBar: return scan_bbar_variant(uc, spec.k, spec.l, opt);
        case FamilyKind::Zero63: return scan_zero63(uc, opt);
        case FamilyKind::Zero73: return scan_zero73(uc, opt);
        case FamilyKind::General: {
            const auto poly = EspPolynomial::parse(spec.expr);
            if (spec.k < 1 || spec.k > kMaxScanK || poly.max_index() > spec.k) throw std::invalid_argument("general family: bad k");
            return scan_subsets(
                uc, spec.k, [&poly](const LeafView& v) { return poly.eval(v.field, v.sigma).is_zero(); }, spec.tag(), opt);
        }
    }
    throw std::logic_error("scan_family: unreachable");
}

// ---------------------------------------------------------------------------------------------
// Exceptional sets attached to a quadruple

struct ExceptionalSets {
    std::vector<Elem> s1;  ///< sorted, duplicate-free
    std::vector<Elem> s;   ///< s1 together with the quadruple, sorted, duplicate-free
};

class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief S1 and S for a quadruple {u1..u4} none of whose one-point extensions has sigma_{5,2} = 0.
 *
 * S1 = { (s43 + u_i s42) / (s42 + u_i s41) : i = 1..4 } u { sqrt(s43 / s41) }, S = S1 u quad.
 * Elements are returned as field values; membership in U_{q+1} is for the caller to check.
 */
inline ExceptionalSets exceptional_sets(const UnitCircle& uc, std::span<const Point> quad) {
    if (quad.size() != 4) throw std::invalid_argument("exceptional_sets: need a 4-subset");
    const GaloisField& f = uc.field();
    const auto e = esp_all(uc, quad);
    for (int p = 0; p < uc.size(); ++p) {
        if (std::find(quad.begin(), quad.end(), static_cast<Point>(p)) != quad.end()) continue;
        // sigma_{5,2}(quad u {u5}) = s42 + u5 s41
        if ((e[2] + f.mul(uc[static_cast<std::size_t>(p)], e[1])).is_zero())
            throw PreconditionError("exceptional_sets: sigma_{5,2} vanishes on the extension by point " + std::to_string(p));
    }
    if (e[1].is_zero()) throw PreconditionError("exceptional_sets: sigma_{4,1} = 0");
    ExceptionalSets out;
    for (Point p : quad) {
        const Elem u = uc[p];
        const Elem den = e[2] + f.mul(u, e[1]);
        if (den.is_zero()) throw PreconditionError("exceptional_sets: vanishing denominator at point " + std::to_string(p));
        out.s1.push_back(f.div(e[3] + f.mul(u, e[2]), den));
    }
    out.s1.push_back(f.sqrt(f.div(e[3], e[1])));
    std::sort(out.s1.begin(), out.s1.end());
    out.s1.erase(std::unique(out.s1.begin(), out.s1.end()), out.s1.end());
    out.s = out.s1;
    for (Point p : quad) out.s.push_back(uc[p]);
    std::sort(out.s.begin(), out.s.end());
    out.s.erase(std::unique(out.s.begin(), out.s.end()), out.s.end());
    return out;
}

/// sigma_{5,3} / sigma_{5,2} of a quintuple; nullopt when sigma_{5,2} = 0.
inline std::optional<Elem> quintuple_ratio(const UnitCircle& uc, std::span<const Point> quint) {
    const auto e = esp_all(uc, quint);
    if (e[2].is_zero()) return std::nullopt;
    return uc.field().div(e[3], e[2]);
}

}  // namespace espd
