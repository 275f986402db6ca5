/**
 * @file finite_field.hpp
 * @brief Arithmetic in GF(2^{2m}) with its subfield GF(2^m), and the unit circle U_{q+1}.
 *
 * GF(q^2) is represented over GF(2) in the polynomial basis modulo a fixed primitive
 * polynomial; the subfield GF(q) is the fixed field of the Frobenius map x -> x^q.
 * Multiplication goes through discrete log / antilog tables base alpha = [x].
 */
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace espd {

/// An element of GF(q^2) as its coefficient bit vector in the polynomial basis.
struct Elem {
    std::uint16_t bits = 0;

    constexpr Elem() noexcept = default;
    constexpr explicit Elem(std::uint16_t b) noexcept : bits(b) {}

    [[nodiscard]] constexpr bool is_zero() const noexcept { return bits == 0; }
    constexpr explicit operator bool() const noexcept { return bits != 0; }

    friend constexpr bool operator==(Elem, Elem) noexcept = default;
    friend constexpr auto operator<=>(Elem, Elem) noexcept = default;

    // characteristic 2: addition and subtraction are both XOR
    friend constexpr Elem operator+(Elem a, Elem b) noexcept {
        return Elem(static_cast<std::uint16_t>(a.bits ^ b.bits));
    }
    friend constexpr Elem operator-(Elem a, Elem b) noexcept { return a + b; }
    constexpr Elem& operator+=(Elem b) noexcept {
        bits ^= b.bits;
        return *this;
    }
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

class FieldError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace details {

/// Reduction polynomials for GF(2^{2m}), m = 4..7, as bit masks including the leading term.
inline constexpr std::array<std::uint32_t, 4> kReductionPolys = {
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x409,   // x^10 + x^3 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::string poly_to_string(std::uint32_t poly) {
    std::string s;
    for (int d = 31; d >= 0; --d) {
        if (!((poly >> d) & 1u)) continue;
        if (!s.empty()) s += " + ";
        if (d == 0)
            s += "1";
        else if (d == 1)
            s += "x";
        else
            s += "x^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

}  // namespace details

/**
 * @brief Immutable arithmetic context for GF(2^{2m}).
 *
 * Construction re-verifies that the reduction polynomial is primitive by checking that
 * the class of x has multiplicative order 2^{2m} - 1; primitivity implies irreducibility.
 */
class GaloisField {
   public:
    /// Field for q = 2^m using the fixed polynomial table.
    static GaloisField build(int m) {
        if (m < 4 || m > 7) throw std::invalid_argument("build_field: m must be in 4..7, got " + std::to_string(m));
        return GaloisField(m, details::kReductionPolys[static_cast<std::size_t>(m - 4)]);
    }

    /// Field for q = 2^m over an explicit degree-2m reduction polynomial (bit mask).
    GaloisField(int m, std::uint32_t reduction_poly) : m_(m), poly_(reduction_poly) {
        if (m < 1 || 2 * m > 15) throw std::invalid_argument("GaloisField: unsupported m = " + std::to_string(m));
        const int n = 2 * m;
        if ((poly_ >> n) != 1u) throw FieldError("reduction polynomial " + poly_string() + " does not have degree " + std::to_string(n));
        order_ = 1u << n;
        const std::uint32_t group = order_ - 1;
        exp_.assign(2 * static_cast<std::size_t>(group), 0);
        log_.assign(order_, 0);

        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < group; ++i) {
            if (x == 1 && i > 0) throw FieldError("polynomial " + poly_string() + " is not primitive (x has order " + std::to_string(i) + ")");
            exp_[i] = static_cast<std::uint16_t>(x);
            log_[x] = i;
            x <<= 1;
            if (x & order_) x ^= poly_;
            if (x == 0) throw FieldError("polynomial " + poly_string() + " is reducible (zero divisor)");
        }
        if (x != 1) throw FieldError("polynomial " + poly_string() + " is not primitive (x^(2^n-1) != 1)");
        for (std::uint32_t i = 0; i < group; ++i) exp_[group + i] = exp_[i];

        // Independent check of the order of x from the prime factorisation of 2^n - 1.
        for (std::uint64_t p : details::prime_factors(group)) {
            if (pow_x(group / p) == 1) throw FieldError("polynomial " + poly_string() + " is not primitive");
        }
    }

    [[nodiscard]] int m() const noexcept { return m_; }
    /// Subfield size q = 2^m.
    [[nodiscard]] std::uint32_t q() const noexcept { return 1u << m_; }
    /// Field size q^2.
    [[nodiscard]] std::uint32_t size() const noexcept { return order_; }
    [[nodiscard]] std::uint32_t reduction_poly() const noexcept { return poly_; }
    [[nodiscard]] std::string poly_string() const { return details::poly_to_string(poly_); }

    /// The fixed generator alpha = [x] of GF(q^2)^*.
    [[nodiscard]] Elem alpha() const noexcept { return Elem(2); }

    [[nodiscard]] Elem exp(std::uint64_t i) const noexcept { return Elem(exp_[i % (order_ - 1)]); }
    /// Discrete log base alpha; a must be nonzero.
    [[nodiscard]] std::uint32_t log(Elem a) const {
        if (a.is_zero()) throw std::domain_error("log of zero");
        return log_[a.bits];
    }

    [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept {
        if (a.is_zero() || b.is_zero()) return kZero;
        return Elem(exp_[log_[a.bits] + log_[b.bits]]);
    }
    [[nodiscard]] Elem inv(Elem a) const {
        if (a.is_zero()) throw std::domain_error("inverse of zero");
        const std::uint32_t l = log_[a.bits];
        return Elem(exp_[l == 0 ? 0 : order_ - 1 - l]);
    }
    [[nodiscard]] Elem div(Elem a, Elem b) const {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (a.is_zero()) return kZero;
        return Elem(exp_[log_[a.bits] + (order_ - 1) - log_[b.bits]]);
    }
    [[nodiscard]] Elem pow(Elem a, std::uint64_t k) const noexcept {
        if (k == 0) return kOne;
        if (a.is_zero()) return kZero;
        const std::uint64_t e = (static_cast<std::uint64_t>(log_[a.bits]) * (k % (order_ - 1))) % (order_ - 1);
        return Elem(exp_[e]);
    }

    /// x -> x^q, an involution on GF(q^2).
    [[nodiscard]] Elem frobenius(Elem x) const noexcept { return pow(x, q()); }
    /// Tr_{q^2/q}(x) = x + x^q.
    [[nodiscard]] Elem trace(Elem x) const noexcept { return x + frobenius(x); }
    [[nodiscard]] bool in_subfield(Elem x) const noexcept { return frobenius(x) == x; }
    /// The unique square root x^{2^{2m-1}}.
    [[nodiscard]] Elem sqrt(Elem x) const noexcept { return pow(x, order_ / 2); }

    /// All elements of the subfield GF(q), found as Frobenius fixed points.
    [[nodiscard]] std::vector<Elem> subfield_elements() const {
        std::vector<Elem> out;
        for (std::uint32_t v = 0; v < order_; ++v)
            if (in_subfield(Elem(static_cast<std::uint16_t>(v)))) out.emplace_back(static_cast<std::uint16_t>(v));
        return out;
    }

    /**
     * @brief Coordinates (x0, x1) in GF(q)^2 with x = x0 + x1 * alpha.
     *
     * x1 = Tr(x) / Tr(alpha), which is well defined because alpha lies outside GF(q).
     */
    [[nodiscard]] std::pair<Elem, Elem> split_over_subfield(Elem x) const {
        const Elem x1 = div(trace(x), trace(alpha()));
        return {x + mul(x1, alpha()), x1};
    }

   private:
    std::uint32_t pow_x(std::uint64_t k) const {
        // square-and-multiply on raw polynomials, independent of the tables
        std::uint32_t result = 1, base = 2;
        while (k) {
            if (k & 1) result = raw_mul(result, base);
            base = raw_mul(base, base);
            k >>= 1;
        }
        return result;
    }
    std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & order_) a ^= poly_;
        }
        return r;
    }

    int m_;
    std::uint32_t poly_;
    std::uint32_t order_ = 0;
    std::vector<std::uint16_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// A point of the unit circle, identified by its discrete log base beta.
using Point = std::uint8_t;

/**
 * @brief The cyclic group U_{q+1} of (q+1)-th roots of unity in GF(q^2).
 *
 * Position i holds beta^i with beta = alpha^{q-1}. Owns its field context.
 */
class UnitCircle {
   public:
    explicit UnitCircle(GaloisField field) : field_(std::move(field)) {
        const std::uint32_t q = field_.q();
        beta_ = field_.exp(q - 1);
        elements_.reserve(q + 1);
        index_.assign(field_.size(), -1);
        Elem u = kOne;
        for (std::uint32_t i = 0; i <= q; ++i) {
            if (index_[u.bits] != -1) throw FieldError("unit circle: beta^i repeats before q+1 steps");
            index_[u.bits] = static_cast<int>(i);
            elements_.push_back(u);
            u = field_.mul(u, beta_);
        }
        if (u != kOne) throw FieldError("unit circle: beta^(q+1) != 1");
    }

    static UnitCircle build(int m) { return UnitCircle(GaloisField::build(m)); }

    [[nodiscard]] const GaloisField& field() const noexcept { return field_; }
    [[nodiscard]] std::uint32_t q() const noexcept { return field_.q(); }
    /// Number of points, q + 1.
    [[nodiscard]] int size() const noexcept { return static_cast<int>(elements_.size()); }
    [[nodiscard]] Elem beta() const noexcept { return beta_; }
    [[nodiscard]] Elem operator[](std::size_t i) const noexcept { return elements_[i]; }
    [[nodiscard]] const std::vector<Elem>& elements() const noexcept { return elements_; }

    [[nodiscard]] bool contains(Elem x) const noexcept { return index_[x.bits] >= 0; }
    /// Discrete log base beta, or -1 when x is not on the circle.
    [[nodiscard]] int index_of(Elem x) const noexcept { return index_[x.bits]; }

   private:
    GaloisField field_;
    Elem beta_;
    std::vector<Elem> elements_;
    std::vector<int> index_;
};

}  // namespace espd
