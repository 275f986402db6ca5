// Randomized and exhaustive property checks shared by the property suite and the acceptance run.
#pragma once

#include <random>
#include <string>

#include "espdesign/designs.hpp"
#include "espdesign/esp_blocks.hpp"
#include "espdesign/group_action.hpp"
#include "oracles.hpp"

namespace props {

using namespace espd;

struct Verdict {
    bool ok = true;
    std::string detail;
    std::uint64_t cases = 0;
};

/// sigma_{k,l}^q * sigma_{k,k} == sigma_{k,k-l} on random blocks of U_{q+1}.
inline Verdict conjugation_identity(const UnitCircle& uc, std::uint64_t trials, std::uint64_t seed) {
    const GaloisField& f = uc.field();
    std::mt19937_64 rng(seed);
    Verdict v;
    for (std::uint64_t t = 0; t < trials && v.ok; ++t) {
        const int k = 1 + static_cast<int>(rng() % 7);
        const auto b = oracle::random_subset(rng, uc.size(), k);
        const auto s = esp_all(uc, b);
        for (int l = 0; l <= k; ++l) {
            ++v.cases;
            const auto lhs = f.mul(f.frobenius(s[static_cast<std::size_t>(l)]), s[static_cast<std::size_t>(k)]);
            if (lhs != s[static_cast<std::size_t>(k - l)]) {
                v.ok = false;
                v.detail = "k=" + std::to_string(k) + " l=" + std::to_string(l);
                break;
            }
        }
    }
    return v;
}

/// Direct product expansion and binomial expansion of sigma_{k,l}(B - a) agree, a anywhere in GF(q^2).
inline Verdict shift_paths_agree(const UnitCircle& uc, std::uint64_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> any(0, uc.field().size() - 1);
    Verdict v;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const int k = 1 + static_cast<int>(rng() % 7);
        const int l = static_cast<int>(rng() % static_cast<std::uint64_t>(k + 1));
        const auto b = oracle::random_subset(rng, uc.size(), k);
        const Elem a = t % 2 ? uc[rng() % static_cast<std::uint64_t>(uc.size())] : Elem(static_cast<std::uint16_t>(any(rng)));
        ++v.cases;
        if (esp_shifted_direct(uc, b, a, l) != esp_shifted_expansion(uc, b, a, l)) {
            v.ok = false;
            v.detail = "k=" + std::to_string(k) + " l=" + std::to_string(l) + " a=" + std::to_string(a.bits);
            return v;
        }
    }
    return v;
}

/// Largest pairwise intersections of the sigma_{5,2} and sigma_{6,3} block sets, over all pairs.
inline Verdict intersection_bounds(const UnitCircle& uc, ScanOptions opt = {}) {
    Verdict v;
    const bool even = uc.field().m() % 2 == 0;
    const BlockSet p63 = blockset_plain(uc, 6, 3, opt);
    const int m63 = max_pairwise_intersection(p63);
    v.cases = p63.size();
    v.detail = "sigma63 max " + std::to_string(m63);
    v.ok = m63 <= (even ? 5 : 4);
    if (even) {
        const BlockSet p52 = blockset_plain(uc, 5, 2, opt);
        const int m52 = max_pairwise_intersection(p52);
        v.cases += p52.size();
        v.detail = "sigma52 max " + std::to_string(m52) + ", " + v.detail;
        v.ok = v.ok && m52 <= 2;
    }
    return v;
}

/// u-variants of sigma_{5,2} and sigma_{6,3} coincide with the plain block sets.
inline Verdict u_collapse(const UnitCircle& uc, ScanOptions opt = {}) {
    Verdict v;
    for (auto [k, l] : {std::pair{5, 2}, std::pair{6, 3}}) {
        const auto c = compare_blocksets(blockset_u_variant(uc, k, l, opt), blockset_plain(uc, k, l, opt));
        v.cases += 1;
        if (!c.equal) {
            v.ok = false;
            v.detail += "u:" + std::to_string(k) + "," + std::to_string(l) + " differs; ";
        }
    }
    if (v.ok) v.detail = "equal";
    return v;
}

}  // namespace props
