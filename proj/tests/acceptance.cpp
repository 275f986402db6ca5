// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "espdesign/bch_codes.hpp"
#include "espdesign/designs.hpp"
#include "espdesign/esp_blocks.hpp"
#include "espdesign/group_action.hpp"
#include "property_checks.hpp"

using namespace espd;

namespace {

struct Findings {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string design(const DesignVerdict& r) {
    if (!r.lambda) return "not a " + std::to_string(r.t) + "-design";
    return std::to_string(r.t) + "-(" + std::to_string(r.v) + "," + std::to_string(r.k) + "," + std::to_string(*r.lambda) + ")";
}

/// Expects bs to be exactly the t-(v,k,lambda) design (and, when given, to have n blocks).
void expect_design(Findings& f, const std::string& name, const BlockSet& bs, int t, std::uint64_t lambda, std::uint64_t n = 0) {
    const auto r = verify_t_design(bs, t);
    const std::string want = std::to_string(t) + "-(" + std::to_string(bs.v()) + "," + std::to_string(bs.k()) + "," + std::to_string(lambda) + ")";
    f.expect(design(r) == want, name + ": want " + want + ", got " + design(r));
    if (n) f.expect(bs.size() == n, name + ": want " + std::to_string(n) + " blocks, got " + std::to_string(bs.size()));
}

void expect_weights(Findings& f, const std::string& name, const WeightTable& w, int first, const std::vector<const char*>& want) {
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto& got = w[static_cast<std::size_t>(first) + i];
        f.expect(got == BigInt(want[i]), name + ": A" + std::to_string(first + static_cast<int>(i)) + " = " + got.str() + ", want " + want[i]);
    }
}

int failed = 0;

void criterion(int id, const char* what, double limit_s, const std::function<void(Findings&)>& body) {
    Findings f;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(f);
    } catch (const std::exception& e) {
        f.failures.push_back(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && s > limit_s) f.failures.push_back("took " + std::to_string(s) + " s, limit " + std::to_string(limit_s) + " s");
    const bool ok = f.failures.empty();
    failed += !ok;
    std::printf("criterion %d: %s  %s  (%.1f s)\n", id, ok ? "PASS" : "FAIL", what, s);
    for (const auto& msg : f.failures) std::printf("    %s\n", msg.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    criterion(1, "Steiner system 3-(17,5,1) at q=16", 1.0, [](Findings& f) {
        const UnitCircle uc = UnitCircle::build(4);
        expect_design(f, "plain:5,2", blockset_plain(uc, 5, 2), 3, 1, 68);
    });

    criterion(2, "odd-m designs at q=32", 120.0, [](Findings& f) {
        const UnitCircle uc = UnitCircle::build(5);
        expect_design(f, "plain:6,3", blockset_plain(uc, 6, 3), 4, 12);
        expect_design(f, "b:5,3", blockset_b_variant(uc, 5, 3), 4, 5, 40920);
        expect_design(f, "bbar:5,3", blockset_bbar_variant(uc, 5, 3), 4, 24);
        const BlockSet u53 = blockset_u_variant(uc, 5, 3);
        expect_design(f, "u:5,3", u53, 4, 29);
        f.expect(verify_t_design(u53, 4).complete, "u:5,3 is not the complete design");
        expect_design(f, "u:7,3", blockset_u_variant(uc, 7, 3), 4, 756, 883872);
        expect_design(f, "B_7(C)", supports_of_weight(uc, 7).blocks, 4, 2898);
    });

    criterion(3, "even-m designs at q=16", 60.0, [](Findings& f) {
        const UnitCircle uc = UnitCircle::build(4);
        expect_design(f, "u:4,2", blockset_u_variant(uc, 4, 2), 3, 2);
        expect_design(f, "bbar:5,3", blockset_bbar_variant(uc, 5, 3), 3, 61);
        expect_design(f, "b:6,2", blockset_b_variant(uc, 6, 2), 3, 24);
        expect_design(f, "zero63", blockset_zero63(uc), 3, 24);
        expect_design(f, "plain:6,3", blockset_plain(uc, 6, 3), 3, 24);
        expect_design(f, "u:7,3", blockset_u_variant(uc, 7, 3), 3, 231);
        expect_design(f, "zero73", blockset_zero73(uc), 3, 231);
        expect_design(f, "B_7(C)", supports_of_weight(uc, 7).blocks, 3, 770);
    });

    criterion(4, "weight enumerators at q=32 and q=64", 300.0, [](Findings& f) {
        {
            const UnitCircle uc = UnitCircle::build(5);
            const auto s6 = supports_of_weight(uc, 6, {0, false});
            f.expect(s6.codewords == BigInt(31) * s6.count, "q=32: A6 != 31 |B_6|");
            const WeightTable w = weight_dist_nmds(33, 27, 32, s6.codewords);
            expect_weights(f, "q=32 code", w, 6, {"1014816", "105033456", "11116421316", "948713422800", "70662246969600"});
            const std::vector<BigInt> known = {BigInt(31) * blockset_plain(uc, 6, 3).size()};
            const WeightTable tr = weight_dist_asmds(33, 6, 27, 6, 32, known);
            expect_weights(f, "q=32 trace code", tr, 27, {"1014816", "1268520", "20296320", "64609952", "210132384", "399584823", "376835008"});
        }
        {
            const UnitCircle uc = UnitCircle::build(6);
            const auto s5 = supports_of_weight(uc, 5, {0, false});
            const auto s6 = supports_of_weight(uc, 6, {0, false});
            f.expect(s5.codewords == BigInt(63) * s5.count, "q=64: A5 != 63 |B_5|");
            f.expect(s6.codewords == BigInt(63) * s6.count, "q=64: A6 != 63 |B_6|");
            const std::vector<BigInt> known = {s5.codewords, s6.codewords};
            const WeightTable w = weight_dist_asmds(65, 59, 5, 59, 64, known);
            expect_weights(f, "q=64 code", w, 5, {"275184", "66044160", "39476324160"});
        }
    });

    criterion(5, "trace-code enumeration, MacWilliams and supports agree at q=16", 120.0, [](Findings& f) {
        const UnitCircle uc = UnitCircle::build(4);
        const auto e = enumerate_trace_code(uc, code_basis(build_code(uc)));
        f.expect(e.orthogonality_failures == 0, "trace codewords not orthogonal to C: " + std::to_string(e.orthogonality_failures));
        f.expect(e.non_subfield == 0, "trace coordinates outside GF(16)");
        const WeightTable dual = macwilliams(e.weights, 17, 6, 16);
        for (int k = 5; k <= 7; ++k) {
            const auto s = supports_of_weight(uc, k, {0, false});
            const BigInt via_supports = BigInt(15) * s.count;
            f.expect(dual[static_cast<std::size_t>(k)] == via_supports,
                     "A" + std::to_string(k) + ": MacWilliams " + dual[static_cast<std::size_t>(k)].str() + ", 15|B_k| " + via_supports.str());
            f.expect(s.codewords == via_supports, "A" + std::to_string(k) + ": elimination count " + s.codewords.str());
        }
    });

    criterion(6, "zero-set lemma at q=32", 120.0, [](Findings& f) {
        const UnitCircle uc = UnitCircle::build(5);
        const BlockSet bs = blockset_b_variant(uc, 5, 3);
        f.expect(bs.size() == 40920, "b:5,3 has " + std::to_string(bs.size()) + " blocks");
        const auto taus = uc.field().subfield_elements();
        std::uint64_t pairs = 0, round_trips = 0, rejected = 0, bad = 0;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            int valid = 0;
            for (std::size_t j = 0; j < 5; ++j) {
                ++pairs;
                try {
                    for (Elem tau : taus) {
                        if (tau.is_zero()) continue;
                        const auto p = parameterize_double_root(uc, bs[i], j, tau);
                        if (!std::ranges::equal(zero_set_classify(uc, p.a, p.b, p.c).points(), bs[i])) ++bad;
                    }
                    ++valid;
                    ++round_trips;
                } catch (const PreconditionError&) {
                    ++rejected;
                }
            }
            bad += valid != 1;
        }
        // only the point sigma_{5,3}/sigma_{5,2} of each block can be the double root
        f.expect(pairs == 5 * bs.size(), std::to_string(pairs) + " pairs examined");
        f.expect(round_trips == bs.size(), std::to_string(round_trips) + " pairs round-trip, want one per block");
        f.expect(rejected == 4 * bs.size(), "rejected " + std::to_string(rejected) + " of " + std::to_string(pairs) + " pairs");
        f.expect(bad == 0, std::to_string(bad) + " failed round trips");

        std::mt19937_64 rng(20240101);
        std::uint64_t over = 0;
        for (int d = 0; d < 1000000; ++d) {
            const auto p = random_trace_params(uc.field(), rng);
            try {
                static_cast<void>(zero_set_classify(uc, p.a, p.b, p.c));
            } catch (const ZeroSetError&) {
                ++over;
            }
        }
        f.expect(over == 0, std::to_string(over) + " random draws with more than 6 zeros");
    });

    criterion(7, "group closure, short orbits and Alltop design at q=32", 0, [](Findings& f) {
        {
            const UnitCircle uc = UnitCircle::build(4);
            const GroupClosure g = close_group(uc);
            f.expect(g.order() == 4080, "q=16 order " + std::to_string(g.order()));
            for (std::size_t e : involution_indices(g))
                if (fixed_points(g.perm(e)) != 1) f.failures.push_back("q=16 involution " + std::to_string(e) + " fixes " + std::to_string(fixed_points(g.perm(e))));
        }
        const UnitCircle uc = UnitCircle::build(5);
        const GroupClosure g = close_group(uc);
        f.expect(g.order() == 32736, "q=32 order " + std::to_string(g.order()));
        const auto t0 = std::chrono::steady_clock::now();
        const OrbitReport r = orbit_partition(g, 5);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        f.expect(s < 900, "orbit partition took " + std::to_string(s) + " s");
        const auto shorts = r.short_orbits();
        f.expect(shorts.size() == 5, std::to_string(shorts.size()) + " short orbits");
        for (std::size_t o : shorts) f.expect(r.orbits[o].stabilizer_order == 4, "stabilizer order " + std::to_string(r.orbits[o].stabilizer_order));
        const BlockSet shortset = union_of_orbits(r, 33, [&](std::uint32_t o) { return r.orbits[o].stabilizer_order > 1; });
        const BlockSet b53 = blockset_b_variant(uc, 5, 3);
        const auto cmp = compare_blocksets(shortset, b53);
        f.expect(cmp.equal, "short orbits vs b:5,3: " + std::to_string(cmp.left_minus_right) + " only in orbits, " + std::to_string(cmp.right_minus_left) +
                                " only in b:5,3");
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
        for (int i = 0; i < 2000; ++i) {
            const auto p = g.perm(pick(rng));
            if (permutation_order(p) == 2 && fixed_points(p) != 1) f.failures.push_back("q=32 involution with " + std::to_string(fixed_points(p)) + " fixed points");
        }
        const auto inv = invariance_check(g, b53, 100, 20240101);
        f.expect(inv.invariant && inv.elements_checked == 100, "b:5,3 not invariant");
    });

    criterion(8, "property suites at q=16 and q=32", 0, [](Findings& f) {
        for (int m : {4, 5}) {
            const UnitCircle& uc = oracle::circle(m);
            const std::string q = "q=" + std::to_string(uc.q()) + " ";
            const auto c = props::conjugation_identity(uc, 10000, 100 + static_cast<std::uint64_t>(m));
            f.expect(c.ok, q + "conjugation identity fails at " + c.detail);
            const auto s = props::shift_paths_agree(uc, 10000, 200 + static_cast<std::uint64_t>(m));
            f.expect(s.ok && s.cases == 10000, q + "shift paths disagree at " + s.detail);
            const auto i = props::intersection_bounds(uc);
            f.expect(i.ok, q + "intersection bound violated: " + i.detail);
            const auto u = props::u_collapse(uc);
            f.expect(u.ok, q + "u-variant collapse: " + u.detail);
        }
    });

    return failed == 0 ? 0 : 1;
}
