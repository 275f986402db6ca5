/**
 * @file report.hpp
 * @brief Named checks with expected/observed values and the full verification suite.
 */
#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bch_codes.hpp"
#include "designs.hpp"
#include "esp_blocks.hpp"
#include "group_action.hpp"

namespace espd {

/// pass iff expected == observed, character for character.
struct CheckResult {
    std::string check_id;
    std::string title;
    bool pass = false;
    std::string expected;
    std::string observed;
    double runtime_ms = 0;
};

/// Runs checks in order, timing each; exceptions become failing observations.
class CheckLog {
   public:
    struct Outcome {
        std::string expected, observed;
    };

    explicit CheckLog(std::ostream* progress = nullptr) : progress_(progress) {}

    const CheckResult& run(std::string id, std::string title, const std::function<Outcome()>& body) {
        CheckResult r;
        r.check_id = std::move(id);
        r.title = std::move(title);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto o = body();
            r.expected = std::move(o.expected);
            r.observed = std::move(o.observed);
        } catch (const std::exception& e) {
            r.expected = r.expected.empty() ? "no error" : r.expected;
            r.observed = std::string("error: ") + e.what();
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        r.pass = r.expected == r.observed;
        if (progress_) {
            *progress_ << (r.pass ? "PASS " : "FAIL ") << r.check_id << "  (" << static_cast<long long>(r.runtime_ms) << " ms)";
            if (!r.pass) *progress_ << "\n     expected: " << r.expected << "\n     observed: " << r.observed;
            *progress_ << '\n' << std::flush;
        }
        results_.push_back(std::move(r));
        return results_.back();
    }

    [[nodiscard]] const std::vector<CheckResult>& results() const noexcept { return results_; }
    [[nodiscard]] std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : results_) n += !r.pass;
        return n;
    }

   private:
    std::ostream* progress_;
    std::vector<CheckResult> results_;
};

inline nlohmann::ordered_json results_to_json(const std::vector<CheckResult>& rs, bool timings = false) {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : rs) {
        nlohmann::ordered_json e;
        e["check_id"] = r.check_id;
        e["title"] = r.title;
        e["status"] = r.pass ? "pass" : "fail";
        e["expected"] = r.expected;
        e["observed"] = r.observed;
        if (timings) e["runtime_ms"] = static_cast<std::int64_t>(r.runtime_ms);
        arr.push_back(std::move(e));
        passed += r.pass;
    }
    j["checks"] = std::move(arr);
    j["passed"] = passed;
    j["failed"] = rs.size() - passed;
    return j;
}

// ---------------------------------------------------------------------------------------------
// Formatting

inline std::string design_label(int t, int v, int k, const BigInt& lambda) {
    return std::to_string(t) + "-(" + std::to_string(v) + "," + std::to_string(k) + "," + lambda.str() + ")";
}

inline std::string points_label(std::span<const Point> s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(static_cast<int>(s[i]));
    return out + "}";
}

/// "t-(v,k,lambda)" for a design, else the first disagreeing pair of t-subsets.
inline std::string verdict_label(const DesignVerdict& r) {
    if (r.lambda) return design_label(r.t, r.v, r.k, BigInt(*r.lambda));
    const auto& w = *r.witness;
    return "not a " + std::to_string(r.t) + "-design: " + points_label(w.first) + " in " + std::to_string(w.first_count) + " blocks, " +
           points_label(w.second) + " in " + std::to_string(w.second_count);
}

inline std::string comparison_label(const SetComparison& c) {
    if (c.equal) return "equal";
    std::string s = "differ: " + std::to_string(c.left_minus_right) + " only left, " + std::to_string(c.right_minus_left) + " only right";
    if (c.only_left) s += ", e.g. " + points_label(*c.only_left);
    if (c.only_right) s += ", e.g. " + points_label(*c.only_right);
    return s;
}

inline std::string blocks_label(std::uint64_t n) { return std::to_string(n) + " blocks"; }

// ---------------------------------------------------------------------------------------------
// Closed-form values in q

namespace formula {

/// Exact quotient; a remainder means the formula was applied outside its range.
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (a % b != 0) throw std::domain_error("closed form is not integral at this q");
    return a / b;
}

/// Blocks of a t-(v,k,lambda) design.
inline BigInt block_count(int v, int k, int t, const BigInt& lambda) { return exact_div(lambda * big_binom(v, t), big_binom(k, t)); }

inline BigInt even_b6(BigInt q) { return exact_div((q - 4) * (q - 16), 6); }
inline BigInt even_u73(BigInt q) { return exact_div(7 * (q - 4) * (q - 5) * (q - 10), 24); }
inline BigInt even_b7(int q) { return big_binom(q - 2, 4) - even_u73(q); }
inline BigInt even_zero73(BigInt q) { return exact_div(7 * (q - 4) * (q - 5), 4); }
inline BigInt even_bbar53(BigInt q) { return exact_div(q * q - 10 * q + 26, 2); }
inline BigInt even_plain63(BigInt q) { return exact_div((q - 4) * (q - 4), 6); }
inline BigInt odd_plain63(BigInt q) { return exact_div(q - 8, 2); }
inline BigInt odd_u73(BigInt q) { return exact_div(7 * (q - 5) * (q - 8), 6); }
inline BigInt odd_b7(int q) { return big_binom(q - 3, 3) - odd_u73(q); }

}  // namespace formula

/// Printed weight-enumerator coefficients, lowest weight first.
struct PublishedWeights {
    int q;
    int first_weight;
    std::vector<const char*> coefficients;
};

inline const std::vector<PublishedWeights>& published_code_weights() {
    static const std::vector<PublishedWeights> t = {
        {64, 5, {"275184", "66044160", "39476324160", "18256982332680", "7271676138046320", "2565751348965796992"}},
        {32, 6, {"1014816", "105033456", "11116421316", "948713422800", "70662246969600"}},
    };
    return t;
}

inline const PublishedWeights& published_trace_weights_q32() {
    static const PublishedWeights t{32, 27, {"1014816", "1268520", "20296320", "64609952", "210132384", "399584823", "376835008"}};
    return t;
}

// ---------------------------------------------------------------------------------------------
// Suite

struct SuiteOptions {
    std::vector<int> qs{16, 32, 64};
    unsigned jobs = 0;
    bool heavy = false;
    std::size_t sample = 100;       ///< random group elements for the invariance checks
    std::size_t random_draws = 1000000;
    std::uint64_t seed = 20240101;
};

/// Block sets and group for one q, computed on first use.
class Workspace {
   public:
    Workspace(int m, unsigned jobs) : uc_(UnitCircle::build(m)), jobs_(jobs) {}

    [[nodiscard]] const UnitCircle& uc() const noexcept { return uc_; }
    [[nodiscard]] int q() const noexcept { return static_cast<int>(uc_.q()); }
    [[nodiscard]] int v() const noexcept { return uc_.size(); }
    [[nodiscard]] bool even() const noexcept { return uc_.field().m() % 2 == 0; }
    [[nodiscard]] ScanOptions scan() const noexcept { return {jobs_, true}; }
    [[nodiscard]] unsigned jobs() const noexcept { return jobs_; }

    const BlockSet& family(const std::string& tag) {
        return cached(tag, [&] { return scan_family(uc_, FamilySpec::parse(tag), scan()).blocks; });
    }

    const BlockSet& cached(const std::string& key, const std::function<BlockSet()>& make) {
        auto it = sets_.find(key);
        if (it == sets_.end()) it = sets_.emplace(key, make()).first;
        return it->second;
    }

    const SupportScan& supports(int k) {
        auto it = supports_.find(k);
        if (it == supports_.end()) it = supports_.emplace(k, supports_of_weight(uc_, k, scan())).first;
        return it->second;
    }

    const GroupClosure& group() {
        if (!group_) group_ = std::make_unique<GroupClosure>(close_group(uc_));
        return *group_;
    }

    const CodeSpec& code() {
        if (!code_) code_ = build_code(uc_);
        return *code_;
    }

   private:
    UnitCircle uc_;
    unsigned jobs_;
    std::map<std::string, BlockSet> sets_;
    std::map<int, SupportScan> supports_;
    std::unique_ptr<GroupClosure> group_;
    std::optional<CodeSpec> code_;
};

namespace details {

inline int log2_exact(int q) {
    for (int m = 4; m <= 7; ++m)
        if (q == (1 << m)) return m;
    throw std::invalid_argument("q must be one of 16, 32, 64, 128");
}

inline std::string weights_label(const WeightTable& w, int from, int to) {
    std::string s;
    for (int i = from; i <= to; ++i) s += (i > from ? " " : "") + std::string("A") + std::to_string(i) + "=" + w[static_cast<std::size_t>(i)].str();
    return s;
}

inline std::string published_label(const PublishedWeights& p) {
    std::string s;
    for (std::size_t i = 0; i < p.coefficients.size(); ++i)
        s += (i ? " " : "") + std::string("A") + std::to_string(p.first_weight + static_cast<int>(i)) + "=" + p.coefficients[i];
    return s;
}

/// Design check: verdict at t plus block count.
inline CheckLog::Outcome design_outcome(const BlockSet& bs, int t, const BigInt& lambda, unsigned jobs) {
    const auto r = verify_t_design(bs, t, jobs);
    const BigInt count = formula::block_count(bs.v(), bs.k(), t, lambda);
    return {design_label(t, bs.v(), bs.k(), lambda) + " with " + count.str() + " blocks", verdict_label(r) + " with " + std::to_string(bs.size()) + " blocks"};
}

inline void even_checks(CheckLog& log, Workspace& w, const SuiteOptions& opt) {
    const int q = w.q(), v = w.v();
    const std::string sfx = "-q" + std::to_string(q);
    const unsigned jobs = w.jobs();

    log.run("steiner-plain52" + sfx, "sigma_{5,2} blocks form a Steiner system S(3,5,q+1)",
            [&] { return design_outcome(w.family("plain:5,2"), 3, 1, jobs); });
    log.run("u42-design" + sfx, "u-variant of sigma_{4,2} is a 3-(q+1,4,2) design", [&] { return design_outcome(w.family("u:4,2"), 3, 2, jobs); });
    log.run("u42-equals-general" + sfx, "u-variant of sigma_{4,2} equals the zero set of s2^2 + s1 s3", [&]() -> CheckLog::Outcome {
        return {"equal", comparison_label(compare_blocksets(w.family("u:4,2"), w.family("general:4:s2^2+s1*s3")))};
    });
    log.run("u52-collapse" + sfx, "u-variant of sigma_{5,2} equals the plain block set", [&]() -> CheckLog::Outcome {
        return {"equal", comparison_label(compare_blocksets(w.family("u:5,2"), w.family("plain:5,2")))};
    });
    log.run("u63-collapse" + sfx, "u-variant of sigma_{6,3} equals the plain block set", [&]() -> CheckLog::Outcome {
        return {"equal", comparison_label(compare_blocksets(w.family("u:6,3"), w.family("plain:6,3")))};
    });
    log.run("table-bbar53-even" + sfx, "bbar-variant of sigma_{5,3}: 3-(q+1,5,(q^2-10q+26)/2)",
            [&] { return design_outcome(w.family("bbar:5,3"), 3, formula::even_bbar53(q), jobs); });
    log.run("b-bbar-overlap" + sfx, "b- and bbar-variants of sigma_{5,3} overlap in the sigma_{5,2} blocks", [&]() -> CheckLog::Outcome {
        const BlockSet both = set_intersection(w.family("b:5,3"), w.family("bbar:5,3"));
        return {"equal", comparison_label(compare_blocksets(both, w.family("plain:5,2")))};
    });
    log.run("b62-design" + sfx, "b-variant of sigma_{6,2}: 3-(q+1,6,2q-8)", [&] { return design_outcome(w.family("b:6,2"), 3, 2 * q - 8, jobs); });
    log.run("zero63-design" + sfx, "sigma_{6,3} blocks with a vanishing sigma_{5,2} deletion: 3-(q+1,6,2(q-4))",
            [&] { return design_outcome(w.family("zero63"), 3, 2 * (q - 4), jobs); });
    log.run("plain63-design" + sfx, "sigma_{6,3} blocks: 3-(q+1,6,(q-4)^2/6)",
            [&] { return design_outcome(w.family("plain:6,3"), 3, formula::even_plain63(q), jobs); });
    log.run("table-u73-even" + sfx, "u-variant of sigma_{7,3}: 3-(q+1,7,7(q-4)(q-5)(q-10)/24)",
            [&] { return design_outcome(w.family("u:7,3"), 3, formula::even_u73(q), jobs); });
    log.run("table-zero73-even" + sfx, "7-sets with a vanishing sigma_{5,2} double deletion: 3-(q+1,7,7(q-4)(q-5)/4)",
            [&] { return design_outcome(w.family("zero73"), 3, formula::even_zero73(q), jobs); });
    log.run("u73-paths-agree" + sfx, "u-variant of sigma_{7,3}: shift scan equals the deletion characterization", [&]() -> CheckLog::Outcome {
        const BlockSet alt = blockset_u_variant(w.uc(), 7, 3, w.scan(), UVariantPath::Characterization);
        return {"equal", comparison_label(compare_blocksets(w.family("u:7,3"), alt))};
    });

    log.run("code-params" + sfx, "BCH code length, dimension and minimum distance", [&]() -> CheckLog::Outcome {
        const auto& c = w.code();
        const auto d = minimum_distance(w.uc(), w.scan());
        return {"[" + std::to_string(q + 1) + "," + std::to_string(q - 5) + ",5]",
                "[" + std::to_string(c.n) + "," + std::to_string(c.dimension) + "," + (d ? std::to_string(*d) : std::string("none")) + "]"};
    });
    log.run("table-code-b5-even" + sfx, "weight-5 supports equal the sigma_{5,2} blocks and form a 3-(q+1,5,1) design", [&]() -> CheckLog::Outcome {
        const auto& s = w.supports(5);
        auto o = design_outcome(s.blocks, 3, 1, jobs);
        o.expected += "; equal to plain:5,2";
        o.observed += "; " + comparison_label(compare_blocksets(s.blocks, w.family("plain:5,2"))) + " to plain:5,2";
        return o;
    });
    log.run("table-code-b6-even" + sfx, "weight-6 supports equal sigma_{6,3} minus zero63: 3-(q+1,6,(q-4)(q-16)/6)", [&]() -> CheckLog::Outcome {
        const auto& s = w.supports(6);
        const BlockSet diff = set_difference(w.family("plain:6,3"), w.family("zero63"));
        auto o = design_outcome(s.blocks, 3, formula::even_b6(q), jobs);
        o.expected += "; equal to plain:6,3 minus zero63";
        o.observed += "; " + comparison_label(compare_blocksets(s.blocks, diff)) + " to plain:6,3 minus zero63";
        return o;
    });
    log.run("table-code-b7-even" + sfx, "weight-7 supports complement the u-variant of sigma_{7,3}", [&]() -> CheckLog::Outcome {
        const auto& s = w.supports(7);
        const BlockSet comp = complementary(w.family("u:7,3"));
        auto o = design_outcome(s.blocks, 3, formula::even_b7(q), jobs);
        o.expected += "; equal to complementary(u:7,3)";
        o.observed += "; " + comparison_label(compare_blocksets(s.blocks, comp)) + " to complementary(u:7,3)";
        return o;
    });
    log.run("intersections-even" + sfx, "largest block intersections: sigma_{5,2} at most 2, sigma_{6,3} at most 5", [&]() -> CheckLog::Outcome {
        return {"sigma52 max 2, sigma63 max 5", "sigma52 max " + std::to_string(max_pairwise_intersection(w.family("plain:5,2"))) + ", sigma63 max " +
                                                   std::to_string(max_pairwise_intersection(w.family("plain:6,3")))};
    });

    if (q == 16) {
        std::optional<TraceEnumeration> e;
        log.run("trace-enumeration" + sfx, "all q^6 trace codewords lie in GF(q) and are orthogonal to the BCH code", [&]() -> CheckLog::Outcome {
            e = enumerate_trace_code(w.uc(), code_basis(w.code()), w.scan());
            return {"16777216 codewords, 0 outside GF(q), 0 not orthogonal", e->weights.total().str() + " codewords, " + std::to_string(e->non_subfield) +
                                                                                " outside GF(q), " + std::to_string(e->orthogonality_failures) + " not orthogonal"};
        });
        log.run("dual-consistency" + sfx, "MacWilliams of the enumerated trace code equals the formula table and (q-1)|B_k|", [&]() -> CheckLog::Outcome {
            if (!e) e = enumerate_trace_code(w.uc(), {}, w.scan());
            const WeightTable dual = macwilliams(e->weights, v, 6, q);
            const std::vector<BigInt> known = {w.supports(5).codewords, w.supports(6).codewords};
            const WeightTable formula = weight_dist_asmds(v, q - 5, 5, q - 5, q, known);
            std::string exp, obs;
            for (int k = 5; k <= 7; ++k) exp += (k > 5 ? " " : "") + std::string("A") + std::to_string(k) + "=" + (BigInt(q - 1) * w.supports(k).count).str();
            exp += "; formula table equal";
            obs = weights_label(dual, 5, 7) + (dual == formula ? "; formula table equal" : "; formula table differs");
            return {exp, obs};
        });
        log.run("group-character" + sfx, "every element's fixed points match its order class (exhaustive)", [&]() -> CheckLog::Outcome {
            const auto c = character_check(w.group());
            return {"0 violations over " + std::to_string(pgl2_order(q)) + " elements",
                    std::to_string(c.violations) + " violations over " + std::to_string(c.identity + c.involutions + c.split + c.nonsplit) + " elements"};
        });
    }
    (void)opt;
}

inline void odd_checks(CheckLog& log, Workspace& w, const SuiteOptions& opt) {
    const int q = w.q(), v = w.v();
    const std::string sfx = "-q" + std::to_string(q);
    const unsigned jobs = w.jobs();

    log.run("plain52-empty" + sfx, "sigma_{5,2} never vanishes on 5-subsets", [&]() -> CheckLog::Outcome {
        return {blocks_label(0), blocks_label(w.family("plain:5,2").size())};
    });
    log.run("plain63-design" + sfx, "sigma_{6,3} blocks: 4-(q+1,6,(q-8)/2)",
            [&] { return design_outcome(w.family("plain:6,3"), 4, formula::odd_plain63(q), jobs); });
    log.run("b53-design" + sfx, "b-variant of sigma_{5,3}: 4-(q+1,5,5)", [&] { return design_outcome(w.family("b:5,3"), 4, 5, jobs); });
    log.run("bbar53-design" + sfx, "bbar-variant of sigma_{5,3}: 4-(q+1,5,q-8)", [&] { return design_outcome(w.family("bbar:5,3"), 4, q - 8, jobs); });
    log.run("b-bbar-partition" + sfx, "b- and bbar-variants of sigma_{5,3} partition the u-variant", [&]() -> CheckLog::Outcome {
        const BlockSet both = set_intersection(w.family("b:5,3"), w.family("bbar:5,3"));
        const BlockSet all = set_union(w.family("b:5,3"), w.family("bbar:5,3"));
        return {"disjoint, union equal to u:5,3", std::string(both.empty() ? "disjoint" : std::to_string(both.size()) + " shared") + ", union " +
                                                      comparison_label(compare_blocksets(all, w.family("u:5,3"))) + " to u:5,3"};
    });
    log.run("u53-complete" + sfx, "u-variant of sigma_{5,3} is the complete 4-(q+1,5,q-3) design", [&]() -> CheckLog::Outcome {
        const BlockSet& u = w.family("u:5,3");
        auto o = design_outcome(u, 4, q - 3, jobs);
        o.expected += ", complete";
        o.observed += u.size() == binom(v, 5) ? ", complete" : ", not complete";
        return o;
    });
    log.run("table-u73-odd" + sfx, "u-variant of sigma_{7,3}: 4-(q+1,7,7(q-5)(q-8)/6)",
            [&] { return design_outcome(w.family("u:7,3"), 4, formula::odd_u73(q), jobs); });
    log.run("u73-paths-agree" + sfx, "u-variant of sigma_{7,3}: shift scan equals the deletion characterization", [&]() -> CheckLog::Outcome {
        const BlockSet alt = blockset_u_variant(w.uc(), 7, 3, w.scan(), UVariantPath::Characterization);
        return {"equal", comparison_label(compare_blocksets(w.family("u:7,3"), alt))};
    });
    log.run("intersections-odd" + sfx, "largest sigma_{6,3} block intersection is at most 4", [&]() -> CheckLog::Outcome {
        return {"sigma63 max 4", "sigma63 max " + std::to_string(max_pairwise_intersection(w.family("plain:6,3")))};
    });

    log.run("code-params" + sfx, "BCH code length, dimension and minimum distance", [&]() -> CheckLog::Outcome {
        const auto& c = w.code();
        const auto d = minimum_distance(w.uc(), w.scan());
        return {"[" + std::to_string(q + 1) + "," + std::to_string(q - 5) + ",6]",
                "[" + std::to_string(c.n) + "," + std::to_string(c.dimension) + "," + (d ? std::to_string(*d) : std::string("none")) + "]"};
    });
    log.run("table-code-b6-odd" + sfx, "weight-6 supports equal the sigma_{6,3} blocks: 4-(q+1,6,(q-8)/2)", [&]() -> CheckLog::Outcome {
        const auto& s = w.supports(6);
        auto o = design_outcome(s.blocks, 4, formula::odd_plain63(q), jobs);
        o.expected += "; equal to plain:6,3";
        o.observed += "; " + comparison_label(compare_blocksets(s.blocks, w.family("plain:6,3"))) + " to plain:6,3";
        return o;
    });
    log.run("table-code-b7-odd" + sfx, "weight-7 supports complement the u-variant of sigma_{7,3}", [&]() -> CheckLog::Outcome {
        const auto& s = w.supports(7);
        const BlockSet comp = complementary(w.family("u:7,3"));
        auto o = design_outcome(s.blocks, 4, formula::odd_b7(q), jobs);
        o.expected += "; equal to complementary(u:7,3)";
        o.observed += "; " + comparison_label(compare_blocksets(s.blocks, comp)) + " to complementary(u:7,3)";
        return o;
    });
    log.run("supplementary-designs" + sfx, "supplements of the b-variant and sigma_{6,3} designs", [&]() -> CheckLog::Outcome {
        const BlockSet sb = supplementary(w.family("b:5,3"));
        const BlockSet sp = supplementary(w.family("plain:6,3"));
        const Rational lb = supplementary_lambda(v, 5, 4, 5), lp = supplementary_lambda(v, 6, 4, formula::odd_plain63(q));
        if (denominator(lb) != 1 || denominator(lp) != 1) throw std::domain_error("supplementary index not integral");
        return {design_label(4, v, v - 5, numerator(lb)) + ", " + design_label(4, v, v - 6, numerator(lp)),
                verdict_label(verify_t_design(sb, 4, jobs)) + ", " + verdict_label(verify_t_design(sp, 4, jobs))};
    });

    // weights
    for (const auto& pub : published_code_weights()) {
        if (pub.q != q) continue;
        log.run("weights-nmds" + sfx, "weight distribution of the near-MDS code from A_6", [&]() -> CheckLog::Outcome {
            const auto& s6 = w.supports(6);
            const WeightTable t = weight_dist_nmds(v, q - 5, q, s6.codewords);
            const int last = pub.first_weight + static_cast<int>(pub.coefficients.size()) - 1;
            std::string obs = weights_label(t, pub.first_weight, last);
            const BigInt a7 = BigInt(q - 1) * w.supports(7).count;
            std::string exp = published_label(pub) + "; A7 from supports " + t[7].str();
            obs += "; A7 from supports " + a7.str();
            return {exp, obs};
        });
    }
    if (q == 32) {
        log.run("weights-trace" + sfx, "trace code [33,6,27] weight distribution from A_27 = (q-1)|B_sigma63|", [&]() -> CheckLog::Outcome {
            const auto& pub = published_trace_weights_q32();
            const std::vector<BigInt> known = {BigInt(q - 1) * w.family("plain:6,3").size()};
            const WeightTable t = weight_dist_asmds(v, 6, q - 5, 6, q, known);
            const BigInt a28 = BigInt(q - 1) * w.family("b:5,3").size();
            return {published_label(pub) + "; A28 = (q-1)|B^b_53| = " + a28.str(), weights_label(t, 27, 33) + "; A28 = (q-1)|B^b_53| = " + t[28].str()};
        });
    }

    log.run("exceptional-sets" + sfx, "S1, S for every quadruple: sizes 5 and 9, inside U, and the membership criterion", [&]() -> CheckLog::Outcome {
        std::uint64_t quads = 0, bad = 0, crit = 0;
        for_each_subset(v, 4, [&](std::span<const Point> quad) {
            ++quads;
            const auto s = exceptional_sets(w.uc(), quad);
            bool ok = s.s1.size() == 5 && s.s.size() == 9;
            for (Elem e : s.s) ok = ok && w.uc().contains(e);
            bad += !ok;
            std::array<Point, 5> quint{};
            for (int p = 0; p < v; ++p) {
                if (std::find(quad.begin(), quad.end(), p) != quad.end()) continue;
                std::copy(quad.begin(), quad.end(), quint.begin());
                quint[4] = static_cast<Point>(p);
                std::sort(quint.begin(), quint.end());
                const auto r = quintuple_ratio(w.uc(), quint);
                const bool in_block = r && std::any_of(quint.begin(), quint.end(), [&](Point x) { return w.uc()[x] == *r; });
                const bool in_s1 = std::binary_search(s.s1.begin(), s.s1.end(), w.uc()[static_cast<std::size_t>(p)]);
                crit += in_block != in_s1;
            }
        });
        return {std::to_string(binom(v, 4)) + " quadruples, 0 size failures, 0 criterion failures",
                std::to_string(quads) + " quadruples, " + std::to_string(bad) + " size failures, " + std::to_string(crit) + " criterion failures"};
    });

    log.run("zero-set-roundtrip" + sfx, "double-root parameterization of every b-variant block, every point, every scale", [&]() -> CheckLog::Outcome {
        const BlockSet& bs = w.family("b:5,3");
        const auto taus = w.uc().field().subfield_elements();
        std::uint64_t pairs = 0, valid = 0, rejected = 0, failures = 0;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const auto b = bs[i];
            for (std::size_t j = 0; j < 5; ++j) {
                ++pairs;
                try {
                    bool ok = true;
                    for (Elem tau : taus) {
                        if (tau.is_zero()) continue;
                        const auto p = parameterize_double_root(w.uc(), b, j, tau);
                        ok = ok && std::ranges::equal(zero_set_classify(w.uc(), p.a, p.b, p.c).points(), b);
                    }
                    valid += ok;
                    failures += !ok;
                } catch (const PreconditionError&) {
                    ++rejected;
                    const auto p = parameterize_double_root(w.uc(), b, j, kOne, false);
                    const Block z = zero_set_classify(w.uc(), p.a, p.b, p.c);
                    failures += std::ranges::equal(z.points(), b);  // the raw formula must not reproduce B off the double root
                }
            }
        }
        const std::uint64_t n = bs.size();
        return {std::to_string(5 * n) + " pairs: " + std::to_string(n) + " round trips, " + std::to_string(4 * n) + " rejected, 0 failures",
                std::to_string(pairs) + " pairs: " + std::to_string(valid) + " round trips, " + std::to_string(rejected) + " rejected, " +
                    std::to_string(failures) + " failures"};
    });
    log.run("zero-set-random" + sfx, "random trace polynomials never have more than 6 zeros on U", [&]() -> CheckLog::Outcome {
        std::mt19937_64 rng(opt.seed);
        std::uint64_t over = 0;
        std::array<std::uint64_t, 8> hist{};
        for (std::size_t i = 0; i < opt.random_draws; ++i) {
            const auto p = random_trace_params(w.uc().field(), rng);
            try {
                ++hist[zero_set_classify(w.uc(), p.a, p.b, p.c).size()];
            } catch (const ZeroSetError&) {
                ++over;
            }
        }
        return {std::to_string(opt.random_draws) + " draws, 0 with more than 6 zeros",
                std::to_string(opt.random_draws) + " draws, " + std::to_string(over) + " with more than 6 zeros"};
    });

    log.run("group-order" + sfx, "closure of the stabilizer generators has order q^3 - q and acts 3-transitively", [&]() -> CheckLog::Outcome {
        const auto& g = w.group();
        return {std::to_string(pgl2_order(q)) + " elements, triple orbit " + std::to_string(static_cast<std::uint64_t>(v) * q * (q - 1)),
                std::to_string(g.order()) + " elements, triple orbit " + std::to_string(ordered_triple_orbit_size(g))};
    });
    log.run("involution-fixed-points" + sfx, "order-2 elements fix exactly one point (sampled)", [&]() -> CheckLog::Outcome {
        const auto& g = w.group();
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> d(0, g.order() - 1);
        std::uint64_t seen = 0, bad = 0;
        for (std::size_t s = 0; s < 20000 && seen < 1000; ++s) {
            const std::size_t e = d(rng);
            if (permutation_order(g.perm(e)) != 2) continue;
            ++seen;
            bad += order2_fixed_points(g, e) != 1;
        }
        const auto c = character_check(g, 2000, opt.seed);
        return {"0 involutions with a fixed-point count other than 1; 0 character violations",
                std::to_string(bad) + " involutions with a fixed-point count other than 1; " + std::to_string(c.violations) + " character violations" +
                    (seen == 0 ? " (no involution sampled)" : "")};
    });
    log.run("short-orbits" + sfx, "5-subset orbits: (q-2)/6 short orbits of stabilizer 4, (q-2)(q-8)/120 regular", [&]() -> CheckLog::Outcome {
        const auto& g = w.group();
        const OrbitReport r = orbit_partition(g, 5);
        std::uint64_t shorts = 0, stab4 = 0, regular = 0, reps = 0;
        for (std::size_t o = 0; o < r.orbits.size(); ++o) {
            const auto& orb = r.orbits[o];
            if (orb.stabilizer_order == 1) {
                ++regular;
                continue;
            }
            ++shorts;
            stab4 += orb.stabilizer_order == 4;
            reps += has_inverse_pair_rep(r, o, v);
        }
        const int es = (q - 2) / 6, er = (q - 2) * (q - 8) / 120;
        return {std::to_string(es) + " short (" + std::to_string(es) + " with stabilizer 4, " + std::to_string(es) + " with an inverse-pair member), " +
                    std::to_string(er) + " regular",
                std::to_string(shorts) + " short (" + std::to_string(stab4) + " with stabilizer 4, " + std::to_string(reps) + " with an inverse-pair member), " +
                    std::to_string(regular) + " regular"};
    });
    log.run("alltop-equality" + sfx, "union of the short 5-subset orbits equals the b-variant of sigma_{5,3}", [&]() -> CheckLog::Outcome {
        try {
            const BlockSet a = alltop_design(w.uc(), w.group(), w.scan());
            const auto inv = involution_indices(w.group());
            std::uint64_t unfixed = 0;
            for (std::size_t i = 0; i < a.size(); ++i) unfixed += !fixed_by_involution(w.group(), a[i], inv);
            return {"equal, every block fixed by an involution", "equal, " + (unfixed ? std::to_string(unfixed) + " blocks fixed by no involution"
                                                                                      : std::string("every block fixed by an involution"))};
        } catch (const SetMismatch& e) {
            return {"equal, every block fixed by an involution", comparison_label(e.cmp)};
        }
    });
    log.run("invariance-b53" + sfx, "b-variant of sigma_{5,3} is invariant under sampled group elements", [&]() -> CheckLog::Outcome {
        const auto r = invariance_check(w.group(), w.family("b:5,3"), opt.sample, opt.seed);
        const auto r2 = invariance_check(w.group(), w.family("plain:6,3"), opt.sample, opt.seed + 1);
        auto label = [](const InvarianceResult& x) {
            return x.invariant ? std::string("invariant") : "moved " + points_label(*x.block) + " to " + points_label(*x.image);
        };
        return {"b:5,3 invariant, plain:6,3 invariant", "b:5,3 " + label(r) + ", plain:6,3 " + label(r2)};
    });
}

/// q = 64: weight formula from scanned A_5, A_6, plus the design counts implied for B_5..B_7.
inline void formula_checks_q64(CheckLog& log, Workspace& w, const SuiteOptions& opt) {
    const int q = w.q(), v = w.v();
    const std::string sfx = "-q" + std::to_string(q);
    const auto& pub = published_code_weights().front();
    log.run("supports-count" + sfx, "B_5 and B_6 block counts match S(3,5,65) and 3-(65,6,(q-4)(q-16)/6)", [&]() -> CheckLog::Outcome {
        const auto& s5 = w.supports(5);
        const auto& s6 = w.supports(6);
        return {formula::block_count(v, 5, 3, 1).str() + ", " + formula::block_count(v, 6, 3, formula::even_b6(q)).str() + " supports, 0 flagged",
                std::to_string(s5.count) + ", " + std::to_string(s6.count) + " supports, " + std::to_string(s5.flagged + s6.flagged) + " flagged"};
    });
    log.run("weights-asmds" + sfx, "weight distribution from A_5, A_6 (each (q-1)|B_k| from the scans)", [&]() -> CheckLog::Outcome {
        const std::vector<BigInt> known = {w.supports(5).codewords, w.supports(6).codewords};
        const WeightTable t = weight_dist_asmds(v, q - 5, 5, q - 5, q, known);
        const BigInt a5 = BigInt(q - 1) * w.supports(5).count, a6 = BigInt(q - 1) * w.supports(6).count;
        const int last = pub.first_weight + static_cast<int>(pub.coefficients.size()) - 1;
        return {published_label(pub) + "; (q-1)|B_5| = " + std::string(pub.coefficients[0]) + ", (q-1)|B_6| = " + pub.coefficients[1],
                weights_label(t, pub.first_weight, last) + "; (q-1)|B_5| = " + a5.str() + ", (q-1)|B_6| = " + a6.str()};
    });
    log.run("table-code-b7-even" + sfx, "A_7/(q-1) is the block count of 3-(65,7,C(q-2,4) - 7(q-4)(q-5)(q-10)/24)", [&]() -> CheckLog::Outcome {
        const std::vector<BigInt> known = {w.supports(5).codewords, w.supports(6).codewords};
        const WeightTable t = weight_dist_asmds(v, q - 5, 5, q - 5, q, known);
        const BigInt lam = formula::even_b7(q);
        const BigInt count = formula::block_count(v, 7, 3, lam);
        if (t[7] % (q - 1) != 0) throw std::domain_error("A_7 not divisible by q-1");
        return {"lambda " + lam.str() + ", " + count.str() + " blocks", "lambda " + lam.str() + ", " + BigInt(t[7] / (q - 1)).str() + " blocks"};
    });
    if (opt.heavy) {
        log.run("supports-k7" + sfx, "streaming scan of all 7-subsets for weight-7 supports", [&]() -> CheckLog::Outcome {
            ScanOptions so = w.scan();
            so.materialize = false;
            const auto s = supports_of_weight(w.uc(), 7, so);
            return {formula::block_count(v, 7, 3, formula::even_b7(q)).str() + " supports, A7=" + pub.coefficients[2] + ", 0 flagged",
                    std::to_string(s.count) + " supports, A7=" + s.codewords.str() + ", " + std::to_string(s.flagged) + " flagged"};
        });
        log.run("u73-count" + sfx, "u-variant of sigma_{7,3} block count at q = 64", [&]() -> CheckLog::Outcome {
            ScanOptions so = w.scan();
            so.materialize = false;
            const auto s = scan_u_variant(w.uc(), 7, 3, so, UVariantPath::Characterization);
            return {formula::block_count(v, 7, 3, formula::even_u73(q)).str() + " blocks", std::to_string(s.count) + " blocks"};
        });
    }
}

}  // namespace details

/// Every check for every q in opt.qs, in a fixed order.
inline std::vector<CheckResult> run_suite(const SuiteOptions& opt, std::ostream* progress = nullptr) {
    CheckLog log(progress);
    for (int q : opt.qs) {
        const int m = details::log2_exact(q);
        if (q > 64) throw std::invalid_argument("suite: q = 128 is beyond the enumeration budget");
        Workspace w(m, opt.jobs);
        if (q == 64)
            details::formula_checks_q64(log, w, opt);
        else if (w.even())
            details::even_checks(log, w, opt);
        else
            details::odd_checks(log, w, opt);
    }
    return log.results();
}

}  // namespace espd
