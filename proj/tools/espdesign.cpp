// espdesign: block sets, design verification, code and group reports, and the check suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "espdesign/bch_codes.hpp"
#include "espdesign/block_io.hpp"
#include "espdesign/designs.hpp"
#include "espdesign/esp_blocks.hpp"
#include "espdesign/group_action.hpp"
#include "espdesign/report.hpp"

namespace {

using namespace espd;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int m_of(int q) {
    for (int m = 4; m <= 7; ++m)
        if (q == (1 << m)) return m;
    throw UsageError("--q must be 16, 32, 64 or 128");
}

void emit(const Json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + out + "' failed");
}

// ---------------------------------------------------------------------------------------------

struct BlocksArgs {
    int q = 16;
    std::string family;
    int k = 0;
    std::string out;
    unsigned jobs = 0;
};

int cmd_blocks(const BlocksArgs& a) {
    const UnitCircle uc = UnitCircle::build(m_of(a.q));
    FamilySpec spec;
    try {
        spec = FamilySpec::parse(a.family, a.k);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    ScanResult r;
    try {
        r = scan_family(uc, spec, {a.jobs, true});
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (a.out.empty() || a.out == "-")
        write_blockset(std::cout, r.blocks);
    else
        write_blockset_file(a.out, r.blocks);
    std::cerr << spec.tag() << " at q=" << a.q << ": " << r.blocks.size() << " blocks\n";
    if (!a.out.empty() && a.out != "-") std::cout << r.blocks.size() << '\n';
    return kExitOk;
}

struct VerifyArgs {
    std::string blocks;
    int t = 3;
    std::string out;
    unsigned jobs = 0;
};

int cmd_verify(const VerifyArgs& a) {
    BlockSet bs;
    try {
        bs = read_blockset_file(a.blocks);
    } catch (const ParseError& e) {
        std::cerr << a.blocks << ": " << e.what() << '\n';
        return kExitUsage;
    }
    if (a.t < 1 || a.t > bs.k()) throw UsageError("--t must lie in 1..k");
    const DesignVerdict r = verify_t_design(bs, a.t, a.jobs);
    Json j;
    j["file"] = a.blocks;
    j["family"] = bs.family();
    j["verdict"] = verdict_to_json(r);
    if (r.lambda) {
        Json ls = Json::array();
        for (int s = 1; s < a.t; ++s) {
            const Rational l = lambda_s(r.v, r.k, r.t, BigInt(*r.lambda), s);
            ls.push_back({{"s", s}, {"lambda", numerator(l).str() + (denominator(l) == 1 ? "" : "/" + denominator(l).str())}});
        }
        j["lambda_s"] = std::move(ls);
    }
    if (!a.out.empty()) emit(j, a.out);
    std::cout << verdict_label(r) << " (" << r.num_blocks << " blocks)\n";
    return r.is_design() ? kExitOk : kExitCheckFailed;
}

struct CodeArgs {
    int q = 16;
    bool heavy = false;
    std::string out;
    unsigned jobs = 0;
};

int cmd_code(const CodeArgs& a) {
    const UnitCircle uc = UnitCircle::build(m_of(a.q));
    const int q = a.q, n = uc.size();
    const bool even = uc.field().m() % 2 == 0;
    const CodeSpec code = build_code(uc);
    const int d = even ? 5 : 6;
    bool ok = true;
    Json j;
    j["code"] = code_to_json(uc.field(), code, d);

    Json sup = Json::array();
    std::map<int, SupportScan> scans;
    for (int k = 1; k <= 7; ++k) {
        if (q == 64 && k == 7 && !a.heavy) break;
        if (q == 128 && k > 5 && !a.heavy) break;
        const auto s = supports_of_weight(uc, k, {a.jobs, false});
        if (k < d && s.count != 0) ok = false;
        if (k < d) continue;
        sup.push_back({{"k", k}, {"supports", s.count}, {"codewords", s.codewords.str()}, {"kernel_dim_2", s.kernel_dim_hist[2]}, {"flagged", s.flagged}});
        ok = ok && s.flagged == 0;
        scans.emplace(k, s);
        std::cout << "k=" << k << ": " << s.count << " supports, A_" << k << " = " << s.codewords << '\n';
    }
    j["supports"] = std::move(sup);

    WeightTable table;
    if (even) {
        if (!scans.count(6)) throw UsageError("weight table needs the k=6 scan (use --heavy for q=128)");
        const std::vector<BigInt> known = {scans.at(5).codewords, scans.at(6).codewords};
        table = weight_dist_asmds(n, code.dimension, 5, q - 5, q, known);
    } else {
        table = weight_dist_nmds(n, code.dimension, q, scans.at(6).codewords);
    }
    j["weights_formula"] = weights_to_json(table);
    if (scans.count(7)) {
        const bool agree = table[7] == scans.at(7).codewords;
        j["a7_scan_matches_formula"] = agree;
        ok = ok && agree;
    }

    if (q == 16) {
        const auto e = enumerate_trace_code(uc, code_basis(code), {a.jobs, false});
        const WeightTable dual = macwilliams(e.weights, n, 6, q);
        j["trace_weights_enumerated"] = weights_to_json(e.weights);
        j["weights_macwilliams"] = weights_to_json(dual);
        j["trace_orthogonality_failures"] = e.orthogonality_failures;
        ok = ok && dual == table && e.orthogonality_failures == 0 && e.non_subfield == 0;
        std::cout << "enumeration path " << (dual == table ? "agrees" : "DISAGREES") << " with the formula table\n";
    } else {
        // trace code [q+1, 6, q-5], dual distance 6, from A_{q-5} = (q-1)|B_sigma63|
        if (!even) {
            const auto b63 = scan_plain(uc, 6, 3, {a.jobs, false});
            const std::vector<BigInt> known = {BigInt(q - 1) * b63.count};
            j["trace_weights_formula"] = weights_to_json(weight_dist_asmds(n, 6, q - 5, 6, q, known));
        }
    }
    emit(j, a.out);
    std::cout << "C = [" << n << "," << code.dimension << "," << d << "] over GF(" << q << ")" << (ok ? "" : "  (consistency check FAILED)") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

struct GroupArgs {
    int q = 16;
    bool heavy = false;
    std::size_t sample = 100;
    std::string out;
    unsigned jobs = 0;
};

int cmd_group(const GroupArgs& a) {
    const UnitCircle uc = UnitCircle::build(m_of(a.q));
    const int q = a.q;
    const bool odd = uc.field().m() % 2 == 1;
    const GroupClosure g = close_group(uc);
    bool ok = g.order() == pgl2_order(q);
    Json j;
    j["q"] = q;
    j["group_order"] = g.order();
    j["triple_orbit"] = ordered_triple_orbit_size(g);
    const auto ch = character_check(g, q <= 16 || a.heavy ? 0 : 2000, 1);
    j["character_violations"] = ch.violations;
    ok = ok && ch.violations == 0;
    std::cout << "closure order " << g.order() << '\n';

    if (q <= 32 || a.heavy) {
        const OrbitReport r = orbit_partition(g, 5);
        j["orbits_5"] = orbit_report_to_json(r);
        std::cout << r.orbits.size() << " orbits on 5-subsets, " << r.short_orbits().size() << " short\n";
        if (odd) {
            try {
                const BlockSet alt = alltop_design(uc, g, {a.jobs, true});
                j["alltop_equal"] = true;
                std::cout << "short orbits = b:5,3 (" << alt.size() << " blocks)\n";
            } catch (const SetMismatch& e) {
                j["alltop_equal"] = false;
                j["alltop_difference"] = comparison_label(e.cmp);
                ok = false;
            }
        }
    }
    Json inv = Json::object();
    auto run_inv = [&](const std::string& tag) {
        const BlockSet bs = scan_family(uc, FamilySpec::parse(tag), {a.jobs, true}).blocks;
        const auto r = invariance_check(g, bs, a.sample, 1);
        inv[tag] = {{"invariant", r.invariant}, {"elements_checked", r.elements_checked}};
        ok = ok && r.invariant;
        std::cout << tag << ": " << (r.invariant ? "invariant" : "NOT invariant") << " under " << r.elements_checked << " elements\n";
    };
    if (odd) run_inv("b:5,3");
    run_inv("plain:6,3");
    j["invariance"] = std::move(inv);
    emit(j, a.out);
    return ok ? kExitOk : kExitCheckFailed;
}

struct SuiteArgs {
    std::vector<int> qs{16, 32, 64};
    bool heavy = false;
    bool timings = false;
    std::size_t sample = 100;
    std::string out;
    unsigned jobs = 0;
};

int cmd_suite(const SuiteArgs& a) {
    SuiteOptions opt;
    opt.qs = a.qs;
    opt.heavy = a.heavy;
    opt.sample = a.sample;
    opt.jobs = a.jobs;
    for (int q : opt.qs)
        if (q != 16 && q != 32 && q != 64) throw UsageError("--q for the suite must be drawn from 16, 32, 64");
    const auto results = run_suite(opt, &std::cout);
    std::size_t failed = 0;
    double total = 0;
    for (const auto& r : results) {
        failed += !r.pass;
        total += r.runtime_ms;
    }
    std::cout << results.size() - failed << "/" << results.size() << " checks passed in " << static_cast<long long>(total) << " ms\n";
    if (!a.out.empty()) emit(results_to_json(results, a.timings), a.out);
    return failed ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Designs from elementary symmetric polynomials over the unit circle of GF(q^2)"};
    app.require_subcommand(1);

    BlocksArgs ba;
    auto* blocks = app.add_subcommand("blocks", "compute a block family and write it as JSON");
    blocks->add_option("--q", ba.q, "q = 2^m, m in 4..7")->required();
    blocks->add_option("--family", ba.family, "plain:k,l | u:k,l | b:k,l | bbar:k,l | zero63 | zero73 | general:[k:]<expr>")->required();
    blocks->add_option("--k", ba.k, "block size for general:<expr>");
    blocks->add_option("--out", ba.out, "output file (default stdout)");
    blocks->add_option("--jobs", ba.jobs, "worker threads (0 = all cores)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check whether a block-set file is a t-design");
    verify->add_option("blocks,--blocks", va.blocks, "block-set JSON file")->required();
    verify->add_option("--t", va.t, "strength")->required();
    verify->add_option("--out", va.out, "write the verdict as JSON");
    verify->add_option("--jobs", va.jobs, "worker threads");

    CodeArgs ca;
    auto* code = app.add_subcommand("code", "BCH code parameters, supports and weight distribution");
    code->add_option("--q", ca.q)->required();
    code->add_flag("--heavy", ca.heavy, "include the k=7 scan at q=64");
    code->add_option("--out", ca.out, "report file (default stdout)");
    code->add_option("--jobs", ca.jobs);

    GroupArgs ga;
    auto* group = app.add_subcommand("group", "stabilizer closure, 5-subset orbits, invariance");
    group->add_option("--q", ga.q)->required();
    group->add_flag("--heavy", ga.heavy, "exhaustive character check and q=64 orbits");
    group->add_option("--sample", ga.sample, "random elements for invariance (0 = all)");
    group->add_option("--out", ga.out, "report file (default stdout)");
    group->add_option("--jobs", ga.jobs);

    SuiteArgs sa;
    auto* suite = app.add_subcommand("suite", "run every named check and report pass/fail");
    suite->alias("paper-suite");
    suite->add_option("--q", sa.qs, "field sizes to check")->delimiter(',');
    suite->add_flag("--heavy", sa.heavy, "add the q=64 k=7 scans");
    suite->add_flag("--timings", sa.timings, "include runtime_ms in the JSON report");
    suite->add_option("--sample", sa.sample, "random elements for invariance");
    suite->add_option("--out", sa.out, "JSON report file");
    suite->add_option("--jobs", sa.jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*blocks) return cmd_blocks(ba);
        if (*verify) return cmd_verify(va);
        if (*code) return cmd_code(ca);
        if (*group) return cmd_group(ga);
        if (*suite) return cmd_suite(sa);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}
