/* pairpow.cpp -- command line driver for the verification toolkit.

   Every subcommand prints a one-line JSON run record on stdout (in the
   default --format json), writes the canonical payload to --out when asked,
   and maps its claim check onto the exit code:

     0  ok                      computation finished, claims hold
     1  claim-violation         a frozen claim failed (details in payload)
     2  invalid-input           bad arguments or unsupported domain
     3  precision-exhausted     interval refinement hit the precision cap   */

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pairpow/records.hpp"

using namespace pairpow;

namespace {

struct CommonOpts {
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--out", c.out, "write the payload (in --format) to this file");
}

struct Rendered {
    json payload = json::object();
    std::string csv;
    std::string text;
    std::string status = "ok";
};

Integer parse_integer(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("expected a nonnegative integer, got '" + s + "'");
    return Integer(s);
}

int emit(const std::string& command, const json& params, const CommonOpts& c,
         const Rendered& r, std::chrono::steady_clock::time_point t0) {
    if (!c.out.empty()) {
        std::ofstream f(c.out, std::ios::trunc);
        if (!f) {
            std::cerr << "pairpow: cannot write " << c.out << '\n';
            return kExitInvalidInput;
        }
        if (c.format == "json") f << r.payload.dump(2) << '\n';
        else if (c.format == "csv") f << r.csv;
        else f << r.text;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (c.format == "json") {
        RunRecord rec;
        rec.command = command;
        rec.params = params;
        rec.status = r.status;
        rec.payload = r.payload;
        rec.elapsed_ms = ms;
        std::cout << run_record_json(rec).dump() << '\n';
    } else if (c.format == "csv") {
        if (c.out.empty()) std::cout << r.csv;
    } else {
        if (c.out.empty()) std::cout << r.text;
        std::cout << "status: " << r.status << " (" << ms << " ms)\n";
    }
    return exit_code_for(r.status);
}

template <class F>
int run_guarded(const std::string& command, const json& params, const CommonOpts& c,
                F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        return emit(command, params, c, body(), t0);
    } catch (const PrecisionExhausted& e) {
        Rendered r;
        r.status = "precision-exhausted";
        r.payload = json{{"kind", "error"}, {"error", e.what()}};
        r.text = std::string(e.what()) + "\n";
        return emit(command, params, c, r, t0);
    } catch (const ValuationCapExceeded& e) {
        Rendered r;
        r.status = "claim-violation";
        r.payload = json{{"kind", "error"}, {"error", e.what()}};
        r.text = std::string(e.what()) + "\n";
        return emit(command, params, c, r, t0);
    } catch (const ClaimViolation& e) {
        Rendered r;
        r.status = "claim-violation";
        r.payload = json{{"kind", "error"}, {"error", e.what()}};
        r.text = std::string(e.what()) + "\n";
        return emit(command, params, c, r, t0);
    } catch (const std::exception& e) {
        Rendered r;
        r.status = "invalid-input";
        r.payload = json{{"kind", "error"}, {"error", e.what()}};
        r.text = std::string(e.what()) + "\n";
        return emit(command, params, c, r, t0);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for (2^k - 1)(b^k - 1) = y^q"};
    app.require_subcommand(1);

    // ---- scan ----
    auto* scan = app.add_subcommand(
        "scan", "decide every chain-region pair (b, q) and compare with the frozen table");
    uint64_t scan_b_max = 0;
    std::vector<uint32_t> scan_q = default_scan_primes();
    unsigned scan_jobs = 1;
    std::string scan_ck;
    bool scan_progress = false;
    CommonOpts scan_c;
    scan->add_option("--b-max", scan_b_max, "scan odd b < this bound")->required();
    scan->add_option("--q", scan_q, "primes q to scan")->delimiter(',')->capture_default_str();
    scan->add_option("--jobs", scan_jobs, "worker threads")->capture_default_str();
    scan->add_option("--checkpoint", scan_ck, "resumable checkpoint file");
    scan->add_flag("--progress", scan_progress, "report progress on stderr");
    add_common(scan, scan_c);

    // ---- wieferich ----
    auto* wief = app.add_subcommand(
        "wieferich", "find odd primes p with nu_p(2^(p-1) - 1) >= 2");
    uint32_t wief_p_max = 0;
    unsigned wief_jobs = 1;
    CommonOpts wief_c;
    wief->add_option("--p-max", wief_p_max, "check odd primes p < this bound")->required();
    wief->add_option("--jobs", wief_jobs, "worker threads")->capture_default_str();
    add_common(wief, wief_c);

    // ---- fermatq ----
    auto* fq = app.add_subcommand(
        "fermatq", "extremes of nu_p(b^(p-1) - 1) by residue-class enumeration");
    uint64_t fq_b_max = 0;
    uint32_t fq_p_max = 0;
    unsigned fq_jobs = 1;
    unsigned fq_min = 0;
    std::string fq_ck;
    bool fq_progress = false;
    CommonOpts fq_c;
    fq->add_option("--b-max", fq_b_max, "odd b < this bound")->required();
    fq->add_option("--p-max", fq_p_max, "odd primes p < this bound")->required();
    fq->add_option("--jobs", fq_jobs, "worker threads")->capture_default_str();
    fq->add_option("--emit-min-nu", fq_min,
                   "also list every pair with nu >= this (0 = off, else >= 2)")
        ->capture_default_str();
    fq->add_option("--checkpoint", fq_ck, "resumable checkpoint file");
    fq->add_flag("--progress", fq_progress, "report progress on stderr");
    add_common(fq, fq_c);

    // ---- bennett ----
    auto* ben = app.add_subcommand(
        "bennett", "gap-bound contradiction for (X^q - 1)(Y^q - 1) = Z^q");
    uint64_t ben_x = 0;
    uint32_t ben_q = 0;
    long ben_prec_cap = 4096;
    CommonOpts ben_c;
    ben->add_option("--x", ben_x, "X >= 2")->required();
    ben->add_option("--q", ben_q, "prime exponent q >= 5")->required();
    ben->add_option("--precision-cap", ben_prec_cap, "interval precision ceiling (bits)")
        ->capture_default_str();
    add_common(ben, ben_c);

    // ---- cfrac ----
    auto* cf = app.add_subcommand("cfrac", "continued fraction of n^(1/degree), exactly");
    std::string cf_n;
    uint32_t cf_degree = 3;
    std::size_t cf_terms = 20;
    CommonOpts cf_c;
    cf->add_option("--n", cf_n, "radicand")->required();
    cf->add_option("--degree", cf_degree, "root degree")->capture_default_str();
    cf->add_option("--terms", cf_terms, "partial quotients to compute")->capture_default_str();
    add_common(cf, cf_c);

    // ---- cubic ----
    auto* cub = app.add_subcommand(
        "cubic", "convergent search for (X^3 - 1)(Y^3 - 1) = Z^3 at fixed X");
    uint32_t cub_x = 0;
    std::string cub_y_limit = "0";
    CommonOpts cub_c;
    cub->add_option("--x", cub_x, "X >= 2")->required();
    cub->add_option("--y-limit", cub_y_limit,
                    "search denominators up to this bound (0 = the 5 X^6 threshold)")
        ->capture_default_str();
    add_common(cub, cub_c);

    // ---- verify-b ----
    auto* vb = app.add_subcommand(
        "verify-b", "replay the complete resolution for one of the eight small bases");
    uint64_t vb_b = 0;
    CommonOpts vb_c;
    vb->add_option("--b", vb_b, "base (5, 7, 11, 13, 21, 23, 27, 29)")->required();
    add_common(vb, vb_c);

    // ---- brute ----
    auto* br = app.add_subcommand(
        "brute", "test (2^k - 1)(b^k - 1) = y^q directly over a k range");
    uint64_t br_b = 0;
    std::vector<uint32_t> br_q = {2, 3, 5, 7};
    uint32_t br_k_max = 60;
    CommonOpts br_c;
    br->add_option("--b", br_b, "odd base >= 3")->required();
    br->add_option("--q", br_q, "exponents to test")->delimiter(',')->capture_default_str();
    br->add_option("--k-max", br_k_max, "largest k")->capture_default_str();
    add_common(br, br_c);

    // ---- threshold ----
    auto* th = app.add_subcommand(
        "threshold", "smallest prime q with q^2 > 8b, plus a chain check above it");
    uint64_t th_b = 0;
    unsigned th_window = 25;
    CommonOpts th_c;
    th->add_option("--b", th_b, "odd base >= 3")->required();
    th->add_option("--window", th_window, "primes above the threshold to verify")
        ->capture_default_str();
    add_common(th, th_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidInput;
    }

    if (*scan) {
        json params{{"b_max", scan_b_max}, {"q_set", scan_q}, {"jobs", scan_jobs},
                    {"checkpoint", scan_ck}};
        return run_guarded("scan", params, scan_c, [&] {
            ScanReport rep =
                exceptional_scan(scan_b_max, scan_q, scan_jobs, scan_ck, scan_progress);
            Rendered r;
            r.payload = payload_json(rep);
            r.csv = to_csv(rep);
            r.text = to_text(rep);
            if (!compare_with_known_table(rep).match) r.status = "claim-violation";
            return r;
        });
    }

    if (*wief) {
        json params{{"p_max", wief_p_max}, {"jobs", wief_jobs}};
        return run_guarded("wieferich", params, wief_c, [&] {
            WieferichReport rep = wieferich_scan(wief_p_max, wief_jobs);
            Rendered r;
            r.payload = payload_json(rep);
            r.csv = to_csv(rep);
            r.text = to_text(rep);
            // The claim covers p < 2828 and allows only the classical 1093.
            for (const auto& f : rep.findings)
                if (f.p < 2828 && f.p != 1093) r.status = "claim-violation";
            return r;
        });
    }

    if (*fq) {
        json params{{"b_max", fq_b_max}, {"p_max", fq_p_max}, {"jobs", fq_jobs},
                    {"findings_min", fq_min}, {"checkpoint", fq_ck}};
        return run_guarded("fermatq", params, fq_c, [&] {
            FermatQuotientReport rep = fermat_quotient_scan(fq_b_max, fq_p_max, fq_jobs,
                                                            fq_min, fq_ck, fq_progress);
            Rendered r;
            r.payload = payload_json(rep);
            r.csv = to_csv(rep);
            r.text = to_text(rep);
            // Frozen record: max nu = 11 over odd b < 10^6, odd p < 2828.
            if (rep.max_nu > 11)
                for (const auto& w : rep.witnesses)
                    if (w.b < 1000000 && w.p < 2828) r.status = "claim-violation";
            return r;
        });
    }

    if (*ben) {
        json params{{"x", ben_x}, {"q", ben_q}, {"precision_cap", ben_prec_cap}};
        return run_guarded("bennett", params, ben_c, [&] {
            PrecisionPolicy pol;
            pol.cap = ben_prec_cap;
            Rendered r;
            if (ben_x == 2 && ben_q == 5) {
                QuinticSpecialReport rep = special_case_2_5(pol);
                r.payload = payload_json(rep);
                r.csv = to_csv(rep);
                r.text = to_text(rep);
                if (!rep.claimed_cap_respected || !rep.no_solution)
                    r.status = "claim-violation";
            } else {
                BennettCertificate cert = contradiction_check(ben_x, ben_q, pol);
                r.payload = payload_json(cert);
                r.csv = to_csv(cert);
                r.text = to_text(cert);
                if (cert.verdict != BennettCertificate::Verdict::NoSolution)
                    r.status = "claim-violation";
            }
            return r;
        });
    }

    if (*cf) {
        json params{{"n", cf_n}, {"degree", cf_degree}, {"terms", cf_terms}};
        return run_guarded("cfrac", params, cf_c, [&] {
            CFExpansion e = cf_expand(parse_integer(cf_n), cf_degree, cf_terms);
            auto cs = convergents(e);
            Rendered r;
            r.payload = payload_json(e, cs);
            r.csv = to_csv(e, cs);
            r.text = to_text(e, cs);
            return r;
        });
    }

    if (*cub) {
        json params{{"x", cub_x}, {"y_limit", cub_y_limit}};
        return run_guarded("cubic", params, cub_c, [&] {
            Integer limit = parse_integer(cub_y_limit);
            if (limit == 0) {
                limit = Integer(cub_x);
                mpz_pow_ui(limit.get_mpz_t(), limit.get_mpz_t(), 6);
                limit *= 5;  // the exhaustion threshold
            }
            CubicCaseReport rep = cubic_case_check(cub_x, limit);
            Rendered r;
            r.payload = payload_json(rep);
            r.csv = to_csv(rep);
            r.text = to_text(rep);
            if (!rep.solutions.empty()) r.status = "claim-violation";
            return r;
        });
    }

    if (*vb) {
        json params{{"b", vb_b}};
        return run_guarded("verify-b", params, vb_c, [&] {
            ResolutionReport rep = verify_b(vb_b);
            Rendered r;
            r.payload = payload_json(rep);
            r.csv = to_csv(rep);
            r.text = to_text(rep);
            if (!rep.clean) r.status = "claim-violation";
            return r;
        });
    }

    if (*br) {
        json params{{"b", br_b}, {"q_set", br_q}, {"k_max", br_k_max}};
        return run_guarded("brute", params, br_c, [&] {
            auto sols = brute_force_equation(br_b, br_q, br_k_max);
            Rendered r;
            r.payload = brute_payload_json(br_b, br_q, br_k_max, sols);
            r.csv = to_csv(sols);
            r.text = brute_text(br_b, br_q, br_k_max, sols);
            // Solutions violate a claim only where one exists: the eight bases.
            const auto& bases = resolution_bases();
            if (!sols.empty() &&
                std::find(bases.begin(), bases.end(), br_b) != bases.end())
                r.status = "claim-violation";
            return r;
        });
    }

    if (*th) {
        json params{{"b", th_b}, {"window", th_window}};
        return run_guarded("threshold", params, th_c, [&] {
            const uint32_t t = threshold_prime(th_b);
            bool ok = true;
            uint64_t q = t;
            for (unsigned i = 0; i < th_window; ++i) {
                q = next_prime_above(q);
                ChainDecision dec =
                    prime_chain_decide(EquationInstance(th_b, static_cast<uint32_t>(q)));
                ok = ok && dec.verdict == ChainDecision::Verdict::QDividesK;
            }
            Rendered r;
            r.payload = threshold_payload_json(th_b, t, th_window, ok);
            std::ostringstream text;
            text << "threshold prime for b = " << th_b << ": " << t << "  (q^2 > "
                 << 8 * th_b << ")\n  " << th_window
                 << " primes above it checked: " << (ok ? "all force q | k" : "FAILURE")
                 << '\n';
            r.text = text.str();
            r.csv = "b,threshold,window_checked,window_ok\n" + std::to_string(th_b) + "," +
                    std::to_string(t) + "," + std::to_string(th_window) + "," +
                    (ok ? "1" : "0") + "\n";
            if (!ok) r.status = "claim-violation";
            return r;
        });
    }

    return kExitInvalidInput;  // unreachable: a subcommand is required
}
