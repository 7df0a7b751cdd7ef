/* records.hpp -- canonical JSON / CSV / text renderings of every report */
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pairpow/bennett.hpp"
#include "pairpow/cfrac.hpp"
#include "pairpow/scans.hpp"
#include "pairpow/version.hpp"

namespace pairpow {

/* JSON objects are backed by an ordered map, so dump() is byte-stable for
   equal content: payload files written by different job counts (or runs)
   can be compared bytewise.  Wall-clock time therefore never goes into a
   payload; it lives only in the run record envelope. */

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ", ") {
    std::ostringstream o;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) o << sep;
        o << v[i];
    }
    return o.str();
}

}  // namespace detail

/* ------------------------------------------------------------------ */
/* JSON payloads                                                       */

inline json payload_json(const ScanReport& r) {
    TableComparison cmp = compare_with_known_table(r);
    json c;
    c["domain_b_max"] = cmp.domain_b_max;
    c["domain_q"] = cmp.domain_q;
    c["missing"] = cmp.missing;
    c["unexpected"] = cmp.unexpected;
    c["match"] = cmp.match;

    json j;
    j["kind"] = "scan";
    j["b_max"] = r.b_max;
    j["q_set"] = r.q_set;
    j["instances_checked"] = r.instances_checked;
    j["pairs"] = r.pairs;
    j["table_comparison"] = c;
    return j;
}

inline json payload_json(const WieferichReport& r) {
    json j;
    j["kind"] = "wieferich";
    j["p_max"] = r.p_max;
    j["primes_checked"] = r.primes_checked;
    j["findings"] = r.findings;
    return j;
}

inline json payload_json(const FermatQuotientReport& r) {
    json j;
    j["kind"] = "fermatq";
    j["b_max"] = r.b_max;
    j["p_max"] = r.p_max;
    j["findings_min"] = r.findings_min;
    j["max_nu"] = r.max_nu;
    j["witnesses"] = r.witnesses;
    j["deep_pairs"] = r.deep_pairs;
    j["findings"] = r.findings;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json payload_json(const BennettCertificate& c) {
    json j;
    j["kind"] = "bennett";
    j["x"] = c.x;
    j["q"] = c.q;
    j["a"] = c.a.get_str();
    j["condition_ok"] = c.condition_ok;
    j["mu"] = {c.mu_lo, c.mu_hi};
    j["lambda"] = {c.lambda_lo, c.lambda_hi};
    j["b_lower"] = c.b_lower.get_str();
    j["b_upper"] = {c.b_upper_lo, c.b_upper_hi};
    j["verdict"] =
        c.verdict == BennettCertificate::Verdict::NoSolution ? "no-solution" : "inconclusive";
    j["certified_precision"] = c.certified_prec;
    j["derivation"] = c.derivation;
    return j;
}

inline json payload_json(const QuinticSpecialReport& r) {
    json ex = json::array();
    for (const auto& [y, v] : r.excluded) {
        json e;
        e["y"] = y;
        e["value"] = v.get_str();
        ex.push_back(e);
    }
    json j;
    j["kind"] = "quintic-special";
    j["y_max"] = r.y_max;
    j["claimed_cap_respected"] = r.claimed_cap_respected;
    j["bound"] = {r.bound_lo, r.bound_hi};
    j["excluded"] = ex;
    j["no_solution"] = r.no_solution;
    return j;
}

inline json payload_json(const CFExpansion& e, const std::vector<Convergent>& cs) {
    json qs = json::array();
    for (const auto& a : e.quotients) qs.push_back(a.get_str());
    json cj = json::array();
    for (const auto& c : cs) {
        json one;
        one["index"] = c.index;
        one["h"] = c.h.get_str();
        one["k"] = c.k.get_str();
        cj.push_back(one);
    }
    json j;
    j["kind"] = "cfrac";
    j["n"] = e.n.get_str();
    j["degree"] = e.degree;
    j["terminated"] = e.terminated;
    j["quotients"] = qs;
    j["convergents"] = cj;
    return j;
}

inline json payload_json(const CubicCaseReport& r) {
    json sols = json::array();
    for (const auto& s : r.solutions) {
        json one;
        one["y"] = s.y.get_str();
        one["z"] = s.z.get_str();
        sols.push_back(one);
    }
    json j;
    j["kind"] = "cubic";
    j["x"] = r.x;
    j["radicand"] = r.radicand.get_str();
    j["y_limit"] = r.y_limit.get_str();
    j["five_x6"] = r.five_x6.get_str();
    j["reached_threshold"] = r.reached_threshold;
    j["convergents_checked"] = r.convergents_checked;
    j["smallest_denominator"] = r.smallest_denominator_checked.get_str();
    j["largest_denominator"] = r.largest_denominator_checked.get_str();
    j["partial"] = r.partial;
    j["solutions"] = sols;
    return j;
}

inline json payload_json(const ResolutionReport& r) {
    json j;
    j["kind"] = "resolution";
    j["b"] = r.b;
    j["threshold"] = r.threshold;
    j["steps"] = r.steps;
    j["square_findings"] = r.square_findings;
    j["clean"] = r.clean;
    j["verdict"] = r.verdict;
    return j;
}

inline json brute_payload_json(uint64_t b, const std::vector<uint32_t>& q_set,
                               uint32_t k_max, const std::vector<EquationSolution>& sols) {
    json j;
    j["kind"] = "brute";
    j["b"] = b;
    j["q_set"] = q_set;
    j["k_max"] = k_max;
    j["solutions"] = sols;
    return j;
}

inline json threshold_payload_json(uint64_t b, uint32_t threshold, unsigned window_checked,
                                   bool window_ok) {
    json j;
    j["kind"] = "threshold";
    j["b"] = b;
    j["threshold"] = threshold;
    j["window_checked"] = window_checked;
    j["window_ok"] = window_ok;
    return j;
}

/* ------------------------------------------------------------------ */
/* CSV                                                                 */

inline std::string to_csv(const ScanReport& r) {
    std::ostringstream o;
    o << "q,b,blocking_prime,constraint\n";
    for (const auto& p : r.pairs)
        o << p.q << ',' << p.b << ',' << p.blocking_prime << ','
          << detail::csv_quote(p.constraint) << '\n';
    return o.str();
}

inline std::string to_csv(const WieferichReport& r) {
    std::ostringstream o;
    o << "p,nu\n";
    for (const auto& f : r.findings) o << f.p << ',' << f.nu << '\n';
    return o.str();
}

/* Rows are the explicit findings when the scan collected them, otherwise
   the witnesses of the maximum. */
inline std::string to_csv(const FermatQuotientReport& r) {
    std::ostringstream o;
    o << "b,p,nu\n";
    const auto& rows = r.findings_min >= 2 ? r.findings : r.witnesses;
    for (const auto& w : rows) o << w.b << ',' << w.p << ',' << w.nu << '\n';
    return o.str();
}

inline std::string to_csv(const BennettCertificate& c) {
    std::ostringstream o;
    o << "x,q,condition_ok,lambda_lo,lambda_hi,b_lower,b_upper_lo,b_upper_hi,verdict\n";
    o << c.x << ',' << c.q << ',' << (c.condition_ok ? 1 : 0) << ','
      << detail::csv_quote(c.lambda_lo) << ',' << detail::csv_quote(c.lambda_hi) << ','
      << c.b_lower.get_str() << ',' << detail::csv_quote(c.b_upper_lo) << ','
      << detail::csv_quote(c.b_upper_hi) << ','
      << (c.verdict == BennettCertificate::Verdict::NoSolution ? "no-solution"
                                                               : "inconclusive")
      << '\n';
    return o.str();
}

inline std::string to_csv(const QuinticSpecialReport& r) {
    std::ostringstream o;
    o << "y,value\n";
    for (const auto& [y, v] : r.excluded) o << y << ',' << v.get_str() << '\n';
    return o.str();
}

inline std::string to_csv(const CFExpansion&, const std::vector<Convergent>& cs) {
    std::ostringstream o;
    o << "index,h,k\n";
    for (const auto& c : cs)
        o << c.index << ',' << c.h.get_str() << ',' << c.k.get_str() << '\n';
    return o.str();
}

inline std::string to_csv(const CubicCaseReport& r) {
    std::ostringstream o;
    o << "y,z\n";
    for (const auto& s : r.solutions) o << s.y.get_str() << ',' << s.z.get_str() << '\n';
    return o.str();
}

inline std::string to_csv(const ResolutionReport& r) {
    std::ostringstream o;
    o << "step,ok,detail\n";
    for (const auto& s : r.steps)
        o << detail::csv_quote(s.name) << ',' << (s.ok ? 1 : 0) << ','
          << detail::csv_quote(s.detail) << '\n';
    return o.str();
}

inline std::string to_csv(const std::vector<EquationSolution>& sols) {
    std::ostringstream o;
    o << "k,q,y\n";
    for (const auto& s : sols) o << s.k << ',' << s.q << ',' << s.y.get_str() << '\n';
    return o.str();
}

/* ------------------------------------------------------------------ */
/* Text                                                                */

inline std::string to_text(const ScanReport& r) {
    TableComparison cmp = compare_with_known_table(r);
    std::ostringstream o;
    o << "exceptional scan: odd b < " << r.b_max << ", q in {" << detail::join(r.q_set)
      << "}\n";
    o << "  chain-region cells decided: " << r.instances_checked << '\n';
    o << "  exceptional pairs: " << r.pairs.size() << '\n';
    for (const auto& p : r.pairs)
        o << "    q=" << p.q << " b=" << p.b << "  blocked at " << p.blocking_prime
          << "  (" << p.constraint << ")\n";
    o << "  table comparison (b < " << cmp.domain_b_max << ", q in {"
      << detail::join(cmp.domain_q) << "}): " << (cmp.match ? "match" : "MISMATCH") << '\n';
    for (const auto& p : cmp.missing)
        o << "    missing: q=" << p.q << " b=" << p.b << '\n';
    for (const auto& p : cmp.unexpected)
        o << "    unexpected: q=" << p.q << " b=" << p.b << '\n';
    return o.str();
}

inline std::string to_text(const WieferichReport& r) {
    std::ostringstream o;
    o << "wieferich scan: odd p < " << r.p_max << " (" << r.primes_checked
      << " primes)\n";
    if (r.findings.empty()) {
        o << "  no prime with nu_p(2^(p-1) - 1) >= 2\n";
    } else {
        for (const auto& f : r.findings)
            o << "  p=" << f.p << "  nu=" << f.nu << '\n';
    }
    return o.str();
}

inline std::string to_text(const FermatQuotientReport& r) {
    std::ostringstream o;
    o << "fermat-quotient scan: odd b < " << r.b_max << ", odd p < " << r.p_max << '\n';
    o << "  max nu_p(b^(p-1) - 1): " << r.max_nu << '\n';
    for (const auto& w : r.witnesses)
        o << "    attained at b=" << w.b << " p=" << w.p << '\n';
    o << "  pairs with nu >= 2: " << r.deep_pairs << '\n';
    if (r.findings_min >= 2)
        o << "  listed pairs with nu >= " << r.findings_min << ": " << r.findings.size()
          << '\n';
    if (!r.note.empty()) o << "  note: " << r.note << '\n';
    return o.str();
}

inline std::string to_text(const BennettCertificate& c) {
    std::ostringstream o;
    o << "gap bounds for (X^q - 1)(Y^q - 1) = Z^q at X=" << c.x << ", q=" << c.q
      << " (A = " << c.a.get_str() << ")\n";
    o << "  approximation condition: " << (c.condition_ok ? "holds" : "fails") << '\n';
    o << "  lambda in [" << c.lambda_lo << ", " << c.lambda_hi << "]\n";
    o << "  B lower bound (exact):   " << c.b_lower.get_str() << '\n';
    o << "  B upper bound in [" << c.b_upper_lo << ", " << c.b_upper_hi << "]\n";
    o << "  verdict: "
      << (c.verdict == BennettCertificate::Verdict::NoSolution
              ? "no solution (upper < lower certified)"
              : "inconclusive")
      << "  [precision " << c.certified_prec << "]\n";
    for (const auto& d : c.derivation) o << "  . " << d << '\n';
    return o.str();
}

inline std::string to_text(const QuinticSpecialReport& r) {
    std::ostringstream o;
    o << "quintic special case 31 (Y^5 - 1) = Z^5\n";
    o << "  Y^2.17 < 20 * 31^(1/5) in [" << r.bound_lo << ", " << r.bound_hi << "]\n";
    o << "  largest surviving Y: " << r.y_max << "  (documented cap 6: "
      << (r.claimed_cap_respected ? "respected" : "VIOLATED") << ")\n";
    for (const auto& [y, v] : r.excluded)
        o << "  Y=" << y << ": 31 (Y^5 - 1) = " << v.get_str() << " is not a 5th power\n";
    o << "  verdict: " << (r.no_solution ? "no solution" : "OPEN") << '\n';
    return o.str();
}

inline std::string to_text(const CFExpansion& e, const std::vector<Convergent>& cs) {
    std::ostringstream o;
    o << "continued fraction of " << e.n.get_str() << "^(1/" << e.degree << ")";
    if (e.terminated) o << "  (perfect power)";
    o << '\n' << "  quotients: [";
    for (std::size_t i = 0; i < e.quotients.size(); ++i)
        o << (i ? ", " : "") << e.quotients[i].get_str();
    o << "]\n";
    for (const auto& c : cs)
        o << "  p" << c.index << " = " << c.h.get_str() << " / " << c.k.get_str() << '\n';
    return o.str();
}

inline std::string to_text(const CubicCaseReport& r) {
    std::ostringstream o;
    o << "cubic case at X=" << r.x << ": solutions need Z/Y among convergents of ("
      << r.radicand.get_str() << ")^(1/3)\n";
    o << "  denominators searched: k in [" << r.smallest_denominator_checked.get_str()
      << ", " << r.largest_denominator_checked.get_str() << "]  ("
      << r.convergents_checked << " convergents)\n";
    o << "  exhaustion threshold 5 X^6 = " << r.five_x6.get_str() << ": "
      << (r.reached_threshold ? "reached" : "NOT reached") << '\n';
    if (r.solutions.empty()) {
        o << "  no solutions" << (r.partial ? " (partial: raise --y-limit)" : "") << '\n';
    } else {
        for (const auto& s : r.solutions)
            o << "  SOLUTION: Y=" << s.y.get_str() << " Z=" << s.z.get_str() << '\n';
    }
    return o.str();
}

inline std::string to_text(const ResolutionReport& r) {
    std::ostringstream o;
    o << "resolution replay for b = " << r.b << "  (threshold prime " << r.threshold
      << ")\n";
    for (const auto& s : r.steps)
        o << "  [" << (s.ok ? "ok" : "FAIL") << "] " << s.name << ": " << s.detail << '\n';
    o << "  verdict: " << r.verdict << '\n';
    return o.str();
}

inline std::string brute_text(uint64_t b, const std::vector<uint32_t>& q_set,
                              uint32_t k_max, const std::vector<EquationSolution>& sols) {
    std::ostringstream o;
    o << "direct search: (2^k - 1)(" << b << "^k - 1) = y^q, k in [2, " << k_max
      << "], q in {" << detail::join(q_set) << "}\n";
    if (sols.empty()) {
        o << "  no perfect powers\n";
    } else {
        for (const auto& s : sols)
            o << "  k=" << s.k << " q=" << s.q << "  y=" << s.y.get_str() << '\n';
    }
    return o.str();
}

/* ------------------------------------------------------------------ */
/* Run records                                                         */

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimViolation = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitPrecisionExhausted = 3;

struct RunRecord {
    std::string command;
    json params = json::object();
    std::string status;  // "ok" | "claim-violation" | "invalid-input" | "precision-exhausted"
    json payload = json::object();
    long long elapsed_ms = 0;
};

inline int exit_code_for(const std::string& status) {
    if (status == "ok") return kExitOk;
    if (status == "claim-violation") return kExitClaimViolation;
    if (status == "invalid-input") return kExitInvalidInput;
    if (status == "precision-exhausted") return kExitPrecisionExhausted;
    return kExitInvalidInput;
}

/* The one-line envelope printed on stdout: everything a caller needs to log
   the run, with the timing outside the payload. */
inline json run_record_json(const RunRecord& r) {
    json j;
    j["command"] = r.command;
    j["params"] = r.params;
    j["version"] = kVersion;
    j["status"] = r.status;
    j["payload"] = r.payload;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

}  // namespace pairpow
