/* scans.hpp -- range scans, record tables, and per-base resolution replays */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pairpow/arith.hpp"
#include "pairpow/feasibility.hpp"
#include "pairpow/parallel.hpp"

namespace pairpow {

using nlohmann::json;

/* ------------------------------------------------------------------ */
/* Checkpoint files                                                    */

namespace detail {

inline std::optional<json> load_checkpoint(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return std::nullopt;
    return j;
}

/* Write to a sibling temp file and rename, so an interrupted run never
   leaves a truncated checkpoint behind. */
inline void store_checkpoint(const std::string& path, const json& j) {
    if (path.empty()) return;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/* ------------------------------------------------------------------ */
/* Exceptional-pair scan                                               */

struct ExceptionalPair {
    uint32_t q = 0;
    uint64_t b = 0;
    uint32_t blocking_prime = 0;  // first prime whose exponent requirement fails
    std::string constraint;       // the unmet requirement, in words
};

inline void to_json(json& j, const ExceptionalPair& p) {
    j = json{{"q", p.q},
             {"b", p.b},
             {"blocking_prime", p.blocking_prime},
             {"constraint", p.constraint}};
}

inline void from_json(const json& j, ExceptionalPair& p) {
    j.at("q").get_to(p.q);
    j.at("b").get_to(p.b);
    j.at("blocking_prime").get_to(p.blocking_prime);
    j.at("constraint").get_to(p.constraint);
}

/* The twenty cells (q, b) with odd b < 10^6 and prime q < 20, q > log2(b+1),
   where the prime chain fails to force q | k, each with the first prime whose
   exponent congruences cannot be met.  Frozen from a full run of
   exceptional_scan; the regression suite reproduces the table from scratch. */
inline const std::vector<ExceptionalPair>& known_exceptional_pairs() {
    static const std::vector<ExceptionalPair> table = {
        {5, 15, 5, ""},      {5, 17, 5, ""},
        {11, 1023, 5, ""},   {11, 1025, 5, ""},
        {13, 4095, 5, ""},   {13, 4097, 5, ""},
        {17, 16383, 17, ""}, {17, 16385, 17, ""},
        {17, 32767, 17, ""}, {17, 32769, 17, ""},
        {17, 49151, 17, ""}, {17, 49153, 17, ""},
        {17, 65535, 5, ""},  {17, 65537, 5, ""},
        {17, 81919, 17, ""}, {17, 81921, 17, ""},
        {17, 98303, 17, ""}, {17, 98305, 17, ""},
        {17, 114687, 17, ""},{17, 114689, 17, ""},
    };
    return table;
}

inline std::vector<uint32_t> default_scan_primes() { return {3, 5, 7, 11, 13, 17, 19}; }

struct ScanReport {
    uint64_t b_max = 0;
    std::vector<uint32_t> q_set;
    uint64_t instances_checked = 0;       // (b, q) cells inside the chain region
    std::vector<ExceptionalPair> pairs;   // sorted by (q, b)
    bool resumed = false;                 // a checkpoint supplied a prefix
};

/* Decide every in-region pair (b, q) with odd b in [3, b_max) and q in q_set,
   and collect the exceptional ones.  Work is split into fixed blocks of b
   values whose boundaries do not depend on the job count, results are folded
   in block order, and the final table is sorted by (q, b) - so the report is
   identical for any `jobs`.  A checkpoint path makes the scan resumable at
   block granularity; stale or mismatched checkpoints are ignored. */
inline ScanReport exceptional_scan(uint64_t b_max,
                                   std::vector<uint32_t> q_set = default_scan_primes(),
                                   unsigned jobs = 1,
                                   const std::string& checkpoint_path = {},
                                   bool progress = false) {
    std::sort(q_set.begin(), q_set.end());
    q_set.erase(std::unique(q_set.begin(), q_set.end()), q_set.end());
    if (q_set.empty())
        throw std::invalid_argument("exceptional_scan: q_set must not be empty");
    for (uint32_t q : q_set)
        if (q < 3 || !is_prime_u64(q))
            throw std::invalid_argument("exceptional_scan: q_set entries must be odd primes");
    if (jobs == 0) jobs = 1;

    constexpr uint64_t kSpan = 8192;  // covers 4096 odd b per block
    const uint64_t nblocks = b_max > 3 ? (b_max - 3 + kSpan - 1) / kSpan : 0;

    ScanReport rep;
    rep.b_max = b_max;
    rep.q_set = q_set;

    uint64_t done = 0;
    if (auto ck = detail::load_checkpoint(checkpoint_path)) {
        const json& j = *ck;
        if (j.value("kind", std::string{}) == "scan" &&
            j.value("b_max", uint64_t{0}) == b_max &&
            j.value("block_span", uint64_t{0}) == kSpan &&
            j.value("q_set", std::vector<uint32_t>{}) == q_set &&
            j.value("blocks_done", uint64_t{0}) <= nblocks) {
            done = j.value("blocks_done", uint64_t{0});
            rep.instances_checked = j.value("instances_checked", uint64_t{0});
            rep.pairs = j.value("pairs", std::vector<ExceptionalPair>{});
            rep.resumed = done > 0;
        }
    }

    struct BlockResult {
        std::vector<ExceptionalPair> pairs;
        uint64_t instances = 0;
    };

    const uint64_t batch = std::max<uint64_t>(uint64_t{4} * jobs, 8);
    while (done < nblocks) {
        const uint64_t count = std::min(batch, nblocks - done);
        auto results = parallel_map<BlockResult>(
            static_cast<std::size_t>(count), jobs, [&, done](std::size_t i) {
                BlockResult res;
                const uint64_t lo = 3 + (done + i) * kSpan;
                const uint64_t hi = std::min(lo + kSpan, b_max);
                for (uint64_t b = lo; b < hi; b += 2) {
                    for (uint32_t q : q_set) {
                        if (!in_chain_region(b, q)) continue;
                        ++res.instances;
                        ChainDecision dec = prime_chain_decide(EquationInstance(b, q));
                        if (dec.verdict == ChainDecision::Verdict::Exceptional)
                            res.pairs.push_back({q, b, dec.blocking_prime.value_or(q),
                                                 dec.blocking_constraint});
                    }
                }
                return res;
            });
        for (auto& r : results) {
            rep.instances_checked += r.instances;
            rep.pairs.insert(rep.pairs.end(), r.pairs.begin(), r.pairs.end());
        }
        done += count;
        if (!checkpoint_path.empty()) {
            json j{{"kind", "scan"},
                   {"b_max", b_max},
                   {"block_span", kSpan},
                   {"q_set", q_set},
                   {"blocks_done", done},
                   {"instances_checked", rep.instances_checked},
                   {"pairs", rep.pairs}};
            detail::store_checkpoint(checkpoint_path, j);
        }
        if (progress)
            std::fprintf(stderr, "scan: %llu/%llu blocks\n",
                         static_cast<unsigned long long>(done),
                         static_cast<unsigned long long>(nblocks));
    }

    std::sort(rep.pairs.begin(), rep.pairs.end(),
              [](const ExceptionalPair& x, const ExceptionalPair& y) {
                  return std::make_pair(x.q, x.b) < std::make_pair(y.q, y.b);
              });
    return rep;
}

/* The frozen table's domain: odd b < 10^6 and primes q < 20.  A scan is
   compared with the table only where the two domains overlap; findings
   outside (larger b or q) are reported but carry no table claim. */
struct TableComparison {
    uint64_t domain_b_max = 0;
    std::vector<uint32_t> domain_q;
    std::vector<ExceptionalPair> missing;     // in the table, not found by the scan
    std::vector<ExceptionalPair> unexpected;  // found by the scan, not in the table
    bool match = false;
};

inline TableComparison compare_with_known_table(const ScanReport& rep) {
    TableComparison cmp;
    cmp.domain_b_max = std::min<uint64_t>(rep.b_max, 1000000);
    for (uint32_t q : rep.q_set)
        if (q < 20) cmp.domain_q.push_back(q);

    auto in_domain = [&](uint32_t q, uint64_t b) {
        return b < cmp.domain_b_max &&
               std::find(cmp.domain_q.begin(), cmp.domain_q.end(), q) != cmp.domain_q.end();
    };
    std::set<std::pair<uint32_t, uint64_t>> found, known;
    for (const auto& p : rep.pairs)
        if (in_domain(p.q, p.b)) found.insert({p.q, p.b});
    for (const auto& p : known_exceptional_pairs())
        if (in_domain(p.q, p.b)) known.insert({p.q, p.b});

    for (const auto& p : known_exceptional_pairs())
        if (in_domain(p.q, p.b) && !found.count({p.q, p.b})) cmp.missing.push_back(p);
    for (const auto& p : rep.pairs)
        if (in_domain(p.q, p.b) && !known.count({p.q, p.b})) cmp.unexpected.push_back(p);
    cmp.match = cmp.missing.empty() && cmp.unexpected.empty();
    return cmp;
}

/* ------------------------------------------------------------------ */
/* Wieferich scan                                                      */

struct WieferichFinding {
    uint32_t p = 0;
    unsigned nu = 0;  // nu_p(2^(p-1) - 1), >= 2 for a finding
};

inline void to_json(json& j, const WieferichFinding& w) {
    j = json{{"p", w.p}, {"nu", w.nu}};
}

inline void from_json(const json& j, WieferichFinding& w) {
    j.at("p").get_to(w.p);
    j.at("nu").get_to(w.nu);
}

struct WieferichReport {
    uint32_t p_max = 0;
    uint64_t primes_checked = 0;
    std::vector<WieferichFinding> findings;  // ascending p
};

/* All odd primes p < p_max with nu_p(2^(p-1) - 1) >= 2.  These are exactly
   the primes where the two-side valuation in the chain exceeds 1, so they
   are the only way a chain step can demand less of nu_p(k) than expected. */
inline WieferichReport wieferich_scan(uint32_t p_max, unsigned jobs = 1) {
    WieferichReport rep;
    rep.p_max = p_max;
    std::vector<uint32_t> ps;
    for (uint32_t p : primes_below(p_max))
        if (p > 2) ps.push_back(p);
    rep.primes_checked = ps.size();
    auto nus = parallel_map<unsigned>(ps.size(), jobs, [&](std::size_t i) {
        return vp_pow_minus_one(2, ps[i] - 1, ps[i]);
    });
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (nus[i] >= 2) rep.findings.push_back({ps[i], nus[i]});
    return rep;
}

/* Same quantity as vp_pow_minus_one(2, p-1, p), computed on a different
   schedule: raise the modulus one power of p at a time instead of doubling
   the exponent of the working modulus.  Exists so the suite can check that
   the reported valuation does not depend on the evaluation schedule. */
inline unsigned wieferich_nu_stepwise(uint32_t p, unsigned cap = 64) {
    require_prime(p, "wieferich_nu_stepwise");
    if (p == 2) throw std::invalid_argument("wieferich_nu_stepwise: p must be odd");
    Integer mod = Integer(p) * p;  // Fermat guarantees nu >= 1; start at p^2
    for (unsigned J = 2; J <= cap; ++J) {
        Integer r = modpow(2, p - 1, mod);
        if (r != 1) return vp(r - 1, p);
        mod *= p;
    }
    throw ValuationCapExceeded("wieferich_nu_stepwise: valuation exceeds cap");
}

/* ------------------------------------------------------------------ */
/* Fermat-quotient scan                                                */

struct FqWitness {
    uint64_t b = 0;
    uint32_t p = 0;
    unsigned nu = 0;  // nu_p(b^(p-1) - 1)
};

inline void to_json(json& j, const FqWitness& w) {
    j = json{{"b", w.b}, {"p", w.p}, {"nu", w.nu}};
}

inline void from_json(const json& j, FqWitness& w) {
    j.at("b").get_to(w.b);
    j.at("p").get_to(w.p);
    j.at("nu").get_to(w.nu);
}

struct FermatQuotientReport {
    uint64_t b_max = 0;
    uint32_t p_max = 0;
    unsigned findings_min = 0;            // list every pair with nu >= this (0 = off)
    unsigned max_nu = 0;                  // largest nu_p(b^(p-1)-1) seen
    std::vector<FqWitness> witnesses;     // pairs attaining max_nu, sorted (b, p)
    uint64_t deep_pairs = 0;              // pairs with nu >= 2
    std::vector<FqWitness> findings;      // populated when findings_min >= 2
    std::string note;
    bool resumed = false;
};

/* How large can nu_p(b^(p-1) - 1) get for odd b < b_max and odd p < p_max?
   Instead of testing every pair, enumerate for each p exactly the b with
   nu >= 2: the solutions of x^(p-1) == 1 (mod p^2) are the p-th powers
   a^p mod p^2 for a in [1, p-1], and the qualifying b form arithmetic
   progressions of step 2p^2 through those residues.  Each candidate gets an
   exact valuation from the working-modulus ladder.  Pairs outside the
   enumeration all have nu = 1 (Fermat gives nu >= 1 when p does not
   divide b).  Block structure and merging are job-count independent. */
inline FermatQuotientReport fermat_quotient_scan(uint64_t b_max,
                                                 uint32_t p_max,
                                                 unsigned jobs = 1,
                                                 unsigned findings_min = 0,
                                                 const std::string& checkpoint_path = {},
                                                 bool progress = false) {
    if (b_max < 4)
        throw std::invalid_argument("fermat_quotient_scan: b_max must be >= 4");
    if (p_max < 4)
        throw std::invalid_argument("fermat_quotient_scan: p_max must be >= 4");
    if (findings_min == 1)
        throw std::invalid_argument(
            "fermat_quotient_scan: findings_min = 1 would list every pair; use 0 or >= 2");
    if (jobs == 0) jobs = 1;

    std::vector<uint32_t> ps;
    for (uint32_t p : primes_below(p_max))
        if (p > 2) ps.push_back(p);

    FermatQuotientReport rep;
    rep.b_max = b_max;
    rep.p_max = p_max;
    rep.findings_min = findings_min;

    std::size_t done = 0;
    if (auto ck = detail::load_checkpoint(checkpoint_path)) {
        const json& j = *ck;
        if (j.value("kind", std::string{}) == "fermatq" &&
            j.value("b_max", uint64_t{0}) == b_max &&
            j.value("p_max", uint32_t{0}) == p_max &&
            j.value("findings_min", unsigned{0}) == findings_min &&
            j.value("primes_done", std::size_t{0}) <= ps.size()) {
            done = j.value("primes_done", std::size_t{0});
            rep.max_nu = j.value("max_nu", unsigned{0});
            rep.witnesses = j.value("witnesses", std::vector<FqWitness>{});
            rep.deep_pairs = j.value("deep_pairs", uint64_t{0});
            rep.findings = j.value("findings", std::vector<FqWitness>{});
            rep.resumed = done > 0;
        }
    }

    struct PrimePartial {
        unsigned max_nu = 0;
        std::vector<FqWitness> witnesses;
        uint64_t deep = 0;
        std::vector<FqWitness> findings;
    };

    const std::size_t batch = std::max<std::size_t>(std::size_t{4} * jobs, 8);
    while (done < ps.size()) {
        const std::size_t count = std::min(batch, ps.size() - done);
        auto results = parallel_map<PrimePartial>(count, jobs, [&, done](std::size_t i) {
            PrimePartial res;
            const uint32_t p = ps[done + i];
            const uint64_t p2 = uint64_t{p} * p;
            const uint64_t step = 2 * p2;
            for (uint32_t a = 1; a < p; ++a) {
                const uint64_t r = powmod_u64(a, p, p2);
                uint64_t b = (r % 2 == 0) ? r + p2 : r;  // first odd representative
                while (b < 3) b += step;
                for (; b < b_max; b += step) {
                    const unsigned nu = vp_pow_minus_one(b, p - 1, p);
                    ++res.deep;
                    if (nu > res.max_nu) {
                        res.max_nu = nu;
                        res.witnesses.clear();
                    }
                    if (nu == res.max_nu) res.witnesses.push_back({b, p, nu});
                    if (findings_min >= 2 && nu >= findings_min)
                        res.findings.push_back({b, p, nu});
                }
            }
            return res;
        });
        for (auto& r : results) {
            rep.deep_pairs += r.deep;
            if (r.max_nu > rep.max_nu) {
                rep.max_nu = r.max_nu;
                rep.witnesses.clear();
            }
            if (r.max_nu == rep.max_nu && r.max_nu > 0)
                rep.witnesses.insert(rep.witnesses.end(), r.witnesses.begin(),
                                     r.witnesses.end());
            rep.findings.insert(rep.findings.end(), r.findings.begin(), r.findings.end());
        }
        done += count;
        if (!checkpoint_path.empty()) {
            json j{{"kind", "fermatq"},
                   {"b_max", b_max},
                   {"p_max", p_max},
                   {"findings_min", findings_min},
                   {"primes_done", done},
                   {"max_nu", rep.max_nu},
                   {"witnesses", rep.witnesses},
                   {"deep_pairs", rep.deep_pairs},
                   {"findings", rep.findings}};
            detail::store_checkpoint(checkpoint_path, j);
        }
        if (progress)
            std::fprintf(stderr, "fermatq: %llu/%llu primes\n",
                         static_cast<unsigned long long>(done),
                         static_cast<unsigned long long>(ps.size()));
    }

    auto by_b_p = [](const FqWitness& x, const FqWitness& y) {
        return std::make_pair(x.b, x.p) < std::make_pair(y.b, y.p);
    };
    std::sort(rep.witnesses.begin(), rep.witnesses.end(), by_b_p);
    std::sort(rep.findings.begin(), rep.findings.end(), by_b_p);

    if (rep.deep_pairs == 0) {
        // No pair reaches p^2; the generic value nu = 1 is the maximum
        // whenever any admissible pair exists at all.
        for (uint32_t p : ps) {
            for (uint64_t b = 3; b < b_max && rep.max_nu == 0; b += 2)
                if (b % p != 0) rep.max_nu = 1;
            if (rep.max_nu) break;
        }
        rep.note = rep.max_nu
                       ? "no pair reaches nu >= 2; nu = 1 is generic and unlisted"
                       : "no admissible pair in range";
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/* Direct search                                                       */

struct EquationSolution {
    uint32_t k = 0;
    uint32_t q = 0;
    Integer y;
};

inline void to_json(json& j, const EquationSolution& s) {
    j = json{{"k", s.k}, {"q", s.q}, {"y", s.y.get_str()}};
}

inline void from_json(const json& j, EquationSolution& s) {
    j.at("k").get_to(s.k);
    j.at("q").get_to(s.q);
    s.y = Integer(j.at("y").get<std::string>());
}

/* Test (2^k - 1)(b^k - 1) = y^q directly for k in [2, k_max] and each q in
   q_set (any exponents >= 2, prime or not).  Results ordered by (k, q). */
inline std::vector<EquationSolution> brute_force_equation(uint64_t b,
                                                          std::vector<uint32_t> q_set,
                                                          uint32_t k_max) {
    if (b < 3 || b % 2 == 0)
        throw std::invalid_argument("brute_force_equation: b must be odd and >= 3");
    std::sort(q_set.begin(), q_set.end());
    q_set.erase(std::unique(q_set.begin(), q_set.end()), q_set.end());
    if (q_set.empty())
        throw std::invalid_argument("brute_force_equation: q_set must not be empty");
    for (uint32_t q : q_set)
        if (q < 2) throw std::invalid_argument("brute_force_equation: exponents must be >= 2");

    std::vector<EquationSolution> out;
    Integer bk = Integer(b) * b;  // b^k, starting at k = 2
    for (uint32_t k = 2; k <= k_max; ++k) {
        const Integer lhs = ((Integer(1) << k) - 1) * (bk - 1);
        for (uint32_t q : q_set) {
            RootResult rr = integer_root(lhs, q);
            if (rr.exact) out.push_back({k, q, rr.root});
        }
        bk *= b;
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Per-base resolution replay                                          */

struct ResolutionStep {
    std::string name;    // stable identifier
    std::string detail;  // derivation record
    bool ok = true;
};

inline void to_json(json& j, const ResolutionStep& s) {
    j = json{{"name", s.name}, {"detail", s.detail}, {"ok", s.ok}};
}

inline void from_json(const json& j, ResolutionStep& s) {
    j.at("name").get_to(s.name);
    j.at("detail").get_to(s.detail);
    j.at("ok").get_to(s.ok);
}

struct ResolutionReport {
    uint64_t b = 0;
    uint32_t threshold = 0;                       // smallest prime q with q^2 > 8b
    std::vector<ResolutionStep> steps;
    std::vector<EquationSolution> square_findings;  // q = 2 direct-search hits
    bool clean = false;
    std::string verdict;                          // "resolved" or "discrepancy"
};

inline const std::vector<uint64_t>& resolution_bases() {
    static const std::vector<uint64_t> bases = {5, 7, 11, 13, 21, 23, 27, 29};
    return bases;
}

/* Replay the complete resolution for one of the eight small bases: reduce to
   prime exponents, force q | k for every prime in and above the chain window,
   push the leftover q = 3 through the 2-adic and 3-adic constraints, and
   check the square case directly.  Every claimed step is recomputed; a step
   that fails stays in the report with ok = false and flips the verdict. */
inline ResolutionReport verify_b(uint64_t b) {
    const auto& bases = resolution_bases();
    if (std::find(bases.begin(), bases.end(), b) == bases.end())
        throw std::invalid_argument(
            "verify_b: supported bases are 5, 7, 11, 13, 21, 23, 27, 29");

    ResolutionReport rep;
    rep.b = b;
    rep.threshold = threshold_prime(b);

    rep.steps.push_back(
        {"prime-exponent-reduction",
         "every exponent n >= 2 has a prime divisor q and y^n = (y^(n/q))^q, "
         "so prime exponents q suffice",
         true});

    {  // chain window: in-region odd primes up to the threshold
        std::ostringstream d;
        bool ok = true;
        bool first = true;
        for (uint32_t q : primes_below(rep.threshold + 1)) {
            if (q == 2 || !in_chain_region(b, q)) continue;
            ChainDecision dec = prime_chain_decide(EquationInstance(b, q));
            const bool forced = dec.verdict == ChainDecision::Verdict::QDividesK;
            ok = ok && forced;
            d << (first ? "" : "; ") << "q=" << q
              << (forced ? ": q | k forced, min nu_q(k) = " + std::to_string(dec.q_min_exponent)
                         : ": chain fails (exceptional)");
            first = false;
        }
        d << "; with k = q*k' the product is (X^q-1)(Y^q-1) = y^q for "
             "X = 2^k', Y = b^k', ruled out by the cubic convergent criterion "
             "(q = 3) or the gap bounds (q >= 5)";
        rep.steps.push_back({"chain-window", d.str(), ok});
    }

    {  // leftover small primes: odd q with 2^q <= b + 1 (only q = 3 can occur here)
        std::ostringstream d;
        bool ok = true;
        if (in_chain_region(b, 3)) {
            d << "no odd prime q with 2^q <= b + 1; nothing outside the window";
        } else {
            EquationInstance inst(b, 3);
            const unsigned v1 = inst.nu2_bm1();
            const bool odd_k_open = (v1 % 3 == 0 && v1 >= 3);
            FeasibilitySet f3 = nur_feasible(inst, 3);
            const bool three_forced = f3.minimum >= 1;
            ok = !odd_k_open && three_forced;
            const char* carrier = (b % 3 == 0) ? "3 | b"
                                 : (b % 3 == 1) ? "3 | b-1"
                                                : "3 | b+1";
            d << "q=3 sits outside the chain region; nu_2(y^3) = nu_2(b^k-1) "
                 "in 3Z>0 still applies: odd k needs nu_2(b-1) = " << v1
              << " in 3Z>0 (" << (odd_k_open ? "holds" : "fails") << "), so 2 | k; "
              << "then " << carrier << " and " << f3.note
              << ", so 3 | k; reduces to the cubic case as above";
        }
        rep.steps.push_back({"leftover-small-primes", d.str(), ok});
    }

    {  // window above the threshold: q | k must persist
        std::ostringstream d;
        bool ok = true;
        uint32_t q = rep.threshold;
        unsigned checked = 0;
        while (checked < 25) {
            q = static_cast<uint32_t>(next_prime_above(q));
            ChainDecision dec = prime_chain_decide(EquationInstance(b, q));
            ok = ok && dec.verdict == ChainDecision::Verdict::QDividesK;
            ++checked;
        }
        d << "threshold prime T = " << rep.threshold << " (T^2 > 8b = " << 8 * b
          << "); the " << checked << " primes after T up to " << q
          << (ok ? " all force q | k" : " do NOT all force q | k")
          << "; the magnitude argument extends this to every q > T";
        rep.steps.push_back({"above-threshold", d.str(), ok});
    }

    {  // square case
        std::ostringstream d;
        rep.square_findings = brute_force_equation(b, {2}, 60);
        const bool ok = rep.square_findings.empty();
        d << "n = 2 is covered by the published square-value classification "
             "(Luca-Walsh); direct check of k <= 60 ";
        if (ok) {
            d << "finds no squares";
        } else {
            d << "finds a square: ";
            bool first = true;
            for (const auto& s : rep.square_findings) {
                d << (first ? "" : ", ") << "(2^" << s.k << "-1)(" << b << "^" << s.k
                  << "-1) = " << Integer(s.y * s.y).get_str() << " = " << s.y.get_str()
                  << "^2";
                first = false;
            }
            d << "; the no-square claim fails for this base";
        }
        rep.steps.push_back({"square-case", d.str(), ok});
    }

    rep.clean = std::all_of(rep.steps.begin(), rep.steps.end(),
                            [](const ResolutionStep& s) { return s.ok; });
    rep.verdict = rep.clean ? "resolved" : "discrepancy";
    return rep;
}

}  // namespace pairpow
