/* test_scans.cpp -- scan orchestration: the frozen exceptional table, scan
   results checked for job-count independence and against direct per-cell
   recomputation, checkpoint resume semantics, the Fermat-quotient enumeration
   against a brute per-pair oracle, and the per-base resolution replays. */
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "pairpow/scans.hpp"

using namespace pairpow;

namespace {

std::string temp_path(const char* stem) {
    auto dir = std::filesystem::temp_directory_path();
    return (dir / stem).string();
}

struct FileGuard {
    std::string path;
    explicit FileGuard(std::string p) : path(std::move(p)) { std::remove(path.c_str()); }
    ~FileGuard() { std::remove(path.c_str()); }
};

std::set<std::pair<uint32_t, uint64_t>> cells(const std::vector<ExceptionalPair>& v) {
    std::set<std::pair<uint32_t, uint64_t>> s;
    for (const auto& p : v) s.insert({p.q, p.b});
    return s;
}

bool same_scan(const ScanReport& x, const ScanReport& y) {
    if (x.b_max != y.b_max || x.q_set != y.q_set ||
        x.instances_checked != y.instances_checked ||
        x.pairs.size() != y.pairs.size())
        return false;
    for (std::size_t i = 0; i < x.pairs.size(); ++i) {
        const auto& a = x.pairs[i];
        const auto& b = y.pairs[i];
        if (a.q != b.q || a.b != b.b || a.blocking_prime != b.blocking_prime ||
            a.constraint != b.constraint)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("parallel_map is a plain indexed map") {
    auto sq = [](std::size_t i) { return i * i; };
    auto one = parallel_map<std::size_t>(257, 1, sq);
    auto many = parallel_map<std::size_t>(257, 8, sq);
    REQUIRE(one.size() == 257);
    CHECK(one == many);
    CHECK(one[200] == 40000);
    CHECK(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("parallel_map propagates worker exceptions") {
    auto boom = [](std::size_t i) -> int {
        if (i == 57) throw std::runtime_error("item 57");
        return 0;
    };
    CHECK_THROWS_AS(parallel_map<int>(100, 4, boom), std::runtime_error);
    CHECK_THROWS_AS(parallel_map<int>(100, 1, boom), std::runtime_error);
}

TEST_CASE("known exceptional table shape") {
    const auto& t = known_exceptional_pairs();
    REQUIRE(t.size() == 20);
    for (std::size_t i = 1; i < t.size(); ++i)
        CHECK(std::make_pair(t[i - 1].q, t[i - 1].b) < std::make_pair(t[i].q, t[i].b));
    std::map<uint32_t, int> per_q;
    for (const auto& p : t) {
        ++per_q[p.q];
        CHECK(p.b % 2 == 1);
        CHECK(in_chain_region(p.b, p.q));
        CHECK((p.blocking_prime == 5 || p.blocking_prime == 17));
    }
    CHECK(per_q == std::map<uint32_t, int>{{5, 2}, {11, 2}, {13, 2}, {17, 14}});
}

TEST_CASE("every table entry really is exceptional, with the stated blocker") {
    for (const auto& p : known_exceptional_pairs()) {
        ChainDecision dec = prime_chain_decide(EquationInstance(p.b, p.q));
        CHECK(dec.verdict == ChainDecision::Verdict::Exceptional);
        REQUIRE(dec.blocking_prime.has_value());
        CHECK(*dec.blocking_prime == p.blocking_prime);
    }
}

TEST_CASE("scan of a small range matches direct per-cell decisions") {
    const uint64_t b_max = 2000;
    const std::vector<uint32_t> qs = {3, 5, 7, 11};
    ScanReport rep = exceptional_scan(b_max, qs);

    uint64_t instances = 0;
    std::vector<ExceptionalPair> expect;
    for (uint32_t q : qs)
        for (uint64_t b = 3; b < b_max; b += 2) {
            if (!in_chain_region(b, q)) continue;
            ++instances;
            ChainDecision dec = prime_chain_decide(EquationInstance(b, q));
            if (dec.verdict == ChainDecision::Verdict::Exceptional)
                expect.push_back({q, b, *dec.blocking_prime, dec.blocking_constraint});
        }
    CHECK(rep.instances_checked == instances);
    REQUIRE(rep.pairs.size() == expect.size());
    CHECK(cells(rep.pairs) ==
          std::set<std::pair<uint32_t, uint64_t>>{
              {5, 15}, {5, 17}, {11, 1023}, {11, 1025}});
    for (const auto& p : rep.pairs) {
        CHECK(p.blocking_prime == 5);
        CHECK(p.constraint.find("nu_2") != std::string::npos);
    }
}

TEST_CASE("scan report does not depend on the job count") {
    ScanReport one = exceptional_scan(20000, default_scan_primes(), 1);
    ScanReport four = exceptional_scan(20000, default_scan_primes(), 4);
    CHECK(same_scan(one, four));
    CHECK(cells(one.pairs) ==
          std::set<std::pair<uint32_t, uint64_t>>{{5, 15},
                                                  {5, 17},
                                                  {11, 1023},
                                                  {11, 1025},
                                                  {13, 4095},
                                                  {13, 4097},
                                                  {17, 16383},
                                                  {17, 16385}});
}

TEST_CASE("scan checkpoints: completion record and prefix resume") {
    const uint64_t b_max = 140000;  // 17 blocks of 8192
    FileGuard ck(temp_path("pairpow_scan_ck.json"));

    // static: sections re-enter the test case, and one reference run suffices
    static const ScanReport fresh = exceptional_scan(b_max, default_scan_primes(), 2);

    SECTION("a finished run leaves a checkpoint that resumes to the same report") {
        ScanReport first = exceptional_scan(b_max, default_scan_primes(), 2, ck.path);
        CHECK(same_scan(first, fresh));
        CHECK_FALSE(first.resumed);
        REQUIRE(std::filesystem::exists(ck.path));

        ScanReport again = exceptional_scan(b_max, default_scan_primes(), 2, ck.path);
        CHECK(again.resumed);
        CHECK(same_scan(again, fresh));
    }

    SECTION("an honest prefix checkpoint is continued, not restarted") {
        // Build the prefix state by scanning exactly the first 9 blocks...
        const uint64_t prefix_b_max = 3 + 9 * 8192;
        exceptional_scan(prefix_b_max, default_scan_primes(), 2, ck.path);
        // ...then retarget the checkpoint at the full range.  Block
        // boundaries depend only on the span, so the state is a valid prefix.
        std::ifstream in(ck.path);
        json j = json::parse(in);
        in.close();
        REQUIRE(j.at("blocks_done").get<uint64_t>() == 9);
        j["b_max"] = b_max;
        detail::store_checkpoint(ck.path, j);

        ScanReport resumed = exceptional_scan(b_max, default_scan_primes(), 2, ck.path);
        CHECK(resumed.resumed);
        CHECK(same_scan(resumed, fresh));
    }

    SECTION("a mismatched checkpoint is ignored") {
        exceptional_scan(b_max, default_scan_primes(), 2, ck.path);
        ScanReport other = exceptional_scan(b_max, {3, 5, 7}, 2, ck.path);
        CHECK_FALSE(other.resumed);
        ScanReport direct = exceptional_scan(b_max, {3, 5, 7}, 2);
        CHECK(same_scan(other, direct));
    }
}

TEST_CASE("table comparison restricts to the overlapping domain") {
    ScanReport rep = exceptional_scan(20000, default_scan_primes(), 2);
    TableComparison cmp = compare_with_known_table(rep);
    CHECK(cmp.match);
    CHECK(cmp.domain_b_max == 20000);
    CHECK(cmp.domain_q == default_scan_primes());
    CHECK(cmp.missing.empty());
    CHECK(cmp.unexpected.empty());

    SECTION("a dropped pair shows up as missing") {
        ScanReport tampered = rep;
        tampered.pairs.erase(tampered.pairs.begin());  // (5, 15)
        TableComparison c = compare_with_known_table(tampered);
        CHECK_FALSE(c.match);
        REQUIRE(c.missing.size() == 1);
        CHECK(c.missing[0].b == 15);
        CHECK(c.unexpected.empty());
    }

    SECTION("an extra pair shows up as unexpected") {
        ScanReport tampered = rep;
        tampered.pairs.push_back({7, 63, 5, "made up"});
        TableComparison c = compare_with_known_table(tampered);
        CHECK_FALSE(c.match);
        REQUIRE(c.unexpected.size() == 1);
        CHECK(c.unexpected[0].b == 63);
        CHECK(c.missing.empty());
    }

    SECTION("pairs outside the table's q-domain are not compared") {
        ScanReport wide = rep;
        wide.q_set.push_back(23);
        wide.pairs.push_back({23, 999, 5, "outside the table"});
        TableComparison c = compare_with_known_table(wide);
        CHECK(c.match);
        CHECK(c.domain_q == default_scan_primes());
    }
}

TEST_CASE("scan input validation") {
    CHECK_THROWS_AS(exceptional_scan(100, {}), std::invalid_argument);
    CHECK_THROWS_AS(exceptional_scan(100, {4}), std::invalid_argument);
    CHECK_THROWS_AS(exceptional_scan(100, {2}), std::invalid_argument);
    ScanReport empty = exceptional_scan(3, {5});
    CHECK(empty.instances_checked == 0);
    CHECK(empty.pairs.empty());
}

TEST_CASE("wieferich scan frozen windows") {
    WieferichReport below_1000 = wieferich_scan(1000);
    CHECK(below_1000.primes_checked == 167);
    CHECK(below_1000.findings.empty());

    WieferichReport below_2828 = wieferich_scan(2828, 3);
    REQUIRE(below_2828.findings.size() == 1);
    CHECK(below_2828.findings[0].p == 1093);
    CHECK(below_2828.findings[0].nu == 2);

    WieferichReport below_4000 = wieferich_scan(4000, 2);
    REQUIRE(below_4000.findings.size() == 2);
    CHECK(below_4000.findings[0].p == 1093);
    CHECK(below_4000.findings[1].p == 3511);
    CHECK(below_4000.findings[1].nu == 2);
}

TEST_CASE("wieferich valuation is schedule independent") {
    for (uint32_t p : primes_below(300))
        if (p > 2) CHECK(wieferich_nu_stepwise(p) == vp_pow_minus_one(2, p - 1, p));
    CHECK(wieferich_nu_stepwise(1093) == 2);
    CHECK(wieferich_nu_stepwise(3511) == 2);
    CHECK_THROWS_AS(wieferich_nu_stepwise(2), std::invalid_argument);
    CHECK_THROWS_AS(wieferich_nu_stepwise(15), std::invalid_argument);
}

TEST_CASE("fermat-quotient scan agrees with a brute per-pair oracle") {
    const uint64_t b_max = 2000;
    const uint32_t p_max = 50;
    FermatQuotientReport rep = fermat_quotient_scan(b_max, p_max, 2, 2);

    unsigned max_nu = 0;
    uint64_t deep = 0;
    std::vector<FqWitness> wits, deeps;
    for (uint64_t b = 3; b < b_max; b += 2)
        for (uint32_t p : primes_below(p_max)) {
            if (p == 2 || b % p == 0) continue;
            unsigned nu =
                static_cast<unsigned>(valuation_oracle(Integer(b), 1, p, p - 1));
            if (nu >= 2) {
                ++deep;
                deeps.push_back({b, p, nu});
            }
            if (nu > max_nu) {
                max_nu = nu;
                wits.clear();
            }
            if (nu == max_nu) wits.push_back({b, p, nu});
        }

    CHECK(rep.max_nu == max_nu);
    CHECK(rep.deep_pairs == deep);
    REQUIRE(rep.findings.size() == deeps.size());
    for (std::size_t i = 0; i < deeps.size(); ++i) {
        CHECK(rep.findings[i].b == deeps[i].b);
        CHECK(rep.findings[i].p == deeps[i].p);
        CHECK(rep.findings[i].nu == deeps[i].nu);
    }
    REQUIRE(rep.witnesses.size() == wits.size());
    for (std::size_t i = 0; i < wits.size(); ++i) {
        CHECK(rep.witnesses[i].b == wits[i].b);
        CHECK(rep.witnesses[i].p == wits[i].p);
    }
}

TEST_CASE("fermat-quotient scan at review scale: frozen extremes") {
    FermatQuotientReport rep = fermat_quotient_scan(100000, 500, 4);
    CHECK(rep.max_nu == 9);
    REQUIRE(rep.witnesses.size() == 4);
    CHECK(rep.witnesses[0].b == 39365);
    CHECK(rep.witnesses[1].b == 39367);
    CHECK(rep.witnesses[2].b == 78731);
    CHECK(rep.witnesses[3].b == 78733);
    for (const auto& w : rep.witnesses) {
        CHECK(w.p == 3);
        CHECK(w.nu == 9);
    }
    CHECK(rep.deep_pairs == 69645);
    CHECK(rep.findings.empty());  // findings_min = 0 keeps the list off

    FermatQuotientReport one_job = fermat_quotient_scan(100000, 500, 1);
    CHECK(one_job.max_nu == rep.max_nu);
    CHECK(one_job.deep_pairs == rep.deep_pairs);
    REQUIRE(one_job.witnesses.size() == rep.witnesses.size());
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i)
        CHECK(one_job.witnesses[i].b == rep.witnesses[i].b);
}

TEST_CASE("fermat-quotient checkpoints resume across a widened prime range") {
    FileGuard ck(temp_path("pairpow_fq_ck.json"));
    FermatQuotientReport fresh = fermat_quotient_scan(20000, 500, 2, 2);

    fermat_quotient_scan(20000, 100, 2, 2, ck.path);
    std::ifstream in(ck.path);
    json j = json::parse(in);
    in.close();
    REQUIRE(j.at("primes_done").get<std::size_t>() == 24);  // odd primes < 100
    j["p_max"] = 500;
    detail::store_checkpoint(ck.path, j);

    FermatQuotientReport resumed = fermat_quotient_scan(20000, 500, 2, 2, ck.path);
    CHECK(resumed.resumed);
    CHECK(resumed.max_nu == fresh.max_nu);
    CHECK(resumed.deep_pairs == fresh.deep_pairs);
    REQUIRE(resumed.findings.size() == fresh.findings.size());
    for (std::size_t i = 0; i < fresh.findings.size(); ++i) {
        CHECK(resumed.findings[i].b == fresh.findings[i].b);
        CHECK(resumed.findings[i].p == fresh.findings[i].p);
        CHECK(resumed.findings[i].nu == fresh.findings[i].nu);
    }
}

TEST_CASE("fermat-quotient scan edge cases and validation") {
    FermatQuotientReport tiny = fermat_quotient_scan(10, 5);
    CHECK(tiny.deep_pairs == 0);
    CHECK(tiny.max_nu == 1);  // (5, 3) exists, so nu = 1 is attained
    CHECK(tiny.witnesses.empty());
    CHECK(tiny.note.find("generic") != std::string::npos);

    CHECK_THROWS_AS(fermat_quotient_scan(3, 100), std::invalid_argument);
    CHECK_THROWS_AS(fermat_quotient_scan(100, 3), std::invalid_argument);
    CHECK_THROWS_AS(fermat_quotient_scan(100, 100, 1, 1), std::invalid_argument);
}

TEST_CASE("direct search: the only square below k = 60 over the eight bases") {
    auto hits = brute_force_equation(7, {2}, 10);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].k == 2);
    CHECK(hits[0].q == 2);
    CHECK(hits[0].y == 12);

    auto wide = brute_force_equation(7, {2, 3, 5, 7}, 60);
    REQUIRE(wide.size() == 1);
    CHECK(wide[0].k == 2);
    CHECK(wide[0].q == 2);

    for (uint64_t b : resolution_bases()) {
        if (b == 7) continue;
        CHECK(brute_force_equation(b, {2, 3, 5, 7}, 60).empty());
    }
}

TEST_CASE("direct search validation") {
    CHECK_THROWS_AS(brute_force_equation(8, {2}, 10), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_equation(7, {}, 10), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_equation(7, {1}, 10), std::invalid_argument);
    CHECK(brute_force_equation(7, {3}, 1).empty());
}

TEST_CASE("resolution replay: structure shared by all eight bases") {
    for (uint64_t b : resolution_bases()) {
        ResolutionReport rep = verify_b(b);
        CHECK(rep.b == b);
        REQUIRE(rep.steps.size() == 5);
        CHECK(rep.steps[0].name == "prime-exponent-reduction");
        CHECK(rep.steps[1].name == "chain-window");
        CHECK(rep.steps[2].name == "leftover-small-primes");
        CHECK(rep.steps[3].name == "above-threshold");
        CHECK(rep.steps[4].name == "square-case");
        CHECK(rep.steps[0].ok);
        CHECK(rep.steps[1].ok);
        CHECK(rep.steps[2].ok);
        CHECK(rep.steps[3].ok);
        CHECK(rep.threshold == threshold_prime(b));
    }
}

TEST_CASE("resolution replay: seven bases resolve, base 7 records a square") {
    for (uint64_t b : resolution_bases()) {
        ResolutionReport rep = verify_b(b);
        if (b == 7) {
            CHECK_FALSE(rep.clean);
            CHECK(rep.verdict == "discrepancy");
            CHECK_FALSE(rep.steps[4].ok);
            REQUIRE(rep.square_findings.size() == 1);
            CHECK(rep.square_findings[0].k == 2);
            CHECK(rep.square_findings[0].y == 12);
            CHECK(rep.steps[4].detail.find("144 = 12^2") != std::string::npos);
        } else {
            CHECK(rep.clean);
            CHECK(rep.verdict == "resolved");
            CHECK(rep.steps[4].ok);
            CHECK(rep.square_findings.empty());
        }
    }
}

TEST_CASE("resolution replay: per-base details") {
    ResolutionReport r5 = verify_b(5);
    CHECK(r5.threshold == 7);
    CHECK(r5.steps[1].detail.find("q=3") != std::string::npos);  // 3 is in region
    CHECK(r5.steps[2].detail.find("nothing outside the window") != std::string::npos);

    ResolutionReport r7 = verify_b(7);
    CHECK(r7.threshold == 11);
    CHECK(r7.steps[1].detail.find("q=3") == std::string::npos);  // b+1 = 2^3
    CHECK(r7.steps[2].detail.find("3 | b-1") != std::string::npos);
    CHECK(r7.steps[2].detail.find("so 2 | k") != std::string::npos);
    CHECK(r7.steps[2].detail.find("so 3 | k") != std::string::npos);

    CHECK(verify_b(11).steps[2].detail.find("3 | b+1") != std::string::npos);
    CHECK(verify_b(21).steps[2].detail.find("3 | b") != std::string::npos);
    CHECK(verify_b(27).steps[2].detail.find("(r | b)") != std::string::npos);

    ResolutionReport r29 = verify_b(29);
    CHECK(r29.threshold == 17);
    CHECK(r29.steps[1].detail.find("q=17") != std::string::npos);
    CHECK(r29.steps[3].detail.find("T^2 > 8b = 232") != std::string::npos);

    CHECK_THROWS_AS(verify_b(9), std::invalid_argument);
    CHECK_THROWS_AS(verify_b(6), std::invalid_argument);
}

TEST_CASE("struct JSON round trips") {
    ExceptionalPair p{17, 114689, 17, "nu_2(16)=4 not covered"};
    json jp = p;
    auto p2 = jp.get<ExceptionalPair>();
    CHECK(p2.q == p.q);
    CHECK(p2.b == p.b);
    CHECK(p2.blocking_prime == p.blocking_prime);
    CHECK(p2.constraint == p.constraint);

    EquationSolution s{2, 2, Integer("123456789012345678901234567890")};
    json js = s;
    auto s2 = js.get<EquationSolution>();
    CHECK(s2.y == s.y);
    CHECK(js.at("y").is_string());
}
