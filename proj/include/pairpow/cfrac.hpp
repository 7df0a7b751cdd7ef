/* cfrac.hpp -- exact continued fractions of q-th roots, their convergents,
   and the convergent-based exhaustion of the cubic case.

   The expansion state is a Moebius form xi = (a x + b) / (c x + d) in
   integer coefficients a, b, c, d, where x = n^(1/q).  One CF step with
   partial quotient m maps (a,b,c,d) -> (c, d, a - m c, b - m d), which
   stays in the same family; this is the natural closure of "quadratic
   surd" states once q exceeds 2.  Partial quotients are *decided in
   integers*: x is bracketed by scaled integer roots
   r_s = floor(2^s x) = floor((n 4^s ...)^(1/q)) and the floor of xi is
   accepted only when the bracket pins it; otherwise s doubles.  No
   floating point participates in any decision. */
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pairpow/arith.hpp"

namespace pairpow {

struct CFExpansion {
    Integer n;                       // radicand
    uint32_t degree = 0;             // root degree q >= 2
    std::vector<Integer> quotients;  // partial quotients a0, a1, ...
    bool terminated = false;         // n is a perfect degree-th power
};

/* Continued fraction of n^(1/degree), first `count` partial quotients.
   If n is a perfect power the expansion is the single quotient [root]. */
inline CFExpansion cf_expand(const Integer& n, uint32_t degree, size_t count) {
    if (sgn(n) <= 0) throw std::invalid_argument("cf_expand: n must be >= 1");
    if (degree < 2) throw std::invalid_argument("cf_expand: degree must be >= 2");
    if (count == 0) throw std::invalid_argument("cf_expand: count must be >= 1");

    CFExpansion exp;
    exp.n = n;
    exp.degree = degree;

    auto r0 = integer_root(n, degree);
    if (r0.exact) {
        exp.quotients.push_back(r0.root);
        exp.terminated = true;
        return exp;
    }

    // scaled root r_s = floor(2^s * n^(1/degree)), refreshed as s grows
    unsigned long s = 64;
    auto scaled_root = [&](unsigned long shift) {
        Integer m = n << (shift * degree);
        return integer_root(m, degree).root;
    };
    Integer rs = scaled_root(s);

    // state: xi = (a x + b) / (c x + d), starting at x itself
    Integer a = 1, b = 0, c = 0, d = 1;

    while (exp.quotients.size() < count) {
        // bracket numerator and denominator of xi at scale 2^s:
        // x in [rs / 2^s, (rs + 1) / 2^s], x irrational so strictly inside
        for (;;) {
            Integer two_s = Integer(1) << s;
            Integer nlo = a * rs + b * two_s;
            Integer nhi = a * (rs + 1) + b * two_s;
            if (a < 0) std::swap(nlo, nhi);
            Integer dlo = c * rs + d * two_s;
            Integer dhi = c * (rs + 1) + d * two_s;
            if (c < 0) std::swap(dlo, dhi);

            if (sgn(dlo) <= 0) {
                // denominator not certainly positive at this scale: refine
                s *= 2;
                rs = scaled_root(s);
                continue;
            }
            Integer flo, fhi;
            mpz_fdiv_q(flo.get_mpz_t(), nlo.get_mpz_t(), dhi.get_mpz_t());
            mpz_fdiv_q(fhi.get_mpz_t(), nhi.get_mpz_t(), dlo.get_mpz_t());
            if (flo == fhi) {
                exp.quotients.push_back(flo);
                break;
            }
            s *= 2;
            rs = scaled_root(s);
        }

        // CF step: xi -> 1 / (xi - m)
        const Integer& m = exp.quotients.back();
        Integer na = c, nb = d;
        Integer nc = a - m * c, nd = b - m * d;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    return exp;
}

/* ------------------------------------------------------------------ */
/* Convergents                                                         */

struct Convergent {
    Integer h, k;  // h/k in lowest terms (guaranteed by the recurrence)
    size_t index = 0;
};

inline std::vector<Convergent> convergents(const CFExpansion& exp) {
    std::vector<Convergent> out;
    Integer hm1 = 1, hm2 = 0;  // h_{-1}, h_{-2}
    Integer km1 = 0, km2 = 1;
    for (size_t i = 0; i < exp.quotients.size(); ++i) {
        Integer h = exp.quotients[i] * hm1 + hm2;
        Integer k = exp.quotients[i] * km1 + km2;
        out.push_back({h, k, i});
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
    }
    return out;
}

/* Sign of h/k - n^(1/degree), decided by comparing h^degree with n k^degree.
   Returns -1, 0, +1. */
inline int convergent_side(const Integer& h, const Integer& k, const Integer& n,
                           uint32_t degree) {
    if (sgn(k) <= 0) throw std::invalid_argument("convergent_side: k must be >= 1");
    if (sgn(h) < 0) return -1;  // n >= 1 so the root is positive
    Integer hp, kp;
    mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), degree);
    mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), degree);
    Integer rhs = n * kp;
    if (hp > rhs) return 1;
    if (hp < rhs) return -1;
    return 0;
}

/* Decide |n^(1/degree) - h/k| < num/den exactly: the open interval
   (h/k - num/den, h/k + num/den) contains the root iff
   (h den - k num)^degree < n (k den)^degree < (h den + k num)^degree,
   with the left factor waived when h den - k num <= 0. */
inline bool approx_closer_than(const Integer& n, uint32_t degree, const Integer& h,
                               const Integer& k, const Integer& num,
                               const Integer& den) {
    if (sgn(k) <= 0 || sgn(den) <= 0)
        throw std::invalid_argument("approx_closer_than: k, den must be >= 1");
    Integer lo = h * den - k * num;
    Integer hi = h * den + k * num;
    Integer mid;
    mpz_pow_ui(mid.get_mpz_t(), Integer(k * den).get_mpz_t(), degree);
    mid *= n;
    if (sgn(hi) <= 0) return false;
    Integer hip;
    mpz_pow_ui(hip.get_mpz_t(), hi.get_mpz_t(), degree);
    if (!(mid < hip)) return false;
    if (sgn(lo) > 0) {
        Integer lop;
        mpz_pow_ui(lop.get_mpz_t(), lo.get_mpz_t(), degree);
        if (!(lop < mid)) return false;
    }
    return true;
}

/* ------------------------------------------------------------------ */
/* Cubic case: (X^3 - 1)(Y^3 - 1) = Z^3 via convergents                */

struct CubicSolution {
    Integer y, z;
};

struct CubicCaseReport {
    uint32_t x = 0;
    Integer radicand;      // X^3 - 1
    Integer y_limit;       // denominators searched up to this bound
    Integer five_x6;       // 5 X^6, the exhaustion threshold
    bool reached_threshold = false;  // y_limit >= 5 X^6
    size_t convergents_checked = 0;
    Integer smallest_denominator_checked;  // least k >= 2 examined
    Integer largest_denominator_checked;
    std::vector<CubicSolution> solutions;  // expected empty
    bool partial = false;  // y_limit < 5 X^6: verdict incomplete
};

/* A solution with Y > 5 X^6 would force Z/Y to be a convergent of
   (X^3 - 1)^(1/3) of extreme quality; scanning all convergents with
   denominator up to max(y_limit, ...) and testing (X^3-1)(Y^3-1) for
   cubehood therefore exhausts Y <= y_limit, and fully closes the case
   when y_limit reaches 5 X^6.  Every power test is exact. */
inline CubicCaseReport cubic_case_check(uint32_t x, const Integer& y_limit) {
    if (x < 2) throw std::invalid_argument("cubic_case_check: x must be >= 2");
    if (sgn(y_limit) <= 0)
        throw std::invalid_argument("cubic_case_check: y_limit must be >= 1");

    CubicCaseReport rep;
    rep.x = x;
    Integer xz(static_cast<unsigned long>(x));
    mpz_pow_ui(rep.radicand.get_mpz_t(), xz.get_mpz_t(), 3);
    rep.radicand -= 1;
    rep.y_limit = y_limit;
    mpz_pow_ui(rep.five_x6.get_mpz_t(), xz.get_mpz_t(), 6);
    rep.five_x6 *= 5;
    rep.reached_threshold = y_limit >= rep.five_x6;
    rep.partial = !rep.reached_threshold;

    // X^3 - 1 lies strictly between (X-1)^3 and X^3, so it is never a cube
    // and the expansion below is infinite; expand until the denominators
    // pass y_limit.
    size_t count = 32;
    std::vector<Convergent> cs;
    for (;;) {
        auto exp = cf_expand(rep.radicand, 3, count);
        cs = convergents(exp);
        if (cs.back().k > y_limit) break;
        count *= 2;
    }

    bool first = true;
    for (const auto& c : cs) {
        if (c.k < 2 || c.k > y_limit) continue;
        if (first) {
            rep.smallest_denominator_checked = c.k;
            first = false;
        }
        rep.largest_denominator_checked = c.k;
        ++rep.convergents_checked;
        // candidate Y = k: solution iff (X^3 - 1)(Y^3 - 1) is a perfect cube
        Integer kp;
        mpz_pow_ui(kp.get_mpz_t(), c.k.get_mpz_t(), 3);
        Integer v = rep.radicand * (kp - 1);
        auto root = integer_root(v, 3);
        if (root.exact) rep.solutions.push_back({c.k, root.root});
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/* Direct search oracle                                                */

struct XYZSolution {
    uint64_t x = 0, y = 0;
    Integer z;
};

/* Exhaustive (X^q - 1)(Y^q - 1) = Z^q over 2 <= X <= Y <= y_max (and
   X <= x_max), by exact root extraction on every product.  This is the
   desk-scale cross-check for the analytic exclusions; results are sorted
   by (x, y). */
inline std::vector<XYZSolution> brute_search_xyz(uint32_t q, uint64_t x_max,
                                                 uint64_t y_max) {
    if (q < 2) throw std::invalid_argument("brute_search_xyz: q must be >= 2");
    std::vector<XYZSolution> out;
    for (uint64_t y = 2; y <= y_max; ++y) {
        Integer yq;
        mpz_ui_pow_ui(yq.get_mpz_t(), y, q);
        for (uint64_t x = 2; x <= y && x <= x_max; ++x) {
            Integer xq;
            mpz_ui_pow_ui(xq.get_mpz_t(), x, q);
            Integer v = (xq - 1) * (yq - 1);
            auto root = integer_root(v, q);
            if (root.exact) out.push_back({x, y, root.root});
        }
    }
    std::sort(out.begin(), out.end(), [](const XYZSolution& l, const XYZSolution& r) {
        return l.x != r.x ? l.x < r.x : l.y < r.y;
    });
    return out;
}

}  // namespace pairpow
