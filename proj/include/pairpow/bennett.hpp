/* bennett.hpp -- the analytic exclusion for q >= 5.

   Setting A = X^q - 1 and B = Y^q - 1, a solution of
   (X^q - 1)(Y^q - 1) = Z^q squeezes B between an exact lower bound
   q^q A^(q-1) t^q and an upper bound derived from an effective
   irrationality measure lambda for the algebraic number behind the
   approximation (M. A. Bennett, "Effective measures of irrationality for
   certain algebraic numbers", J. Austral. Math. Soc. 62 (1997)).  Whenever
   the certified upper bound falls below the lower bound, no solution
   exists.

   All real arithmetic runs through the interval layer: mu, lambda, and the
   upper bound are enclosures, and every verdict is certified by disjoint
   intervals, never by a tolerance. */
#pragma once

#include <cstdint>
#include <vector>

#include "pairpow/arith.hpp"
#include "pairpow/interval.hpp"

namespace pairpow {

/* A claim checked by the toolkit came out false.  Carried to the CLI as the
   claim-violation exit path. */
struct ClaimViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* mu_k = prod over primes p | k of p^(1/(p-1)).  Governs the size condition
   under which Bennett's measure applies. */
inline Interval mu(unsigned long k, mpfr_prec_t prec) {
    if (k < 2) throw std::invalid_argument("mu: k must be >= 2");
    Interval acc = Interval::from_ui(1, prec);
    for (auto [p, e] : factor_u32(static_cast<uint32_t>(k))) {
        (void)e;  // mu depends only on the radical of k
        acc = acc * Interval::from_ui(p, prec).rootn(p - 1);
    }
    return acc;
}

/* beta = (sqrt(A) + sqrt(A+1))^2 = 2A + 1 + 2 sqrt(A (A+1)), the quantity
   whose powers must outgrow (k mu_k)^k. */
inline Interval surd_square(const Integer& A, mpfr_prec_t prec) {
    if (sgn(A) <= 0) throw std::invalid_argument("surd_square: A must be >= 1");
    Interval lin = Interval::from_integer(2 * A + 1, prec);
    Interval rad = Interval::from_integer(A * (A + 1), prec).sqrt();
    return lin + Interval::from_ui(2, prec) * rad;
}

/* Applicability condition: beta^(k-2) > (k mu_k)^k, decided by certified
   interval comparison.  On the grid of interest it fails exactly at
   A in {7, 26} with k = 3, i.e. (X, q) = (2, 3), (3, 3). */
inline bool bennett_condition(const Integer& A, unsigned long k,
                              const PrecisionPolicy& pol = {}) {
    if (k < 2) throw std::invalid_argument("bennett_condition: k must be >= 2");
    if (sgn(A) <= 0) throw std::invalid_argument("bennett_condition: A must be >= 1");
    return with_rising_precision<bool>(pol, [&](mpfr_prec_t prec) -> std::optional<bool> {
        Interval lhs = surd_square(A, prec).pow_ui(k - 2);
        Interval rhs = (Interval::from_ui(k, prec) * mu(k, prec)).pow_ui(k);
        if (lhs.certainly_greater(rhs)) return true;
        if (lhs.certainly_less(rhs)) return false;
        return std::nullopt;
    });
}

namespace detail {

/* One evaluation of lambda = 1 + log(k mu beta) / log(beta / (k mu)) at a
   fixed precision; nullopt when the denominator is not yet certified
   positive (beta / (k mu) not yet separated from 1). */
inline std::optional<Interval> eval_lambda(const Integer& A, unsigned long k,
                                           mpfr_prec_t prec) {
    Interval beta = surd_square(A, prec);
    Interval kmu = Interval::from_ui(k, prec) * mu(k, prec);
    Interval ratio = beta / kmu;
    if (!ratio.certainly_above_ui(1)) return std::nullopt;
    Interval den = ratio.log();
    if (!den.certainly_positive()) return std::nullopt;
    Interval num = (kmu * beta).log();
    return Interval::from_ui(1, prec) + num / den;
}

}  // namespace detail

/* The measure itself, certified strictly below k.  When the condition
   holds, lambda < k is a theorem, so enough precision always certifies it;
   when it does not hold the measure is meaningless and the call refuses. */
inline Interval lambda_measure(const Integer& A, unsigned long k,
                               const PrecisionPolicy& pol = {}) {
    if (!bennett_condition(A, k, pol))
        throw std::invalid_argument(
            "lambda_measure: size condition fails; no measure is available");
    return with_rising_precision<Interval>(pol, [&](mpfr_prec_t prec) -> std::optional<Interval> {
        auto lam = detail::eval_lambda(A, k, prec);
        if (!lam) return std::nullopt;
        if (!lam->certainly_below_ui(k)) return std::nullopt;
        return lam;
    });
}

/* Exact lower bound q^q A^(q-1) t^q <= B, for the integer t >= 1 produced
   by the expansion of (XY)^q around AB. */
inline Integer b_lower_bound(const Integer& A, const Integer& t, uint32_t q) {
    if (sgn(A) <= 0 || sgn(t) <= 0)
        throw std::invalid_argument("b_lower_bound: A, t must be >= 1");
    Integer qq, apow, tpow;
    mpz_ui_pow_ui(qq.get_mpz_t(), q, q);
    mpz_pow_ui(apow.get_mpz_t(), A.get_mpz_t(), q - 1);
    mpz_pow_ui(tpow.get_mpz_t(), t.get_mpz_t(), q);
    return qq * apow * tpow;
}

namespace detail {

/* Upper bound exp((q log 16 + (q/(q-1)) log q + (q + lambda) log A) / (q - lambda))
   at fixed precision; requires lambda certified below q first. */
inline std::optional<Interval> eval_b_upper(const Integer& A, uint32_t q,
                                            mpfr_prec_t prec) {
    auto lam = eval_lambda(A, q, prec);
    if (!lam || !lam->certainly_below_ui(q)) return std::nullopt;
    Interval qi = Interval::from_ui(q, prec);
    Interval logA = Interval::from_integer(A, prec).log();
    Interval num = qi * Interval::from_ui(16, prec).log() +
                   (qi / Interval::from_ui(q - 1, prec)) * qi.log() +
                   (qi + *lam) * logA;
    Interval den = qi - *lam;
    return (num / den).exp();
}

}  // namespace detail

/* Certified enclosure of the upper bound on B. */
inline Interval b_upper_bound(const Integer& A, uint32_t q,
                              const PrecisionPolicy& pol = {}) {
    if (!bennett_condition(A, q, pol))
        throw std::invalid_argument("b_upper_bound: size condition fails");
    return with_rising_precision<Interval>(pol, [&](mpfr_prec_t prec) {
        return detail::eval_b_upper(A, q, prec);
    });
}

/* ------------------------------------------------------------------ */
/* Certificates                                                        */

struct BennettCertificate {
    uint64_t x = 0;
    uint32_t q = 0;
    Integer a;  // A = X^q - 1
    bool condition_ok = false;
    std::string mu_lo, mu_hi;
    std::string lambda_lo, lambda_hi;
    double lambda_mid = 0.0, lambda_rad = 0.0;
    Integer b_lower;  // at t = 1, the minimum over admissible t
    std::string b_upper_lo, b_upper_hi;
    enum class Verdict { NoSolution, Inconclusive } verdict = Verdict::Inconclusive;
    long certified_prec = 0;
    std::vector<std::string> derivation;
};

inline const std::vector<std::string>& squeeze_derivation() {
    static const std::vector<std::string> steps = {
        "t = XY - floor((AB)^(1/q)) satisfies 1 <= t and the expansion "
        "sum_{i=1..q} C(q,i) (AB)^((q-i)/q) t^i = A + B + 1",
        "the i = 2 term alone exceeds A, so B > C(q,2) (AB)^((q-2)/q) t^2 - 1 "
        "which rearranges to B >= q^q A^(q-1) t^q (lower squeeze, minimized at t = 1)",
        "the irrationality measure lambda gives |"
        "(B/A)^(1/q) - Z/(XA)| > c / (XA)^lambda and with the trivial "
        "approximation estimate yields log B <= (q log 16 + (q/(q-1)) log q "
        "+ (q + lambda) log A) / (q - lambda) (upper squeeze)",
        "upper < lower certified by disjoint intervals => no solution "
        "with this X for any Y >= X",
    };
    return steps;
}

/* Full squeeze for one (X, q), q >= 5 prime, X >= 2, excluding the routed
   special case (X, q) = (2, 5) whose condition fails structurally. */
inline BennettCertificate contradiction_check(uint64_t X, uint32_t q,
                                              const PrecisionPolicy& pol = {}) {
    if (q < 5 || !is_prime_u64(q))
        throw std::invalid_argument("contradiction_check: q must be a prime >= 5");
    if (X < 2) throw std::invalid_argument("contradiction_check: X must be >= 2");
    if (X == 2 && q == 5)
        throw std::invalid_argument(
            "contradiction_check: (X, q) = (2, 5) is routed to special_case_2_5");

    BennettCertificate cert;
    cert.x = X;
    cert.q = q;
    Integer xz(static_cast<unsigned long>(X));
    mpz_pow_ui(cert.a.get_mpz_t(), xz.get_mpz_t(), q);
    cert.a -= 1;
    cert.b_lower = b_lower_bound(cert.a, 1, q);
    cert.derivation = squeeze_derivation();

    cert.condition_ok = bennett_condition(cert.a, q, pol);
    if (!cert.condition_ok) {
        cert.verdict = BennettCertificate::Verdict::Inconclusive;
        return cert;
    }

    using V = BennettCertificate::Verdict;
    with_rising_precision<bool>(pol, [&](mpfr_prec_t prec) -> std::optional<bool> {
        auto lam = detail::eval_lambda(cert.a, q, prec);
        if (!lam || !lam->certainly_below_ui(q)) return std::nullopt;
        auto upper = detail::eval_b_upper(cert.a, q, prec);
        if (!upper) return std::nullopt;
        Interval lower = Interval::from_integer(cert.b_lower, prec);

        std::optional<V> verdict;
        if (upper->certainly_less(lower)) verdict = V::NoSolution;
        else if (mpfr_cmp(upper->lo().raw(), lower.hi().raw()) >= 0)
            verdict = V::Inconclusive;  // certified: the squeeze genuinely fails
        if (!verdict) return std::nullopt;

        Interval m = mu(q, prec);
        cert.mu_lo = m.lo().str();
        cert.mu_hi = m.hi().str();
        cert.lambda_lo = lam->lo().str();
        cert.lambda_hi = lam->hi().str();
        cert.lambda_mid = lam->midpoint();
        cert.lambda_rad = lam->radius();
        cert.b_upper_lo = upper->lo().str();
        cert.b_upper_hi = upper->hi().str();
        cert.verdict = *verdict;
        cert.certified_prec = static_cast<long>(prec);
        return true;
    });
    return cert;
}

/* ------------------------------------------------------------------ */
/* The (X, q) = (2, 5) special case                                    */

struct QuinticSpecialReport {
    unsigned y_max = 0;  // largest Y surviving the approximation gap
    bool claimed_cap_respected = false;  // y_max <= 6, the documented cap
    std::string bound_lo, bound_hi;      // 20 * 31^(1/5)
    std::vector<std::pair<unsigned, Integer>> excluded;  // (Y, 31 (Y^5 - 1))
    bool no_solution = false;
};

/* 31 (Y^5 - 1) = Z^5.  Bennett's Corollary 1.2 gives
   |31^(1/5) - Z/Y| > 0.01 / Y^2.83, while a solution forces
   |31^(1/5) - Z/Y| < 31^(1/5) / (5 Y^5); together Y^2.17 < 20 * 31^(1/5).
   The handful of admissible Y are then excluded by exact 5th-power tests.
   Exponents are carried as exact rationals (217/100) through integer
   powers and interval roots -- no decimal exponentiation. */
inline QuinticSpecialReport special_case_2_5(const PrecisionPolicy& pol = {}) {
    QuinticSpecialReport rep;

    auto admissible = [&](unsigned y) {
        return with_rising_precision<bool>(pol, [&](mpfr_prec_t prec) -> std::optional<bool> {
            Integer ypow;
            mpz_ui_pow_ui(ypow.get_mpz_t(), y, 217);
            Interval lhs = Interval::from_integer(ypow, prec).rootn(100);
            Interval rhs = Interval::from_ui(20, prec) *
                           Interval::from_ui(31, prec).rootn(5);
            if (lhs.certainly_less(rhs)) return true;
            if (lhs.certainly_greater(rhs)) return false;
            return std::nullopt;
        });
    };

    unsigned y = 2;
    while (admissible(y)) ++y;
    rep.y_max = y - 1;
    rep.claimed_cap_respected = rep.y_max <= 6;

    {
        Interval bound = Interval::from_ui(20, pol.start) *
                         Interval::from_ui(31, pol.start).rootn(5);
        rep.bound_lo = bound.lo().str();
        rep.bound_hi = bound.hi().str();
    }

    bool all_excluded = true;
    for (unsigned yy = 2; yy <= std::max(rep.y_max, 6u); ++yy) {
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), yy, 5);
        v = 31 * (v - 1);
        if (is_perfect_qth_power(v, 5)) all_excluded = false;
        rep.excluded.emplace_back(yy, v);
    }
    rep.no_solution = all_excluded;
    return rep;
}

/* ------------------------------------------------------------------ */
/* Shape audit for the upper bound                                     */

/* Certified comparison of the computed upper bound against a printed shape
   coeff * A^(num/den) over a grid of X.  Returns the X where the computed
   bound provably exceeds the shape (expected to be a short, frozen list). */
inline std::vector<uint64_t> upper_shape_mismatches(uint32_t q, unsigned long coeff,
                                                    unsigned long num, unsigned long den,
                                                    uint64_t x_lo, uint64_t x_hi,
                                                    const PrecisionPolicy& pol = {}) {
    std::vector<uint64_t> out;
    for (uint64_t X = x_lo; X <= x_hi; ++X) {
        if (X == 2 && q == 5) continue;  // routed special case has no upper bound
        Integer A;
        mpz_ui_pow_ui(A.get_mpz_t(), X, q);
        A -= 1;
        bool exceeds = with_rising_precision<bool>(pol, [&](mpfr_prec_t prec) -> std::optional<bool> {
            auto upper = detail::eval_b_upper(A, q, prec);
            if (!upper) return std::nullopt;
            Integer apow;
            mpz_pow_ui(apow.get_mpz_t(), A.get_mpz_t(), num);
            Interval shape = Interval::from_ui(coeff, prec) *
                             Interval::from_integer(apow, prec).rootn(den);
            if (upper->certainly_greater(shape)) return true;
            if (upper->certainly_less(shape)) return false;
            return std::nullopt;
        });
        if (exceeds) out.push_back(X);
    }
    return out;
}

}  // namespace pairpow
