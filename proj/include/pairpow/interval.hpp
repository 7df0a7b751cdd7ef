/* interval.hpp -- directed-rounding interval arithmetic over MPFR with
   adaptive working precision.

   Every real quantity in the analytic bounds is carried as [lo, hi] with lo
   rounded down and hi rounded up, so the true value is always enclosed.  A
   comparison is only ever *certified* when the two intervals are disjoint;
   anything else asks the caller for more precision.  Precision doubles from
   a starting value up to a hard cap, and exhausting the cap raises -- a
   bound that cannot be certified is reported, never guessed. */
#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace pairpow {

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Minimal RAII shell around one mpfr_t. */
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /* Deterministic decimal rendering (round-to-nearest at fixed digits). */
    std::string str(int digits = 25) const {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

private:
    mpfr_t v_;
};

class Interval {
public:
    explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec), prec_(prec) {
        mpfr_set_nan(lo_.raw());
        mpfr_set_nan(hi_.raw());
    }

    static Interval from_integer(const mpz_class& z, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_.raw(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.raw(), z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_ui(unsigned long u, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_ui(r.lo_.raw(), u, MPFR_RNDD);
        mpfr_set_ui(r.hi_.raw(), u, MPFR_RNDU);
        return r;
    }

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    mpfr_prec_t precision() const { return prec_; }

    double midpoint() const {
        Real m(prec_);
        mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
        mpfr_div_ui(m.raw(), m.raw(), 2, MPFR_RNDN);
        return m.to_double();
    }
    double radius() const {
        Real r(prec_);
        mpfr_sub(r.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
        mpfr_div_ui(r.raw(), r.raw(), 2, MPFR_RNDU);
        return r.to_double();
    }

    bool certainly_less(const Interval& o) const {
        return mpfr_cmp(hi_.raw(), o.lo_.raw()) < 0;
    }
    bool certainly_greater(const Interval& o) const {
        return mpfr_cmp(lo_.raw(), o.hi_.raw()) > 0;
    }
    bool certainly_positive() const { return mpfr_sgn(lo_.raw()) > 0; }
    bool certainly_above_ui(unsigned long u) const {
        return mpfr_cmp_ui(lo_.raw(), u) > 0;
    }
    bool certainly_below_ui(unsigned long u) const {
        return mpfr_cmp_ui(hi_.raw(), u) < 0;
    }
    bool contains_zero() const {
        return mpfr_sgn(lo_.raw()) <= 0 && mpfr_sgn(hi_.raw()) >= 0;
    }
    /* True iff the exact integer z lies inside [lo, hi]. */
    bool contains_integer(const mpz_class& z) const {
        return mpfr_cmp_z(lo_.raw(), z.get_mpz_t()) <= 0 &&
               mpfr_cmp_z(hi_.raw(), z.get_mpz_t()) >= 0;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_.raw(), a.lo_.raw(), b.lo_.raw(), MPFR_RNDD);
        mpfr_add(r.hi_.raw(), a.hi_.raw(), b.hi_.raw(), MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_.raw(), a.lo_.raw(), b.hi_.raw(), MPFR_RNDD);
        mpfr_sub(r.hi_.raw(), a.hi_.raw(), b.lo_.raw(), MPFR_RNDU);
        return r;
    }

    /* Sign-correct product: extremes over the four endpoint products. */
    friend Interval operator*(const Interval& a, const Interval& b) {
        const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
        Interval r(prec);
        Real t(prec);
        mpfr_srcptr xs[2] = {a.lo_.raw(), a.hi_.raw()};
        mpfr_srcptr ys[2] = {b.lo_.raw(), b.hi_.raw()};
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_mul(t.raw(), x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t.raw(), r.lo_.raw()) < 0)
                    mpfr_set(r.lo_.raw(), t.raw(), MPFR_RNDD);
                mpfr_mul(t.raw(), x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t.raw(), r.hi_.raw()) > 0)
                    mpfr_set(r.hi_.raw(), t.raw(), MPFR_RNDU);
                first = false;
            }
        return r;
    }

    /* Quotient; the divisor interval must exclude zero. */
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero())
            throw std::domain_error("Interval: division by an interval containing 0");
        const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
        Interval r(prec);
        Real t(prec);
        mpfr_srcptr xs[2] = {a.lo_.raw(), a.hi_.raw()};
        mpfr_srcptr ys[2] = {b.lo_.raw(), b.hi_.raw()};
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_div(t.raw(), x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t.raw(), r.lo_.raw()) < 0)
                    mpfr_set(r.lo_.raw(), t.raw(), MPFR_RNDD);
                mpfr_div(t.raw(), x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t.raw(), r.hi_.raw()) > 0)
                    mpfr_set(r.hi_.raw(), t.raw(), MPFR_RNDU);
                first = false;
            }
        return r;
    }

    Interval sqrt() const {
        require_nonneg("sqrt");
        Interval r(prec_);
        mpfr_sqrt(r.lo_.raw(), lo_.raw(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
        return r;
    }

    /* n-th root, n >= 1; monotone on the nonnegative reals. */
    Interval rootn(unsigned long n) const {
        if (n == 0) throw std::invalid_argument("Interval::rootn: n must be >= 1");
        require_nonneg("rootn");
        Interval r(prec_);
        mpfr_rootn_ui(r.lo_.raw(), lo_.raw(), n, MPFR_RNDD);
        mpfr_rootn_ui(r.hi_.raw(), hi_.raw(), n, MPFR_RNDU);
        return r;
    }

    Interval log() const {
        if (mpfr_sgn(lo_.raw()) <= 0)
            throw std::domain_error("Interval::log: requires a strictly positive interval");
        Interval r(prec_);
        mpfr_log(r.lo_.raw(), lo_.raw(), MPFR_RNDD);
        mpfr_log(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
        return r;
    }

    Interval exp() const {
        Interval r(prec_);
        mpfr_exp(r.lo_.raw(), lo_.raw(), MPFR_RNDD);
        mpfr_exp(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
        return r;
    }

    /* Integer power; monotone for nonnegative bases (the only use here). */
    Interval pow_ui(unsigned long e) const {
        require_nonneg("pow_ui");
        Interval r(prec_);
        mpfr_pow_ui(r.lo_.raw(), lo_.raw(), e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_.raw(), hi_.raw(), e, MPFR_RNDU);
        return r;
    }

private:
    void require_nonneg(const char* who) const {
        if (mpfr_sgn(lo_.raw()) < 0)
            throw std::domain_error(std::string("Interval::") + who +
                                    ": requires a nonnegative interval");
    }

    Real lo_, hi_;
    mpfr_prec_t prec_;
};

/* ------------------------------------------------------------------ */
/* Adaptive precision driver                                           */

struct PrecisionPolicy {
    mpfr_prec_t start = 128;
    mpfr_prec_t cap = 4096;
};

/* Run f at doubling precision until it commits.  f receives the working
   precision and returns std::nullopt to ask for more bits. */
template <class T, class F>
T with_rising_precision(const PrecisionPolicy& pol, F&& f) {
    if (pol.start < 2 || pol.cap < pol.start)
        throw std::invalid_argument("with_rising_precision: bad policy");
    mpfr_prec_t prec = pol.start;
    for (;;) {
        std::optional<T> r = f(prec);
        if (r) return *r;
        if (prec >= pol.cap)
            throw PrecisionExhausted(
                "undecidable at precision cap " + std::to_string(pol.cap) +
                " bits; raise the cap or accept that the quantities coincide");
        prec = std::min<mpfr_prec_t>(prec * 2, pol.cap);
    }
}

}  // namespace pairpow
