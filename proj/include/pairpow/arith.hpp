/* arith.hpp -- exact integer primitives: p-adic valuations, integer roots,
   modular powers, the lifting-the-exponent rule, and a valuation ladder that
   reads off nu_p(base^exp - 1) without ever materializing base^exp.

   Everything here is exact.  Results are integers decided by integer
   arithmetic; no routine in this header consults floating point. */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pairpow {

using Integer = mpz_class;

/* ------------------------------------------------------------------ */
/* 64-bit modular arithmetic and deterministic primality               */

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 0) throw std::invalid_argument("powmod_u64: zero modulus");
    if (m == 1) return 0;
    uint64_t acc = 1;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

/* Miller-Rabin with the fixed witness set {2,...,37}, which is known to be
   deterministic far beyond 2^64 (Sorenson & Webster 2015 prove it exact up
   to 3.3 * 10^24).  Every primality decision in the toolkit lands here. */
inline bool is_prime_u64(uint64_t n) {
    constexpr uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (uint64_t p : witnesses)
        if (n % p == 0) return n == p;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : witnesses) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<uint32_t> primes_below(uint32_t limit) {
    std::vector<uint32_t> out;
    if (limit <= 2) return out;
    std::vector<bool> sieve(limit, true);
    sieve[0] = sieve[1] = false;
    for (uint64_t i = 2; i < limit; ++i) {
        if (!sieve[i]) continue;
        out.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j < limit; j += i) sieve[j] = false;
    }
    return out;
}

inline uint64_t next_prime_above(uint64_t n) {
    uint64_t c = n + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

/* Trial-division factorization of a 32-bit integer: (prime, exponent) pairs
   in increasing prime order.  Plenty for p-1 with p a few thousand. */
inline std::vector<std::pair<uint32_t, unsigned>> factor_u32(uint32_t n) {
    if (n == 0) throw std::invalid_argument("factor_u32: zero");
    std::vector<std::pair<uint32_t, unsigned>> out;
    for (uint32_t p = 2; static_cast<uint64_t>(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/* ------------------------------------------------------------------ */
/* Valuations                                                          */

inline void require_prime(const Integer& p, const char* who) {
    /* Primality is only verifiable cheaply in 64-bit range; callers passing
       larger p are trusted to pass primes (none of the scans do). */
    if (p.fits_ulong_p() && !is_prime_u64(p.get_ui()))
        throw std::invalid_argument(std::string(who) + ": p is not prime");
    if (sgn(p) <= 0)
        throw std::invalid_argument(std::string(who) + ": p must be a positive prime");
}

/* nu_p(n): exponent of p in n.  Undefined (rejected) for n = 0. */
inline unsigned long vp(const Integer& n, const Integer& p) {
    if (sgn(n) == 0) throw std::invalid_argument("vp: valuation of 0 is undefined");
    require_prime(p, "vp");
    Integer rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

inline unsigned long vp(const Integer& n, unsigned long p) { return vp(n, Integer(p)); }

inline unsigned vp_u64(uint64_t n, uint64_t p) {
    if (n == 0) throw std::invalid_argument("vp_u64: valuation of 0 is undefined");
    unsigned e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return e;
}

/* ------------------------------------------------------------------ */
/* Integer roots and perfect powers                                    */

struct RootResult {
    Integer root;  // floor(n^(1/q))
    bool exact;    // root^q == n
};

/* floor(n^(1/q)) for n >= 1, q >= 1.  mpz_root runs the bit-length-seeded
   Newton iteration with a final exact correction; the exactness flag is
   re-derived here by one integer power rather than trusted. */
inline RootResult integer_root(const Integer& n, unsigned long q) {
    if (sgn(n) <= 0) throw std::invalid_argument("integer_root: n must be >= 1");
    if (q == 0) throw std::invalid_argument("integer_root: q must be >= 1");
    RootResult r;
    mpz_root(r.root.get_mpz_t(), n.get_mpz_t(), q);
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), r.root.get_mpz_t(), q);
    r.exact = (pw == n);
    return r;
}

inline bool is_perfect_qth_power(const Integer& n, unsigned long q) {
    return integer_root(n, q).exact;
}

/* ------------------------------------------------------------------ */
/* Modular powers                                                      */

inline Integer modpow(const Integer& base, const Integer& exp, const Integer& m) {
    if (sgn(m) <= 0) throw std::invalid_argument("modpow: modulus must be positive");
    if (sgn(exp) < 0) throw std::invalid_argument("modpow: negative exponent");
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer modpow(const Integer& base, unsigned long exp, const Integer& m) {
    return modpow(base, Integer(exp), m);
}

/* ------------------------------------------------------------------ */
/* Lifting the exponent                                                */

/* nu_p(a^k - b^k) by the classical lifting-the-exponent rule.  The rule is
   simply false without its hypotheses, so p | a-b (with a != b) and
   p coprime to ab are enforced, not patched around.

     p odd:            nu_p(a-b) + nu_p(k)
     p = 2, k odd:     nu_2(a-b)
     p = 2, k even:    nu_2(a^2-b^2) + nu_2(k/2)                        */
inline unsigned long lte_valuation(const Integer& a, const Integer& b,
                                   const Integer& p, unsigned long k) {
    if (k == 0) throw std::invalid_argument("lte_valuation: k must be >= 1");
    require_prime(p, "lte_valuation");
    Integer d = a - b;
    if (sgn(d) == 0)
        throw std::invalid_argument("lte_valuation: a == b makes a^k - b^k vanish");
    if (!mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("lte_valuation: p does not divide a - b");
    if (sgn(a) != 0 && mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("lte_valuation: p divides a");
    if (sgn(b) != 0 && mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("lte_valuation: p divides b");
    if (sgn(a) == 0 || sgn(b) == 0)
        throw std::invalid_argument("lte_valuation: a, b must be nonzero");
    if (p == 2) {
        if (k % 2 == 1) return vp(d, p);
        return vp(a * a - b * b, p) + vp_u64(k / 2, 2);
    }
    return vp(d, p) + static_cast<unsigned long>(vp_u64(k, p.get_ui()));
}

/* Reference oracle: materialize a^k - b^k and take the valuation directly.
   Slow on purpose; exists so the rule above can be checked against it. */
inline unsigned long valuation_oracle(const Integer& a, const Integer& b,
                                      const Integer& p, unsigned long k) {
    if (k == 0) throw std::invalid_argument("valuation_oracle: k must be >= 1");
    Integer ak, bk;
    mpz_pow_ui(ak.get_mpz_t(), a.get_mpz_t(), k);
    mpz_pow_ui(bk.get_mpz_t(), b.get_mpz_t(), k);
    Integer d = ak - bk;
    if (sgn(d) == 0) throw std::invalid_argument("valuation_oracle: a^k == b^k");
    return vp(d, p);
}

/* ------------------------------------------------------------------ */
/* Valuation ladder                                                    */

/* The ladder refused to answer: nu_p(base^exp - 1) >= cap. */
struct ValuationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* nu_p(base^exp - 1) via modular powers only.  Work modulo p^J; if the
   residue r != 1 then base^exp - 1 agrees with r - 1 up to a multiple of
   p^J, and since 0 < |r - 1| < p^J the valuation is exactly nu_p(r - 1).
   If r == 1 the valuation is >= J and J doubles.  J is capped: a valuation
   deeper than the cap raises instead of guessing.

   Stays in 64-bit arithmetic while p^J fits, then switches to mpz. */
inline unsigned vp_pow_minus_one(uint64_t base, uint64_t exp, uint32_t p,
                                 unsigned cap = 64) {
    if (exp == 0)
        throw std::invalid_argument("vp_pow_minus_one: base^0 - 1 vanishes");
    if (!is_prime_u64(p))
        throw std::invalid_argument("vp_pow_minus_one: p is not prime");
    if (cap == 0) throw std::invalid_argument("vp_pow_minus_one: cap must be >= 1");

    // Largest ladder rung whose modulus still fits comfortably in 64 bits.
    unsigned ju = 0;
    uint64_t pj = 1;
    while (ju < cap && pj <= (uint64_t(1) << 62) / p) { pj *= p; ++ju; }

    if (ju > 0) {
        uint64_t r = powmod_u64(base, exp, pj);
        if (r != 1) {
            uint64_t d = r > 1 ? r - 1 : 1;  // r == 0 gives |r-1| = 1
            return vp_u64(d, p);
        }
        if (ju >= cap)
            throw ValuationCapExceeded("vp_pow_minus_one: valuation >= cap");
    }

    Integer bz(static_cast<unsigned long>(base)), pz(static_cast<unsigned long>(p));
    for (unsigned J = std::max(2 * ju, 4u);; J *= 2) {
        if (J > cap) J = cap;
        Integer mod;
        mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(), J);
        Integer r = modpow(bz, static_cast<unsigned long>(exp), mod);
        if (r != 1) return static_cast<unsigned>(vp(r - 1, pz));
        if (J >= cap)
            throw ValuationCapExceeded("vp_pow_minus_one: valuation >= cap");
    }
}

}  // namespace pairpow
