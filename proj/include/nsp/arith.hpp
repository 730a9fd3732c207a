// Exact integer arithmetic: primality, factorization, prime navigation.
// Everything takes and returns unbounded Naturals; 64-bit kernels are used
// internally whenever the operands fit.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nsp/common.hpp"
#include "nsp/primes.hpp"
#include "nsp/umath.hpp"

namespace nsp {

namespace detail {

// Strong Lucas probable-prime test with Selfridge's parameters.
// Combined with the fixed Miller-Rabin bases below this is the usual
// BPSW-style battery: exact for all 64-bit inputs and with no known
// counterexample anywhere, which comfortably covers 128-bit operands.
inline bool strong_lucas_prp(const mpz_class& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    long d_abs = 5;
    int sign = 1;
    mpz_class D;
    while (true) {
        D = sign * d_abs;
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && mpz_cmpabs(D.get_mpz_t(), n.get_mpz_t()) != 0) return false;
        d_abs += 2;
        sign = -sign;
    }
    mpz_class Q = (1 - D) / 4;
    mpz_class np1 = n + 1;
    unsigned long s = mpz_scan1(np1.get_mpz_t(), 0);
    mpz_class d;
    mpz_tdiv_q_2exp(d.get_mpz_t(), np1.get_mpz_t(), s);

    auto mod_n = [&](mpz_class& v) {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    auto halve = [&](mpz_class& v) {
        if (mpz_odd_p(v.get_mpz_t())) v += n;
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 2);
        mod_n(v);
    };

    // U_1 = 1, V_1 = P = 1, Qk = Q
    mpz_class U = 1, V = 1, Qk = Q;
    mod_n(Qk);
    size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
        // double: (U,V,Qk) for index 2k
        U = U * V;
        mod_n(U);
        V = V * V - 2 * Qk;
        mod_n(V);
        Qk = Qk * Qk;
        mod_n(Qk);
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            // add one: P = 1
            mpz_class U2 = U + V;
            mpz_class V2 = D * U + V;
            halve(U2);
            halve(V2);
            U = U2;
            V = V2;
            Qk = Qk * Q;
            mod_n(Qk);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = V * V - 2 * Qk;
        mod_n(V);
        if (V == 0) return true;
        Qk = Qk * Qk;
        mod_n(Qk);
    }
    return false;
}

inline bool mr_witness_mpz(const mpz_class& n, unsigned long a) {
    mpz_class d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_class q;
    mpz_tdiv_q_2exp(q.get_mpz_t(), d.get_mpz_t(), r);
    mpz_class x;
    mpz_class base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == d) return false;
    for (unsigned long i = 0; i + 1 < r; ++i) {
        x = x * x;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
        if (x == d) return false;
    }
    return true;
}

}  // namespace detail

// Deterministic for all inputs below 2^64; for wider inputs (supported
// through 128 bits) uses fixed Miller-Rabin bases plus a strong Lucas test.
inline bool is_prime(const Natural& n) {
    if (mpz_sgn(n.get_mpz_t()) <= 0) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul,
                            41ul, 43ul, 47ul, 53ul, 59ul, 61ul, 67ul, 71ul, 73ul, 79ul,
                            83ul, 89ul, 97ul}) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
        if (detail::mr_witness_mpz(n, p)) return false;
    }
    return detail::strong_lucas_prp(n);
}

struct FactorEntry {
    Natural prime;
    unsigned exponent = 0;
    bool operator==(const FactorEntry&) const = default;
};

// Prime factorization with entries in strictly increasing prime order.
// The integer 1 is the empty factorization.
struct Factorization {
    std::vector<FactorEntry> entries;

    Natural value() const {
        Natural v = 1;
        mpz_class pw;
        for (const auto& [p, e] : entries) {
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), e);
            v *= pw;
        }
        return v;
    }

    bool operator==(const Factorization&) const = default;
};

inline Factorization to_factorization(const std::vector<FactorU64>& f) {
    Factorization out;
    out.entries.reserve(f.size());
    for (const auto& [p, e] : f) out.entries.push_back({from_u64(p), e});
    return out;
}

namespace detail {

inline void factor_hard_mpz(mpz_class n, std::vector<mpz_class>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    // Brent rho on mpz with a deterministic parameter schedule.
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1, q = 1, ys = 0;
        auto step = [&](mpz_class& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        unsigned long r = 1;
        const unsigned long m = 64;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            for (unsigned long k = 0; k < r && d == 1; k += m) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    step(y);
                    mpz_class diff = x > y ? x - y : y - x;
                    q = q * diff;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r <<= 1;
        }
        if (d == n) {
            do {
                step(ys);
                mpz_class diff = x > ys ? x - ys : ys - x;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != n) {
            factor_hard_mpz(d, out);
            factor_hard_mpz(n / d, out);
            return;
        }
    }
}

}  // namespace detail

inline Factorization factorize(const Natural& n) {
    if (mpz_sgn(n.get_mpz_t()) <= 0)
        throw std::invalid_argument("factorize: input must be >= 1");
    auto snap = PrimeTable::instance().snapshot();
    if (fits_u64(n)) return to_factorization(factor_u64(to_u64(n), snap->primes));

    Factorization out;
    mpz_class rem = n;
    for (uint64_t p : snap->primes) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), p, 2);
        if (p2 > rem) break;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rem.get_mpz_t(), p));
            out.entries.push_back({from_u64(p), e});
        }
    }
    if (rem > 1) {
        std::vector<mpz_class> hard;
        detail::factor_hard_mpz(rem, hard);
        std::sort(hard.begin(), hard.end());
        for (size_t i = 0; i < hard.size();) {
            size_t j = i;
            while (j < hard.size() && hard[j] == hard[i]) ++j;
            out.entries.push_back({hard[i], static_cast<unsigned>(j - i)});
            i = j;
        }
    }
    return out;
}

// Largest prime strictly below p. Defined for p >= 3.
inline Natural prev_prime(const Natural& p) {
    if (p <= 2) throw std::invalid_argument("prev_prime: no prime below 2");
    if (p == 3) return 2;
    auto& table = PrimeTable::instance();
    if (fits_u64(p)) {
        uint64_t v = to_u64(p);
        auto snap = table.snapshot();
        if (v - 1 <= snap->limit) {
            auto it = std::lower_bound(snap->primes.begin(), snap->primes.end(), v);
            return from_u64(*std::prev(it));
        }
        uint64_t c = v - 1;
        if (c % 2 == 0) --c;
        while (!is_prime_u64(c)) c -= 2;
        return from_u64(c);
    }
    mpz_class c = p - 1;
    if (mpz_even_p(c.get_mpz_t())) c -= 1;
    while (!is_prime(c)) c -= 2;
    return c;
}

}  // namespace nsp
