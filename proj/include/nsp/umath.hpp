// 64-bit primality and factoring kernels used on the search hot path.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nsp/common.hpp"

namespace nsp {

// Deterministic Miller-Rabin. The 12-prime base set decides primality
// correctly for every n < 3.3*10^24, which covers the whole 64-bit range.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Brent's cycle variant of Pollard rho. Precondition: n odd composite, n > 1,
// no prime factor below the trial-division cutoff the caller already applied.
// Deterministic: the (c, x0) sequence is fixed, so repeated runs agree.
inline uint64_t brent_rho_u64(uint64_t n) {
    if ((n & 1) == 0) return 2;
    auto step = [n](uint64_t v, uint64_t c) {
        uint64_t s = static_cast<uint64_t>((static_cast<__uint128_t>(v) * v + c) % n);
        return s;
    };
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
        const uint64_t m = 128;
        uint64_t r = 1;
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = step(y, c);
            for (uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = step(y, c);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack one step at a time
            do {
                ys = step(ys, c);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
        // rare: cycle collapsed; retry with the next c
    }
}

struct FactorU64 {
    uint64_t p;
    uint32_t e;
    bool operator==(const FactorU64&) const = default;
};

// Factor the part of n not handled by trial division (every prime factor of n
// exceeds `trial_limit`). Splits recursively with Brent rho.
inline void factor_hard_u64(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    uint64_t d = brent_rho_u64(n);
    factor_hard_u64(d, out);
    factor_hard_u64(n / d, out);
}

// Full factorization of a 64-bit value. `primes` must be sorted; values whose
// second-smallest prime factor exceeds primes.back() are finished by rho.
inline std::vector<FactorU64> factor_u64(uint64_t n, const std::vector<uint64_t>& primes) {
    std::vector<FactorU64> f;
    if (n <= 1) return f;
    for (uint64_t p : primes) {
        if (p * p > n) break;
        if (n % p == 0) {
            uint32_t e = 0;
            do { n /= p; ++e; } while (n % p == 0);
            f.push_back({p, e});
        }
    }
    if (n > 1) {
        if (is_prime_u64(n)) {
            f.push_back({n, 1});
        } else {
            std::vector<uint64_t> hard;
            factor_hard_u64(n, hard);
            std::sort(hard.begin(), hard.end());
            for (size_t i = 0; i < hard.size();) {
                size_t j = i;
                while (j < hard.size() && hard[j] == hard[i]) ++j;
                f.push_back({hard[i], static_cast<uint32_t>(j - i)});
                i = j;
            }
        }
    }
    return f;
}

// sigma(p^e) = 1 + p + ... + p^e in 64 bits (caller guarantees no overflow).
inline uint64_t sigma_pp_u64(uint64_t p, uint32_t e) {
    uint64_t s = 1, pw = 1;
    for (uint32_t i = 0; i < e; ++i) {
        pw *= p;
        s += pw;
    }
    return s;
}

inline uint64_t sigma_of_factors_u64(const std::vector<FactorU64>& f) {
    uint64_t s = 1;
    for (const auto& [p, e] : f) s *= sigma_pp_u64(p, e);
    return s;
}

}  // namespace nsp
