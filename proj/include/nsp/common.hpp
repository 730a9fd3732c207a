// Shared aliases, error types, and small 64-bit numeric helpers.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nsp {

// Unbounded non-negative integer. Signed quantities (abundance, hybrid
// witnesses) use mpz_class directly.
using Natural = mpz_class;

// Arbitrary-precision rational, kept canonical (gcd(num, den) = 1) by gmpxx.
using ExactRational = mpq_class;

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_range : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct checkpoint_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool fits_u64(const Natural& n) {
    return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline uint64_t to_u64(const Natural& n) {
    uint64_t lo = mpz_get_ui(n.get_mpz_t());
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
        throw std::overflow_error("natural does not fit in 64 bits");
    return lo;
}

inline Natural from_u64(uint64_t v) {
    Natural n;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return n;
}

// Strict decimal parse; rejects signs, whitespace and empty strings.
inline Natural parse_natural(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty integer literal");
    for (char c : s)
        if (c < '0' || c > '9')
            throw std::invalid_argument("not a decimal natural: '" + s + "'");
    return Natural(s, 10);
}

inline std::string to_decimal(const Natural& n) { return n.get_str(10); }

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
    return r;
}

// checked power: p^e, throws on 64-bit overflow
inline uint64_t pow_u64(uint64_t p, unsigned e) {
    uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (p != 0 && r > UINT64_MAX / p)
            throw std::overflow_error("pow_u64 overflow");
        r *= p;
    }
    return r;
}

}  // namespace nsp
