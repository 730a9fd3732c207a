// Divisor-sum functions and derived multiplicative maps.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nsp/arith.hpp"
#include "nsp/common.hpp"

namespace nsp {

inline constexpr uint64_t kDefaultDivisorCap = 1'000'000;

// sigma(p^e) = (p^(e+1) - 1) / (p - 1)
inline Natural sigma_pp(const Natural& p, unsigned e) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), e + 1);
    pw -= 1;
    mpz_class den = p - 1;
    mpz_divexact(pw.get_mpz_t(), pw.get_mpz_t(), den.get_mpz_t());
    return pw;
}

// Multiplicative expansion over the factorization; sigma(1) = 1 (empty product).
inline Natural sigma(const Factorization& f) {
    Natural s = 1;
    for (const auto& [p, e] : f.entries) s *= sigma_pp(p, e);
    return s;
}

inline Natural sigma(const Natural& n) { return sigma(factorize(n)); }

struct SigmaPair {
    Natural n;
    Natural sigma_n;
    Natural sigma_sigma_n;
};

// sigma(sigma(n)) by refactorizing sigma(n). No shortcut: colliding
// sigma(p^a) values merge in the refactorization and must be handled there.
inline SigmaPair sigma_sigma(const Natural& n) {
    SigmaPair out;
    out.n = n;
    out.sigma_n = sigma(factorize(n));
    out.sigma_sigma_n = sigma(factorize(out.sigma_n));
    return out;
}

inline uint64_t divisor_count(const Factorization& f) {
    uint64_t count = 1;
    for (const auto& entry : f.entries) {
        if (count > UINT64_MAX / (entry.exponent + 1)) return UINT64_MAX;
        count *= entry.exponent + 1;
    }
    return count;
}

// All positive divisors in increasing order. Throws cap_exceeded when the
// divisor count would exceed `cap`, which is distinct from any legal result
// (a legal result always contains at least {1}).
inline std::vector<Natural> divisors(const Factorization& f, uint64_t cap = kDefaultDivisorCap) {
    uint64_t count = divisor_count(f);
    if (count > cap)
        throw cap_exceeded("divisor count " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
    std::vector<Natural> divs{Natural(1)};
    divs.reserve(count);
    for (const auto& [p, e] : f.entries) {
        size_t base = divs.size();
        mpz_class pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline std::vector<Natural> divisors(const Natural& n, uint64_t cap = kDefaultDivisorCap) {
    return divisors(factorize(n), cap);
}

// Abundance e(n) = sigma(n) - 2n (the "excedent"); negative for deficient n.
inline mpz_class abundance(const Natural& n) { return sigma(n) - 2 * n; }

// Multiplicative map with t(2^m) = 1 and t(p^e) = q^e for odd prime p,
// where q is the largest prime below p (OEIS A337343's t).
inline Natural t_map(const Natural& n) {
    Natural out = 1;
    mpz_class pw;
    for (const auto& [p, e] : factorize(n).entries) {
        if (p == 2) continue;
        Natural q = prev_prime(p);
        mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), e);
        out *= pw;
    }
    return out;
}

}  // namespace nsp
