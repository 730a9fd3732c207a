// Cheap necessary conditions for membership in Q (Type I near superperfect
// or deficient superperfect) that avoid computing sigma(sigma(n)).
// Applied in a fixed order: residue tests on the factorization first, then
// the sigma-shape test, then magnitude bounds.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nsp/arith.hpp"
#include "nsp/common.hpp"
#include "nsp/umath.hpp"

namespace nsp {

enum class PruneLemma : int {
    mod8 = 0,             // 8 || n and n > 8
    mod2and5,             // 2 | n and 5 || n
    mod3pair,             // 3 || n and p || n for some odd prime p = 2 (mod 3)
    odd_sigma_shape,      // n odd and sigma(n) != 2^k * (odd square)
    even_sigma_abundant,  // 2 | sigma(n) and sigma(n) > 2n
    sigma_3n,             // sigma(n) > 3n
    sigma_3n_tight,       // near-superperfect scans only: the sqrt-tightened 3n bound
};

inline constexpr int kPruneLemmaCount = 7;

inline const char* to_string(PruneLemma l) {
    static constexpr const char* names[kPruneLemmaCount] = {
        "MOD8", "MOD2AND5", "MOD3PAIR", "ODD_SIGMA_SHAPE",
        "EVEN_SIGMA_ABUNDANT", "SIGMA_3N", "SIGMA_3N_TIGHT"};
    return names[static_cast<int>(l)];
}

struct PruneOutcome {
    std::optional<PruneLemma> pruned_by;  // empty means survivor

    bool survived() const { return !pruned_by.has_value(); }
};

// q_set scans Q itself (lemmas 1-6); near_only additionally applies the
// tightened magnitude bound, valid only for the near-superperfect side.
enum class PruneMode { q_set, near_only };

struct PruneStats {
    std::array<uint64_t, kPruneLemmaCount> pruned{};
    uint64_t survivors = 0;

    uint64_t examined() const {
        uint64_t total = survivors;
        for (uint64_t c : pruned) total += c;
        return total;
    }

    void record(const PruneOutcome& o) {
        if (o.survived())
            ++survivors;
        else
            ++pruned[static_cast<int>(*o.pruned_by)];
    }

    void merge(const PruneStats& other) {
        for (int i = 0; i < kPruneLemmaCount; ++i) pruned[i] += other.pruned[i];
        survivors += other.survivors;
    }

    std::string serialize() const {
        std::ostringstream os;
        for (int i = 0; i < kPruneLemmaCount; ++i)
            os << to_string(static_cast<PruneLemma>(i)) << '=' << pruned[i] << ' ';
        os << "survivors=" << survivors;
        return os.str();
    }
};

// true iff the odd part of x is a perfect square (so x = 2^k * m^2, m odd)
inline bool sigma_shape_is_pow2_times_square_u64(uint64_t x) {
    while ((x & 1) == 0) x >>= 1;
    uint64_t r = isqrt_u64(x);
    return r * r == x;
}

inline bool sigma_shape_is_pow2_times_square(const Natural& s) {
    if (s < 1) throw std::invalid_argument("sigma_shape: input must be >= 1");
    if (fits_u64(s)) return sigma_shape_is_pow2_times_square_u64(to_u64(s));
    mpz_class odd;
    mpz_tdiv_q_2exp(odd.get_mpz_t(), s.get_mpz_t(), mpz_scan1(s.get_mpz_t(), 0));
    return mpz_perfect_square_p(odd.get_mpz_t());
}

// sigma(n) > 3n - (sqrt(12n+1)-1)/2, decided in integers only. With
// e = 3n - sigma(n) >= 0 this is (2e+1)^2 < 12n+1; for sigma(n) > 3n the
// bound holds trivially.
inline bool sigma_exceeds_tight_bound_u64(uint64_t n, uint64_t sigma_n) {
    if (sigma_n > 3 * n) return true;
    uint64_t e = 3 * n - sigma_n;
    __uint128_t lhs = static_cast<__uint128_t>(2 * e + 1) * (2 * e + 1);
    return lhs < static_cast<__uint128_t>(12) * n + 1;
}

inline bool sigma_exceeds_tight_bound(const Natural& n, const Natural& sigma_n) {
    if (sigma_n > 3 * n) return true;
    mpz_class e = 3 * n - sigma_n;
    mpz_class lhs = (2 * e + 1) * (2 * e + 1);
    return lhs < 12 * n + 1;
}

inline std::optional<PruneLemma> prune_u64(uint64_t n, const std::vector<FactorU64>& f,
                                           uint64_t sigma_n, PruneMode mode) {
    uint32_t e2 = 0, e3 = 0, e5 = 0;
    bool pair_mod3 = false;
    for (const auto& [p, e] : f) {
        if (p == 2)
            e2 = e;
        else if (p == 3)
            e3 = e;
        else {
            if (p == 5) e5 = e;
            if (e == 1 && p % 3 == 2) pair_mod3 = true;
        }
    }
    if (e2 == 3 && n > 8) return PruneLemma::mod8;
    if (e2 >= 1 && e5 == 1) return PruneLemma::mod2and5;
    if (e3 == 1 && pair_mod3) return PruneLemma::mod3pair;
    if (e2 == 0 && !sigma_shape_is_pow2_times_square_u64(sigma_n)) return PruneLemma::odd_sigma_shape;
    if ((sigma_n & 1) == 0 && sigma_n > 2 * n) return PruneLemma::even_sigma_abundant;
    if (sigma_n > 3 * n) return PruneLemma::sigma_3n;
    if (mode == PruneMode::near_only && sigma_exceeds_tight_bound_u64(n, sigma_n))
        return PruneLemma::sigma_3n_tight;
    return std::nullopt;
}

// General form over Naturals; same pipeline as prune_u64.
inline PruneOutcome prune(const Natural& n, const Factorization& f, const Natural& sigma_n,
                          PruneMode mode = PruneMode::q_set) {
    unsigned e2 = 0, e3 = 0, e5 = 0;
    bool pair_mod3 = false;
    for (const auto& [p, e] : f.entries) {
        if (p == 2)
            e2 = e;
        else if (p == 3)
            e3 = e;
        else {
            if (p == 5) e5 = e;
            if (e == 1 && mpz_fdiv_ui(p.get_mpz_t(), 3) == 2) pair_mod3 = true;
        }
    }
    auto hit = [](PruneLemma l) { return PruneOutcome{l}; };
    if (e2 == 3 && n > 8) return hit(PruneLemma::mod8);
    if (e2 >= 1 && e5 == 1) return hit(PruneLemma::mod2and5);
    if (e3 == 1 && pair_mod3) return hit(PruneLemma::mod3pair);
    if (e2 == 0 && !sigma_shape_is_pow2_times_square(sigma_n)) return hit(PruneLemma::odd_sigma_shape);
    if (mpz_even_p(sigma_n.get_mpz_t()) && sigma_n > 2 * n) return hit(PruneLemma::even_sigma_abundant);
    if (sigma_n > 3 * n) return hit(PruneLemma::sigma_3n);
    if (mode == PruneMode::near_only && sigma_exceeds_tight_bound(n, sigma_n))
        return hit(PruneLemma::sigma_3n_tight);
    return PruneOutcome{std::nullopt};
}

}  // namespace nsp
