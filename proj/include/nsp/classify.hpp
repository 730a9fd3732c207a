// Perfection predicates with explicit witness divisors, unified per integer.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsp/arith.hpp"
#include "nsp/common.hpp"
#include "nsp/divfn.hpp"

namespace nsp {

inline constexpr unsigned kDefaultWitnessCap = 4;  // caps s and a+b searches

enum class BasicClass { deficient, perfect, abundant };

// sigma(sigma(n)) versus 2n, with d = |sigma(sigma(n)) - 2n|:
//   superperfect  d = 0
//   near          d >= 1 and d divides the reference value (n for Type I,
//                 sigma(n) for Type II)
//   deficient     same divisibility on the 2n - d side
// The three member cases are mutually exclusive by construction.
enum class SuperVariant { superperfect, near, deficient, neither };

struct SuperStatus {
    SuperVariant variant = SuperVariant::neither;
    Natural d;  // 0 iff superperfect

    bool is_member() const { return variant != SuperVariant::neither; }
};

inline const char* to_string(SuperVariant v) {
    switch (v) {
        case SuperVariant::superperfect: return "superperfect";
        case SuperVariant::near: return "near";
        case SuperVariant::deficient: return "deficient";
        default: return "neither";
    }
}

inline bool is_kalita_saikia(const Factorization& f) {
    for (const auto& [p, e] : f.entries)
        if (!is_prime(sigma_pp(p, e))) return false;
    return true;  // vacuous for n = 1
}

namespace detail {

inline SuperStatus super_status(const Natural& two_n, const Natural& sigma_sigma_n,
                                const Natural& divisor_source) {
    SuperStatus st;
    if (sigma_sigma_n == two_n) {
        st.variant = SuperVariant::superperfect;
        st.d = 0;
        return st;
    }
    Natural d = sigma_sigma_n > two_n ? Natural(sigma_sigma_n - two_n) : Natural(two_n - sigma_sigma_n);
    st.d = d;
    if (mpz_divisible_p(divisor_source.get_mpz_t(), d.get_mpz_t()))
        st.variant = sigma_sigma_n > two_n ? SuperVariant::near : SuperVariant::deficient;
    return st;
}

}  // namespace detail

struct ClassificationReport {
    Natural n;
    SigmaPair sigma_pair;
    BasicClass basic = BasicClass::deficient;
    std::optional<Natural> near_perfect_d;
    SuperStatus type1;
    SuperStatus type2;
    bool kalita_saikia = false;
};

inline ClassificationReport classify(const Natural& n) {
    if (n < 1) throw std::invalid_argument("classify: n must be >= 1");
    ClassificationReport rep;
    rep.n = n;
    Factorization f = factorize(n);
    rep.sigma_pair.n = n;
    rep.sigma_pair.sigma_n = sigma(f);
    rep.sigma_pair.sigma_sigma_n = sigma(factorize(rep.sigma_pair.sigma_n));
    Natural two_n = 2 * n;

    mpz_class e = rep.sigma_pair.sigma_n - two_n;
    rep.basic = e == 0 ? BasicClass::perfect : (e > 0 ? BasicClass::abundant : BasicClass::deficient);
    if (e > 0 && mpz_divisible_p(n.get_mpz_t(), mpz_class(e).get_mpz_t()))
        rep.near_perfect_d = Natural(e);

    rep.type1 = detail::super_status(two_n, rep.sigma_pair.sigma_sigma_n, n);
    rep.type2 = detail::super_status(two_n, rep.sigma_pair.sigma_sigma_n, rep.sigma_pair.sigma_n);
    rep.kalita_saikia = is_kalita_saikia(f);
    return rep;
}

// d = sigma(n) - 2n when positive and dividing n; absent otherwise.
inline std::optional<Natural> near_perfect_witness(const Natural& n) {
    mpz_class e = sigma(n) - 2 * n;
    if (e > 0 && mpz_divisible_p(n.get_mpz_t(), mpz_class(e).get_mpz_t()))
        return Natural(e);
    return std::nullopt;
}

// Every set of exactly s distinct divisors of n summing to sigma(n) - 2n,
// in lexicographic order over the ascending divisor list. Exhaustive.
inline std::vector<std::vector<Natural>> s_near_perfect_witnesses(
    const Natural& n, unsigned s, unsigned s_cap = kDefaultWitnessCap,
    uint64_t divisor_cap = kDefaultDivisorCap) {
    if (s == 0) throw std::invalid_argument("s_near_perfect_witnesses: s must be >= 1");
    if (s > s_cap)
        throw cap_exceeded("s = " + std::to_string(s) + " exceeds cap " + std::to_string(s_cap));
    std::vector<std::vector<Natural>> out;
    mpz_class target = sigma(n) - 2 * n;
    if (target <= 0) return out;

    std::vector<Natural> divs = divisors(n, divisor_cap);
    size_t count = divs.size();
    // suffix[i] = sum of divs[i..end)
    std::vector<mpz_class> suffix(count + 1, 0);
    for (size_t i = count; i-- > 0;) suffix[i] = suffix[i + 1] + divs[i];

    std::vector<size_t> picked;
    auto rec = [&](auto&& self, size_t idx, unsigned remaining, const mpz_class& rest) -> void {
        if (remaining == 0) {
            if (rest == 0) {
                std::vector<Natural> set;
                for (size_t k : picked) set.push_back(divs[k]);
                out.push_back(std::move(set));
            }
            return;
        }
        for (size_t i = idx; i + remaining <= count; ++i) {
            if (divs[i] > rest) break;  // ascending: all later too big
            mpz_class next = rest - divs[i];
            // largest remaining-1 divisors cannot reach next -> skip
            if (next > suffix[count - (remaining - 1)]) continue;
            picked.push_back(i);
            self(self, i + 1, remaining - 1, next);
            picked.pop_back();
        }
    };
    rec(rec, 0, s, target);
    return out;
}

// Exact product over the distinct primes of f: p/(p-1) + 1/p^power.
// Rejects the empty factorization (n = 1), whose degenerate product is 1.
inline ExactRational ks_abundance_bound(const Factorization& f, unsigned power) {
    if (power != 2 && power != 4)
        throw std::invalid_argument("ks_abundance_bound: power must be 2 or 4");
    if (f.entries.empty())
        throw std::invalid_argument("ks_abundance_bound: empty factorization (n = 1)");
    ExactRational prod = 1;
    for (const auto& entry : f.entries) {
        mpz_class ppow;
        mpz_pow_ui(ppow.get_mpz_t(), entry.prime.get_mpz_t(), power);
        ExactRational term(entry.prime, entry.prime - 1);
        term.canonicalize();
        ExactRational tail(1, ppow);
        tail.canonicalize();
        prod *= term + tail;
    }
    return prod;
}

// One signed witness for membership in S_{a,b}: a distinct divisors of n and
// b distinct divisors of sigma(n), signs free, summing to sigma(sigma(n)) - 2n.
// Distinctness is by absolute value within each group.
struct HybridWitness {
    std::vector<mpz_class> from_n;      // signed divisors of n
    std::vector<mpz_class> from_sigma;  // signed divisors of sigma(n)
};

namespace detail {

// Pick `remaining` distinct entries of divs starting at idx, each with either
// sign, so the signed sum equals target. First solution in index order, sign +
// before sign -, wins. Returns true and fills `chosen` on success.
inline bool signed_subset_sum(const std::vector<Natural>& divs, size_t idx, unsigned remaining,
                              const mpz_class& target, const std::vector<mpz_class>& suffix,
                              std::vector<mpz_class>& chosen) {
    if (remaining == 0) return target == 0;
    if (idx + remaining > divs.size()) return false;
    mpz_class reach = suffix[divs.size() - remaining];  // sum of the remaining largest
    if (target > reach || target < -reach) return false;
    for (size_t i = idx; i + remaining <= divs.size(); ++i) {
        for (int sign : {+1, -1}) {
            chosen.push_back(sign * divs[i]);
            if (signed_subset_sum(divs, i + 1, remaining - 1, target - chosen.back(), suffix, chosen))
                return true;
            chosen.pop_back();
        }
    }
    return false;
}

}  // namespace detail

inline std::optional<HybridWitness> hybrid_witness(const Natural& n, unsigned a, unsigned b,
                                                   unsigned ab_cap = kDefaultWitnessCap,
                                                   uint64_t divisor_cap = kDefaultDivisorCap) {
    if (a + b > ab_cap)
        throw cap_exceeded("a + b = " + std::to_string(a + b) + " exceeds cap " + std::to_string(ab_cap));
    SigmaPair sp = sigma_sigma(n);
    mpz_class target = sp.sigma_sigma_n - 2 * n;

    std::vector<Natural> divs_n = a > 0 ? divisors(n, divisor_cap) : std::vector<Natural>{};
    std::vector<Natural> divs_s = b > 0 ? divisors(sp.sigma_n, divisor_cap) : std::vector<Natural>{};

    auto suffix_sums = [](const std::vector<Natural>& v) {
        std::vector<mpz_class> suf(v.size() + 1, 0);
        for (size_t i = v.size(); i-- > 0;) suf[i] = suf[i + 1] + v[i];
        return suf;
    };
    std::vector<mpz_class> suf_n = suffix_sums(divs_n);
    std::vector<mpz_class> suf_s = suffix_sums(divs_s);

    HybridWitness w;
    // enumerate group-1 signed subsets, then close the residue with group 2
    std::vector<mpz_class> g1;
    auto rec1 = [&](auto&& self, size_t idx, unsigned remaining, const mpz_class& rest) -> bool {
        if (remaining == 0) {
            std::vector<mpz_class> g2;
            if (detail::signed_subset_sum(divs_s, 0, b, rest, suf_s, g2)) {
                w.from_n = g1;
                w.from_sigma = g2;
                return true;
            }
            return false;
        }
        if (idx + remaining > divs_n.size()) return false;
        for (size_t i = idx; i + remaining <= divs_n.size(); ++i) {
            for (int sign : {+1, -1}) {
                g1.push_back(sign * divs_n[i]);
                if (self(self, i + 1, remaining - 1, rest - g1.back())) return true;
                g1.pop_back();
            }
        }
        return false;
    };
    if (rec1(rec1, 0, a, target)) return w;
    return std::nullopt;
}

}  // namespace nsp
