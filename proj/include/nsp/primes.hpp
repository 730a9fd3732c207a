// Process-wide prime table. Sieved once up front (default bound 10^6,
// override with NSP_SIEVE_BOUND), grown on demand behind a mutex. Readers
// take an immutable snapshot, so growth never invalidates concurrent work.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <vector>

#include "nsp/common.hpp"
#include "nsp/umath.hpp"

namespace nsp {

struct PrimeSnapshot {
    uint64_t limit = 0;                 // every prime <= limit is listed
    std::vector<uint64_t> primes;

    bool contains(uint64_t n) const {
        return std::binary_search(primes.begin(), primes.end(), n);
    }
};

using PrimeSnapshotPtr = std::shared_ptr<const PrimeSnapshot>;

namespace detail {

inline PrimeSnapshotPtr sieve_to(uint64_t limit) {
    auto snap = std::make_shared<PrimeSnapshot>();
    snap->limit = limit;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) snap->primes.push_back(i);
    return snap;
}

}  // namespace detail

class PrimeTable {
  public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    PrimeSnapshotPtr snapshot() {
        std::lock_guard<std::mutex> lock(mutex_);
        return current_;
    }

    PrimeSnapshotPtr ensure_limit(uint64_t limit) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (limit > current_->limit)
            current_ = detail::sieve_to(std::max(limit, current_->limit * 2));
        return current_;
    }

    PrimeSnapshotPtr ensure_count(size_t count) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (current_->primes.size() < count)
            current_ = detail::sieve_to(current_->limit * 2);
        return current_;
    }

    static uint64_t default_limit() {
        if (const char* env = std::getenv("NSP_SIEVE_BOUND")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 1000) return static_cast<uint64_t>(v);
        }
        return 1'000'000;
    }

  private:
    PrimeTable() : current_(detail::sieve_to(default_limit())) {}

    std::mutex mutex_;
    PrimeSnapshotPtr current_;
};

// P_i with P_1 = 2.
inline Natural nth_prime(uint64_t i) {
    if (i == 0) throw std::invalid_argument("nth_prime: index starts at 1");
    auto snap = PrimeTable::instance().ensure_count(i);
    return from_u64(snap->primes[i - 1]);
}

inline uint64_t nth_prime_u64(uint64_t i) {
    if (i == 0) throw std::invalid_argument("nth_prime: index starts at 1");
    auto snap = PrimeTable::instance().ensure_count(i);
    return snap->primes[i - 1];
}

}  // namespace nsp
