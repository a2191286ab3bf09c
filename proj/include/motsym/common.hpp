#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace motsym {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by the whole library. The CLI maps these onto
// exit codes: input_error -> 2, limit_error -> 3, everything checkable
// (rejected certificates, failed properties) is reported, not thrown.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct input_error : error {
    explicit input_error(const std::string& msg) : error(msg) {}
};

// Dimension mismatches, singular inversion, context mismatches.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// Factorization degree caps and similar resource guards.
struct limit_error : error {
    explicit limit_error(const std::string& msg) : error(msg) {}
};

// Requested computation has no implemented (complete) algorithm,
// e.g. invariants of K^M_l(Q) for l >= 3.
struct unsupported_error : error {
    explicit unsupported_error(const std::string& msg) : error(msg) {}
};

// Deterministic per-call RNG context. std::mt19937_64 has a fixed
// algorithm, so runs are reproducible across platforms; we roll our own
// bounded draws because std distributions are not portable.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool flip() { return (eng_() & 1u) != 0; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace motsym
