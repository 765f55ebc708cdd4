#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>

namespace ccol {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt binomial(const BigInt& n, std::uint64_t k) {
    BigInt r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline BigInt factorial(std::uint64_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// n (n-1) ... (n-k+1)
inline BigInt falling_factorial(const BigInt& n, std::uint64_t k) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r *= n - i;
    return r;
}

inline BigInt pow2(std::uint64_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline std::size_t bit_length(const BigInt& x) {
    return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline BigInt floor_of(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline BigInt parse_bigint(const std::string& s) {
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return r;
}

// Unbiased draw from [0, bound) on top of a 64-bit engine. The standard
// distributions are implementation-defined; this keeps seeded runs identical
// across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

}  // namespace ccol
