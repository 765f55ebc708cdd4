#pragma once

// Certified evaluation of the sign-pattern bound on simple order types and of
// the resulting upper bound on the size of a smallest conflict collection.
//
// All logarithms are carried as rational intervals. A floor is only reported
// as certified when the whole interval sits strictly between two integers.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccol/bigint.hpp"

namespace ccol {

struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

/// Bracket [lo, hi] of log2 of a positive integer.
using CertifiedLog = RationalInterval;

/// Default refinement: enclosures of width at most 2^-128.
constexpr unsigned kDefaultLogBits = 128;
/// The precision ladder stops here.
constexpr unsigned kMaxLogBits = 1024;

/// 2 (2d)^nvars * sum_{k=0}^{nvars} 2^k C(m,k).
BigInt warren_component_bound(std::uint64_t m, std::uint64_t nvars, std::uint64_t d);

/// 2 * 16^n * sum_{k=0}^{2n} 2^k C(C(n,3), k), n >= 3.
BigInt ts_upper_bound(long n);

/// Width <= 2^-bits; exact for powers of two.
CertifiedLog log2_certified(const BigInt& x, unsigned bits = kDefaultLogBits);

/// log2 of (8 (e n/2)^2 ln(n/2))^(2n + ln(n/2)), n >= 3.
CertifiedLog alon_ts_bound_log2(long n, unsigned bits = kDefaultLogBits);

/// Enclosure of log2(n!) from two-sided Stirling (Robbins) bounds.
CertifiedLog log2_factorial_stirling(const BigInt& n, unsigned bits = kDefaultLogBits);
/// Enclosure of log2(ts_upper_bound(n)) without forming the sum: the top term
/// 2^(2n) C(m, 2n) from Stirling bounds, times the geometric tail factor.
/// n >= 16.
CertifiedLog ts_upper_bound_log2_stirling(long n, unsigned bits = kDefaultLogBits);

enum class EvalMode { Exact, Stirling };
const char* to_string(EvalMode m);

struct SigmaBoundReport {
    long n = 0;
    CertifiedLog ts_log2;
    CertifiedLog factorial_log2;     // log2((n-3)!)
    RationalInterval numerator;      // log2 ts - (n-4) - log2((n-3)!)
    RationalInterval denominator;    // n - log2(16 n (n-1) (n-2))
    RationalInterval quotient;
    long sigma_bound = 0;            // floor(quotient) + 2, lower candidate if uncertified
    bool certified = false;
    unsigned precision_bits = 0;
    EvalMode mode = EvalMode::Exact;
};

/// floor[(ts_log2 - (n-4) - log2((n-3)!)) / (n - log2(16n(n-1)(n-2)))] + 2 for n >= 16.
SigmaBoundReport sigma_upper_bound(long n, const CertifiedLog& ts_log2, unsigned bits = kDefaultLogBits);

/// Full pipeline with the precision ladder 128, 256, 512, 1024 bits.
SigmaBoundReport sigma_bound_for(long n, EvalMode mode = EvalMode::Exact);

struct RangeReport {
    bool ok = false;
    std::vector<SigmaBoundReport> rows;
    std::vector<long> mismatched;
    std::vector<long> uncertified;
};

/// ok iff every n in [from, to] certifies to exactly `expected`.
RangeReport verify_sigma_range(long from, long to, long expected);

struct TrendRow {
    long n = 0;
    long sigma_bound = 0;
    double ratio = 0.0;  // sigma_bound / log2(n)
    bool certified = false;
    EvalMode mode = EvalMode::Exact;
};

/// Largest n evaluated with exact big-integer sums; beyond it Stirling mode.
constexpr long kExactModeLimit = 512;

std::vector<TrendRow> asymptotic_trend(std::span<const long> ns);

/// Decimal rendering of a rational to `digits` places (truncated toward -inf).
std::string to_decimal(const Rational& q, int digits = 20);

}  // namespace ccol
