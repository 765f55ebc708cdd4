#include "ccol/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "mpfr_interval.hpp"

namespace ccol {

using detail::MpfrInterval;

namespace {

RationalInterval divide_by_positive(const RationalInterval& a, const RationalInterval& b) {
    if (b.lo <= 0) throw std::invalid_argument("denominator interval is not positive");
    Rational lo = a.lo >= 0 ? Rational(a.lo / b.hi) : Rational(a.lo / b.lo);
    Rational hi = a.hi >= 0 ? Rational(a.hi / b.lo) : Rational(a.hi / b.hi);
    return {lo, hi};
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Binary digits of log2(y), y = x / 2^e in [1, 2), by repeated squaring on
// w-bit fixed point. Returns false when the enclosure of y^(2^k) straddles 2
// and a wider w is needed.
bool binary_log_digits(const BigInt& x, std::size_t e, unsigned digits, unsigned w, BigInt& out) {
    BigInt lo, hi;
    if (e > w) {
        lo = x >> static_cast<mp_bitcnt_t>(e - w);
        hi = lo + 1;
    } else {
        lo = x << static_cast<mp_bitcnt_t>(w - e);
        hi = lo;
    }
    const BigInt two = BigInt(1) << (w + 1);
    out = 0;
    for (unsigned k = 0; k < digits; ++k) {
        lo = (lo * lo) >> w;
        BigInt sq = hi * hi;
        hi = sq >> w;
        if (mpz_scan1(sq.get_mpz_t(), 0) < w) hi += 1;
        out <<= 1;
        const bool lo_big = lo >= two;
        const bool hi_big = hi >= two;
        if (lo_big != hi_big) return false;
        if (lo_big) {
            out += 1;
            lo >>= 1;
            const bool odd = mpz_odd_p(hi.get_mpz_t());
            hi >>= 1;
            if (odd) hi += 1;
        }
    }
    return true;
}

RationalInterval to_interval(const MpfrInterval& v) { return {v.lo(), v.hi()}; }

// Robbins: ln N! lies in [S(N) + 1/(12N+1), S(N) + 1/(12N)] with
// S(N) = (N + 1/2) ln N - N + ln(2 pi) / 2, for N >= 1.
MpfrInterval ln_factorial(const BigInt& n, mpfr_prec_t prec) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    if (n <= 1) return MpfrInterval::of(BigInt(0), prec);
    const auto N = MpfrInterval::of(n, prec);
    const auto half = MpfrInterval::of(Rational(1, 2), prec);
    const auto s = (N + half) * N.log() - N + half * (MpfrInterval::of(BigInt(2), prec) * MpfrInterval::pi(prec)).log();
    const BigInt twelve_n = 12 * n;
    const auto corr = MpfrInterval::hull(Rational(BigInt(1), twelve_n + 1), Rational(BigInt(1), twelve_n), prec);
    return s + corr;
}

MpfrInterval ln2(mpfr_prec_t prec) { return MpfrInterval::of(BigInt(2), prec).log(); }

}  // namespace

BigInt warren_component_bound(std::uint64_t m, std::uint64_t nvars, std::uint64_t d) {
    if (m < 1 || nvars < 1 || d < 1) throw std::invalid_argument("warren_component_bound needs m, nvars, d >= 1");
    BigInt sum = 0;
    BigInt c = 1;  // C(m, k)
    for (std::uint64_t k = 0; k <= nvars && k <= m; ++k) {
        if (k > 0) {
            c *= m - k + 1;
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k);
        }
        sum += c << static_cast<mp_bitcnt_t>(k);
    }
    BigInt base;
    mpz_ui_pow_ui(base.get_mpz_t(), 2 * d, nvars);
    return 2 * base * sum;
}

BigInt ts_upper_bound(long n) {
    if (n < 3) throw std::invalid_argument("ts_upper_bound needs n >= 3");
    const auto m = static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) / 6;
    return warren_component_bound(m, 2 * static_cast<std::uint64_t>(n), 2);
}

CertifiedLog log2_certified(const BigInt& x, unsigned bits) {
    if (x < 1) throw std::invalid_argument("log2_certified needs x >= 1");
    const std::size_t e = bit_length(x) - 1;
    if (mpz_scan1(x.get_mpz_t(), 0) == e) return {Rational(BigInt(e)), Rational(BigInt(e))};
    BigInt digits;
    for (unsigned w = bits + 64;; w *= 2)
        if (binary_log_digits(x, e, bits, w, digits)) break;
    const Rational scale(BigInt(1), pow2(bits));
    Rational lo = Rational(BigInt(e)) + Rational(digits) * scale;
    Rational hi = lo + scale;
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

CertifiedLog alon_ts_bound_log2(long n, unsigned bits) {
    if (n < 3) throw std::invalid_argument("alon_ts_bound_log2 needs n >= 3");
    const Rational target(BigInt(1), pow2(bits));
    for (mpfr_prec_t prec = bits + 64;; prec *= 2) {
        const auto half_n = MpfrInterval::of(Rational(n, 2), prec);
        const auto l = half_n.log();
        const auto en = MpfrInterval::e(prec) * half_n;
        const auto base = MpfrInterval::of(BigInt(8), prec) * en * en * l;
        const auto exponent = MpfrInterval::of(BigInt(2 * n), prec) + l;
        const auto r = to_interval(exponent * base.log2());
        if (r.width() <= target) return r;
    }
}

CertifiedLog log2_factorial_stirling(const BigInt& n, unsigned bits) {
    const mpfr_prec_t prec = bits + 128;
    return to_interval(ln_factorial(n, prec) / ln2(prec));
}

CertifiedLog ts_upper_bound_log2_stirling(long n, unsigned bits) {
    if (n < 16) throw std::invalid_argument("Stirling mode needs n >= 16");
    const mpfr_prec_t prec = bits + 128;
    const BigInt m = binomial(static_cast<std::uint64_t>(n), 3);
    const BigInt k = 2 * n;
    // Top term T = 2^(2n) C(m, 2n); successive ratios are at least
    // r = 2(m - 2n + 1) / (2n) going downwards, so T <= sum <= T r / (r - 1).
    const Rational r(2 * (m - k + 1), k);
    if (r <= 1) throw std::invalid_argument("geometric tail bound needs ratio > 1");
    const auto ln_binom = ln_factorial(m, prec) - ln_factorial(k, prec) - ln_factorial(m - k, prec);
    const Rational r_tail = r / (r - 1);
    const auto tail = MpfrInterval::hull(Rational(1), r_tail, prec).log();
    // log2 ts = 1 + 4n + 2n + log2 C(m,2n) + log2(tail)
    const auto fixed = MpfrInterval::of(BigInt(1 + 4 * n + 2 * n), prec);
    return to_interval(fixed + (ln_binom + tail) / ln2(prec));
}

const char* to_string(EvalMode m) { return m == EvalMode::Exact ? "exact" : "stirling"; }

namespace {

SigmaBoundReport finish_report(long n, const CertifiedLog& ts_log2, const CertifiedLog& fact, unsigned bits) {
    SigmaBoundReport rep;
    rep.n = n;
    rep.ts_log2 = ts_log2;
    rep.factorial_log2 = fact;
    rep.precision_bits = bits;
    const Rational shift(BigInt(n - 4));
    rep.numerator = {ts_log2.lo - shift - fact.hi, ts_log2.hi - shift - fact.lo};
    const BigInt inner = BigInt(16) * n * (n - 1) * (n - 2);
    const auto l = log2_certified(inner, bits);
    rep.denominator = {Rational(BigInt(n)) - l.hi, Rational(BigInt(n)) - l.lo};
    rep.quotient = divide_by_positive(rep.numerator, rep.denominator);
    const BigInt f_lo = floor_of(rep.quotient.lo);
    const BigInt f_hi = floor_of(rep.quotient.hi);
    rep.certified = f_lo == f_hi && !is_integer(rep.quotient.lo);
    rep.sigma_bound = f_lo.get_si() + 2;
    return rep;
}

}  // namespace

SigmaBoundReport sigma_upper_bound(long n, const CertifiedLog& ts_log2, unsigned bits) {
    if (n < 16) throw std::invalid_argument("sigma_upper_bound needs n >= 16");
    if (ts_log2.hi < ts_log2.lo) throw std::invalid_argument("empty ts_log2 interval");
    return finish_report(n, ts_log2, log2_certified(factorial(static_cast<std::uint64_t>(n - 3)), bits), bits);
}

SigmaBoundReport sigma_bound_for(long n, EvalMode mode) {
    if (n < 16) throw std::invalid_argument("sigma bound needs n >= 16");
    SigmaBoundReport rep;
    if (mode == EvalMode::Exact) {
        const BigInt ts = ts_upper_bound(n);
        const BigInt fact = factorial(static_cast<std::uint64_t>(n - 3));
        for (unsigned bits = kDefaultLogBits; bits <= kMaxLogBits; bits *= 2) {
            rep = finish_report(n, log2_certified(ts, bits), log2_certified(fact, bits), bits);
            if (rep.certified) break;
        }
    } else {
        for (unsigned bits = kDefaultLogBits; bits <= kMaxLogBits; bits *= 2) {
            rep = finish_report(n, ts_upper_bound_log2_stirling(n, bits),
                                log2_factorial_stirling(BigInt(n - 3), bits), bits);
            if (rep.certified) break;
        }
    }
    rep.mode = mode;
    return rep;
}

RangeReport verify_sigma_range(long from, long to, long expected) {
    if (from < 16 || from > to) throw std::invalid_argument("verify_sigma_range needs 16 <= from <= to");
    RangeReport out;
    for (long n = from; n <= to; ++n) {
        auto rep = sigma_bound_for(n, EvalMode::Exact);
        if (!rep.certified) out.uncertified.push_back(n);
        else if (rep.sigma_bound != expected) out.mismatched.push_back(n);
        out.rows.push_back(std::move(rep));
    }
    out.ok = out.uncertified.empty() && out.mismatched.empty();
    return out;
}

std::vector<TrendRow> asymptotic_trend(std::span<const long> ns) {
    std::vector<TrendRow> rows;
    for (long n : ns) {
        if (n < 16) throw std::invalid_argument("asymptotic_trend needs n >= 16");
        const EvalMode mode = n <= kExactModeLimit ? EvalMode::Exact : EvalMode::Stirling;
        const auto rep = sigma_bound_for(n, mode);
        rows.push_back({n, rep.sigma_bound, static_cast<double>(rep.sigma_bound) / std::log2(static_cast<double>(n)),
                        rep.certified, mode});
    }
    return rows;
}

std::string to_decimal(const Rational& q, int digits) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const BigInt v = floor_of(q * scale);
    const bool neg = v < 0;
    const BigInt a = neg ? BigInt(-v) : v;
    const BigInt ip = a / scale;
    std::string frac = BigInt(a % scale).get_str();
    if (digits > 0) frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace ccol
