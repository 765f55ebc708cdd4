#pragma once

// Closed real intervals with MPFR endpoints: lower ends rounded toward -inf,
// upper ends toward +inf, so every operation returns an enclosure.

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "ccol/bigint.hpp"

namespace ccol::detail {

class MpfrInterval {
public:
    explicit MpfrInterval(mpfr_prec_t prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    MpfrInterval(const MpfrInterval& o) : MpfrInterval(mpfr_get_prec(o.lo_)) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    MpfrInterval& operator=(MpfrInterval o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~MpfrInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static MpfrInterval of(const BigInt& v, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval of(const Rational& v, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval hull(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
        if (hi < lo) throw std::invalid_argument("empty interval");
        MpfrInterval r(prec);
        mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval e(mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_t one;
        mpfr_init2(one, prec);
        mpfr_set_ui(one, 1, MPFR_RNDN);
        mpfr_exp(r.lo_, one, MPFR_RNDD);
        mpfr_exp(r.hi_, one, MPFR_RNDU);
        mpfr_clear(one);
        return r;
    }
    static MpfrInterval pi(mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }

    friend MpfrInterval operator+(const MpfrInterval& a, const MpfrInterval& b) {
        MpfrInterval r(a.prec());
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend MpfrInterval operator-(const MpfrInterval& a, const MpfrInterval& b) {
        MpfrInterval r(a.prec());
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend MpfrInterval operator*(const MpfrInterval& a, const MpfrInterval& b) {
        return combine(a, b, mpfr_mul);
    }
    friend MpfrInterval operator/(const MpfrInterval& a, const MpfrInterval& b) {
        if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
            throw std::domain_error("interval division by an interval containing zero");
        return combine(a, b, mpfr_div);
    }

    MpfrInterval log() const {
        if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of a non-positive interval");
        MpfrInterval r(prec());
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    MpfrInterval log2() const {
        if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log2 of a non-positive interval");
        MpfrInterval r(prec());
        mpfr_log2(r.lo_, lo_, MPFR_RNDD);
        mpfr_log2(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Rational lo() const { return to_rational(lo_); }
    Rational hi() const { return to_rational(hi_); }
    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

private:
    using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    static MpfrInterval combine(const MpfrInterval& a, const MpfrInterval& b, BinaryOp op) {
        MpfrInterval r(a.prec());
        mpfr_t t;
        mpfr_init2(t, a.prec());
        const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
        const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                op(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
                op(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }

    static Rational to_rational(const mpfr_t v) {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v);
        return q;
    }

    mpfr_t lo_;
    mpfr_t hi_;
};

}  // namespace ccol::detail
