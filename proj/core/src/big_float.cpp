#include "chatterkit/big_float.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace chatterkit {

namespace {

mpfr_prec_t check_prec(mpfr_prec_t bits) {
    if (bits < MPFR_PREC_MIN || bits > 1 << 24) {
        throw std::invalid_argument("BigFloat: precision out of range: " + std::to_string(bits));
    }
    return bits;
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t precision_bits) {
    mpfr_init2(value_, check_prec(precision_bits));
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t precision_bits) {
    mpfr_init2(value_, check_prec(precision_bits));
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value, mpfr_prec_t precision_bits) {
    mpfr_init2(value_, check_prec(precision_bits));
    mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) {
        mpfr_swap(value_, other.value_);
    }
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_string(const std::string& text, mpfr_prec_t precision_bits) {
    BigFloat out(check_prec(precision_bits));
    if (text.empty()) {
        throw std::invalid_argument("BigFloat: empty numeric string");
    }
    char* end = nullptr;
    mpfr_strtofr(out.value_, text.c_str(), &end, 10, MPFR_RNDN);
    if (end != text.c_str() + text.size()) {
        throw std::invalid_argument("BigFloat: malformed number: '" + text + "'");
    }
    return out;
}

BigFloat BigFloat::rounded_to(mpfr_prec_t precision_bits) const {
    BigFloat out(check_prec(precision_bits));
    mpfr_set(out.value_, value_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::pi(mpfr_prec_t precision_bits) {
    BigFloat out(check_prec(precision_bits));
    mpfr_const_pi(out.value_, MPFR_RNDN);
    return out;
}

std::string BigFloat::to_string() const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(value_)) return mpfr_signbit(value_) ? "-0" : "0";

    mpfr_exp_t exp10 = 0;
    // n = 0 requests enough digits for an exact round trip at this precision.
    char* digits = mpfr_get_str(nullptr, &exp10, 10, 0, value_, MPFR_RNDN);
    std::string raw(digits);
    mpfr_free_str(digits);

    std::string sign;
    if (!raw.empty() && raw[0] == '-') {
        sign = "-";
        raw.erase(0, 1);
    }
    // Trim trailing zeros (keep at least one digit).
    auto last = raw.find_last_not_of('0');
    raw.erase(std::min(raw.size(), last + 1));

    // mpfr_get_str places the decimal point before the first digit; rewrite
    // in d.ddd...e<k> form.
    std::string mantissa = raw.substr(0, 1);
    if (raw.size() > 1) mantissa += "." + raw.substr(1);
    return sign + mantissa + "e" + std::to_string(static_cast<long>(exp10 - 1));
}

namespace {
mpfr_prec_t joint_prec(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}
}  // namespace

BigFloat BigFloat::operator-() const {
    BigFloat out(precision());
    mpfr_neg(out.value_, value_, MPFR_RNDN);
    return out;
}

#define CHATTERKIT_BIGFLOAT_COMPOUND(op, fn)                                  \
    BigFloat& BigFloat::operator op(const BigFloat& rhs) {                    \
        mpfr_prec_t p = joint_prec(*this, rhs);                               \
        if (p != precision()) mpfr_prec_round(value_, p, MPFR_RNDN);          \
        fn(value_, value_, rhs.value_, MPFR_RNDN);                            \
        return *this;                                                         \
    }

CHATTERKIT_BIGFLOAT_COMPOUND(+=, mpfr_add)
CHATTERKIT_BIGFLOAT_COMPOUND(-=, mpfr_sub)
CHATTERKIT_BIGFLOAT_COMPOUND(*=, mpfr_mul)
CHATTERKIT_BIGFLOAT_COMPOUND(/=, mpfr_div)
#undef CHATTERKIT_BIGFLOAT_COMPOUND

BigFloat& BigFloat::operator*=(long rhs) {
    mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(long rhs) {
    mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

#define CHATTERKIT_BIGFLOAT_UNARY(name, fn)       \
    BigFloat name(const BigFloat& x) {            \
        BigFloat out(x.precision());              \
        fn(out.value_, x.value_, MPFR_RNDN);      \
        return out;                               \
    }

CHATTERKIT_BIGFLOAT_UNARY(abs, mpfr_abs)
CHATTERKIT_BIGFLOAT_UNARY(exp, mpfr_exp)
CHATTERKIT_BIGFLOAT_UNARY(log, mpfr_log)
CHATTERKIT_BIGFLOAT_UNARY(log1p, mpfr_log1p)
CHATTERKIT_BIGFLOAT_UNARY(expm1, mpfr_expm1)
CHATTERKIT_BIGFLOAT_UNARY(sqrt, mpfr_sqrt)
#undef CHATTERKIT_BIGFLOAT_UNARY

BigFloat floor(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_floor(out.value_, x.value_);
    return out;
}

BigFloat mul_2si(const BigFloat& x, long e) {
    BigFloat out(x.precision());
    mpfr_mul_2si(out.value_, x.value_, e, MPFR_RNDN);
    return out;
}

ExactRational::ExactRational() { mpq_init(value_); }

ExactRational::ExactRational(long numerator, long denominator) {
    if (denominator == 0) throw std::invalid_argument("ExactRational: zero denominator");
    mpq_init(value_);
    mpq_set_si(value_, numerator, 1);
    mpq_t d;
    mpq_init(d);
    mpq_set_si(d, denominator, 1);
    mpq_div(value_, value_, d);
    mpq_clear(d);
}

ExactRational::ExactRational(const ExactRational& other) {
    mpq_init(value_);
    mpq_set(value_, other.value_);
}

ExactRational::ExactRational(ExactRational&& other) noexcept {
    mpq_init(value_);
    mpq_swap(value_, other.value_);
}

ExactRational& ExactRational::operator=(const ExactRational& other) {
    if (this != &other) mpq_set(value_, other.value_);
    return *this;
}

ExactRational& ExactRational::operator=(ExactRational&& other) noexcept {
    if (this != &other) mpq_swap(value_, other.value_);
    return *this;
}

ExactRational::~ExactRational() { mpq_clear(value_); }

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
    mpq_add(value_, value_, rhs.value_);
    return *this;
}

ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
    mpq_sub(value_, value_, rhs.value_);
    return *this;
}

void ExactRational::add_reciprocal(long m, int sign) {
    if (m == 0) throw std::invalid_argument("ExactRational: reciprocal of zero");
    mpq_t term;
    mpq_init(term);
    mpq_set_si(term, sign >= 0 ? 1 : -1, static_cast<unsigned long>(m));
    mpq_canonicalize(term);
    mpq_add(value_, value_, term);
    mpq_clear(term);
}

ExactRational ExactRational::harmonic_range(long from, long to) {
    ExactRational sum;
    for (long m = from; m <= to; ++m) sum.add_reciprocal(m);
    return sum;
}

ExactRational ExactRational::abs() const {
    ExactRational out(*this);
    mpq_abs(out.value_, out.value_);
    return out;
}

BigFloat ExactRational::to_big_float(mpfr_prec_t precision_bits) const {
    BigFloat out(precision_bits);
    mpfr_set_q(out.value_, value_, MPFR_RNDN);
    return out;
}

}  // namespace chatterkit
