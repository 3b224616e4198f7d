#ifndef CHATTERKIT_BIG_FLOAT_HPP
#define CHATTERKIT_BIG_FLOAT_HPP

#include <gmp.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace chatterkit {

/// Arbitrary-precision real number backed by MPFR.
///
/// Every value carries its own precision in bits; binary operations round
/// to the wider of the two operand precisions (round-to-nearest throughout,
/// so results are bit-reproducible across runs and platforms). The series
/// machinery stores probe points as distances from one and evaluates powers
/// in log space, which is why log1p/expm1 are first-class citizens here.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t precision_bits = 64);
    BigFloat(double value, mpfr_prec_t precision_bits);
    BigFloat(long value, mpfr_prec_t precision_bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    /// Parses a decimal string at the given precision. Throws
    /// std::invalid_argument if the string is not a complete number.
    static BigFloat from_string(const std::string& text, mpfr_prec_t precision_bits);

    /// pi rounded to the given precision.
    static BigFloat pi(mpfr_prec_t precision_bits);

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }

    /// Copy rounded to the given precision.
    BigFloat rounded_to(mpfr_prec_t precision_bits) const;

    /// Shortest decimal string that re-reads to the identical value at the
    /// same precision (MPFR's round-trip guarantee).
    std::string to_string() const;

    bool is_nan() const { return mpfr_nan_p(value_) != 0; }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }

    BigFloat operator-() const;
    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);
    BigFloat& operator*=(long rhs);
    BigFloat& operator/=(long rhs);

    friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
    friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
    friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
    friend BigFloat operator*(BigFloat lhs, long rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, long rhs) { return lhs /= rhs; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

    friend BigFloat abs(const BigFloat& x);
    friend BigFloat exp(const BigFloat& x);
    friend BigFloat log(const BigFloat& x);
    friend BigFloat log1p(const BigFloat& x);
    friend BigFloat expm1(const BigFloat& x);
    friend BigFloat sqrt(const BigFloat& x);
    friend BigFloat floor(const BigFloat& x);
    /// x * 2^e, exact.
    friend BigFloat mul_2si(const BigFloat& x, long e);

    /// Access for interop (ExactRational comparisons, tests).
    mpfr_srcptr raw() const { return value_; }

  private:
    friend class ExactRational;
    mpfr_t value_;
};

/// Exact rational arithmetic (GMP mpq) for quantities that are rational by
/// construction: signed harmonic sums and power sums of the coefficient
/// sequence. Used wherever a strict inequality must be decided exactly.
class ExactRational {
  public:
    ExactRational();
    explicit ExactRational(long numerator, long denominator = 1);
    ExactRational(const ExactRational& other);
    ExactRational(ExactRational&& other) noexcept;
    ExactRational& operator=(const ExactRational& other);
    ExactRational& operator=(ExactRational&& other) noexcept;
    ~ExactRational();

    ExactRational& operator+=(const ExactRational& rhs);
    ExactRational& operator-=(const ExactRational& rhs);

    /// Adds sign / m.
    void add_reciprocal(long m, int sign = 1);

    /// Sum of 1/m for m = from..to (inclusive).
    static ExactRational harmonic_range(long from, long to);

    int sign() const { return mpq_sgn(value_); }
    ExactRational abs() const;
    double to_double() const { return mpq_get_d(value_); }
    BigFloat to_big_float(mpfr_prec_t precision_bits) const;

    /// Sign of (f - *this), computed exactly.
    int compare_with(const BigFloat& f) const { return mpfr_cmp_q(f.raw(), value_); }

    friend bool operator<(const ExactRational& a, const ExactRational& b) { return mpq_cmp(a.value_, b.value_) < 0; }
    friend bool operator==(const ExactRational& a, const ExactRational& b) { return mpq_equal(a.value_, b.value_) != 0; }

  private:
    mpq_t value_;
};

}  // namespace chatterkit

#endif  // CHATTERKIT_BIG_FLOAT_HPP
