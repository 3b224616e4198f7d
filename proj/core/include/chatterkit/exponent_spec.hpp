#ifndef CHATTERKIT_EXPONENT_SPEC_HPP
#define CHATTERKIT_EXPONENT_SPEC_HPP

#include <cstdint>
#include <vector>

namespace chatterkit {

/// The exponent sequence of the power series: either the squares
/// alpha_m = m^2 or an explicit finite table. Every exponent must satisfy
/// alpha_m >= m; the bound is checked on access, not on construction, and
/// the sequence is not required to be increasing.
class ExponentSpec {
  public:
    enum class Kind { Squares, Custom };

    static ExponentSpec squares() { return ExponentSpec(Kind::Squares, {}); }

    /// table[i] is alpha_{i+1}. Access beyond the table throws; the builder
    /// reports how far it got.
    static ExponentSpec custom(std::vector<std::int64_t> table) {
        return ExponentSpec(Kind::Custom, std::move(table));
    }

    Kind kind() const { return kind_; }
    const std::vector<std::int64_t>& custom_table() const { return table_; }

    /// alpha_m for m >= 1. Throws std::domain_error if alpha_m < m and
    /// std::out_of_range if a custom table is exhausted.
    std::int64_t alpha(std::int64_t m) const;

    bool operator==(const ExponentSpec&) const = default;

  private:
    ExponentSpec(Kind kind, std::vector<std::int64_t> table)
        : kind_(kind), table_(std::move(table)) {}

    Kind kind_;
    std::vector<std::int64_t> table_;
};

}  // namespace chatterkit

#endif  // CHATTERKIT_EXPONENT_SPEC_HPP
