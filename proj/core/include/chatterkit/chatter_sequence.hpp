#ifndef CHATTERKIT_CHATTER_SEQUENCE_HPP
#define CHATTERKIT_CHATTER_SEQUENCE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chatterkit/big_float.hpp"
#include "chatterkit/exponent_spec.hpp"

namespace chatterkit {

/// One nonzero block of the coefficient sequence: positions p..q carry the
/// harmonic reciprocals 1/h_start .. 1/h_end with the block's sign. Between
/// blocks every coefficient is zero.
struct Block {
    int sign = 1;                // +1 for odd blocks, -1 for even blocks
    std::int64_t p = 0;          // first position of the block
    std::int64_t q = 0;          // last position of the block
    std::int64_t h_start = 0;    // first harmonic index (= previous r + 1)
    std::int64_t h_end = 0;      // last harmonic index (= this block's r)
};

/// Output of the block-harmonic construction: the coefficient blocks plus
/// the probe points, stored as distances delta_k = 1 - z_k at the working
/// precision. Immutable once built; safe to share across threads.
class ChatterSequence {
  public:
    ChatterSequence(ExponentSpec exponents, std::vector<Block> blocks,
                    std::vector<BigFloat> deltas, int precision_bits);

    const ExponentSpec& exponents() const { return exponents_; }
    int precision_bits() const { return precision_bits_; }

    /// Number of completed outer iterations (== number of blocks == number
    /// of probe points).
    std::int64_t iterations() const { return static_cast<std::int64_t>(blocks_.size()); }

    /// 1-based accessors.
    const Block& block(std::int64_t k) const;
    const BigFloat& delta(std::int64_t k) const;
    std::int64_t p(std::int64_t k) const { return block(k).p; }
    std::int64_t q(std::int64_t k) const { return block(k).q; }
    std::int64_t r(std::int64_t k) const { return block(k).h_end; }

    /// z_k as a double (display only; delta carries the precision).
    double z(std::int64_t k) const { return 1.0 - delta(k).to_double(); }

    /// ln(z_k) = log1p(-delta_k) at the working precision.
    BigFloat log_z(std::int64_t k) const;

    /// Calls f(position, harmonic_index, sign) for every nonzero coefficient
    /// of the partial sum with L blocks, in ascending position order. The
    /// coefficient at `position` is sign / harmonic_index.
    void for_each_coefficient(std::int64_t L,
                              const std::function<void(std::int64_t, std::int64_t, int)>& f) const;

    /// Signed coefficient sum over the first L blocks, exact.
    ExactRational coefficient_sum_exact(std::int64_t L) const;

    /// Structural invariants of the block layout (index relations, signs,
    /// ordering of the probe points). Throws std::logic_error on violation.
    void validate() const;

    std::string to_json_string(int indent = 2) const;
    static ChatterSequence from_json_string(const std::string& text);

    bool operator==(const ChatterSequence& other) const;

  private:
    ExponentSpec exponents_;
    std::vector<Block> blocks_;
    std::vector<BigFloat> deltas_;
    int precision_bits_;
};

}  // namespace chatterkit

#endif  // CHATTERKIT_CHATTER_SEQUENCE_HPP
