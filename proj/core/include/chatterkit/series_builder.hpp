#ifndef CHATTERKIT_SERIES_BUILDER_HPP
#define CHATTERKIT_SERIES_BUILDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chatterkit/big_float.hpp"
#include "chatterkit/chatter_sequence.hpp"
#include "chatterkit/exponent_spec.hpp"

namespace chatterkit {

/// Sequential state machine producing a ChatterSequence. Iteration k+1
/// depends on everything from iteration k, so there is no internal
/// concurrency; the finished sequence is immutable.
///
/// Each iteration runs three selections and one extension:
///   p: smallest safe start for the next block (geometric tail strictly
///      below the current probe sum),
///   r: harmonic reach of the next block (block sum strictly above the
///      current coefficient sum),
///   z: next probe point by delta-halving with first accept,
/// after which the block is installed and the running sums recomputed.
struct BuilderOptions {
    std::int64_t r_cap = std::int64_t(1) << 40;
    int max_halvings = 256;  // j cap for the probe-point search
};

class SeriesBuilder {
  public:
    SeriesBuilder(const BigFloat& z1, ExponentSpec exponents, int precision_bits,
                  BuilderOptions options = {});
    SeriesBuilder(const std::string& z1_decimal, ExponentSpec exponents, int precision_bits,
                  BuilderOptions options = {});

    /// p_{k+1}: closed form for square exponents, doubling-then-bisection
    /// for custom tables. Postcondition (re-verified): p > q_k and
    /// tail_bound(z_k, p) < |S_z| strictly.
    std::int64_t select_p_next() const;

    /// r_{k+1}: closed form from the integral minorant of the harmonic sum,
    /// then exact rational re-verification of the strict inequality.
    std::int64_t select_r_next() const;

    /// delta_{k+1} = delta_k * 2^-j for the smallest j >= 1 whose probe
    /// point satisfies the strict dominance inequality.
    BigFloat select_z_next(std::int64_t p_next, std::int64_t r_next) const;

    /// Installs block k+1 and recomputes the running sums at the new probe.
    void extend_block(std::int64_t p_next, std::int64_t r_next, const BigFloat& delta_next);

    /// One full iteration.
    void step();

    std::int64_t iteration() const { return static_cast<std::int64_t>(blocks_.size()); }
    /// S_z = sum of beta_m z_k^{alpha_m} over m <= q_k.
    const BigFloat& probe_sum() const { return s_z_; }
    /// S_1 = sum of beta_m over m <= q_k (working-precision view).
    const BigFloat& coefficient_sum() const { return s_1_; }
    const ExactRational& coefficient_sum_exact() const { return s_1_exact_; }
    int precision_bits() const { return precision_bits_; }

    /// Copy of the sequence built so far.
    ChatterSequence snapshot() const;

    /// Runs K-1 iterations from a fresh builder (K total blocks) and
    /// returns the sequence. Failures carry the iteration index.
    static ChatterSequence run(const BigFloat& z1, ExponentSpec exponents, std::int64_t K,
                               int precision_bits, BuilderOptions options = {});
    static ChatterSequence run(const std::string& z1_decimal, ExponentSpec exponents,
                               std::int64_t K, int precision_bits, BuilderOptions options = {});

  private:
    BigFloat power_at(const BigFloat& log_z, std::int64_t alpha) const;
    BigFloat partial_sum_at(const BigFloat& log_z) const;
    BigFloat tail_bound_at(const BigFloat& delta, const BigFloat& log_z, std::int64_t p) const;
    void recompute_sums();

    ExponentSpec exponents_;
    int precision_bits_;
    BuilderOptions options_;
    std::vector<Block> blocks_;
    std::vector<BigFloat> deltas_;
    BigFloat s_z_;
    BigFloat s_1_;
    ExactRational s_1_exact_;
};

}  // namespace chatterkit

#endif  // CHATTERKIT_SERIES_BUILDER_HPP
