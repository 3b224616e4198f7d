#ifndef CHATTERKIT_SERIES_EVAL_HPP
#define CHATTERKIT_SERIES_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chatterkit/big_float.hpp"
#include "chatterkit/chatter_sequence.hpp"

namespace chatterkit {

/// Partial-sum value together with the sum of term magnitudes, which feeds
/// the sign-decision noise floor 2^(3 - precision_bits) * abs_sum.
struct EvalResult {
    BigFloat value;
    BigFloat abs_sum;
};

/// P_L at the point z = e^{log_z}; all powers evaluated as exp(alpha*log_z).
EvalResult eval_partial_sum_log(const ChatterSequence& seq, std::int64_t L,
                                const BigFloat& log_z);

/// P_L(z) for z in [0,1) (throws std::domain_error otherwise).
double eval_partial_sum(const ChatterSequence& seq, std::int64_t L, double z);

BigFloat noise_floor(const EvalResult& r, int precision_bits);

/// -1, +1, or 0 when |value| is below the noise floor (sign indeterminate).
int sign_with_floor(const EvalResult& r, int precision_bits);

/// Upper bound for sum_{m>=p} z^{alpha_m}: z^{p^2}/(1-z) for squares,
/// z^p/(1-z) for custom tables (only alpha_m >= m is guaranteed there).
double tail_bound(double z, std::int64_t p, const ExponentSpec& exponents);
BigFloat tail_bound_delta(const BigFloat& delta, std::int64_t p, const ExponentSpec& exponents);

struct SignPatternReport {
    bool ok = false;
    std::vector<double> values;  // P_L(z_k), k = 1..L
    std::vector<int> signs;
};

/// Checks sign(P_L(z_k)) == (-1)^{k+1} for k = 1..L at the stored probe
/// points. Throws std::runtime_error if any |P_L(z_k)| falls below the
/// working-precision noise floor.
SignPatternReport verify_sign_pattern(const ChatterSequence& seq, std::int64_t L);

/// sum_{m<=q_k} |beta_m|^gamma computed from the block structure; equals
/// sum_{m<=r_k} m^{-gamma} by construction.
double coefficient_power_sum(const ChatterSequence& seq, double gamma, std::int64_t k);

struct RootSearchResult {
    std::vector<double> roots;  // ascending in z
    /// Sampling can only see odd-multiplicity crossings; this stays true to
    /// flag that even-multiplicity ones between samples may be missed.
    bool may_miss_even_multiplicity = true;
};

/// Scans [delta_hi, delta_lo] (delta_hi > delta_lo, i.e. z ascending) with
/// samples geometric in delta, bracketing and bisecting every detected sign
/// change of P_L. Roots are appended in descending delta order.
void scan_sign_changes_between(const ChatterSequence& seq, std::int64_t L,
                               const BigFloat& delta_hi, const BigFloat& delta_lo, int samples,
                               std::vector<BigFloat>& roots);

/// Sign-change locations of P_L inside (0, z_1) and every (z_k, z_{k+1}),
/// k < L. Samples uniformly in s = -ln(1 - z), brackets each detected
/// change, and bisects to relative width 1e-14 in delta coordinates.
/// Returns the roots as delta values, descending (i.e. ascending in z).
std::vector<BigFloat> find_sign_change_deltas(const ChatterSequence& seq, std::int64_t L,
                                              int samples_per_interval);
RootSearchResult find_sign_changes(const ChatterSequence& seq, std::int64_t L,
                                   int samples_per_interval);

/// CSV emitters (header row + one line per entry, locale independent).
std::string sign_pattern_csv(const ChatterSequence& seq, const SignPatternReport& report);
std::string roots_csv(const ChatterSequence& seq, std::int64_t L, const RootSearchResult& roots);

}  // namespace chatterkit

#endif  // CHATTERKIT_SERIES_EVAL_HPP
