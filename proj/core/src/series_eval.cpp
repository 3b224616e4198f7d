#include "chatterkit/series_eval.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chatterkit/numerics.hpp"

namespace chatterkit {

EvalResult eval_partial_sum_log(const ChatterSequence& seq, std::int64_t L,
                                const BigFloat& log_z) {
    const int bits = seq.precision_bits();
    EvalResult out{BigFloat(bits), BigFloat(bits)};
    seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int sign) {
        BigFloat term = exp(log_z * static_cast<long>(seq.exponents().alpha(pos))) /
                        static_cast<long>(h);
        out.abs_sum += term;
        if (sign < 0) {
            out.value -= term;
        } else {
            out.value += term;
        }
    });
    return out;
}

double eval_partial_sum(const ChatterSequence& seq, std::int64_t L, double z) {
    if (!(z >= 0.0) || !(z < 1.0)) {
        throw std::domain_error("eval_partial_sum: z must lie in [0,1)");
    }
    if (z == 0.0) {
        // Every exponent is >= 1, so the sum vanishes at the origin.
        if (L < 1 || L > seq.iterations()) throw std::out_of_range("eval_partial_sum: L");
        return 0.0;
    }
    const int bits = seq.precision_bits();
    const BigFloat log_z = log1p(BigFloat(z - 1.0, bits));
    return eval_partial_sum_log(seq, L, log_z).value.to_double();
}

BigFloat noise_floor(const EvalResult& r, int precision_bits) {
    return mul_2si(r.abs_sum, 3 - precision_bits);
}

int sign_with_floor(const EvalResult& r, int precision_bits) {
    if (!(abs(r.value) > noise_floor(r, precision_bits))) return 0;
    return r.value.sign();
}

double tail_bound(double z, std::int64_t p, const ExponentSpec& exponents) {
    if (!(z > 0.0 && z < 1.0)) {
        throw std::domain_error("tail_bound: z must lie in (0,1)");
    }
    const BigFloat delta(1.0 - z, 64);
    return tail_bound_delta(delta, p, exponents).to_double();
}

BigFloat tail_bound_delta(const BigFloat& delta, std::int64_t p, const ExponentSpec& exponents) {
    if (p < 1) throw std::domain_error("tail_bound: p must be >= 1");
    const BigFloat log_z = log1p(-delta);
    const std::int64_t e = exponents.kind() == ExponentSpec::Kind::Squares ? p * p : p;
    return exp(log_z * static_cast<long>(e)) / delta;
}

SignPatternReport verify_sign_pattern(const ChatterSequence& seq, std::int64_t L) {
    if (L < 1 || L > seq.iterations()) throw std::out_of_range("verify_sign_pattern: L");
    SignPatternReport report;
    report.ok = true;
    for (std::int64_t k = 1; k <= L; ++k) {
        const EvalResult r = eval_partial_sum_log(seq, L, seq.log_z(k));
        const int sign = sign_with_floor(r, seq.precision_bits());
        if (sign == 0) {
            throw std::runtime_error("verify_sign_pattern: |P_L(z_" + std::to_string(k) +
                                     ")| is below the noise floor; increase precision_bits");
        }
        report.values.push_back(r.value.to_double());
        report.signs.push_back(sign);
        if (sign != (k % 2 == 1 ? 1 : -1)) report.ok = false;
    }
    return report;
}

double coefficient_power_sum(const ChatterSequence& seq, double gamma, std::int64_t k) {
    if (gamma < 1.0) throw std::domain_error("coefficient_power_sum: gamma must be >= 1");
    KahanSum sum;
    seq.for_each_coefficient(k, [&](std::int64_t, std::int64_t h, int) {
        sum.add(std::pow(static_cast<double>(h), -gamma));
    });
    return sum.value();
}

namespace {

struct SampledPoint {
    BigFloat delta;
    int sign;
};

int sign_at(const ChatterSequence& seq, std::int64_t L, const BigFloat& delta) {
    const EvalResult r = eval_partial_sum_log(seq, L, log1p(-delta));
    return sign_with_floor(r, seq.precision_bits());
}

/// Bisects in log-delta space until the bracket's relative delta width
/// drops below 1e-14, assuming opposite (nonzero) signs at the ends.
/// delta_a > delta_b.
BigFloat refine_bracket(const ChatterSequence& seq, std::int64_t L, BigFloat delta_a, int sign_a,
                        BigFloat delta_b, [[maybe_unused]] int sign_b) {
    const int bits = seq.precision_bits();
    const BigFloat rel_tol = BigFloat(1e-14, bits);
    for (int iter = 0; iter < 4096; ++iter) {
        if ((delta_a - delta_b) / delta_a < rel_tol) break;
        const BigFloat mid = exp(mul_2si(log(delta_a) + log(delta_b), -1));
        const int sign_mid = sign_at(seq, L, mid);
        if (sign_mid == 0) return mid;  // within noise of a root already
        if (sign_mid == sign_a) {
            delta_a = mid;
        } else {
            delta_b = mid;
        }
    }
    return exp(mul_2si(log(delta_a) + log(delta_b), -1));
}

}  // namespace

void scan_sign_changes_between(const ChatterSequence& seq, std::int64_t L,
                               const BigFloat& delta_hi, const BigFloat& delta_lo, int samples,
                               std::vector<BigFloat>& roots) {
    const int bits = seq.precision_bits();
    const BigFloat log_hi = log(delta_hi);
    const BigFloat log_lo = log(delta_lo);
    SampledPoint prev{delta_hi, sign_at(seq, L, delta_hi)};
    for (int i = 1; i <= samples; ++i) {
        BigFloat delta(bits);
        if (i == samples) {
            delta = delta_lo;  // reuse the exact endpoint
        } else {
            const BigFloat t = BigFloat(static_cast<long>(i), bits) / static_cast<long>(samples);
            delta = exp(log_hi + (log_lo - log_hi) * t);
        }
        SampledPoint cur{delta, sign_at(seq, L, delta)};
        if (cur.sign == 0) {
            // The sample sits on a root (within noise); record it and break
            // the bracket chain so the crossing is not reported twice.
            if (i < samples) roots.push_back(cur.delta);
        } else if (prev.sign != 0 && prev.sign != cur.sign) {
            roots.push_back(refine_bracket(seq, L, prev.delta, prev.sign, cur.delta, cur.sign));
        }
        prev = cur;
    }
}

std::vector<BigFloat> find_sign_change_deltas(const ChatterSequence& seq, std::int64_t L,
                                              int samples_per_interval) {
    if (L < 1 || L > seq.iterations()) throw std::out_of_range("find_sign_changes: L");
    if (samples_per_interval < 2) {
        throw std::invalid_argument("find_sign_changes: samples_per_interval must be >= 2");
    }
    const int bits = seq.precision_bits();
    std::vector<BigFloat> roots;

    // (0, z_1): delta from just below 1 down to delta_1. The value at z = 0
    // is exactly zero, so sampling starts strictly inside.
    {
        const BigFloat near_one = BigFloat(1L, bits) - mul_2si(BigFloat(1L, bits), -bits / 2);
        scan_sign_changes_between(seq, L, near_one, seq.delta(1), samples_per_interval, roots);
    }
    for (std::int64_t k = 1; k < L; ++k) {
        scan_sign_changes_between(seq, L, seq.delta(k), seq.delta(k + 1), samples_per_interval, roots);
    }
    return roots;
}

RootSearchResult find_sign_changes(const ChatterSequence& seq, std::int64_t L,
                                   int samples_per_interval) {
    RootSearchResult out;
    for (const BigFloat& delta : find_sign_change_deltas(seq, L, samples_per_interval)) {
        out.roots.push_back(1.0 - delta.to_double());
    }
    return out;
}

std::string sign_pattern_csv(const ChatterSequence& seq, const SignPatternReport& report) {
    std::ostringstream os;
    os << "k,z,value,sign\n";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        const std::int64_t k = static_cast<std::int64_t>(i) + 1;
        os << k << ',' << format_double(seq.z(k)) << ',' << format_double(report.values[i])
           << ',' << report.signs[i] << '\n';
    }
    return os.str();
}

std::string roots_csv(const ChatterSequence& seq, std::int64_t L, const RootSearchResult& roots) {
    std::ostringstream os;
    os << "k,root,value,sign\n";
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        const double z = roots.roots[i];
        os << (i + 1) << ',' << format_double(z) << ','
           << format_double(eval_partial_sum(seq, L, z)) << ",0\n";
    }
    return os.str();
}

}  // namespace chatterkit
