#include "chatterkit/series_builder.hpp"

#include <stdexcept>
#include <string>

namespace chatterkit {

namespace {

BigFloat one_at(int bits) { return BigFloat(1L, bits); }

}  // namespace

SeriesBuilder::SeriesBuilder(const BigFloat& z1, ExponentSpec exponents, int precision_bits,
                             BuilderOptions options)
    : exponents_(std::move(exponents)),
      precision_bits_(precision_bits),
      options_(options),
      s_z_(precision_bits),
      s_1_(precision_bits),
      s_1_exact_(1L) {
    if (precision_bits < 8) {
        throw std::invalid_argument("SeriesBuilder: precision_bits must be >= 8");
    }
    const BigFloat z = z1.rounded_to(precision_bits);
    if (!(z > BigFloat(0L, precision_bits)) || !(z < one_at(precision_bits))) {
        throw std::domain_error("SeriesBuilder: z1 must lie in (0,1)");
    }
    const std::int64_t alpha1 = exponents_.alpha(1);  // also enforces alpha_1 >= 1
    blocks_.push_back(Block{1, 1, 1, 1, 1});
    deltas_.push_back(one_at(precision_bits) - z);
    s_1_ = one_at(precision_bits);
    s_z_ = power_at(log1p(-deltas_.back()), alpha1);
}

SeriesBuilder::SeriesBuilder(const std::string& z1_decimal, ExponentSpec exponents,
                             int precision_bits, BuilderOptions options)
    : SeriesBuilder(BigFloat::from_string(z1_decimal, precision_bits), std::move(exponents),
                    precision_bits, options) {}

BigFloat SeriesBuilder::power_at(const BigFloat& log_z, std::int64_t alpha) const {
    return exp(log_z * static_cast<long>(alpha));
}

BigFloat SeriesBuilder::partial_sum_at(const BigFloat& log_z) const {
    BigFloat sum(precision_bits_);
    for (const Block& b : blocks_) {
        for (std::int64_t i = 0; i <= b.h_end - b.h_start; ++i) {
            BigFloat term = power_at(log_z, exponents_.alpha(b.p + i)) / static_cast<long>(b.h_start + i);
            if (b.sign < 0) {
                sum -= term;
            } else {
                sum += term;
            }
        }
    }
    return sum;
}

BigFloat SeriesBuilder::tail_bound_at(const BigFloat& delta, const BigFloat& log_z,
                                      std::int64_t p) const {
    // Squares: sum_{m>=p} z^{m^2} <= z^{p^2} / (1-z) since m^2 >= p^2 + (m-p).
    // Custom tables guarantee only alpha_m >= m, so the geometric majorant
    // z^p/(1-z) is used; it is also monotone in p, which the bisection needs.
    const std::int64_t e = exponents_.kind() == ExponentSpec::Kind::Squares ? p * p : p;
    return power_at(log_z, e) / delta;
}

std::int64_t SeriesBuilder::select_p_next() const {
    const BigFloat& delta = deltas_.back();
    const BigFloat log_z = log1p(-delta);
    const BigFloat abs_sz = abs(s_z_);
    if (abs_sz.is_zero()) {
        throw std::runtime_error(
            "select_p_next: probe sum underflowed to zero; increase precision_bits");
    }
    const std::int64_t q_k = blocks_.back().q;
    std::int64_t p = q_k + 1;

    if (exponents_.kind() == ExponentSpec::Kind::Squares) {
        // p = max(q_k + 1, floor(sqrt(ln[(1-z)|S_z|] / ln z)) + 1)
        const BigFloat arg = log(delta * abs_sz) / log_z;
        if (arg.sign() > 0) {
            const BigFloat root = floor(sqrt(arg));
            const long candidate = root.to_long() + 1;
            if (candidate > p) p = candidate;
        }
    } else {
        // Smallest p > q_k with tail_bound < |S_z|, by doubling then bisection
        // (the geometric bound is nonincreasing in p).
        std::int64_t lo = q_k + 1;
        if (!(tail_bound_at(delta, log_z, lo) < abs_sz)) {
            std::int64_t hi = lo;
            std::int64_t span = 1;
            do {
                hi = lo + span;
                span *= 2;
                if (span > (std::int64_t(1) << 50)) {
                    throw std::runtime_error("select_p_next: no admissible p found");
                }
            } while (!(tail_bound_at(delta, log_z, hi) < abs_sz));
            while (lo + 1 < hi) {
                const std::int64_t mid = lo + (hi - lo) / 2;
                if (tail_bound_at(delta, log_z, mid) < abs_sz) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            p = hi;
        } else {
            p = lo;
        }
    }

    // The closed form guarantees the strict inequality analytically; its
    // floating-point evaluation may not, so re-verify and bump if needed.
    int bumps = 0;
    while (!(tail_bound_at(delta, log_z, p) < abs_sz)) {
        if (++bumps > 64) {
            throw std::runtime_error("select_p_next: strict tail inequality unreachable");
        }
        ++p;
    }
    return p;
}

std::int64_t SeriesBuilder::select_r_next() const {
    const std::int64_t r_k = blocks_.back().h_end;
    const ExactRational abs_s1 = s_1_exact_.abs();

    // r = max(r_k + 2, floor(exp(|S_1| + ln(r_k + 1))))
    const BigFloat guess =
        floor(exp(abs(s_1_) + log(BigFloat(static_cast<long>(r_k + 1), precision_bits_))));
    std::int64_t r = r_k + 2;
    if (guess > BigFloat(static_cast<long>(r), precision_bits_)) {
        if (guess > BigFloat(static_cast<long>(options_.r_cap), precision_bits_)) {
            throw std::runtime_error("select_r_next: r exceeds configured cap");
        }
        r = guess.to_long();
    }

    // Exact re-verification of the strict inequality sum_{r_k+1}^{r} 1/m > |S_1|;
    // the integral minorant can land exactly on the boundary.
    ExactRational harmonic = ExactRational::harmonic_range(r_k + 1, r);
    while (!(abs_s1 < harmonic)) {
        ++r;
        if (r > options_.r_cap) {
            throw std::runtime_error("select_r_next: r exceeds configured cap");
        }
        harmonic.add_reciprocal(r);
    }
    return r;
}

BigFloat SeriesBuilder::select_z_next(std::int64_t p_next, std::int64_t r_next) const {
    const std::int64_t r_k = blocks_.back().h_end;
    const BigFloat& delta_k = deltas_.back();

    for (int j = 1; j <= options_.max_halvings; ++j) {
        const BigFloat delta = mul_2si(delta_k, -j);  // exact halving
        const BigFloat log_z = log1p(-delta);
        const BigFloat lhs = abs(partial_sum_at(log_z));
        BigFloat rhs(precision_bits_);
        for (std::int64_t m = r_k + 1; m <= r_next; ++m) {
            rhs += power_at(log_z, exponents_.alpha(m + p_next - r_k - 1)) / static_cast<long>(m);
        }
        if (lhs < rhs) return delta;
    }
    throw std::runtime_error("select_z_next: no admissible probe point within " +
                             std::to_string(options_.max_halvings) +
                             " halvings; increase precision_bits");
}

void SeriesBuilder::extend_block(std::int64_t p_next, std::int64_t r_next,
                                 const BigFloat& delta_next) {
    const Block& last = blocks_.back();
    const std::int64_t k_next = iteration() + 1;
    Block b;
    b.sign = (k_next % 2 == 1) ? 1 : -1;
    b.p = p_next;
    b.q = p_next + r_next - last.h_end - 1;
    b.h_start = last.h_end + 1;
    b.h_end = r_next;
    blocks_.push_back(b);
    deltas_.push_back(delta_next);

    for (std::int64_t h = b.h_start; h <= b.h_end; ++h) {
        s_1_exact_.add_reciprocal(h, b.sign);
    }
    recompute_sums();

    if (s_z_.sign() != b.sign) {
        throw std::runtime_error("extend_block: probe sum lost its certified sign at k=" +
                                 std::to_string(k_next) + "; increase precision_bits");
    }
}

void SeriesBuilder::recompute_sums() {
    s_1_ = s_1_exact_.to_big_float(precision_bits_);
    s_z_ = partial_sum_at(log1p(-deltas_.back()));
}

void SeriesBuilder::step() {
    const std::int64_t p = select_p_next();
    const std::int64_t r = select_r_next();
    const BigFloat delta = select_z_next(p, r);
    extend_block(p, r, delta);
}

ChatterSequence SeriesBuilder::snapshot() const {
    return ChatterSequence(exponents_, blocks_, deltas_, precision_bits_);
}

ChatterSequence SeriesBuilder::run(const BigFloat& z1, ExponentSpec exponents, std::int64_t K,
                                   int precision_bits, BuilderOptions options) {
    if (K < 1) throw std::invalid_argument("SeriesBuilder::run: K must be >= 1");
    SeriesBuilder builder(z1, std::move(exponents), precision_bits, options);
    for (std::int64_t k = 1; k < K; ++k) {
        try {
            builder.step();
        } catch (const std::exception& e) {
            throw std::runtime_error("series builder failed at iteration " +
                                     std::to_string(k + 1) + ": " + e.what());
        }
    }
    return builder.snapshot();
}

ChatterSequence SeriesBuilder::run(const std::string& z1_decimal, ExponentSpec exponents,
                                   std::int64_t K, int precision_bits, BuilderOptions options) {
    return run(BigFloat::from_string(z1_decimal, precision_bits), std::move(exponents), K,
               precision_bits, options);
}

}  // namespace chatterkit
