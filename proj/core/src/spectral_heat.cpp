#include "chatterkit/spectral_heat.hpp"

#include <cmath>
#include <stdexcept>

#include "chatterkit/numerics.hpp"
#include "chatterkit/series_eval.hpp"

namespace chatterkit {

namespace {

void require_squares(const ChatterSequence& seq, const char* where) {
    if (seq.exponents().kind() != ExponentSpec::Kind::Squares) {
        throw std::invalid_argument(std::string(where) +
                                    ": heat-equation machinery requires square exponents");
    }
}

}  // namespace

CosineSeries terminal_datum_w(const ChatterSequence& seq, std::int64_t L) {
    std::vector<CosineSeries::Mode> modes;
    seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int sign) {
        const double beta = static_cast<double>(sign) / static_cast<double>(h);
        const double parity = (pos % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
        modes.push_back({pos, parity * beta});
    });
    return CosineSeries(0.0, std::move(modes), seq.q(L));
}

std::vector<SwitchSample> switching_samples(const ChatterSequence& seq, std::int64_t L,
                                            double T) {
    if (!(T > 0.0)) throw std::domain_error("switching_samples: T must be positive");
    if (L < 1 || L > seq.iterations()) throw std::out_of_range("switching_samples: L");
    const int bits = seq.precision_bits();
    const BigFloat pi_sq = BigFloat::pi(bits) * BigFloat::pi(bits);
    std::vector<SwitchSample> out;
    for (std::int64_t k = 1; k <= L; ++k) {
        // theta_k = -ln(z_k)/pi^2 = -log1p(-delta_k)/pi^2 > 0
        const double theta = (-seq.log_z(k) / pi_sq).to_double();
        SwitchSample s;
        s.theta = theta;
        s.t = T - theta;
        s.interior = (s.t > 0.0) && (s.t < T);
        out.push_back(s);
    }
    return out;
}

KernelValue greens_kernel(double x, double xi, double s, std::int64_t n_modes) {
    if (!(s > 0.0)) throw std::domain_error("greens_kernel: s must be positive");
    if (x < 0.0 || x > 1.0 || xi < 0.0 || xi > 1.0) {
        throw std::domain_error("greens_kernel: x and xi must lie in [0,1]");
    }
    if (n_modes < 0) throw std::invalid_argument("greens_kernel: negative mode count");
    const double pi_sq = M_PI * M_PI;
    KahanSum sum;
    sum.add(1.0);
    for (std::int64_t n = 1; n <= n_modes; ++n) {
        const double decay = std::exp(-static_cast<double>(n) * static_cast<double>(n) * pi_sq * s);
        if (decay == 0.0) break;
        sum.add(2.0 * std::cos(n * M_PI * x) * std::cos(n * M_PI * xi) * decay);
    }
    KernelValue out;
    out.value = sum.value();
    const double head = 2.0 * std::exp(-static_cast<double>(n_modes) * static_cast<double>(n_modes) * pi_sq * s);
    const double ratio = std::exp(-static_cast<double>(2 * n_modes + 1) * pi_sq * s);
    out.truncation_bound = head / (1.0 - ratio);
    return out;
}

std::int64_t greens_modes_for_tolerance(double s, double tol) {
    if (!(s > 0.0) || !(tol > 0.0)) {
        throw std::domain_error("greens_modes_for_tolerance: s and tol must be positive");
    }
    const double pi_sq = M_PI * M_PI;
    for (std::int64_t n = 1; n <= 10'000'000; ++n) {
        const double bound = 2.0 * std::exp(-static_cast<double>(n) * static_cast<double>(n) * pi_sq * s) /
                             (1.0 - std::exp(-static_cast<double>(2 * n + 1) * pi_sq * s));
        if (bound < tol) return n;
    }
    throw std::runtime_error("greens_modes_for_tolerance: tolerance unreachable");
}

BigFloat adjoint_trace_theta(const ChatterSequence& seq, std::int64_t L, const BigFloat& theta) {
    require_squares(seq, "adjoint_trace");
    if (!(theta.sign() > 0)) throw std::domain_error("adjoint_trace: requires theta = T - t > 0");
    const int bits = seq.precision_bits();
    const BigFloat pi = BigFloat::pi(bits);
    const BigFloat log_z = -(pi * pi * theta.rounded_to(bits));
    return eval_partial_sum_log(seq, L, log_z).value;
}

double adjoint_trace(const ChatterSequence& seq, std::int64_t L, double T, double t) {
    if (!(t >= 0.0) || !(t < T)) throw std::domain_error("adjoint_trace: t must lie in [0,T)");
    return adjoint_trace_theta(seq, L, BigFloat(T - t, seq.precision_bits())).to_double();
}

std::vector<double> adjoint_state(const ChatterSequence& seq, std::int64_t L, double T, double t,
                                  const std::vector<double>& xs) {
    require_squares(seq, "adjoint_state");
    if (!(t >= 0.0) || !(t < T)) throw std::domain_error("adjoint_state: t must lie in [0,T)");
    const double theta = T - t;
    const double pi_sq = M_PI * M_PI;
    std::vector<double> out;
    out.reserve(xs.size());
    for (const double x : xs) {
        KahanSum sum;
        seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int sign) {
            const double beta = static_cast<double>(sign) / static_cast<double>(h);
            const double parity = (pos % 2 == 0) ? 1.0 : -1.0;
            const double decay =
                std::exp(-static_cast<double>(pos) * static_cast<double>(pos) * pi_sq * theta);
            sum.add(parity * beta * std::cos(pos * M_PI * x) * decay);
        });
        out.push_back(sum.value());
    }
    return out;
}

CosineSeries forward_terminal_state(const BangBangControl& control, std::int64_t n_modes) {
    if (n_modes < 1) throw std::invalid_argument("forward_terminal_state: need >= 1 mode");
    const double T = control.horizon();
    const double pi_sq = M_PI * M_PI;
    const std::vector<BangBangControl::Segment> segs = control.segments();

    std::vector<CosineSeries::Mode> modes;
    modes.reserve(static_cast<std::size_t>(n_modes));
    for (std::int64_t n = 1; n <= n_modes; ++n) {
        const double lambda = static_cast<double>(n) * static_cast<double>(n) * pi_sq;
        KahanSum acc;
        for (const auto& seg : segs) {
            const double theta_end = T - seg.end;      // smaller separation
            const double len = seg.end - seg.start;    // = theta_start - theta_end
            const double head = std::exp(-lambda * theta_end);
            if (head == 0.0) continue;
            // e^{-lambda theta_end} - e^{-lambda theta_start}, difference formed
            // through expm1 so nearby exponentials do not cancel.
            acc.add(seg.u * head * (-std::expm1(-lambda * len)));
        }
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;
        const double a = 2.0 * parity * acc.value() / lambda;
        if (a != 0.0) modes.push_back({n, a});
    }
    return CosineSeries(control.integral(), std::move(modes), n_modes);
}

ModeCutoff mode_cutoff_for_tolerance(double tau, std::int64_t cap) {
    if (!(tau > 0.0)) throw std::domain_error("mode_cutoff_for_tolerance: tau must be positive");
    if (cap < 1) throw std::invalid_argument("mode_cutoff_for_tolerance: cap must be >= 1");
    const double pi_sq = M_PI * M_PI;
    // smallest N with 4/(pi^2 N) < tau/2
    const double needed = 8.0 / (pi_sq * tau);
    std::int64_t n = static_cast<std::int64_t>(std::floor(needed)) + 1;
    if (n > cap) n = cap;
    ModeCutoff out;
    out.n_modes = n;
    out.residual = 4.0 / (pi_sq * static_cast<double>(n));
    return out;
}

}  // namespace chatterkit
