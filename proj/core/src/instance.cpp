#include "chatterkit/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "chatterkit/fd_oracle.hpp"
#include "chatterkit/numerics.hpp"
#include "chatterkit/series_eval.hpp"
#include "chatterkit/spectral_heat.hpp"

namespace chatterkit {

namespace {

constexpr double kSwitchCollar = 1e-12;

/// Trace evaluation with magnitude bookkeeping, at theta = T - t.
EvalResult trace_eval(const ChatterSequence& seq, std::int64_t L, double theta) {
    const int bits = seq.precision_bits();
    const BigFloat pi = BigFloat::pi(bits);
    const BigFloat log_z = -(pi * pi * BigFloat(theta, bits));
    return eval_partial_sum_log(seq, L, log_z);
}

/// Double-precision trace for quadrature integrands; its rounding error is
/// folded into eps_quad, so the extended-precision path is not needed here.
double trace_eval_double(const ChatterSequence& seq, std::int64_t L, double theta) {
    const double pi_sq = M_PI * M_PI;
    KahanSum sum;
    seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int sign) {
        const double lambda = static_cast<double>(pos) * static_cast<double>(pos) * pi_sq;
        sum.add(static_cast<double>(sign) / static_cast<double>(h) * std::exp(-lambda * theta));
    });
    return sum.value();
}

/// Lipschitz bound for t -> trace(t) on a cell whose right end has time
/// separation theta_min: |d trace/dt| <= pi^2 sum m^2 |beta_m| e^{-m^2 pi^2 theta_min}.
double trace_lipschitz(const ChatterSequence& seq, std::int64_t L, double theta_min) {
    const double pi_sq = M_PI * M_PI;
    KahanSum sum;
    seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int) {
        const double lambda = static_cast<double>(pos) * static_cast<double>(pos) * pi_sq;
        sum.add(lambda / static_cast<double>(h) * std::exp(-lambda * theta_min));
    });
    return sum.value();
}

/// sum alpha_m |beta_m| over the first L blocks: bounds |P_L'| on [0,1].
double derivative_bound(const ChatterSequence& seq, std::int64_t L) {
    KahanSum sum;
    seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int) {
        sum.add(static_cast<double>(seq.exponents().alpha(pos)) / static_cast<double>(h));
    });
    return sum.value();
}

bool near_a_switch(const std::vector<double>& switches, double t, double width) {
    auto it = std::lower_bound(switches.begin(), switches.end(), t);
    if (it != switches.end() && std::abs(*it - t) < width) return true;
    if (it != switches.begin() && std::abs(*(it - 1) - t) < width) return true;
    return false;
}

bool contains_a_switch(const std::vector<double>& switches, double a, double b) {
    auto it = std::lower_bound(switches.begin(), switches.end(), a);
    return it != switches.end() && *it < b;
}

struct SignLawResult {
    double residual = 0.0;
    std::int64_t checked = 0;
    std::int64_t skipped = 0;
};

SignLawResult sign_law_residual(const ChatteringInstance& inst, std::int64_t grid_size) {
    SignLawResult out;
    const double T = inst.T;
    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i < grid_size; ++i) {
        const double t = (static_cast<double>(i) + 0.5) * T / static_cast<double>(grid_size);
        if (near_a_switch(inst.control.switch_times(), t, kSwitchCollar)) {
            ++out.skipped;
            continue;
        }
        const EvalResult r = trace_eval(inst.seq, inst.L, T - t);
        const int trace_sign = sign_with_floor(r, inst.seq.precision_bits());
        const int u = inst.control.value_at(t);
        if (trace_sign == 0 || u != -trace_sign) ++mismatches;
        ++out.checked;
    }
    out.residual = out.checked == 0
                       ? 0.0
                       : static_cast<double>(mismatches) / static_cast<double>(out.checked);
    return out;
}

}  // namespace

ChatteringInstance build_instance(const ChatterSequence& seq, std::int64_t L, double T,
                                  int root_sampling, const BuildOptions& options) {
    if (L < 1 || L > seq.iterations()) throw std::out_of_range("build_instance: L");
    if (root_sampling < 2) throw std::invalid_argument("build_instance: root_sampling must be >= 2");
    const int bits = seq.precision_bits();
    const BigFloat pi_sq = BigFloat::pi(bits) * BigFloat::pi(bits);

    // Precondition: T must exceed theta_1 = ln(1/z_1)/pi^2 so that every
    // probe sample is interior.
    const double theta_1 = (-seq.log_z(1) / pi_sq).to_double();
    if (!(T > theta_1)) {
        throw std::domain_error("build_instance: T must exceed ln(1/z_1)/pi^2 = " +
                                format_double(theta_1));
    }

    CosineSeries w = terminal_datum_w(seq, L);

    // Switching times are the roots of the truncated trace, not the probe
    // samples: scan (0, z_1), every (z_k, z_{k+1}) with k < L, and the
    // region beyond z_L where P_L can still cross before the no-root
    // certificate delta < |P_L(1)| / (2 sup|P_L'|) takes over.
    std::vector<BigFloat> root_deltas = find_sign_change_deltas(seq, L, root_sampling);
    {
        const ExactRational s1 = seq.coefficient_sum_exact(L);
        if (s1.sign() == 0) {
            throw std::runtime_error(
                "build_instance: coefficient sum vanishes exactly; no root-free certificate near z = 1");
        }
        const double bound = std::abs(s1.to_double()) / (2.0 * derivative_bound(seq, L));
        const BigFloat delta_bound(bound, bits);
        if (delta_bound < seq.delta(L)) {
            scan_sign_changes_between(seq, L, seq.delta(L), delta_bound, root_sampling,
                                      root_deltas);
        }
    }

    // Map roots through t = T + ln(z)/pi^2 and keep the interior ones.
    std::vector<double> switch_times;
    for (const BigFloat& delta : root_deltas) {
        const double t = T - (-log1p(-delta) / pi_sq).to_double();
        if (t > 0.0 && t < T) switch_times.push_back(t);
    }
    std::sort(switch_times.begin(), switch_times.end());
    switch_times.erase(std::unique(switch_times.begin(), switch_times.end()),
                       switch_times.end());

    const EvalResult trace_at_zero = trace_eval(seq, L, T);
    const int sign_at_zero = sign_with_floor(trace_at_zero, bits);
    if (sign_at_zero == 0) {
        throw std::runtime_error("build_instance: trace sign at t = 0 is indeterminate");
    }
    BangBangControl control(T, -sign_at_zero, std::move(switch_times));

    const ModeCutoff cutoff = mode_cutoff_for_tolerance(options.mode_tolerance, options.mode_cap);
    CosineSeries terminal_state = forward_terminal_state(control, cutoff.n_modes);
    CosineSeries y_d = terminal_state - w;

    ChatteringInstance inst{T, L, seq, std::move(w), std::move(control),
                            std::move(terminal_state), std::move(y_d), InstanceDiagnostics{}};

    inst.diagnostics.objective_value = 0.5 * inst.w.l2_norm_sq();
    inst.diagnostics.interior_switch_count =
        static_cast<std::int64_t>(inst.control.switch_times().size());
    inst.diagnostics.sign_residual = sign_law_residual(inst, options.sign_grid).residual;
    const CrankNicolsonResult cn =
        crank_nicolson_solve(inst.control, options.oracle_nx, options.oracle_nt);
    inst.diagnostics.oracle_l2_gap = compare_l2(cn.values, inst.terminal_state);
    return inst;
}

OptimalityReport verify_optimality(const ChatteringInstance& inst, std::int64_t t_grid_size,
                                   std::int64_t control_samples, std::uint64_t seed) {
    if (t_grid_size < 2) throw std::invalid_argument("verify_optimality: t_grid_size must be >= 2");
    OptimalityReport report;
    const double T = inst.T;

    // (a) pointwise sign law.
    const SignLawResult sign_law = sign_law_residual(inst, t_grid_size);
    report.sign_residual = sign_law.residual;
    report.sign_points_checked = sign_law.checked;
    report.sign_points_skipped = sign_law.skipped;

    // (b) discrete variational inequality. The quadrature shares the
    // control grid; cells are split near T (where the trace steepens) until
    // each leaf's midpoint-rule error bound is negligible, which keeps
    // eps_quad honest without an astronomically fine uniform grid.
    const double dt = T / static_cast<double>(t_grid_size);
    std::vector<double> cell_integral(static_cast<std::size_t>(t_grid_size), 0.0);
    KahanSum ubar_integral;  // integral of trace * ubar
    KahanSum eps_quad;
    const std::vector<double>& switches = inst.control.switch_times();

    struct Frame {
        double a, b;
        int depth;
    };
    for (std::int64_t i = 0; i < t_grid_size; ++i) {
        const double cell_a = static_cast<double>(i) * dt;
        const double cell_b = (i + 1 == t_grid_size) ? T : (static_cast<double>(i) + 1.0) * dt;
        KahanSum f_sum;
        std::vector<Frame> stack{Frame{cell_a, cell_b, 0}};
        while (!stack.empty()) {
            const Frame fr = stack.back();
            stack.pop_back();
            const double width = fr.b - fr.a;
            const double lip = trace_lipschitz(inst.seq, inst.L, T - fr.b);
            if (lip * width * width / 2.0 > 1e-10 && fr.depth < 60) {
                const double mid = 0.5 * (fr.a + fr.b);
                stack.push_back({mid, fr.b, fr.depth + 1});
                stack.push_back({fr.a, mid, fr.depth + 1});
                continue;
            }
            const double mid = 0.5 * (fr.a + fr.b);
            const double f_mid = trace_eval_double(inst.seq, inst.L, T - mid);
            f_sum.add(f_mid * width);
            ubar_integral.add(f_mid * static_cast<double>(inst.control.value_at(mid)) * width);
            eps_quad.add(lip * width * width / 2.0);
            if (contains_a_switch(switches, fr.a, fr.b)) {
                eps_quad.add(2.0 * width * (std::abs(f_mid) + lip * width / 2.0));
            }
        }
        cell_integral[static_cast<std::size_t>(i)] = f_sum.value();
    }
    // Envelope for the double-precision integrand rounding (|f| is bounded
    // by the harmonic sum of |beta|, well under 1e2).
    eps_quad.add(1e-13 * T);
    report.eps_quad = eps_quad.value();
    report.trace_ubar_integral = ubar_integral.value();

    std::mt19937_64 rng(seed);
    auto next_uniform = [&rng]() {
        // in [-1, 1), platform independent
        return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
    };
    report.vi_samples = control_samples;
    double vi_min = std::numeric_limits<double>::infinity();
    for (std::int64_t s = 0; s < control_samples; ++s) {
        KahanSum vi;
        for (std::int64_t i = 0; i < t_grid_size; ++i) {
            vi.add(next_uniform() * cell_integral[static_cast<std::size_t>(i)]);
        }
        vi.add(-ubar_integral.value());
        const double value = vi.value();
        vi_min = std::min(vi_min, value);
        if (value < -report.eps_quad) ++report.vi_violations;
    }
    report.vi_min = control_samples > 0 ? vi_min : 0.0;

    // (c) terminal datum bookkeeping: y_d must be the IEEE difference of
    // the stored terminal state and w (never recomputed another way), and
    // undoing the subtraction must recover w to rounding.
    report.construction_identity_exact = (inst.terminal_state - inst.w) == inst.y_d;
    std::map<std::int64_t, double> ybar, yd;
    for (const auto& m : inst.terminal_state.modes()) ybar[m.n] = m.a;
    for (const auto& m : inst.y_d.modes()) yd[m.n] = m.a;
    double worst_ulps = 0.0;
    {
        const double a0_back = inst.terminal_state.a0() - inst.y_d.a0();
        const double diff = std::abs(a0_back - inst.w.a0());
        if (diff != 0.0) {
            worst_ulps = std::max(
                worst_ulps, diff / std::max(std::numeric_limits<double>::denorm_min(),
                                            std::abs(inst.w.a0()) * 0x1.0p-52));
        }
    }
    for (const auto& m : inst.w.modes()) {
        const double back = ybar[m.n] - yd[m.n];
        const double diff = std::abs(back - m.a);
        if (diff != 0.0) {
            const double ulp = std::max(std::numeric_limits<double>::denorm_min(),
                                        std::abs(m.a) * 0x1.0p-52);
            worst_ulps = std::max(worst_ulps, diff / ulp);
        }
    }
    report.terminal_residual_ulps = worst_ulps;
    return report;
}

double positivity_certificate(const ChatteringInstance& inst) {
    const double parseval = inst.w.l2_norm_sq();
    // Quadrature of the sampled series: the integrand w^2 carries cosine
    // content up to 2 q_L, so the base panel count must resolve it before
    // the doubling test is trustworthy.
    const std::int64_t max_mode = std::max<std::int64_t>(1, inst.w.cutoff());
    const std::int64_t base_panels = std::max<std::int64_t>(64, (2 * max_mode) / 8);
    const CosineSeries& w = inst.w;
    const AdaptiveQuadratureResult quad = adaptive_composite_gauss(
        [&w](double x) {
            const double v = w.evaluate(x);
            return v * v;
        },
        0.0, 1.0, base_panels, 1e-10);
    if (!quad.converged) {
        throw std::runtime_error("positivity_certificate: quadrature did not converge");
    }
    if (std::abs(quad.value - parseval) > 1e-8 * std::max(1.0, parseval)) {
        throw std::runtime_error(
            "positivity_certificate: Parseval and quadrature disagree: " + format_double(parseval) +
            " vs " + format_double(quad.value));
    }
    if (!(parseval > 0.0)) {
        throw std::runtime_error("positivity_certificate: norm is not strictly positive");
    }
    return parseval;
}

std::string ChatteringInstance::to_json_string(int indent) const {
    nlohmann::json j;
    j["T"] = T;
    j["L"] = L;
    j["sequence"] = nlohmann::json::parse(seq.to_json_string());
    j["w"] = nlohmann::json::parse(w.to_json_string());
    j["control"] = nlohmann::json::parse(control.to_json_string());
    j["terminal_state"] = nlohmann::json::parse(terminal_state.to_json_string());
    j["y_d"] = nlohmann::json::parse(y_d.to_json_string());
    {
        nlohmann::json grid;
        const std::int64_t n = 1001;
        grid["n"] = n;
        grid["values"] = y_d.sample_uniform(n);
        j["y_d_grid"] = std::move(grid);
    }
    j["diagnostics"] = {{"objective_value", diagnostics.objective_value},
                        {"interior_switch_count", diagnostics.interior_switch_count},
                        {"sign_residual", diagnostics.sign_residual},
                        {"oracle_l2_gap", diagnostics.oracle_l2_gap}};
    return j.dump(indent);
}

ChatteringInstance ChatteringInstance::from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ChatteringInstance inst{
        j.at("T").get<double>(),
        j.at("L").get<std::int64_t>(),
        ChatterSequence::from_json_string(j.at("sequence").dump()),
        CosineSeries::from_json_string(j.at("w").dump()),
        BangBangControl::from_json_string(j.at("control").dump()),
        CosineSeries::from_json_string(j.at("terminal_state").dump()),
        CosineSeries::from_json_string(j.at("y_d").dump()),
        InstanceDiagnostics{}};
    const auto& jd = j.at("diagnostics");
    inst.diagnostics.objective_value = jd.at("objective_value").get<double>();
    inst.diagnostics.interior_switch_count = jd.at("interior_switch_count").get<std::int64_t>();
    inst.diagnostics.sign_residual = jd.at("sign_residual").get<double>();
    inst.diagnostics.oracle_l2_gap = jd.at("oracle_l2_gap").get<double>();
    return inst;
}

}  // namespace chatterkit
