#ifndef CHATTERKIT_INSTANCE_HPP
#define CHATTERKIT_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chatterkit/bang_bang_control.hpp"
#include "chatterkit/chatter_sequence.hpp"
#include "chatterkit/cosine_series.hpp"

namespace chatterkit {

struct InstanceDiagnostics {
    double objective_value = 0.0;          // (1/2) ||w||^2
    std::int64_t interior_switch_count = 0;
    double sign_residual = 0.0;            // mismatch fraction on the build grid
    double oracle_l2_gap = 0.0;            // finite-difference cross-check
};

/// A fully assembled boundary-control problem datum together with its
/// constructed optimal control and diagnostics. The desired state is
/// y_d = terminal_state - w coefficientwise, so the optimality system holds
/// by construction; verify_optimality re-derives the testable consequences.
struct ChatteringInstance {
    double T = 0.0;
    std::int64_t L = 0;
    ChatterSequence seq;
    CosineSeries w;
    BangBangControl control;
    CosineSeries terminal_state;
    CosineSeries y_d;
    InstanceDiagnostics diagnostics;

    std::string to_json_string(int indent = 2) const;
    static ChatteringInstance from_json_string(const std::string& text);
};

struct BuildOptions {
    double mode_tolerance = 1e-6;    // forward-solve cutoff tolerance
    std::int64_t mode_cap = 100000;
    std::int64_t oracle_nx = 801;    // diagnostics cross-check resolution
    std::int64_t oracle_nt = 1600;
    std::int64_t sign_grid = 10000;  // grid for the build-time sign residual
};

/// Assembles the instance for truncation level L and horizon T:
/// terminal datum w, switching times from the sign changes of the adjoint
/// boundary trace, control u = -sgn(trace), forward terminal state, and
/// y_d = terminal_state - w. Requires T > ln(1/z_1)/pi^2 so that every
/// probe time is interior.
ChatteringInstance build_instance(const ChatterSequence& seq, std::int64_t L, double T,
                                  int root_sampling, const BuildOptions& options = {});

struct OptimalityReport {
    // (a) pointwise sign law u(t) == -sgn(trace(t)) outside switch collars
    double sign_residual = 1.0;
    std::int64_t sign_points_checked = 0;
    std::int64_t sign_points_skipped = 0;
    // (b) discrete variational inequality over random admissible controls
    double vi_min = 0.0;
    double eps_quad = 0.0;
    std::int64_t vi_samples = 0;
    std::int64_t vi_violations = 0;
    /// integral of trace * u over (0,T); equals -integral of |trace| when
    /// the sign law holds, so the functional at u = -ubar is -2x this value.
    double trace_ubar_integral = 0.0;
    // (c) adjoint terminal datum: y_d == fl(ybar - w) bitwise and
    //     fl(ybar - y_d) recovers w (in ulps of w)
    bool construction_identity_exact = false;
    double terminal_residual_ulps = 0.0;

    bool pass() const {
        return sign_residual == 0.0 && vi_violations == 0 && construction_identity_exact &&
               terminal_residual_ulps <= 4.0;
    }
};

OptimalityReport verify_optimality(const ChatteringInstance& instance, std::int64_t t_grid_size,
                                   std::int64_t control_samples, std::uint64_t seed = 1);

/// ||w||^2 computed through Parseval and through adaptive quadrature of the
/// sampled series; throws if the two paths disagree beyond 1e-8 or the
/// value is not strictly positive. Returns the Parseval value.
double positivity_certificate(const ChatteringInstance& instance);

}  // namespace chatterkit

#endif  // CHATTERKIT_INSTANCE_HPP
