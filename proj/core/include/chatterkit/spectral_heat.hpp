#ifndef CHATTERKIT_SPECTRAL_HEAT_HPP
#define CHATTERKIT_SPECTRAL_HEAT_HPP

#include <cstdint>
#include <vector>

#include "chatterkit/bang_bang_control.hpp"
#include "chatterkit/big_float.hpp"
#include "chatterkit/chatter_sequence.hpp"
#include "chatterkit/cosine_series.hpp"

namespace chatterkit {

/// Terminal datum w for the backward heat equation: the cosine series with
/// coefficients a_m = (-1)^m beta_m, m <= q_L (only the r_L nonzero modes
/// are stored).
CosineSeries terminal_datum_w(const ChatterSequence& seq, std::int64_t L);

/// Probe times t_k = T + pi^-2 ln(z_k). theta = T - t is carried as the
/// primitive variable; t_k outside (0, T) are flagged as non-interior.
struct SwitchSample {
    double t = 0.0;
    double theta = 0.0;  // T - t, always positive
    bool interior = false;
};
std::vector<SwitchSample> switching_samples(const ChatterSequence& seq, std::int64_t L, double T);

/// Neumann heat kernel on (0,1), truncated after n_modes cosine modes:
///   G(x, xi, s) = 1 + 2 sum_n cos(n pi x) cos(n pi xi) e^{-n^2 pi^2 s}.
/// The reported truncation bound 2 e^{-N^2 pi^2 s} / (1 - e^{-(2N+1) pi^2 s})
/// dominates the dropped tail. s must be positive.
struct KernelValue {
    double value = 0.0;
    double truncation_bound = 0.0;
};
KernelValue greens_kernel(double x, double xi, double s, std::int64_t n_modes);

/// Smallest mode count whose truncation bound at time separation s is
/// below tol.
std::int64_t greens_modes_for_tolerance(double s, double tol);

/// Boundary trace psi(t, 1) of the backward solution with terminal datum
/// w_L: equals P_L(e^{pi^2 (t-T)}). Requires square exponents (the heat
/// eigenvalues are m^2 pi^2). The theta overload evaluates at the working
/// precision with theta = T - t.
double adjoint_trace(const ChatterSequence& seq, std::int64_t L, double T, double t);
BigFloat adjoint_trace_theta(const ChatterSequence& seq, std::int64_t L, const BigFloat& theta);

/// psi(t, x_i) = sum_m (-1)^m beta_m cos(m pi x_i) e^{-m^2 pi^2 (T-t)}.
std::vector<double> adjoint_state(const ChatterSequence& seq, std::int64_t L, double T, double t,
                                  const std::vector<double>& xs);

/// Terminal state y(T, .) of the forward problem (zero initial data,
/// insulated left end, flux u at x = 1) for piecewise-constant u, by the
/// exact per-mode integral of the boundary convolution:
///   a0 = int_0^T u,
///   a_n = 2 (-1)^n sum_j u_j (e^{-n^2 pi^2 (T-end_j)} - e^{-n^2 pi^2 (T-start_j)}) / (n^2 pi^2).
CosineSeries forward_terminal_state(const BangBangControl& control, std::int64_t n_modes);

/// Mode count for a target L2 tail tolerance tau, from the bound
/// sum_{n>N} 4/(n^2 pi^2) <= 4/(pi^2 N) < tau/2, capped; the residual
/// reports the bound actually achieved.
struct ModeCutoff {
    std::int64_t n_modes = 0;
    double residual = 0.0;
};
ModeCutoff mode_cutoff_for_tolerance(double tau, std::int64_t cap = 100000);

}  // namespace chatterkit

#endif  // CHATTERKIT_SPECTRAL_HEAT_HPP
