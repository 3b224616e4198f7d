#ifndef CHATTERKIT_FD_ORACLE_HPP
#define CHATTERKIT_FD_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chatterkit/bang_bang_control.hpp"
#include "chatterkit/cosine_series.hpp"

namespace chatterkit {

struct CrankNicolsonOptions {
    /// Segments shorter than merge_threshold_rel * T are folded into their
    /// left neighbour; the dropped control variation is reported as a
    /// defect instead of silently smearing the bang-bang structure.
    double merge_threshold_rel = 1e-10;
};

struct CrankNicolsonResult {
    std::vector<double> values;       // y(T, x_i) on the uniform x grid
    std::int64_t merged_segments = 0;
    double merge_defect = 0.0;        // sum of |u| * length over merged segments
    std::int64_t total_steps = 0;
};

/// Second-order finite-difference solve of the forward problem
/// (y_t = y_xx, y_x(0) = 0, y_x(1) = u(t), y(0,.) = 0): Crank-Nicolson in
/// time with ghost-node Neumann closure, Thomas solve per step. The time
/// grid is segment aligned: every switching time is a step boundary, and
/// the nt steps are distributed over the segments proportionally to length
/// (at least one per segment).
CrankNicolsonResult crank_nicolson_solve(const BangBangControl& control, std::int64_t nx,
                                         std::int64_t nt, CrankNicolsonOptions options = {});

/// Same solver for an arbitrary piecewise-constant flux (segments must
/// tile (0, T) in order).
struct FluxSegment {
    double start = 0.0;
    double end = 0.0;
    double u = 0.0;
};
CrankNicolsonResult crank_nicolson_solve_segments(const std::vector<FluxSegment>& segments,
                                                  std::int64_t nx, std::int64_t nt,
                                                  CrankNicolsonOptions options = {});

/// Trapezoidal L2(0,1) distance between grid values (uniform grid on [0,1])
/// and a cosine series sampled at the same nodes.
double compare_l2(const std::vector<double>& grid_values, const CosineSeries& series);

/// CSV "x,value" rows for a terminal grid.
std::string terminal_grid_csv(const std::vector<double>& grid_values);

}  // namespace chatterkit

#endif  // CHATTERKIT_FD_ORACLE_HPP
