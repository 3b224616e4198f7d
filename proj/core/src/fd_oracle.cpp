#include "chatterkit/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chatterkit/numerics.hpp"

namespace chatterkit {

namespace {

struct MergedSegments {
    std::vector<FluxSegment> segments;
    std::int64_t merged = 0;
    double defect = 0.0;
};

MergedSegments merge_short_segments(const std::vector<FluxSegment>& raw, double threshold) {
    MergedSegments out;
    for (const auto& seg : raw) {
        const double len = seg.end - seg.start;
        if (!out.segments.empty() && len < threshold) {
            // Fold into the left neighbour: extend it and account for the
            // control variation lost over the folded span.
            auto& prev = out.segments.back();
            out.defect += std::abs(seg.u - prev.u) * len;
            prev.end = seg.end;
            ++out.merged;
        } else {
            out.segments.push_back(seg);
        }
    }
    return out;
}

/// Thomas algorithm for a constant-coefficient tridiagonal system
/// (diag, off-diagonals given row-wise). Overwrites rhs with the solution.
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c_star(n, 0.0);
    std::vector<double> d_star(n, 0.0);
    c_star[0] = upper[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - lower[i] * c_star[i - 1];
        c_star[i] = (i + 1 < n) ? upper[i] / m : 0.0;
        d_star[i] = (rhs[i] - lower[i] * d_star[i - 1]) / m;
    }
    rhs[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = d_star[i] - c_star[i] * rhs[i + 1];
    }
}

}  // namespace

CrankNicolsonResult crank_nicolson_solve(const BangBangControl& control, std::int64_t nx,
                                         std::int64_t nt, CrankNicolsonOptions options) {
    std::vector<FluxSegment> segments;
    for (const auto& seg : control.segments()) {
        segments.push_back({seg.start, seg.end, static_cast<double>(seg.u)});
    }
    return crank_nicolson_solve_segments(segments, nx, nt, options);
}

CrankNicolsonResult crank_nicolson_solve_segments(const std::vector<FluxSegment>& raw,
                                                  std::int64_t nx, std::int64_t nt,
                                                  CrankNicolsonOptions options) {
    if (nx < 3) throw std::invalid_argument("crank_nicolson_solve: nx must be >= 3");
    if (nt < 1) throw std::invalid_argument("crank_nicolson_solve: nt must be >= 1");
    if (raw.empty()) throw std::invalid_argument("crank_nicolson_solve: no segments");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!(raw[i].end > raw[i].start) || (i > 0 && raw[i].start != raw[i - 1].end) ||
            (i == 0 && raw[i].start != 0.0)) {
            throw std::invalid_argument("crank_nicolson_solve: segments must tile (0,T)");
        }
    }

    const double T = raw.back().end;
    MergedSegments merged = merge_short_segments(raw, options.merge_threshold_rel * T);

    const std::size_t n = static_cast<std::size_t>(nx);
    const double h = 1.0 / static_cast<double>(nx - 1);

    CrankNicolsonResult result;
    result.merged_segments = merged.merged;
    result.merge_defect = merged.defect;
    result.values.assign(n, 0.0);

    std::vector<double> rhs(n, 0.0);
    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0);

    for (const auto& seg : merged.segments) {
        const double len = seg.end - seg.start;
        std::int64_t steps = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::llround(static_cast<double>(nt) * len / T)));
        const double dt = len / static_cast<double>(steps);
        const double r = dt / (h * h);
        const double flux = seg.u;

        // (I - dt/2 A) y' = (I + dt/2 A) y + dt * c, with A the ghost-node
        // Neumann Laplacian and c the boundary flux source (constant on the
        // segment, so both time levels contribute the same c).
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0) {
                diag[i] = 1.0 + r;
                upper[i] = -r;
            } else if (i + 1 == n) {
                lower[i] = -r;
                diag[i] = 1.0 + r;
            } else {
                lower[i] = -0.5 * r;
                diag[i] = 1.0 + r;
                upper[i] = -0.5 * r;
            }
        }

        for (std::int64_t s = 0; s < steps; ++s) {
            std::vector<double>& y = result.values;
            rhs[0] = y[0] + r * (y[1] - y[0]);
            for (std::size_t i = 1; i + 1 < n; ++i) {
                rhs[i] = y[i] + 0.5 * r * (y[i - 1] - 2.0 * y[i] + y[i + 1]);
            }
            rhs[n - 1] = y[n - 1] + r * (y[n - 2] - y[n - 1]) + dt * 2.0 * flux / h;
            solve_tridiagonal(lower, diag, upper, rhs);
            result.values = rhs;
            ++result.total_steps;
        }
    }
    return result;
}

double compare_l2(const std::vector<double>& grid_values, const CosineSeries& series) {
    const std::int64_t n = static_cast<std::int64_t>(grid_values.size());
    if (n < 2) throw std::invalid_argument("compare_l2: need >= 2 grid points");
    return trapezoid_l2_distance(grid_values, series.sample_uniform(n));
}

std::string terminal_grid_csv(const std::vector<double>& grid_values) {
    std::ostringstream os;
    os << "x,value\n";
    const std::size_t n = grid_values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n - 1);
        os << format_double(x) << ',' << format_double(grid_values[i]) << '\n';
    }
    return os.str();
}

}  // namespace chatterkit
