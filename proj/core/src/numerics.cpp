#include "chatterkit/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

namespace chatterkit {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

const GaussRule& cached_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

}  // namespace

double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       std::int64_t panels, int nodes_per_panel) {
    if (panels < 1) throw std::invalid_argument("composite_gauss: panels must be positive");
    const GaussRule& rule = cached_rule(nodes_per_panel);
    const double h = (b - a) / static_cast<double>(panels);
    KahanSum total;
    for (std::int64_t p = 0; p < panels; ++p) {
        const double left = a + h * static_cast<double>(p);
        const double mid = left + 0.5 * h;
        for (int i = 0; i < nodes_per_panel; ++i) {
            total.add(0.5 * h * rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]));
        }
    }
    return total.value();
}

AdaptiveQuadratureResult adaptive_composite_gauss(const std::function<double(double)>& f,
                                                  double a, double b, std::int64_t initial_panels,
                                                  double abs_tol, std::int64_t max_panels) {
    AdaptiveQuadratureResult out;
    std::int64_t panels = std::max<std::int64_t>(1, initial_panels);
    double prev = composite_gauss(f, a, b, panels);
    while (panels * 2 <= max_panels) {
        panels *= 2;
        double next = composite_gauss(f, a, b, panels);
        out.last_change = std::abs(next - prev);
        out.value = next;
        out.panels = panels;
        if (out.last_change < abs_tol) {
            out.converged = true;
            return out;
        }
        prev = next;
    }
    out.converged = false;
    return out;
}

double trapezoid_l2_distance(const std::vector<double>& f, const std::vector<double>& g) {
    if (f.size() != g.size() || f.size() < 2) {
        throw std::invalid_argument("trapezoid_l2_distance: grids must match and have >= 2 points");
    }
    const std::size_t n = f.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    KahanSum sum;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = f[i] - g[i];
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum.add(w * d * d * h);
    }
    return std::sqrt(std::max(0.0, sum.value()));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_scientific(double v, int significant_digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific,
                             std::max(0, significant_digits - 1));
    return std::string(buf, res.ptr);
}

}  // namespace chatterkit
