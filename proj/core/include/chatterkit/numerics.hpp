#ifndef CHATTERKIT_NUMERICS_HPP
#define CHATTERKIT_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chatterkit {

/// Neumaier-compensated accumulator for double sums.
class KahanSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Composite n-node Gauss-Legendre quadrature of f over [a, b] with the
/// given number of uniform panels.
double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       std::int64_t panels, int nodes_per_panel = 16);

struct AdaptiveQuadratureResult {
    double value = 0.0;
    double last_change = 0.0;  // |I_{2P} - I_P| at acceptance
    std::int64_t panels = 0;
    bool converged = false;
};

/// Doubles the panel count until two successive levels agree to abs_tol
/// (or max_panels is hit; the result reports which).
AdaptiveQuadratureResult adaptive_composite_gauss(const std::function<double(double)>& f,
                                                  double a, double b, std::int64_t initial_panels,
                                                  double abs_tol, std::int64_t max_panels = (1 << 22));

/// Trapezoidal-rule L2(0,1) distance between two functions sampled on the
/// same uniform grid over [0, 1].
double trapezoid_l2_distance(const std::vector<double>& f, const std::vector<double>& g);

/// Shortest round-trip decimal form of a double (locale independent).
std::string format_double(double v);

/// Scientific notation with the given number of significant digits
/// (locale independent), e.g. format_scientific(0.015625, 3) == "1.56e-02".
std::string format_scientific(double v, int significant_digits);

}  // namespace chatterkit

#endif  // CHATTERKIT_NUMERICS_HPP
