#ifndef CHATTERKIT_TESTS_ORACLES_HPP
#define CHATTERKIT_TESTS_ORACLES_HPP

// Test-only reference computations. Each oracle takes a route independent
// of the library path it is used to check: direct summation instead of
// closed forms, image charges instead of eigenfunctions, quadrature instead
// of Parseval, integer-power products instead of exp/log evaluation.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "chatterkit/big_float.hpp"
#include "chatterkit/chatter_sequence.hpp"
#include "chatterkit/numerics.hpp"

namespace chatterkit::oracles {

/// Direct summation of sum_{m=p}^{p+terms-1} z^{alpha_m} in double
/// precision (converges fast for z bounded away from 1).
inline double direct_tail_sum(double z, std::int64_t p, int terms, const ExponentSpec& exponents) {
    KahanSum sum;
    for (std::int64_t m = p; m < p + terms; ++m) {
        sum.add(std::pow(z, static_cast<double>(exponents.alpha(m))));
    }
    return sum.value();
}

/// Independent evaluation of P_L(z_k): powers by integer exponentiation
/// (mpfr_pow_si) on z = 1 - delta formed at four times the working
/// precision, accumulated in reverse block order. No exp/log anywhere.
inline double independent_partial_sum(const ChatterSequence& seq, std::int64_t L,
                                      std::int64_t k) {
    const mpfr_prec_t prec = 4 * seq.precision_bits();
    mpfr_t z, power, term, sum;
    mpfr_inits2(prec, z, power, term, sum, nullptr);
    mpfr_set(z, seq.delta(k).raw(), MPFR_RNDN);
    mpfr_si_sub(z, 1, z, MPFR_RNDN);  // z = 1 - delta
    mpfr_set_zero(sum, 1);

    struct Entry {
        std::int64_t alpha;
        std::int64_t h;
        int sign;
    };
    std::vector<Entry> entries;
    seq.for_each_coefficient(L, [&](std::int64_t pos, std::int64_t h, int sign) {
        entries.push_back({seq.exponents().alpha(pos), h, sign});
    });
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        mpfr_pow_si(power, z, static_cast<long>(it->alpha), MPFR_RNDN);
        mpfr_div_si(term, power, static_cast<long>(it->sign * it->h), MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
    }
    const double out = mpfr_get_d(sum, MPFR_RNDN);
    mpfr_clears(z, power, term, sum, nullptr);
    return out;
}

/// Neumann heat kernel by the method of images: reflected Gaussians
///   G(x, xi, s) = sum_j phi(x - xi - 2j) + phi(x + xi - 2j),
/// phi(d) = exp(-d^2/(4s)) / sqrt(4 pi s).
inline double image_charge_kernel(double x, double xi, double s, int images = 64) {
    const double norm = 1.0 / std::sqrt(4.0 * M_PI * s);
    KahanSum sum;
    for (int j = -images; j <= images; ++j) {
        const double d1 = x - xi - 2.0 * j;
        const double d2 = x + xi - 2.0 * j;
        sum.add(norm * std::exp(-d1 * d1 / (4.0 * s)));
        sum.add(norm * std::exp(-d2 * d2 / (4.0 * s)));
    }
    return sum.value();
}

/// Exact rational sum_{m=1}^{r} m^{-gamma} for integer gamma >= 1.
inline ExactRational power_sum_exact(std::int64_t r, int gamma) {
    ExactRational sum;
    for (std::int64_t m = 1; m <= r; ++m) {
        std::int64_t d = 1;
        for (int g = 0; g < gamma; ++g) d *= m;
        sum.add_reciprocal(static_cast<long>(d));
    }
    return sum;
}

/// sum_{m=1}^{r} m^{-gamma} for real gamma (double path, used for
/// non-integer exponents).
inline double power_sum_double(std::int64_t r, double gamma) {
    KahanSum sum;
    for (std::int64_t m = 1; m <= r; ++m) {
        sum.add(std::pow(static_cast<double>(m), -gamma));
    }
    return sum.value();
}

/// Cosine coefficient 2 int_0^1 f(x) cos(n pi x) dx by composite quadrature.
inline double cosine_coefficient_by_quadrature(const std::function<double(double)>& f,
                                               std::int64_t n, std::int64_t panels = 512) {
    const auto integrand = [&](double x) { return f(x) * std::cos(n * M_PI * x); };
    return 2.0 * composite_gauss(integrand, 0.0, 1.0, panels);
}

/// Observed convergence orders log2(e_i / e_{i+1}) for a refinement ladder.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
    std::vector<double> orders;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        orders.push_back(std::log2(errors[i] / errors[i + 1]));
    }
    return orders;
}

}  // namespace chatterkit::oracles

#endif  // CHATTERKIT_TESTS_ORACLES_HPP
