#ifndef CHATTERKIT_COSINE_SERIES_HPP
#define CHATTERKIT_COSINE_SERIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace chatterkit {

/// A function on (0,1) in the Neumann cosine basis:
///   f(x) = a0 + sum_n a_n cos(n pi x).
/// Modes are stored sparsely (sorted by n, zero coefficients omitted);
/// `cutoff` records the nominal truncation level N. Immutable by
/// convention once constructed.
class CosineSeries {
  public:
    struct Mode {
        std::int64_t n = 0;
        double a = 0.0;
    };

    CosineSeries() = default;
    CosineSeries(double a0, std::vector<Mode> modes, std::int64_t cutoff);

    double a0() const { return a0_; }
    const std::vector<Mode>& modes() const { return modes_; }
    std::int64_t cutoff() const { return cutoff_; }

    double evaluate(double x) const;

    /// Samples on the uniform grid x_i = i/(n_points-1), i = 0..n_points-1,
    /// using the cosine recurrence per point (cheap for dense series).
    std::vector<double> sample_uniform(std::int64_t n_points) const;

    /// a0^2 + (1/2) sum a_n^2  (Parseval in the cosine basis).
    double l2_norm_sq() const;

    friend CosineSeries operator-(const CosineSeries& lhs, const CosineSeries& rhs);
    friend CosineSeries operator+(const CosineSeries& lhs, const CosineSeries& rhs);

    std::string to_json_string(int indent = 2) const;
    static CosineSeries from_json_string(const std::string& text);

    /// CSV "x,value" rows on the uniform grid.
    std::string sample_csv(std::int64_t n_points) const;

    bool operator==(const CosineSeries& other) const;

  private:
    double a0_ = 0.0;
    std::vector<Mode> modes_;
    std::int64_t cutoff_ = 0;
};

}  // namespace chatterkit

#endif  // CHATTERKIT_COSINE_SERIES_HPP
