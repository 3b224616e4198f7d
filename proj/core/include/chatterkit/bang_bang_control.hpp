#ifndef CHATTERKIT_BANG_BANG_CONTROL_HPP
#define CHATTERKIT_BANG_BANG_CONTROL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace chatterkit {

/// Piecewise-constant control on (0, T) taking only the values -1 and +1,
/// described by its initial sign and the sorted switching times (all
/// strictly inside (0, T)). The value function is right-continuous.
class BangBangControl {
  public:
    BangBangControl(double horizon, int initial_sign, std::vector<double> switch_times);

    double horizon() const { return horizon_; }
    int initial_sign() const { return initial_sign_; }
    const std::vector<double>& switch_times() const { return switch_times_; }

    /// u(t) for t in [0, T); right-continuous at the switches.
    int value_at(double t) const;

    struct Segment {
        double start = 0.0;
        double end = 0.0;
        int u = 1;
    };
    std::vector<Segment> segments() const;

    /// Signed measure: integral of u over (0, T).
    double integral() const;

    std::string to_json_string(int indent = 2) const;
    static BangBangControl from_json_string(const std::string& text);

  private:
    double horizon_;
    int initial_sign_;
    std::vector<double> switch_times_;
};

}  // namespace chatterkit

#endif  // CHATTERKIT_BANG_BANG_CONTROL_HPP
