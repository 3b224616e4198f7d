#include "chatterkit/bang_bang_control.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "chatterkit/numerics.hpp"

namespace chatterkit {

BangBangControl::BangBangControl(double horizon, int initial_sign,
                                 std::vector<double> switch_times)
    : horizon_(horizon), initial_sign_(initial_sign), switch_times_(std::move(switch_times)) {
    if (!(horizon_ > 0.0)) throw std::invalid_argument("BangBangControl: horizon must be positive");
    if (initial_sign_ != 1 && initial_sign_ != -1) {
        throw std::invalid_argument("BangBangControl: initial sign must be +1 or -1");
    }
    for (std::size_t i = 0; i < switch_times_.size(); ++i) {
        const double t = switch_times_[i];
        if (!(t > 0.0) || !(t < horizon_)) {
            throw std::invalid_argument("BangBangControl: switch time outside (0,T)");
        }
        if (i > 0 && !(switch_times_[i - 1] < t)) {
            throw std::invalid_argument("BangBangControl: switch times must be strictly increasing");
        }
    }
}

int BangBangControl::value_at(double t) const {
    if (!(t >= 0.0) || !(t < horizon_)) {
        throw std::domain_error("BangBangControl: t outside [0,T)");
    }
    // Number of switches at or before t (right continuity).
    const auto it = std::upper_bound(switch_times_.begin(), switch_times_.end(), t);
    const auto flips = static_cast<std::size_t>(it - switch_times_.begin());
    return (flips % 2 == 0) ? initial_sign_ : -initial_sign_;
}

std::vector<BangBangControl::Segment> BangBangControl::segments() const {
    std::vector<Segment> out;
    double start = 0.0;
    int u = initial_sign_;
    for (const double t : switch_times_) {
        out.push_back({start, t, u});
        start = t;
        u = -u;
    }
    out.push_back({start, horizon_, u});
    return out;
}

double BangBangControl::integral() const {
    KahanSum sum;
    for (const Segment& s : segments()) sum.add(s.u * (s.end - s.start));
    return sum.value();
}

std::string BangBangControl::to_json_string(int indent) const {
    nlohmann::json j;
    j["T"] = horizon_;
    j["initial_sign"] = initial_sign_;
    // Decimal strings so the times survive any JSON reader unchanged.
    nlohmann::json times = nlohmann::json::array();
    for (const double t : switch_times_) times.push_back(format_double(t));
    j["switch_times"] = std::move(times);
    return j.dump(indent);
}

BangBangControl BangBangControl::from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<double> times;
    for (const auto& jt : j.at("switch_times")) {
        times.push_back(std::stod(jt.get<std::string>()));
    }
    return BangBangControl(j.at("T").get<double>(), j.at("initial_sign").get<int>(),
                           std::move(times));
}

}  // namespace chatterkit
