#include "chatterkit/cosine_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chatterkit/numerics.hpp"

namespace chatterkit {

CosineSeries::CosineSeries(double a0, std::vector<Mode> modes, std::int64_t cutoff)
    : a0_(a0), modes_(std::move(modes)), cutoff_(cutoff) {
    for (const Mode& m : modes_) {
        if (m.n < 1) throw std::invalid_argument("CosineSeries: mode index must be >= 1");
    }
    std::sort(modes_.begin(), modes_.end(),
              [](const Mode& a, const Mode& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < modes_.size(); ++i) {
        if (modes_[i].n == modes_[i - 1].n) {
            throw std::invalid_argument("CosineSeries: duplicate mode index");
        }
    }
    if (!modes_.empty()) cutoff_ = std::max(cutoff_, modes_.back().n);
}

double CosineSeries::evaluate(double x) const {
    KahanSum sum;
    sum.add(a0_);
    for (const Mode& m : modes_) {
        sum.add(m.a * std::cos(static_cast<double>(m.n) * M_PI * x));
    }
    return sum.value();
}

std::vector<double> CosineSeries::sample_uniform(std::int64_t n_points) const {
    if (n_points < 2) throw std::invalid_argument("CosineSeries: need >= 2 sample points");
    std::vector<double> out(static_cast<std::size_t>(n_points));
    for (std::int64_t i = 0; i < n_points; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double c1 = std::cos(M_PI * x);
        // cos(n a) via the Chebyshev three-term recurrence, walking the
        // sparse mode list in order.
        double c_prev = 1.0;   // cos(0)
        double c_cur = c1;     // cos(a)
        std::int64_t n_cur = 1;
        KahanSum sum;
        sum.add(a0_);
        for (const Mode& m : modes_) {
            while (n_cur < m.n) {
                const double c_next = 2.0 * c1 * c_cur - c_prev;
                c_prev = c_cur;
                c_cur = c_next;
                ++n_cur;
            }
            sum.add(m.a * c_cur);
        }
        out[static_cast<std::size_t>(i)] = sum.value();
    }
    return out;
}

double CosineSeries::l2_norm_sq() const {
    KahanSum sum;
    sum.add(a0_ * a0_);
    for (const Mode& m : modes_) sum.add(0.5 * m.a * m.a);
    return sum.value();
}

namespace {

CosineSeries combine(const CosineSeries& lhs, const CosineSeries& rhs, double rhs_scale) {
    std::map<std::int64_t, double> merged;
    for (const auto& m : lhs.modes()) merged[m.n] = m.a;
    for (const auto& m : rhs.modes()) merged[m.n] += rhs_scale * m.a;
    std::vector<CosineSeries::Mode> modes;
    modes.reserve(merged.size());
    for (const auto& [n, a] : merged) {
        if (a != 0.0) modes.push_back({n, a});
    }
    return CosineSeries(lhs.a0() + rhs_scale * rhs.a0(), std::move(modes),
                        std::max(lhs.cutoff(), rhs.cutoff()));
}

}  // namespace

CosineSeries operator-(const CosineSeries& lhs, const CosineSeries& rhs) {
    return combine(lhs, rhs, -1.0);
}

CosineSeries operator+(const CosineSeries& lhs, const CosineSeries& rhs) {
    return combine(lhs, rhs, 1.0);
}

std::string CosineSeries::to_json_string(int indent) const {
    nlohmann::json j;
    j["a0"] = a0_;
    j["cutoff"] = cutoff_;
    nlohmann::json modes = nlohmann::json::array();
    for (const Mode& m : modes_) modes.push_back({{"n", m.n}, {"a", m.a}});
    j["modes"] = std::move(modes);
    return j.dump(indent);
}

CosineSeries CosineSeries::from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Mode> modes;
    for (const auto& jm : j.at("modes")) {
        modes.push_back({jm.at("n").get<std::int64_t>(), jm.at("a").get<double>()});
    }
    return CosineSeries(j.at("a0").get<double>(), std::move(modes),
                        j.value("cutoff", std::int64_t(0)));
}

std::string CosineSeries::sample_csv(std::int64_t n_points) const {
    const std::vector<double> values = sample_uniform(n_points);
    std::ostringstream os;
    os << "x,value\n";
    for (std::int64_t i = 0; i < n_points; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n_points - 1);
        os << format_double(x) << ',' << format_double(values[static_cast<std::size_t>(i)]) << '\n';
    }
    return os.str();
}

bool CosineSeries::operator==(const CosineSeries& other) const {
    if (a0_ != other.a0_ || cutoff_ != other.cutoff_ || modes_.size() != other.modes_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].n != other.modes_[i].n || modes_[i].a != other.modes_[i].a) return false;
    }
    return true;
}

}  // namespace chatterkit
