#include "chatterkit/chatter_sequence.hpp"

#include <stdexcept>

#include <json.hpp>

namespace chatterkit {

ChatterSequence::ChatterSequence(ExponentSpec exponents, std::vector<Block> blocks,
                                 std::vector<BigFloat> deltas, int precision_bits)
    : exponents_(std::move(exponents)),
      blocks_(std::move(blocks)),
      deltas_(std::move(deltas)),
      precision_bits_(precision_bits) {
    if (blocks_.empty() || blocks_.size() != deltas_.size()) {
        throw std::invalid_argument("ChatterSequence: blocks and deltas must be nonempty and aligned");
    }
    validate();
}

const Block& ChatterSequence::block(std::int64_t k) const {
    if (k < 1 || k > iterations()) {
        throw std::out_of_range("ChatterSequence: block index " + std::to_string(k));
    }
    return blocks_[static_cast<std::size_t>(k - 1)];
}

const BigFloat& ChatterSequence::delta(std::int64_t k) const {
    if (k < 1 || k > iterations()) {
        throw std::out_of_range("ChatterSequence: delta index " + std::to_string(k));
    }
    return deltas_[static_cast<std::size_t>(k - 1)];
}

BigFloat ChatterSequence::log_z(std::int64_t k) const { return log1p(-delta(k)); }

void ChatterSequence::for_each_coefficient(
    std::int64_t L, const std::function<void(std::int64_t, std::int64_t, int)>& f) const {
    if (L < 1 || L > iterations()) {
        throw std::out_of_range("ChatterSequence: L = " + std::to_string(L));
    }
    for (std::int64_t k = 1; k <= L; ++k) {
        const Block& b = block(k);
        for (std::int64_t i = 0; i <= b.h_end - b.h_start; ++i) {
            f(b.p + i, b.h_start + i, b.sign);
        }
    }
}

ExactRational ChatterSequence::coefficient_sum_exact(std::int64_t L) const {
    ExactRational sum;
    for_each_coefficient(L, [&](std::int64_t, std::int64_t h, int sign) {
        sum.add_reciprocal(h, sign);
    });
    return sum;
}

void ChatterSequence::validate() const {
    const Block& first = blocks_.front();
    if (first.sign != 1 || first.p != 1 || first.q != 1 || first.h_start != 1 || first.h_end != 1) {
        throw std::logic_error("ChatterSequence: block 1 must be {+1, p=q=1, harmonic 1..1}");
    }
    const BigFloat one(1L, deltas_.front().precision());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        const std::int64_t k = static_cast<std::int64_t>(i) + 1;
        if (b.sign != (k % 2 == 1 ? 1 : -1)) {
            throw std::logic_error("ChatterSequence: block sign parity broken at k=" + std::to_string(k));
        }
        if (b.h_end < b.h_start || b.q - b.p != b.h_end - b.h_start) {
            throw std::logic_error("ChatterSequence: block extent mismatch at k=" + std::to_string(k));
        }
        if (deltas_[i].sign() <= 0 || deltas_[i] >= one) {
            throw std::logic_error("ChatterSequence: delta outside (0,1) at k=" + std::to_string(k));
        }
        if (i > 0) {
            const Block& prev = blocks_[i - 1];
            if (b.p <= prev.q) throw std::logic_error("ChatterSequence: p_k <= q_{k-1} at k=" + std::to_string(k));
            if (b.q <= b.p) throw std::logic_error("ChatterSequence: q_k <= p_k at k=" + std::to_string(k));
            if (b.h_start != prev.h_end + 1) {
                throw std::logic_error("ChatterSequence: harmonic range not contiguous at k=" + std::to_string(k));
            }
            if (b.h_end <= prev.h_end + 1) {
                throw std::logic_error("ChatterSequence: r_k <= r_{k-1} + 1 at k=" + std::to_string(k));
            }
            if (!(deltas_[i] < deltas_[i - 1])) {
                throw std::logic_error("ChatterSequence: deltas not strictly decreasing at k=" + std::to_string(k));
            }
        }
    }
}

namespace {

nlohmann::json exponents_to_json(const ExponentSpec& e) {
    nlohmann::json j;
    if (e.kind() == ExponentSpec::Kind::Squares) {
        j["kind"] = "squares";
    } else {
        j["kind"] = "custom";
        j["alpha"] = e.custom_table();
    }
    return j;
}

ExponentSpec exponents_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "squares") return ExponentSpec::squares();
    if (kind == "custom") return ExponentSpec::custom(j.at("alpha").get<std::vector<std::int64_t>>());
    throw std::invalid_argument("ChatterSequence: unknown exponent kind '" + kind + "'");
}

}  // namespace

std::string ChatterSequence::to_json_string(int indent) const {
    nlohmann::json j;
    j["exponents"] = exponents_to_json(exponents_);
    j["K"] = iterations();
    j["precision_bits"] = precision_bits_;
    nlohmann::json blocks = nlohmann::json::array();
    for (const Block& b : blocks_) {
        blocks.push_back({{"sign", b.sign}, {"p", b.p}, {"q", b.q},
                          {"h_start", b.h_start}, {"h_end", b.h_end}});
    }
    j["blocks"] = std::move(blocks);
    nlohmann::json deltas = nlohmann::json::array();
    for (const BigFloat& d : deltas_) deltas.push_back(d.to_string());
    j["deltas"] = std::move(deltas);
    return j.dump(indent);
}

ChatterSequence ChatterSequence::from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExponentSpec exponents = exponents_from_json(j.at("exponents"));
    const int precision_bits = j.at("precision_bits").get<int>();
    std::vector<Block> blocks;
    for (const auto& jb : j.at("blocks")) {
        blocks.push_back(Block{jb.at("sign").get<int>(), jb.at("p").get<std::int64_t>(),
                               jb.at("q").get<std::int64_t>(), jb.at("h_start").get<std::int64_t>(),
                               jb.at("h_end").get<std::int64_t>()});
    }
    std::vector<BigFloat> deltas;
    for (const auto& jd : j.at("deltas")) {
        deltas.push_back(BigFloat::from_string(jd.get<std::string>(), precision_bits));
    }
    const auto K = j.at("K").get<std::int64_t>();
    if (K != static_cast<std::int64_t>(blocks.size())) {
        throw std::invalid_argument("ChatterSequence: K does not match block count");
    }
    return ChatterSequence(std::move(exponents), std::move(blocks), std::move(deltas), precision_bits);
}

bool ChatterSequence::operator==(const ChatterSequence& other) const {
    if (!(exponents_ == other.exponents_) || precision_bits_ != other.precision_bits_ ||
        blocks_.size() != other.blocks_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& a = blocks_[i];
        const Block& b = other.blocks_[i];
        if (a.sign != b.sign || a.p != b.p || a.q != b.q || a.h_start != b.h_start ||
            a.h_end != b.h_end) {
            return false;
        }
        if (!(deltas_[i] == other.deltas_[i])) return false;
    }
    return true;
}

}  // namespace chatterkit
