#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "chatterkit/series_builder.hpp"
#include "chatterkit/series_eval.hpp"

#include "support/oracles.hpp"

using namespace chatterkit;

namespace {

ChatterSequence table_sequence(std::int64_t K = 6, int bits = 128) {
    return SeriesBuilder::run("0.5", ExponentSpec::squares(), K, bits);
}

}  // namespace

TEST_CASE("first partial sum is the identity map") {
    const ChatterSequence seq = table_sequence(2);
    CHECK(eval_partial_sum(seq, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_partial_sum(seq, 1, 0.0) == 0.0);
}

TEST_CASE("even probe points evaluate negative") {
    const ChatterSequence seq = table_sequence(6);
    const BigFloat p2 = eval_partial_sum_log(seq, 2, seq.log_z(2)).value;
    CHECK(p2.sign() == -1);
    // reference value from the construction stage
    CHECK(p2.to_double() == doctest::Approx(-0.10360986360373586).epsilon(1e-12));
}

TEST_CASE("domain of the double evaluator") {
    const ChatterSequence seq = table_sequence(2);
    CHECK_THROWS_AS(eval_partial_sum(seq, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_partial_sum(seq, 1, -0.1), std::domain_error);
}

TEST_CASE("tail bound formulas and dominance") {
    const ExponentSpec squares = ExponentSpec::squares();
    // closed forms
    CHECK(tail_bound(0.5, 1, squares) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tail_bound(0.5, 3, squares) == doctest::Approx(std::pow(2.0, -8.0)).epsilon(1e-12));
    // dominance over the directly summed tail
    const double true_tail = oracles::direct_tail_sum(0.5, 1, 30, squares);
    CHECK(true_tail == doctest::Approx(0.5644684136059386).epsilon(1e-12));
    CHECK(tail_bound(0.5, 1, squares) >= true_tail);
    for (const double z : {0.1, 0.35, 0.6, 0.85}) {
        for (const std::int64_t p : {1LL, 2LL, 5LL}) {
            CHECK(tail_bound(z, p, squares) >= oracles::direct_tail_sum(z, p, 60, squares));
        }
    }
    // custom tables only guarantee alpha_m >= m; the geometric majorant must
    // still dominate a non-monotone admissible table
    std::vector<std::int64_t> jitter(64);
    for (std::size_t i = 0; i < jitter.size(); ++i) {
        jitter[i] = static_cast<std::int64_t>(i) + 1 + static_cast<std::int64_t>((i * 7) % 5);
    }
    const ExponentSpec custom = ExponentSpec::custom(jitter);
    for (const double z : {0.2, 0.5, 0.8}) {
        for (const std::int64_t p : {1LL, 3LL, 7LL}) {
            CHECK(tail_bound(z, p, custom) >= oracles::direct_tail_sum(z, p, 40, custom));
        }
    }
    // z -> 0 limit
    CHECK(tail_bound(1e-12, 2, squares) < 1e-40);
    CHECK_THROWS_AS(tail_bound(0.0, 1, squares), std::domain_error);
}

TEST_CASE("sign pattern verification") {
    const ChatterSequence seq6 = table_sequence(6);
    SUBCASE("single block") {
        const SignPatternReport report = verify_sign_pattern(seq6, 1);
        CHECK(report.ok);
        REQUIRE(report.values.size() == 1);
        CHECK(report.values[0] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("six blocks") {
        const SignPatternReport report = verify_sign_pattern(seq6, 6);
        CHECK(report.ok);
        for (std::size_t i = 0; i < report.signs.size(); ++i) {
            CHECK(report.signs[i] == (i % 2 == 0 ? 1 : -1));
        }
    }
    SUBCASE("nine blocks at higher precision, all truncation levels") {
        const ChatterSequence seq9 = table_sequence(9, 256);
        for (std::int64_t L = 1; L <= 9; ++L) {
            CHECK(verify_sign_pattern(seq9, L).ok);
        }
    }
}

TEST_CASE("partial sums agree with the integer-power oracle at every probe") {
    const ChatterSequence seq9 = table_sequence(9, 256);
    for (std::int64_t k = 1; k <= 9; ++k) {
        const double main = eval_partial_sum_log(seq9, 9, seq9.log_z(k)).value.to_double();
        const double oracle = oracles::independent_partial_sum(seq9, 9, k);
        CHECK(main == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("coefficient power sums match the exact rational route") {
    const ChatterSequence seq = table_sequence(6);
    CHECK(coefficient_power_sum(seq, 1.0, 1) == 1.0);
    // gamma = 2, k = 2: 1 + 1/4 + 1/9 + 1/16 + 1/25 = 5269/3600
    CHECK(coefficient_power_sum(seq, 2.0, 2) ==
          doctest::Approx(5269.0 / 3600.0).epsilon(1e-14));
    for (const double gamma : {1.0, 2.0, 3.0}) {
        for (std::int64_t k = 1; k <= 6; ++k) {
            const double expected =
                oracles::power_sum_exact(seq.r(k), static_cast<int>(gamma)).to_double();
            CHECK(coefficient_power_sum(seq, gamma, k) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
    for (std::int64_t k = 1; k <= 6; ++k) {
        CHECK(coefficient_power_sum(seq, 1.5, k) ==
              doctest::Approx(oracles::power_sum_double(seq.r(k), 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("additivity of consecutive truncation levels") {
    const ChatterSequence seq = table_sequence(6);
    const BigFloat log_z = log1p(BigFloat(-0.1, 128));  // z = 0.9
    for (std::int64_t L = 1; L < 6; ++L) {
        const BigFloat lower = eval_partial_sum_log(seq, L, log_z).value;
        const BigFloat upper = eval_partial_sum_log(seq, L + 1, log_z).value;
        // block L+1 alone
        const Block& b = seq.block(L + 1);
        BigFloat block_sum(128);
        for (std::int64_t i = 0; i <= b.h_end - b.h_start; ++i) {
            BigFloat term =
                exp(log_z * static_cast<long>(seq.exponents().alpha(b.p + i))) /
                static_cast<long>(b.h_start + i);
            if (b.sign < 0) term = -term;
            block_sum += term;
        }
        const double diff = (upper - lower - block_sum).to_double();
        const double scale = std::max(std::abs(block_sum.to_double()), 1e-300);
        CHECK(std::abs(diff) <= 1e-12 * scale);
    }
}

TEST_CASE("sign changes are bracketed between consecutive probes") {
    const ChatterSequence seq = table_sequence(6);

    SUBCASE("single probe may yield nothing") {
        const RootSearchResult r = find_sign_changes(seq, 1, 64);
        CHECK(r.roots.empty());
        CHECK(r.may_miss_even_multiplicity);
    }
    SUBCASE("two blocks yield a root inside (z_1, z_2)") {
        const RootSearchResult r = find_sign_changes(seq, 2, 64);
        REQUIRE(!r.roots.empty());
        bool found = false;
        for (const double root : r.roots) {
            if (root > 0.5 && root < 0.984375) found = true;
        }
        CHECK(found);
    }
    SUBCASE("six blocks yield at least one root per alternating pair") {
        const std::vector<BigFloat> roots = find_sign_change_deltas(seq, 6, 256);
        CHECK(roots.size() >= 5);
        for (std::int64_t k = 1; k < 6; ++k) {
            int in_window = 0;
            for (const BigFloat& d : roots) {
                if (d < seq.delta(k) && d > seq.delta(k + 1)) ++in_window;
            }
            CHECK(in_window >= 1);
        }
        // every root carries a genuine sign change across its bracket
        const int bits = seq.precision_bits();
        for (const BigFloat& d : roots) {
            const BigFloat lo = d * BigFloat(1.0 - 3e-14, bits);
            const BigFloat hi = d * BigFloat(1.0 + 3e-14, bits);
            const int s_lo = eval_partial_sum_log(seq, 6, log1p(-lo)).value.sign();
            const int s_hi = eval_partial_sum_log(seq, 6, log1p(-hi)).value.sign();
            CHECK(s_lo * s_hi < 0);
        }
    }
}

TEST_CASE("csv emitters are deterministic and carry headers") {
    const ChatterSequence seq = table_sequence(4);
    const SignPatternReport report = verify_sign_pattern(seq, 4);
    const std::string a = sign_pattern_csv(seq, report);
    const std::string b = sign_pattern_csv(seq, report);
    CHECK(a == b);
    CHECK(a.rfind("k,z,value,sign\n", 0) == 0);

    const RootSearchResult roots = find_sign_changes(seq, 4, 64);
    const std::string c = roots_csv(seq, 4, roots);
    CHECK(c.rfind("k,root,value,sign\n", 0) == 0);
    CHECK(c == roots_csv(seq, 4, roots));
}
