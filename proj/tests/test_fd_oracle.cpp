#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "chatterkit/fd_oracle.hpp"
#include "chatterkit/numerics.hpp"
#include "chatterkit/spectral_heat.hpp"

#include "support/oracles.hpp"

using namespace chatterkit;

TEST_CASE("zero flux keeps the zero state") {
    const CrankNicolsonResult r =
        crank_nicolson_solve_segments({{0.0, 0.1, 0.0}}, 101, 50);
    for (const double v : r.values) CHECK(v == 0.0);
    CHECK(r.merged_segments == 0);
}

TEST_CASE("constant heating matches the spectral closed form") {
    const BangBangControl u(0.1, 1, {});
    const CrankNicolsonResult cn = crank_nicolson_solve(u, 401, 400);
    const CosineSeries spectral = forward_terminal_state(u, 20000);
    CHECK(compare_l2(cn.values, spectral) < 1e-4);
}

TEST_CASE("second-order convergence against the spectral reference") {
    const BangBangControl u(0.1, 1, {});
    const CosineSeries reference = forward_terminal_state(u, 100000);
    std::vector<double> errors;
    for (const auto& [nx, nt] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {251, 250}, {501, 500}, {1001, 1000}}) {
        errors.push_back(compare_l2(crank_nicolson_solve(u, nx, nt).values, reference));
    }
    // strictly improving (well within the 10% slack) and order about two
    CHECK(errors[1] < errors[0] * 1.1);
    CHECK(errors[2] < errors[1] * 1.1);
    for (const double order : oracles::observed_orders(errors)) {
        CHECK(order >= 1.9);
    }
}

TEST_CASE("discrete mass balance is exact up to roundoff") {
    const BangBangControl u(0.2, -1, {0.03, 0.11, 0.17});
    const CrankNicolsonResult cn = crank_nicolson_solve(u, 201, 300);
    KahanSum mean;
    const std::size_t n = cn.values.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        mean.add(cn.values[i] * h * ((i == 0 || i + 1 == n) ? 0.5 : 1.0));
    }
    CHECK(mean.value() == doctest::Approx(u.integral()).epsilon(1e-10));
}

TEST_CASE("l2 comparison basics") {
    SUBCASE("identical inputs give zero") {
        const BangBangControl u(0.05, 1, {});
        const CosineSeries y = forward_terminal_state(u, 256);
        const std::vector<double> grid = y.sample_uniform(301);
        CHECK(compare_l2(grid, y) == 0.0);
    }
    SUBCASE("constant against zero recovers the constant") {
        const CosineSeries zero(0.0, {}, 0);
        const std::vector<double> grid(101, 3.25);
        CHECK(compare_l2(grid, zero) == doctest::Approx(3.25).epsilon(1e-12));
    }
    SUBCASE("grid too small") {
        CHECK_THROWS_AS(compare_l2({1.0}, CosineSeries(0.0, {}, 0)), std::invalid_argument);
    }
}

TEST_CASE("ultra-short segments are merged with a reported defect") {
    const double T = 0.1;
    const BangBangControl u(T, 1, {0.05, 0.05 + 1e-12});
    const CrankNicolsonResult cn = crank_nicolson_solve(u, 101, 200);
    CHECK(cn.merged_segments == 1);
    CHECK(cn.merge_defect == doctest::Approx(2e-12).epsilon(1e-3));
    // the folded run solves the same problem as the unperturbed control
    const CrankNicolsonResult clean = crank_nicolson_solve(BangBangControl(T, 1, {}), 101, 200);
    double gap = 0.0;
    for (std::size_t i = 0; i < cn.values.size(); ++i) {
        gap = std::max(gap, std::abs(cn.values[i] - clean.values[i]));
    }
    CHECK(gap < 1e-9);
}

TEST_CASE("input validation") {
    const BangBangControl u(0.1, 1, {});
    CHECK_THROWS_AS(crank_nicolson_solve(u, 2, 10), std::invalid_argument);
    CHECK_THROWS_AS(crank_nicolson_solve(u, 11, 0), std::invalid_argument);
    CHECK_THROWS_AS(crank_nicolson_solve_segments({{0.1, 0.2, 1.0}}, 11, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(crank_nicolson_solve_segments({{0.0, 0.1, 1.0}, {0.2, 0.3, -1.0}}, 11, 10),
                    std::invalid_argument);
}

TEST_CASE("csv export carries the header and grid") {
    const std::string csv = terminal_grid_csv({0.0, 0.5, 1.0});
    CHECK(csv == "x,value\n0,0\n0.5,0.5\n1,1\n");
}
