#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dualcube/entropy.hpp"
#include "dualcube/errors.hpp"

#include <cmath>
#include <random>

using namespace dualcube;

namespace {

using cd = std::complex<double>;

PointSet random_points(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index k) {
    std::normal_distribution<double> g(0.0, 1.0);
    PointSet a(rows, k);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < k; ++j) a(i, j) = cd(g(rng), g(rng));
    return a;
}

PointSet stack(const PointSet& a, const PointSet& b) {
    PointSet out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

// Direct definition: enumerate theta as a bitmask and take the max over rows.
double width_oracle(const PointSet& a) {
    const auto k = a.cols();
    double total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        double best = 0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            cd s = 0;
            for (Eigen::Index j = 0; j < k; ++j) s += a(i, j) * (((mask >> j) & 1U) ? -1.0 : 1.0);
            best = std::max(best, std::abs(s));
        }
        total += best;
    }
    return total / static_cast<double>(std::uint64_t{1} << k);
}

} // namespace

TEST_CASE("width_exact examples") {
    CHECK(width_exact(PointSet::Ones(1, 1)) == doctest::Approx(1.0));
    const PointSet c1 = cube_points(1.0, -1.0 / 7, 1);
    CHECK(width_exact(c1) == doctest::Approx(1.0));
    CHECK(width_exact(cube_points(1.0, -1.0 / 7, 2)) >= 1.0);
    CHECK(width_exact(cube_points(1.0, -1.0, 2)) == doctest::Approx(2.0));
    CHECK(width_exact(cube_points_rational(7, -1, 7, 1)) == doctest::Approx(1.0));
    CHECK(width_exact(cube_points_rational(1, -1, 1, 2)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(width_exact(PointSet(0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(width_exact(PointSet::Ones(100, 20)), BudgetError);
}

TEST_CASE("width_exact matches the direct definition") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_points(rng, 1 + trial % 5, 1 + trial % 7);
        CHECK(width_exact(a) == doctest::Approx(width_oracle(a)).epsilon(1e-12));
    }
    // Rational route agrees with the floating route.
    for (std::size_t k = 1; k <= 8; ++k)
        CHECK(width_exact(cube_points_rational(7, -1, 7, k)) ==
              doctest::Approx(width_exact(cube_points(1.0, -1.0 / 7, k))).epsilon(1e-12));
}

TEST_CASE("hypercube bound") {
    for (std::size_t k = 1; k <= 10; ++k) {
        CHECK(width_exact(cube_points_rational(7, -1, 7, k)) >= cube_width_lower(1.0, k));
        CHECK(width_exact(cube_points_rational(3, -1, 3, k)) >= cube_width_lower(1.0, k));
    }
    CHECK(width_exact(cube_points_rational(7, -1, 7, 8)) >= 4.0);
    CHECK(cube_width_lower(1.0, 4) == 2.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double c = 0.1 + u(rng);
        const cd z = std::polar(u(rng), 3.141592653589793 * (0.5 + u(rng)));  // Re z <= 0
        const std::size_t k = 1 + static_cast<std::size_t>(trial % 8);
        CHECK(width_exact(cube_points(c, z, k)) >= cube_width_lower(c, k) - 1e-12);
    }
    CHECK_THROWS_AS(cube_width_lower(0.0, 3), std::invalid_argument);
}

TEST_CASE("width properties") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index k = 1 + trial % 6;
        const auto a = random_points(rng, 1 + trial % 4, k);
        const auto b = random_points(rng, 1 + trial % 3, k);
        const double wa = width_exact(a);

        CHECK(wa <= width_exact(stack(a, b)) + 1e-9);

        // Complex convex combinations with sum |alpha| <= 1.
        PointSet hull(3, k);
        for (Eigen::Index h = 0; h < 3; ++h) {
            Eigen::VectorXcd alpha(a.rows());
            for (auto& x : alpha) x = std::polar(u(rng), 6.283185307179586 * u(rng));
            alpha /= alpha.cwiseAbs().sum() * (1.0 + u(rng));
            hull.row(h) = alpha.transpose() * a;
        }
        CHECK(std::abs(width_exact(stack(a, hull)) - wa) <= 1e-9);

        PointSet sum(a.rows() * b.rows(), k);
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < b.rows(); ++j) sum.row(i * b.rows() + j) = a.row(i) + b.row(j);
        CHECK(width_exact(sum) <= wa + width_exact(b) + 1e-9);

        // w(eps D^k) = eps k: the sign vectors scaled by eps attain it, other disc points never exceed it.
        const double eps = 0.05 + u(rng);
        PointSet disc = eps * cube_points(1.0, -1.0, static_cast<std::size_t>(k));
        PointSet extra(4, k);
        for (auto& x : extra.reshaped()) x = std::polar(eps * u(rng), 6.283185307179586 * u(rng));
        CHECK(std::abs(width_exact(stack(disc, extra)) - eps * static_cast<double>(k)) <= 1e-9);
    }
}

TEST_CASE("width_mc") {
    const auto one = width_mc(PointSet::Ones(1, 1), 50, 7);
    CHECK(one.mean == 1.0);
    CHECK(one.stderr_ == 0.0);
    const PointSet cube = cube_points(1.0, -1.0 / 7, 8);
    const double exact = width_exact(cube);
    const auto est = width_mc(cube, 100000, 42);
    CHECK(std::abs(est.mean - exact) <= 3 * est.stderr_);
    const auto again = width_mc(cube, 100000, 42);
    CHECK(again.mean == est.mean);
    CHECK(again.stderr_ == est.stderr_);
    CHECK(width_mc(cube, 1000, 43).mean != width_mc(cube, 1000, 42).mean);
    CHECK_THROWS_AS(width_mc(cube, 0, 1), std::invalid_argument);
}

TEST_CASE("certified_entropy_lower") {
    const auto rep = certified_entropy_lower(1.0, 0.25, 1.0, 128);
    CHECK(rep.lower_bound_log2 == doctest::Approx(1.0));
    CHECK(rep.trace.size() >= 4);
    CHECK(certified_entropy_lower(1.0, 0.25, 1.0, 256).lower_bound_log2 == doctest::Approx(2.0));
    CHECK_THROWS_AS(certified_entropy_lower(1.0, 0.5, 1.0, 128), std::invalid_argument);
    CHECK_THROWS_AS(certified_entropy_lower(1.0, 0.0, 1.0, 128), std::invalid_argument);
    CHECK_THROWS_AS(certified_entropy_lower(1.0, 0.25, 0.0, 128), std::invalid_argument);
    // Projection: a coordinate subset never gives a larger bound.
    for (int k = 1; k < 50; ++k)
        CHECK(certified_entropy_lower(1.0, 0.1, 2.0, k).lower_bound_log2 <=
              certified_entropy_lower(1.0, 0.1, 2.0, k + 1).lower_bound_log2);
}

TEST_CASE("phase_count_log2") {
    CHECK(phase_count_log2(7, 1, 0) == doctest::Approx(std::log2(7.0)));
    CHECK(phase_count_log2(7, 2, 2) == doctest::Approx(6 * std::log2(7.0)));
    CHECK(phase_count_log2(3, 3, 1) == doctest::Approx(4 * std::log2(3.0)));
    CHECK(phase_count_log2(7, 28, 2) == doctest::Approx(435 * std::log2(7.0)));
    CHECK_THROWS_AS(phase_count_log2(3, 3, 3), std::invalid_argument);
}

TEST_CASE("contradiction_scan") {
    const auto seed = sparse_factor_search(7, 2);
    REQUIRE(seed);
    const auto rep = contradiction_scan(*seed, 0.25, 1.0, kDefaultKhintchine, 7, 500);
    REQUIRE(rep.crossover);
    CHECK(*rep.crossover == 189);
    CHECK(rep.rows.size() == 494);
    for (const auto& row : rep.rows) CHECK((row.b_cube > row.b_phase) == (row.m >= 189));
    CHECK(std::abs(*rep.cube_exponent - 3.0) <= 0.2);
    CHECK(std::abs(*rep.phase_exponent - 2.0) <= 0.2);

    const auto small = contradiction_scan(*seed, 0.25, 1.0, kDefaultKhintchine, 7, 60);
    CHECK_FALSE(small.crossover);
    CHECK(contradiction_scan(*seed, 0.25, 1.0, kDefaultKhintchine, 2, 6).rows.empty());

    const SparseSeed p3{3, 2, 2, SparsePoly(PolyFr::parse(2, "1,1,1"))};
    CHECK_THROWS_AS(contradiction_scan(p3, 0.25, 1.0, kDefaultKhintchine, 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(contradiction_scan(*seed, 0.5, 1.0, kDefaultKhintchine, 7, 10), std::invalid_argument);
}
