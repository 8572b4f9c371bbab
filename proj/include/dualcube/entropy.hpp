#pragma once

#include "dualcube/cyclotomic.hpp"
#include "dualcube/matching.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dualcube {

/// A finite set of points in C^k, one point per row.
using PointSet = Eigen::MatrixXcd;

/// Points with Gaussian-rational coordinates (re + i im) / denom, one per row.
struct GaussianPointSet {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> re;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> im;
    std::int64_t denom = 1;
};

inline constexpr std::uint64_t kWidthBudget = 10'000'000;

/// w(A) = E_theta max_{a in A} |<a, theta>| over all theta in {+-1}^k.
double width_exact(const PointSet& points, std::uint64_t budget = kWidthBudget);
/// Same average with the per-theta maxima selected by exact integer comparison
/// of squared moduli; only the final square roots and mean are floating.
double width_exact(const GaussianPointSet& points, std::uint64_t budget = kWidthBudget);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
};

/// Monte-Carlo width; trial i draws its signs from a generator keyed by (seed, i).
McEstimate width_mc(const PointSet& points, std::uint64_t trials, std::uint64_t seed);

/// {c, z}^k, row index = bitmask of the coordinates equal to z.
PointSet cube_points(std::complex<double> c, std::complex<double> z, std::size_t k);
/// {c, z}^k for rationals c = c_num / den and z = z_num / den.
GaussianPointSet cube_points_rational(std::int64_t c_num, std::int64_t z_num, std::int64_t den, std::size_t k);

/// ck/2.
double cube_width_lower(double c, std::size_t k);

inline constexpr double kDefaultKhintchine = 2.8284271247461903;  // 2 sqrt 2

struct EntropyBoundReport {
    double c = 0.0;
    double epsilon = 0.0;
    double M = 0.0;
    BigCount k;
    double khintchine_constant = kDefaultKhintchine;
    double lower_bound_log2 = 0.0;
    std::vector<std::string> trace;
};

/// log2 ent(S, eps, M) >= k ((c/2 - eps) / (K M))^2 for any S containing {c, z}^k.
EntropyBoundReport certified_entropy_lower(double c, double epsilon, double M, const BigCount& k,
                                           double K = kDefaultKhintchine);

/// log2 of the number of n-variate polynomials over F_p of total degree <= d.
double phase_count_log2(std::uint64_t p, const BigCount& n, std::uint64_t d);

struct CrossoverRow {
    std::uint64_t m = 0;
    BigCount k_dim;
    BigCount n;
    double b_cube = 0.0;
    double b_phase = 0.0;
};

struct CrossoverReport {
    std::uint64_t p = 0;
    std::uint64_t t = 0;
    std::size_t support = 0;
    double epsilon = 0.0;
    double M = 0.0;
    double K = kDefaultKhintchine;
    std::vector<CrossoverRow> rows;
    std::optional<std::uint64_t> crossover;
    /// Least-squares slopes of log B against log n over all rows (needs >= 2 rows).
    std::optional<double> cube_exponent;
    std::optional<double> phase_exponent;
};

/// Compares the cube-side bound C(m, p-1) ((1/2 - eps)/(K M))^2 against
/// phase_count_log2(p, n, k - 1) for m in [m_min, m_max], m >= p.
/// Throws std::invalid_argument unless the seed's support size k <= t and eps < 1/2.
CrossoverReport contradiction_scan(const SparseSeed& seed, double epsilon, double M, double K, std::uint64_t m_min,
                                   std::uint64_t m_max);

} // namespace dualcube
