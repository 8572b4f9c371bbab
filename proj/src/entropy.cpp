#include "dualcube/entropy.hpp"

#include "dualcube/errors.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dualcube {

namespace {

void check_budget(std::size_t k, std::size_t size, std::uint64_t budget) {
    if (size == 0) throw std::invalid_argument("point set must be nonempty");
    if (k >= 63 || (std::uint64_t{1} << k) > budget / size)
        throw BudgetError("width enumeration 2^" + std::to_string(k) + " x " + std::to_string(size) +
                          " exceeds budget " + std::to_string(budget));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double to_double(const BigCount& v) { return v.convert_to<double>(); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

double width_exact(const PointSet& points, std::uint64_t budget) {
    const auto k = static_cast<std::size_t>(points.cols());
    check_budget(k, static_cast<std::size_t>(points.rows()), budget);
    // Gray-code walk over theta: flipping theta_j moves every inner product by 2 a_j.
    Eigen::VectorXcd s = points.rowwise().sum();
    std::vector<int> theta(k, 1);
    long double total = std::sqrt(s.cwiseAbs2().maxCoeff());
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t g = 1; g < count; ++g) {
        const auto j = static_cast<Eigen::Index>(std::countr_zero(g));
        s -= 2.0 * theta[static_cast<std::size_t>(j)] * points.col(j);
        theta[static_cast<std::size_t>(j)] = -theta[static_cast<std::size_t>(j)];
        total += std::sqrt(s.cwiseAbs2().maxCoeff());
    }
    return static_cast<double>(total / static_cast<long double>(count));
}

double width_exact(const GaussianPointSet& points, std::uint64_t budget) {
    if (points.re.rows() != points.im.rows() || points.re.cols() != points.im.cols())
        throw std::invalid_argument("real and imaginary parts differ in shape");
    if (points.denom <= 0) throw std::invalid_argument("denominator must be positive");
    const auto k = static_cast<std::size_t>(points.re.cols());
    const auto size = points.re.rows();
    check_budget(k, static_cast<std::size_t>(size), budget);
    using Vec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
    Vec sre = points.re.rowwise().sum();
    Vec sim = points.im.rowwise().sum();
    std::vector<std::int64_t> theta(k, 1);
    auto max_sq = [&] {
        __int128 best = 0;
        for (Eigen::Index i = 0; i < size; ++i) {
            const __int128 v = static_cast<__int128>(sre(i)) * sre(i) + static_cast<__int128>(sim(i)) * sim(i);
            if (v > best) best = v;
        }
        return std::sqrt(static_cast<long double>(best));
    };
    long double total = max_sq();
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t g = 1; g < count; ++g) {
        const auto j = static_cast<Eigen::Index>(std::countr_zero(g));
        const std::int64_t step = 2 * theta[static_cast<std::size_t>(j)];
        sre -= step * points.re.col(j);
        sim -= step * points.im.col(j);
        theta[static_cast<std::size_t>(j)] = -theta[static_cast<std::size_t>(j)];
        total += max_sq();
    }
    return static_cast<double>(total / static_cast<long double>(count) / static_cast<long double>(points.denom));
}

McEstimate width_mc(const PointSet& points, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("width_mc needs at least one trial");
    if (points.rows() == 0) throw std::invalid_argument("point set must be nonempty");
    const Eigen::Index k = points.cols();
    Eigen::VectorXd theta(k);
    long double sum = 0, sum_sq = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::uint64_t state = splitmix64(seed ^ splitmix64(trial));
        std::uint64_t bits = 0;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (j % 64 == 0) bits = state = splitmix64(state);
            theta(j) = (bits & 1U) ? 1.0 : -1.0;
            bits >>= 1;
        }
        const double v = std::sqrt((points * theta.cast<std::complex<double>>()).cwiseAbs2().maxCoeff());
        sum += v;
        sum_sq += static_cast<long double>(v) * v;
    }
    const auto n = static_cast<long double>(trials);
    McEstimate est;
    est.trials = trials;
    est.mean = static_cast<double>(sum / n);
    if (trials > 1) {
        const long double var = (sum_sq - sum * sum / n) / (n - 1);
        est.stderr_ = static_cast<double>(std::sqrt(std::max<long double>(var, 0) / n));
    }
    return est;
}

PointSet cube_points(std::complex<double> c, std::complex<double> z, std::size_t k) {
    if (k >= 31) throw BudgetError("cube_points: 2^k rows too many");
    const auto rows = static_cast<Eigen::Index>(std::uint64_t{1} << k);
    PointSet out(rows, static_cast<Eigen::Index>(k));
    for (Eigen::Index mask = 0; mask < rows; ++mask)
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(k); ++j) out(mask, j) = ((mask >> j) & 1) ? z : c;
    return out;
}

GaussianPointSet cube_points_rational(std::int64_t c_num, std::int64_t z_num, std::int64_t den, std::size_t k) {
    if (k >= 31) throw BudgetError("cube_points_rational: 2^k rows too many");
    const auto rows = static_cast<Eigen::Index>(std::uint64_t{1} << k);
    GaussianPointSet out;
    out.re.resize(rows, static_cast<Eigen::Index>(k));
    out.im = decltype(out.im)::Zero(rows, static_cast<Eigen::Index>(k));
    out.denom = den;
    for (Eigen::Index mask = 0; mask < rows; ++mask)
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(k); ++j) out.re(mask, j) = ((mask >> j) & 1) ? z_num : c_num;
    return out;
}

double cube_width_lower(double c, std::size_t k) {
    if (!(c > 0)) throw std::invalid_argument("c must be positive");
    return c * static_cast<double>(k) / 2.0;
}

EntropyBoundReport certified_entropy_lower(double c, double epsilon, double M, const BigCount& k, double K) {
    if (!(c > 0) || !(epsilon > 0) || !(epsilon < c / 2))
        throw std::invalid_argument("certified_entropy_lower requires 0 < eps < c/2");
    if (!(M > 0) || !(K > 0)) throw std::invalid_argument("M and K must be positive");
    if (k <= 0) throw std::invalid_argument("k must be positive");
    EntropyBoundReport rep;
    rep.c = c;
    rep.epsilon = epsilon;
    rep.M = M;
    rep.k = k;
    rep.khintchine_constant = K;
    const double kd = to_double(k);
    const double ratio = (c / 2 - epsilon) / (K * M);
    rep.lower_bound_log2 = kd * ratio * ratio;
    const std::string ks = k.str();
    rep.trace = {
        "w(S) >= w({c,z}^k) >= c k/2 = " + fmt(c * kd / 2),
        "S in conv_C(B) + eps D^k, |b_i| <= M: w(S) <= w(B) + w(eps D^k) = w(B) + eps k = w(B) + " + fmt(epsilon * kd),
        "w(B) <= (E sum_b |<b,theta>|^q)^(1/q) with q = log2|B|, so |B|^(1/q) = 2",
        "Khintchine on real and imaginary parts: w(B) <= K M sqrt(k log2|B|), K = " + fmt(K),
        "(c/2 - eps) k <= K M sqrt(k log2|B|)  =>  log2|B| >= k ((c/2 - eps)/(K M))^2",
        "k = " + ks + ", ((c/2 - eps)/(K M))^2 = " + fmt(ratio * ratio) + ", bound = " + fmt(rep.lower_bound_log2),
    };
    return rep;
}

double phase_count_log2(std::uint64_t p, const BigCount& n, std::uint64_t d) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (d >= p) throw std::invalid_argument("degree d >= p is outside the classical-polynomial regime");
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    BigCount monomials = 1;  // C(n + d, d)
    for (std::uint64_t i = 1; i <= d; ++i) monomials = monomials * (n + i) / i;
    return to_double(monomials) * std::log2(static_cast<double>(p));
}

CrossoverReport contradiction_scan(const SparseSeed& seed, double epsilon, double M, double K, std::uint64_t m_min,
                                   std::uint64_t m_max) {
    if (seed.k() > seed.t)
        throw std::invalid_argument("contradiction_scan requires support size k <= t (got k = " +
                                    std::to_string(seed.k()) + ", t = " + std::to_string(seed.t) + ")");
    if (!(epsilon > 0) || !(epsilon < 0.5)) throw std::invalid_argument("contradiction_scan requires 0 < eps < 1/2");
    if (!(M > 0) || !(K > 0)) throw std::invalid_argument("M and K must be positive");
    CrossoverReport rep;
    rep.p = seed.p;
    rep.t = seed.t;
    rep.support = seed.k();
    rep.epsilon = epsilon;
    rep.M = M;
    rep.K = K;
    const double ratio = (0.5 - epsilon) / (K * M);
    std::vector<double> log_n, log_cube, log_phase;
    for (std::uint64_t m = std::max(m_min, seed.p); m <= m_max; ++m) {
        const MVParams params = derive_params(seed.p, seed.r, m);
        CrossoverRow row;
        row.m = m;
        row.k_dim = params.k;
        row.n = params.n;
        row.b_cube = to_double(params.k) * ratio * ratio;
        row.b_phase = phase_count_log2(seed.p, params.n, seed.k() - 1);
        if (!rep.crossover && row.b_cube > row.b_phase) rep.crossover = m;
        log_n.push_back(std::log(to_double(params.n)));
        log_cube.push_back(std::log(row.b_cube));
        log_phase.push_back(std::log(row.b_phase));
        rep.rows.push_back(std::move(row));
    }
    if (rep.rows.size() >= 2) {
        rep.cube_exponent = slope(log_n, log_cube);
        rep.phase_exponent = slope(log_n, log_phase);
    }
    return rep;
}

} // namespace dualcube
