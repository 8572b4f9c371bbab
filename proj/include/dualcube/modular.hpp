#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace dualcube {

/// A vector over F_p. Entries are kept in [0, p).
using FpVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
/// Row-major so that family rows (w_S, d_S, ...) are contiguous.
using FpMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Least nonnegative residue of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t v = a % m;
    return v < 0 ? v + m : v;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo prime p; throws std::invalid_argument for a = 0 mod p.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

bool is_prime(std::uint64_t n);
/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// A prime, certified by trial division on construction.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);
    std::uint64_t value() const { return p_; }
    operator std::uint64_t() const { return p_; }

private:
    std::uint64_t p_;
};

/// Multiplicative order of a modulo p. Throws std::invalid_argument if p | a.
std::uint64_t mult_order(std::uint64_t a, const PrimeModulus& p);

/// Reduce every entry of v into [0, p).
template <typename Derived>
FpVec reduce(const Eigen::MatrixBase<Derived>& v, std::int64_t p) {
    return v.unaryExpr([p](std::int64_t e) { return mod(e, p); }).eval();
}

/// <a, b> mod p for integer vectors with entries in [0, p).
template <typename A, typename B>
std::int64_t dot_mod(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, std::int64_t p) {
    return mod(a.dot(b), p);
}

/// Rank of a matrix over F_p together with a basis of its row space (rows of the result).
struct RowBasis {
    FpMat basis;
    Eigen::Index rank() const { return basis.rows(); }
};
RowBasis row_basis_mod(FpMat m, std::int64_t p);

} // namespace dualcube
