#include "dualcube/modular.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace dualcube {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
    return pow_mod(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

std::uint64_t mult_order(std::uint64_t a, const PrimeModulus& p) {
    a %= p.value();
    if (a == 0) throw std::invalid_argument("mult_order: argument is 0 mod p");
    // The order divides p - 1: strip prime factors while the power stays 1.
    std::uint64_t order = p.value() - 1;
    for (std::uint64_t f : prime_factors(order)) {
        while (order % f == 0 && pow_mod(a, order / f, p) == 1) order /= f;
    }
    return order;
}

RowBasis row_basis_mod(FpMat m, std::int64_t p) {
    m = m.unaryExpr([p](std::int64_t e) { return mod(e, p); });
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        Eigen::Index pivot = rank;
        while (pivot < rows && mod(m(pivot, col), p) == 0) ++pivot;
        if (pivot == rows) continue;
        m.row(rank).swap(m.row(pivot));
        const auto inv = static_cast<std::int64_t>(inv_mod(static_cast<std::uint64_t>(mod(m(rank, col), p)),
                                                           static_cast<std::uint64_t>(p)));
        m.row(rank) = reduce(m.row(rank).transpose() * inv, p).transpose();
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == rank || m(i, col) == 0) continue;
            const std::int64_t factor = m(i, col);
            m.row(i) = reduce((m.row(i) - factor * m.row(rank)).transpose(), p).transpose();
        }
        ++rank;
    }
    return RowBasis{m.topRows(rank)};
}

} // namespace dualcube
