#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualcube {

/// Dense polynomial over F_r, coefficients stored low-to-high with no trailing zeros.
class PolyFr {
public:
    explicit PolyFr(std::uint32_t r);
    PolyFr(std::uint32_t r, std::vector<std::uint32_t> coeffs);

    static PolyFr monomial(std::uint32_t r, std::size_t degree, std::uint32_t c = 1);
    /// Inverse of packed(): digits of the base-r expansion become coefficients.
    static PolyFr from_packed(std::uint32_t r, std::uint64_t packed);
    /// Parses "c0,c1,...". Coefficients must lie in [0, r).
    static PolyFr parse(std::uint32_t r, std::string_view text);

    std::uint32_t r() const { return r_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::uint32_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    std::uint32_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    std::span<const std::uint32_t> coeffs() const { return coeffs_; }
    bool is_monic() const { return leading() == 1; }

    /// Value at 1 in F_r.
    std::uint32_t at_one() const;
    std::uint32_t eval(std::uint32_t x) const;

    /// sum coeff_i * r^i; the ordering used for every deterministic choice.
    std::uint64_t packed() const;
    /// "c0,c1,...", the CLI text encoding.
    std::string to_string() const;
    /// Human-readable form such as x^3+x+1.
    std::string pretty() const;

    PolyFr monic() const;

    friend PolyFr operator+(const PolyFr& a, const PolyFr& b);
    friend PolyFr operator-(const PolyFr& a, const PolyFr& b);
    friend PolyFr operator*(const PolyFr& a, const PolyFr& b);
    friend bool operator==(const PolyFr&, const PolyFr&) = default;

    /// Quotient and remainder; throws std::invalid_argument on division by zero.
    std::pair<PolyFr, PolyFr> divmod(const PolyFr& divisor) const;
    PolyFr operator%(const PolyFr& divisor) const { return divmod(divisor).second; }

private:
    void normalize();
    static void require_same_field(const PolyFr& a, const PolyFr& b);

    std::uint32_t r_;
    std::vector<std::uint32_t> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
PolyFr gcd(PolyFr a, PolyFr b);
/// base^exp mod modulus.
PolyFr pow_mod(const PolyFr& base, std::uint64_t exp, const PolyFr& modulus);

/// All monic irreducible polynomials over F_r of degree 1..max_degree, by degree then packed order.
std::vector<PolyFr> monic_irreducibles_up_to(std::uint32_t r, int max_degree);
/// Rabin's test: x^{r^n} = x mod f and gcd(x^{r^{n/q}} - x, f) = 1 for primes q | n.
bool is_irreducible(const PolyFr& f);
/// Trial division by every monic irreducible of degree <= deg/2.
bool is_irreducible_by_trial_division(const PolyFr& f);

/// A polynomial stored by its support i(P): strictly increasing exponents with nonzero coefficients.
class SparsePoly {
public:
    SparsePoly(std::uint32_t r, std::vector<std::uint64_t> support, std::vector<std::uint32_t> coeffs);
    explicit SparsePoly(const PolyFr& dense);

    std::uint32_t r() const { return r_; }
    std::span<const std::uint64_t> support() const { return support_; }
    std::span<const std::uint32_t> coeffs() const { return coeffs_; }
    /// Support size.
    std::size_t k() const { return support_.size(); }
    bool contains(std::uint64_t exponent) const;
    /// Coefficient c_iota; 0 if iota is outside the support.
    std::uint32_t coeff_of(std::uint64_t exponent) const;
    std::uint32_t at_one() const;
    std::uint64_t degree() const { return support_.empty() ? 0 : support_.back(); }

    PolyFr to_dense() const;
    std::string to_string() const { return to_dense().to_string(); }

    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

private:
    std::uint32_t r_;
    std::vector<std::uint64_t> support_;
    std::vector<std::uint32_t> coeffs_;
};

} // namespace dualcube
