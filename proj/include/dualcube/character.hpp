#pragma once

#include "dualcube/ext_field.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dualcube {

/// An exact element of Q(omega_r): (1/denom) * sum_j counts[j] * omega_r^j.
///
/// Additive character sums land here. For prime r the relation
/// 1 + omega + ... + omega^{r-1} = 0 is the only one among the powers, so
/// shifting counts to min 0 and clearing common factors with denom gives a
/// canonical form; equality compares canonical forms.
class CharacterValue {
public:
    /// The value 0 over Q(omega_r).
    explicit CharacterValue(std::uint32_t r);
    CharacterValue(std::uint32_t r, std::vector<std::int64_t> counts, std::int64_t denom);

    /// omega_r^exponent.
    static CharacterValue unit(std::uint32_t r, std::uint32_t exponent);
    static CharacterValue one(std::uint32_t r) { return unit(r, 0); }
    /// The rational num/den viewed in Q(omega_r).
    static CharacterValue rational(std::uint32_t r, std::int64_t num, std::int64_t den);

    std::uint32_t r() const { return r_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t denom() const { return denom_; }

    /// Adds omega^exponent to the numerator sum; used to accumulate averages.
    void add_unit(std::uint32_t exponent, std::int64_t multiplicity = 1);
    void set_denom(std::int64_t denom);

    CharacterValue canonical() const;

    std::complex<double> value() const;
    double real() const { return value().real(); }
    /// Re <= 0: exact for r = 2, within tol otherwise.
    bool real_nonpositive(double tol = 1e-9) const;
    /// For r = 2 the value is rational; returns reduced (num, den).
    std::optional<std::pair<std::int64_t, std::int64_t>> as_rational() const;

    /// "num/den" when rational (r = 2), otherwise the component list.
    std::string to_string() const;
    /// Canonical per-root components "c0/d0 c1/d1 ...", each reduced.
    std::string components_string() const;

    friend CharacterValue operator*(const CharacterValue& a, const CharacterValue& b);
    friend CharacterValue operator+(const CharacterValue& a, const CharacterValue& b);
    friend bool operator==(const CharacterValue& a, const CharacterValue& b);

private:
    std::uint32_t r_;
    std::vector<std::int64_t> counts_;
    std::int64_t denom_ = 1;
};

/// chi_beta(u) = omega_r^{Tr(beta * u)}; nontrivial whenever beta != 0.
CharacterValue character_eval(const ExtField& field, ExtElem beta, ExtElem u);

} // namespace dualcube
