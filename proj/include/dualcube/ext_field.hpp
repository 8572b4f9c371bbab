#pragma once

#include "dualcube/poly.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace dualcube {

/// An element of some F_{r^t}, stored as its base-r packed coordinate integer
/// sum coords[j] * r^j. Arithmetic goes through the owning ExtField.
struct ExtElem {
    std::uint32_t code = 0;

    friend constexpr auto operator<=>(ExtElem, ExtElem) = default;
};

/// Fields up to this size get discrete log / antilog tables (O(r^t) memory).
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 22;
/// Hard limit on r^t: element codes are 32-bit.
inline constexpr std::uint64_t kMaxUntabulatedSize = std::uint64_t{1} << 32;

/// The field F_r[x] / (modulus) with modulus irreducible of degree t.
///
/// Fields with r^t <= kMaxFieldSize multiply through log / antilog tables
/// built once; larger ones fall back to polynomial multiplication and derive
/// orders from the factorization of r^t - 1. Tables are shared between
/// copies so passing fields by value is cheap.
class ExtField {
public:
    /// F_{r^t} over the packed-order-smallest monic irreducible of degree t.
    static ExtField build(std::uint32_t r, std::uint32_t t);
    /// F_2.
    ExtField();
    /// Throws std::invalid_argument unless modulus is monic irreducible of degree >= 1.
    explicit ExtField(const PolyFr& modulus);

    std::uint32_t r() const { return r_; }
    std::uint32_t degree() const { return t_; }
    std::uint64_t size() const { return q_; }
    const PolyFr& modulus() const { return tables_->modulus; }
    bool tabulated() const { return q_ <= kMaxFieldSize; }

    ExtElem zero() const { return {0}; }
    ExtElem one() const { return {1}; }
    /// The class of x.
    ExtElem x() const;
    /// Embedding of c in F_r.
    ExtElem from_base(std::uint32_t c) const;
    ExtElem from_coords(std::span<const std::uint32_t> coords) const;
    /// Validates 0 <= code < q.
    ExtElem from_code(std::uint64_t code) const;
    std::vector<std::uint32_t> coords(ExtElem e) const;
    bool in_base_field(ExtElem e) const { return e.code < r_; }

    ExtElem add(ExtElem a, ExtElem b) const;
    ExtElem sub(ExtElem a, ExtElem b) const;
    ExtElem neg(ExtElem a) const;
    ExtElem mul(ExtElem a, ExtElem b) const;
    /// c * e for c in F_r.
    ExtElem scale(std::uint32_t c, ExtElem e) const;
    /// Throws std::invalid_argument for 0.
    ExtElem inv(ExtElem a) const;
    ExtElem pow(ExtElem a, std::uint64_t exp) const;

    /// Absolute trace to F_r.
    std::uint32_t trace(ExtElem e) const;

    /// Smallest d >= 1 with e^d = 1. Throws std::invalid_argument for 0.
    std::uint64_t element_order(ExtElem e) const;
    /// Smallest s >= 0 with base^s = target, or nullopt if target is not a power of base.
    /// Untabulated fields enumerate powers and throw BudgetError past kMaxFieldSize steps.
    std::optional<std::uint64_t> discrete_log(ExtElem base, ExtElem target) const;
    /// Packed-order-smallest element of multiplicative order d, if any.
    std::optional<ExtElem> smallest_of_order(std::uint64_t d) const;
    /// The generator used by the log tables.
    ExtElem primitive() const { return {tables_->primitive}; }

    ExtElem eval(const PolyFr& f, ExtElem e) const;
    ExtElem eval(const SparsePoly& f, ExtElem e) const;

    /// Multiplication by reduction of the coordinate polynomials, bypassing the tables.
    ExtElem mul_reference(ExtElem a, ExtElem b) const;

    friend bool operator==(const ExtField& a, const ExtField& b) {
        return a.r_ == b.r_ && a.tables_->modulus == b.tables_->modulus;
    }

private:
    struct Tables {
        PolyFr modulus{2};
        std::uint32_t primitive = 1;
        std::vector<std::uint32_t> exp;  // exp[i] = g^i, i < q - 1
        std::vector<std::uint32_t> log;  // log[g^i] = i; log[0] unused
        std::vector<std::uint32_t> trace_of_basis;  // Tr(x^j)
        std::vector<std::uint64_t> group_factors;   // prime factors of q - 1
    };

    void build_tables(Tables& tables) const;
    ExtElem pow_reference(ExtElem a, std::uint64_t exp) const;
    std::uint64_t order_from_factors(ExtElem e) const;

    std::uint32_t r_ = 0;
    std::uint32_t t_ = 0;
    std::uint64_t q_ = 0;
    std::shared_ptr<const Tables> tables_;
};

} // namespace dualcube
