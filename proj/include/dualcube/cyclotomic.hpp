#pragma once

#include "dualcube/ext_field.hpp"
#include "dualcube/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dualcube {

using Coset = std::vector<std::uint64_t>;

/// 1 + x + ... + x^{p-1} over F_r.
PolyFr cyclotomic_polynomial(std::uint64_t p, std::uint32_t r);

/// Orbits {s r^j mod p} partitioning 1..p-1, each listed in generation order and
/// the list ordered by smallest representative.
std::vector<Coset> cyclotomic_cosets(std::uint64_t p, std::uint32_t r);

/// Phi_p over F_r split into its (p-1)/t irreducible factors of degree t = ord_p(r).
struct CosetFactorization {
    std::uint64_t p = 0;
    std::uint32_t r = 0;
    std::uint64_t t = 0;
    std::vector<Coset> cosets;
    /// factors[i] = prod_{e in cosets[i]} (x - zeta^e).
    std::vector<PolyFr> factors;
    /// The packed-smallest element of order p in F_{r^t}.
    ExtElem zeta;
};

/// Coset products over F_{r^t}; every factor is checked to have coefficients in F_r,
/// to be monic irreducible of degree t, and their product is checked against Phi_p.
CosetFactorization factor_cyclotomic(std::uint64_t p, std::uint32_t r);

/// Factors of Phi_p without constructing F_{r^t}: repeatedly splits by
/// gcd(f, eta_C - c), where eta_C = sum_{e in C} x^e is a Frobenius-fixed coset sum.
/// Returns the factors sorted by packed order. Works for fields too large to tabulate.
std::vector<PolyFr> factor_cyclotomic_by_coset_sums(std::uint64_t p, std::uint32_t r);

/// A sparse irreducible factor of Phi_p: support size k <= t, P(1) != 0.
struct SparseSeed {
    std::uint64_t p = 0;
    std::uint32_t r = 0;
    std::uint64_t t = 0;
    SparsePoly poly{2, {}, {}};
    /// P has a root of order p in F_{r^t}^*; checked on F_{r^t} when the field is small
    /// enough to tabulate, otherwise certified by P | Phi_p and P(1) != 0.
    bool gamma_exists = false;

    std::size_t k() const { return poly.k(); }
};

/// Sparsest irreducible factor of Phi_p with support size <= t (ties by packed order), if any.
std::optional<SparseSeed> sparse_factor_search(std::uint64_t p, std::uint32_t r);

/// sparse_factor_search over every prime p != r in [p_min, p_max], in increasing p.
std::vector<SparseSeed> prime_scan(std::uint64_t p_min, std::uint64_t p_max, std::uint32_t r);

struct MersenneTrinomial {
    std::uint64_t p = 0;
    std::uint64_t s = 0;
    SparsePoly poly{2, {}, {}};
};

/// For prime p = 2^t - 1: P = 1 + x + x^s with zeta^s = 1 + zeta for the smallest
/// order-p element zeta of F_{2^t}. nullopt when 2^t - 1 is composite.
std::optional<MersenneTrinomial> mersenne_trinomial(std::uint32_t t);

struct ApHit {
    std::uint64_t s = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> coeffs;  // c_0 .. c_{k-1}
    SparsePoly poly{2, {}, {}};         // sum c_iota x^{iota s}
};

struct ApReport {
    std::uint64_t p = 0;
    std::uint32_t r = 0;
    std::uint64_t t = 0;
    std::uint64_t candidates = 0;
    /// Every AP-supported P with P(1) != 0 and a root of order p.
    std::vector<ApHit> hits;
    /// The hits with k <= t; always empty if k - 1 >= ord_p(r) holds.
    std::vector<ApHit> violations;
};

inline constexpr std::uint64_t kDefaultApBudget = 10'000'000;

/// Exhaustive search over s in 1..p-1, k in 2..k_max and coefficient vectors with
/// c_0, c_{k-1} != 0. Throws BudgetError if the candidate count exceeds budget.
ApReport ap_obstruction_search(std::uint64_t p, std::uint32_t r, std::size_t k_max,
                               std::uint64_t budget = kDefaultApBudget);

} // namespace dualcube
