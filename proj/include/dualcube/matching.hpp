#pragma once

#include "dualcube/ext_field.hpp"
#include "dualcube/modular.hpp"
#include "dualcube/poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dualcube {

using BigCount = boost::multiprecision::cpp_int;

BigCount binomial(std::uint64_t n, std::uint64_t k);

/// Parameters of the matching-vector family over F_p^m.
struct MVParams {
    std::uint64_t p = 0;
    std::uint32_t r = 0;
    std::uint64_t t = 0;  ///< ord_p(r)
    std::uint64_t m = 0;
    std::uint64_t l = 0;  ///< (p - 1) / t
    BigCount k;           ///< C(m, p - 1), the number of subsets
    BigCount n;           ///< C(m + l - 1, l), the number of degree-l monomials

    friend bool operator==(const MVParams&, const MVParams&) = default;
};

/// Throws std::invalid_argument unless p != r are primes and m > p - 1.
MVParams derive_params(std::uint64_t p, std::uint32_t r, std::uint64_t m);

/// k >= (m/p)^{p-1} and n <= (2etm/p)^l, checked in exact integer arithmetic.
bool satisfies_size_bounds(const MVParams& params);

/// Upper bound on k * max(m, n) entries materialized by build_family.
inline constexpr std::uint64_t kDefaultFamilyBudget = 50'000'000;

/// Matching vectors u_S = 1_S, v_S = 1 - u_S over the (p-1)-subsets S of [m],
/// lifted through Q(x) = (x_1 + ... + x_m)^l to w_S = (u_S^beta) and d_S = (c_beta v_S^beta).
///
/// Row i of every matrix belongs to subsets[i]; subsets are in colexicographic
/// order and monomials in descending lexicographic order (x_1^l first).
struct MVFamily {
    MVParams params;
    std::vector<std::vector<std::uint64_t>> subsets;  ///< 1-based, increasing
    std::vector<std::vector<std::uint32_t>> monomials;  ///< exponent vectors of length m
    std::vector<std::int64_t> multinomials;              ///< c_beta mod p, aligned with monomials
    FpMat u, v;  ///< k x m
    FpMat w, d;  ///< k x n
    ExtField field;
    ExtElem gamma;  ///< an element of order p in F_{r^t}

    std::size_t size() const { return subsets.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(w.cols()); }
};

MVFamily build_family(const MVParams& params, std::uint64_t budget = kDefaultFamilyBudget);

/// Same family with a different element of order p; throws std::invalid_argument otherwise.
MVFamily rebind_gamma(MVFamily family, ExtElem gamma);

/// Throws InternalError if any structural invariant of the family fails.
void check_family_invariants(const MVFamily& family);

struct InnerProductCounterexample {
    std::size_t i = 0, j = 0;
    std::int64_t value = 0;
    std::string reason;
};

struct InnerProductReport {
    bool pass = true;
    std::size_t pairs_checked = 0;
    std::set<std::int64_t> off_diagonal_values;
    std::optional<InnerProductCounterexample> counterexample;
};

/// <w_S, d_T> = 0 iff S = T, and every off-diagonal value lies in {r^q mod p}.
InnerProductReport verify_inner_products(const MVFamily& family);

/// f_i(x) = gamma^{<x, w_i>}, a homomorphism F_p^n -> F_{r^t}^*.
ExtElem f_eval(const MVFamily& family, std::size_t i, const FpVec& x);

struct IdentityCheck {
    ExtElem lhs;  ///< sum_iota c_iota f_i(x + iota d_j)
    ExtElem rhs;  ///< gamma^{<x, w_i>} P(1) if i = j, else 0
    bool holds() const { return lhs == rhs; }
};

/// Evaluates both sides of the decoding identity exactly.
/// Throws std::invalid_argument if P(gamma) != 0.
IdentityCheck decoding_identity(const MVFamily& family, const SparsePoly& poly, std::size_t i, std::size_t j,
                                const FpVec& x);

inline bool verify_decoding_identity(const MVFamily& family, const SparsePoly& poly, std::size_t i, std::size_t j,
                                     const FpVec& x) {
    return decoding_identity(family, poly, i, j, x).holds();
}

} // namespace dualcube
