#pragma once

#include "dualcube/character.hpp"
#include "dualcube/matching.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dualcube {

/// A 0/1 selection vector a in {0,1}^k.
using BitVec = std::vector<std::uint8_t>;

/// A matching-vector family bound to a polynomial P with P(gamma) = 0 and a
/// character chi_beta whose average z = E_c chi_beta(gamma^c P(1)) has Re(z) <= 0.
struct DualInstance {
    MVFamily family;  ///< family.gamma is a root of poly of order p
    SparsePoly poly{2, {}, {}};
    ExtElem beta;
    CharacterValue z{2};

    const ExtField& field() const { return family.field; }
    ExtElem gamma() const { return family.gamma; }
    std::size_t k() const { return family.size(); }
};

/// z_beta = (1/p) sum_{c in F_p} chi_beta(gamma^c P(1)).
CharacterValue character_average(const MVFamily& family, const SparsePoly& poly, ExtElem beta);

struct CharacterChoice {
    ExtElem beta;
    CharacterValue z;
};

/// First nonzero beta in packed order with Re(z_beta) <= 0.
CharacterChoice choose_character(const MVFamily& family, const SparsePoly& poly);

/// Keeps family.gamma if P vanishes there, otherwise rebinds to the packed-smallest
/// root of P of order p. Throws std::invalid_argument if P has no such root or P(1) = 0.
DualInstance bind_instance(MVFamily family, const SparsePoly& poly);

/// F_a^iota(x) = chi(c_iota sum_j a_j f_j(x)). Throws if iota is not in the support.
CharacterValue eval_F(const DualInstance& inst, std::span<const std::uint8_t> a, std::uint64_t iota, const FpVec& x);

inline constexpr std::uint64_t kDefaultBruteBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultImageBudget = 10'000'000;

/// phi_a(y) = E_{x in F_p^n} prod_iota F_a^iota(x + iota y), by enumerating all p^n points.
CharacterValue eval_phi_brute(const DualInstance& inst, std::span<const std::uint8_t> a, const FpVec& y,
                              std::uint64_t budget = kDefaultBruteBudget);

/// The same average computed on the image of x -> (<x, w_j>)_j: the product collapses to
/// chi(sum_j a_j gamma^{<x,w_j>} P_y(j)) with P_y(j) = sum_iota c_iota gamma^{iota <y,w_j>},
/// so only indices with a_j = 1 and P_y(j) != 0 matter and p^rank points suffice.
CharacterValue eval_phi_exact(const DualInstance& inst, std::span<const std::uint8_t> a, const FpVec& y,
                              std::uint64_t budget = kDefaultImageBudget);

struct CubeCheck {
    BitVec a;
    std::size_t i = 0;
    CharacterValue value{2};
};

struct CubeCertificate {
    FpMat d;  ///< the points d_1..d_k, one per row
    CharacterValue z{2};
    std::vector<CubeCheck> checked;
    bool exhaustive = false;
};

struct CubeFailure {
    BitVec a;
    std::size_t i = 0;
    CharacterValue got{2};
    CharacterValue expected{2};
};

struct CertifyResult {
    CubeCertificate certificate;
    std::optional<CubeFailure> failure;
    bool passed() const { return !failure.has_value(); }
};

struct CertifyOptions {
    /// Used when nonempty; otherwise all 2^k vectors if k <= exhaustive_max_k, else sampled.
    std::vector<BitVec> a_list;
    std::size_t exhaustive_max_k = 12;
    std::size_t samples = 256;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultImageBudget;
};

/// Checks phi_a(d_i) = 1 when a_i = 0 and = z when a_i = 1, stopping at the first mismatch.
CertifyResult certify_hypercube(const DualInstance& inst, const CertifyOptions& options = {});

/// Complex-valued functions on F_p^n, indexed by position sum_j x_j p^j.
using GroupTable = Eigen::VectorXcd;

std::uint64_t position_index(const FpVec& x, std::int64_t p);
FpVec position_vector(std::uint64_t index, std::int64_t p, Eigen::Index n);

inline constexpr std::uint64_t kGenericDualBudget = 1'000'000;

/// E_x f_1(x + i_1 y) ... f_k(x + i_k y) for unit-disc valued tables on F_p^n.
std::complex<double> generic_dual_eval(std::int64_t p, Eigen::Index n, std::span<const std::int64_t> shifts,
                                       std::span<const GroupTable> tables, const FpVec& y);

/// f_hat(xi) = E_x f(x) e(-<xi, x>/p), separably over the n axes.
GroupTable fourier_transform(const GroupTable& f, std::int64_t p, Eigen::Index n);

struct Order2Decomposition {
    GroupTable phi;       ///< phi(y) for every y
    GroupTable spectrum;  ///< phi_hat
    /// alpha_xi = f1_hat(-xi) f2_hat(xi): phi(y) = sum_xi alpha_xi e(<xi, (i_2 - i_1) y>/p).
    GroupTable alpha;
    double l1 = 0.0;
    double dilation_error = 0.0;       ///< max |phi_hat(eta) - sum_{(i_2-i_1) xi = eta} alpha_xi|
    double off_support_max = 0.0;      ///< max |phi_hat| off the dilated frequency set
    double reconstruction_error = 0.0; ///< max_y |phi(y) - sum_xi alpha_xi e(...)|
    bool l1_ok = false;
    bool support_ok = false;
    bool reconstruction_ok = false;
};

inline constexpr std::uint64_t kFourierBudget = 10'000;

Order2Decomposition fourier_decompose_order2(std::int64_t p, Eigen::Index n, std::span<const std::int64_t> shifts,
                                             const GroupTable& f1, const GroupTable& f2, double tol = 1e-9);

} // namespace dualcube
