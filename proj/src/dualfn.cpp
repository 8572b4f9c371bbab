#include "dualcube/dualfn.hpp"

#include "dualcube/errors.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace dualcube {

namespace {

void require_selection(const DualInstance& inst, std::span<const std::uint8_t> a) {
    if (a.size() != inst.k()) throw std::invalid_argument("selection vector must have length k");
    for (auto bit : a)
        if (bit > 1) throw std::invalid_argument("selection vector must be 0/1");
}

std::uint64_t checked_points(std::int64_t p, Eigen::Index dims, std::uint64_t budget, const char* what) {
    std::uint64_t total = 1;
    for (Eigen::Index i = 0; i < dims; ++i) {
        total *= static_cast<std::uint64_t>(p);
        if (total > budget)
            throw BudgetError(std::string(what) + ": " + std::to_string(p) + "^" + std::to_string(dims) +
                              " points exceed budget " + std::to_string(budget));
    }
    return total;
}

// Advances x through F_p^n in base-p order; false after the last vector.
bool next_vector(FpVec& x, std::int64_t p) {
    for (Eigen::Index pos = 0; pos < x.size(); ++pos) {
        if (++x(pos) < p) return true;
        x(pos) = 0;
    }
    return false;
}

} // namespace

CharacterValue character_average(const MVFamily& family, const SparsePoly& poly, ExtElem beta) {
    const ExtField& f = family.field;
    const ExtElem p1 = f.from_base(poly.at_one());
    CharacterValue z(f.r());
    ExtElem power = f.one();
    for (std::uint64_t c = 0; c < family.params.p; ++c) {
        z.add_unit(f.trace(f.mul(beta, f.mul(power, p1))));
        power = f.mul(power, family.gamma);
    }
    z.set_denom(static_cast<std::int64_t>(family.params.p));
    return z;
}

CharacterChoice choose_character(const MVFamily& family, const SparsePoly& poly) {
    const ExtField& f = family.field;
    for (std::uint64_t code = 1; code < f.size(); ++code) {
        const ExtElem beta = f.from_code(code);
        CharacterValue z = character_average(family, poly, beta);
        if (z.real_nonpositive()) return {beta, std::move(z)};
    }
    throw InternalError("no nontrivial character has Re(z) <= 0");
}

DualInstance bind_instance(MVFamily family, const SparsePoly& poly) {
    const ExtField& f = family.field;
    if (poly.r() != family.params.r) throw std::invalid_argument("bind_instance: polynomial over the wrong base field");
    if (poly.at_one() == 0) throw std::invalid_argument("bind_instance: P(1) = 0");
    if (f.eval(poly, family.gamma) != f.zero()) {
        std::optional<ExtElem> root;
        ExtElem power = f.one();
        for (std::uint64_t e = 1; e < family.params.p; ++e) {
            power = f.mul(power, family.gamma);
            if (f.eval(poly, power) == f.zero() && (!root || power < *root)) root = power;
        }
        if (!root) throw std::invalid_argument("bind_instance: P has no root of order p in F_{r^t}");
        family = rebind_gamma(std::move(family), *root);
    }
    DualInstance inst;
    auto choice = choose_character(family, poly);
    inst.family = std::move(family);
    inst.poly = poly;
    inst.beta = choice.beta;
    inst.z = std::move(choice.z);
    return inst;
}

CharacterValue eval_F(const DualInstance& inst, std::span<const std::uint8_t> a, std::uint64_t iota, const FpVec& x) {
    require_selection(inst, a);
    if (!inst.poly.contains(iota)) throw std::invalid_argument("eval_F: exponent not in the support of P");
    const ExtField& f = inst.field();
    ExtElem sum = f.zero();
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j]) sum = f.add(sum, f_eval(inst.family, j, x));
    return character_eval(f, inst.beta, f.scale(inst.poly.coeff_of(iota), sum));
}

CharacterValue eval_phi_brute(const DualInstance& inst, std::span<const std::uint8_t> a, const FpVec& y,
                              std::uint64_t budget) {
    require_selection(inst, a);
    const auto p = static_cast<std::int64_t>(inst.family.params.p);
    const Eigen::Index n = inst.family.w.cols();
    if (y.size() != n) throw std::invalid_argument("eval_phi_brute: y has the wrong dimension");
    const std::uint64_t points = checked_points(p, n, budget, "eval_phi_brute");

    CharacterValue acc(inst.field().r());
    FpVec x = FpVec::Zero(n);
    do {
        CharacterValue term = CharacterValue::one(inst.field().r());
        for (std::uint64_t iota : inst.poly.support()) {
            const FpVec shifted = reduce(x + static_cast<std::int64_t>(iota % inst.family.params.p) * y, p);
            term = term * eval_F(inst, a, iota, shifted);
        }
        acc = acc + term;
    } while (next_vector(x, p));
    return acc * CharacterValue::rational(acc.r(), 1, static_cast<std::int64_t>(points));
}

CharacterValue eval_phi_exact(const DualInstance& inst, std::span<const std::uint8_t> a, const FpVec& y,
                              std::uint64_t budget) {
    require_selection(inst, a);
    const MVFamily& fam = inst.family;
    const ExtField& f = fam.field;
    const auto p = static_cast<std::int64_t>(fam.params.p);
    if (y.size() != fam.w.cols()) throw std::invalid_argument("eval_phi_exact: y has the wrong dimension");

    std::vector<Eigen::Index> active;
    std::vector<ExtElem> weights;  // P_y(j)
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!a[j]) continue;
        const auto row = static_cast<Eigen::Index>(j);
        const std::int64_t s = dot_mod(y, fam.w.row(row).transpose(), p);
        ExtElem pj = f.zero();
        for (std::size_t idx = 0; idx < inst.poly.k(); ++idx) {
            const std::uint64_t e = inst.poly.support()[idx] % fam.params.p * static_cast<std::uint64_t>(s);
            pj = f.add(pj, f.scale(inst.poly.coeffs()[idx], f.pow(fam.gamma, e)));
        }
        if (pj == f.zero()) continue;
        active.push_back(row);
        weights.push_back(pj);
    }
    if (active.empty()) return CharacterValue::one(f.r());

    // Rows of W_active^T span the image of x -> (<x, w_j>)_{j active}.
    FpMat wt(fam.w.cols(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t c = 0; c < active.size(); ++c) wt.col(static_cast<Eigen::Index>(c)) = fam.w.row(active[c]).transpose();
    const RowBasis basis = row_basis_mod(wt, p);
    const std::uint64_t points = checked_points(p, basis.rank(), budget, "eval_phi_exact");

    CharacterValue acc(f.r());
    FpVec coeffs = FpVec::Zero(basis.rank());
    do {
        const FpVec image = reduce(basis.basis.transpose() * coeffs, p);
        ExtElem sum = f.zero();
        for (std::size_t c = 0; c < active.size(); ++c)
            sum = f.add(sum, f.mul(f.pow(fam.gamma, static_cast<std::uint64_t>(image(static_cast<Eigen::Index>(c)))), weights[c]));
        acc.add_unit(f.trace(f.mul(inst.beta, sum)));
    } while (next_vector(coeffs, p));
    acc.set_denom(static_cast<std::int64_t>(points));
    return acc;
}

CertifyResult certify_hypercube(const DualInstance& inst, const CertifyOptions& options) {
    const std::size_t k = inst.k();
    std::vector<BitVec> a_list = options.a_list;
    CertifyResult result;
    result.certificate.d = inst.family.d;
    result.certificate.z = inst.z;
    if (a_list.empty()) {
        if (k <= options.exhaustive_max_k) {
            result.certificate.exhaustive = true;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
                BitVec a(k);
                for (std::size_t j = 0; j < k; ++j) a[j] = static_cast<std::uint8_t>((mask >> j) & 1U);
                a_list.push_back(std::move(a));
            }
        } else {
            std::mt19937_64 rng(options.seed);
            for (std::size_t s = 0; s < options.samples; ++s) {
                BitVec a(k);
                for (auto& bit : a) bit = static_cast<std::uint8_t>(rng() & 1U);
                a_list.push_back(std::move(a));
            }
        }
    }
    const CharacterValue one = CharacterValue::one(inst.field().r());
    for (const auto& a : a_list) {
        for (std::size_t i = 0; i < k; ++i) {
            const FpVec di = inst.family.d.row(static_cast<Eigen::Index>(i)).transpose();
            CharacterValue value = eval_phi_exact(inst, a, di, options.budget);
            const CharacterValue& expected = a[i] ? inst.z : one;
            if (!(value == expected)) {
                result.failure = CubeFailure{a, i, std::move(value), expected};
                return result;
            }
            result.certificate.checked.push_back(CubeCheck{a, i, std::move(value)});
        }
    }
    return result;
}

} // namespace dualcube
