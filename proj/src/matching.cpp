#include "dualcube/matching.hpp"

#include "dualcube/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace dualcube {

namespace {

std::vector<std::vector<std::uint64_t>> colex_subsets(std::uint64_t m, std::uint64_t size) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> c(size);
    for (std::uint64_t i = 0; i < size; ++i) c[i] = i + 1;
    while (true) {
        out.push_back(c);
        // Smallest position whose element can move up without colliding.
        std::uint64_t i = 0;
        while (i < size && c[i] + 1 == (i + 1 < size ? c[i + 1] : m + 1)) ++i;
        if (i == size) break;
        ++c[i];
        for (std::uint64_t j = 0; j < i; ++j) c[j] = j + 1;
    }
    return out;
}

void descending_monomials(std::uint64_t m, std::uint64_t l, std::vector<std::uint32_t>& prefix,
                          std::vector<std::vector<std::uint32_t>>& out) {
    if (prefix.size() + 1 == m) {
        prefix.push_back(static_cast<std::uint32_t>(l));
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (std::uint64_t e = l + 1; e-- > 0;) {
        prefix.push_back(static_cast<std::uint32_t>(e));
        descending_monomials(m, l - e, prefix, out);
        prefix.pop_back();
    }
}

std::int64_t pow_small(std::int64_t base, std::uint64_t exp, std::int64_t p) {
    return static_cast<std::int64_t>(pow_mod(static_cast<std::uint64_t>(mod(base, p)), exp, static_cast<std::uint64_t>(p)));
}

FpMat gram_mod(const FpMat& a, const FpMat& b, std::int64_t p) {
    FpMat g = a * b.transpose();
    return g.unaryExpr([p](std::int64_t e) { return mod(e, p); });
}

} // namespace

BigCount binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigCount acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

MVParams derive_params(std::uint64_t p, std::uint32_t r, std::uint64_t m) {
    if (!is_prime(p) || !is_prime(r) || p == r) throw std::invalid_argument("derive_params: p, r must be distinct primes");
    if (m <= p - 1) throw std::invalid_argument("derive_params: need m > p - 1");
    MVParams out;
    out.p = p;
    out.r = r;
    out.t = mult_order(r, PrimeModulus(p));
    out.m = m;
    out.l = (p - 1) / out.t;
    out.k = binomial(m, p - 1);
    out.n = binomial(m + out.l - 1, out.l);
    return out;
}

bool satisfies_size_bounds(const MVParams& params) {
    using boost::multiprecision::pow;
    const auto exp_k = static_cast<unsigned>(params.p - 1);
    const bool k_ok = params.k * pow(BigCount(params.p), exp_k) >= pow(BigCount(params.m), exp_k);
    // e > 2.718281828, so replacing e by this lower bound only tightens the check.
    const auto exp_n = static_cast<unsigned>(params.l);
    const BigCount e_num = 2718281828;
    const BigCount e_den = 1000000000;
    const bool n_ok = params.n * pow(BigCount(params.p) * e_den, exp_n) <=
                      pow(2 * e_num * params.t * params.m, exp_n);
    return k_ok && n_ok;
}

MVFamily build_family(const MVParams& params, std::uint64_t budget) {
    const MVParams check = derive_params(params.p, params.r, params.m);
    if (!(check == params)) throw std::invalid_argument("build_family: inconsistent parameters");
    const BigCount entries = params.k * std::max(BigCount(params.m), params.n);
    if (entries > budget)
        throw BudgetError("build_family: k * max(m, n) = " + entries.str() + " exceeds budget " + std::to_string(budget));

    const auto p = static_cast<std::int64_t>(params.p);
    const auto k = static_cast<Eigen::Index>(params.k);
    const auto n = static_cast<Eigen::Index>(params.n);
    const auto m = static_cast<Eigen::Index>(params.m);

    MVFamily fam;
    fam.params = params;
    fam.subsets = colex_subsets(params.m, params.p - 1);
    std::vector<std::uint32_t> prefix;
    descending_monomials(params.m, params.l, prefix, fam.monomials);

    // c_beta = l! / prod beta_i! mod p; l < p so every factorial is a unit.
    std::vector<std::int64_t> fact(params.l + 1, 1);
    for (std::uint64_t i = 1; i <= params.l; ++i) fact[i] = mod(fact[i - 1] * static_cast<std::int64_t>(i), p);
    for (const auto& beta : fam.monomials) {
        std::int64_t c = fact[params.l];
        for (auto b : beta)
            c = mod(c * static_cast<std::int64_t>(inv_mod(static_cast<std::uint64_t>(fact[b]), params.p)), p);
        fam.multinomials.push_back(c);
    }

    fam.u = FpMat::Zero(k, m);
    for (Eigen::Index i = 0; i < k; ++i)
        for (auto e : fam.subsets[static_cast<std::size_t>(i)]) fam.u(i, static_cast<Eigen::Index>(e - 1)) = 1;
    fam.v = FpMat::Ones(k, m) - fam.u;

    fam.w = FpMat::Zero(k, n);
    fam.d = FpMat::Zero(k, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index b = 0; b < n; ++b) {
            const auto& beta = fam.monomials[static_cast<std::size_t>(b)];
            std::int64_t uw = 1, vw = 1;
            for (Eigen::Index c = 0; c < m; ++c) {
                if (beta[static_cast<std::size_t>(c)] == 0) continue;
                uw *= fam.u(i, c);
                vw *= fam.v(i, c);
            }
            fam.w(i, b) = uw;
            fam.d(i, b) = mod(fam.multinomials[static_cast<std::size_t>(b)] * vw, p);
        }
    }

    fam.field = ExtField::build(params.r, static_cast<std::uint32_t>(params.t));
    const auto gamma = fam.field.smallest_of_order(params.p);
    if (!gamma) throw InternalError("F_{r^t} has no element of order p");
    fam.gamma = *gamma;
    check_family_invariants(fam);
    return fam;
}

MVFamily rebind_gamma(MVFamily family, ExtElem gamma) {
    if (gamma.code == 0 || family.field.element_order(gamma) != family.params.p)
        throw std::invalid_argument("rebind_gamma: element does not have order p");
    family.gamma = gamma;
    return family;
}

void check_family_invariants(const MVFamily& fam) {
    const auto& prm = fam.params;
    const auto p = static_cast<std::int64_t>(prm.p);
    const auto k = static_cast<Eigen::Index>(prm.k);
    const auto n = static_cast<Eigen::Index>(prm.n);
    const auto m = static_cast<Eigen::Index>(prm.m);
    if (static_cast<Eigen::Index>(fam.subsets.size()) != k || fam.u.rows() != k || fam.v.rows() != k ||
        fam.w.rows() != k || fam.d.rows() != k || fam.u.cols() != m || fam.v.cols() != m || fam.w.cols() != n ||
        fam.d.cols() != n || static_cast<Eigen::Index>(fam.monomials.size()) != n)
        throw InternalError("family dimensions disagree with k, m, n");
    for (Eigen::Index i = 0; i < k; ++i) {
        FpVec expected = FpVec::Zero(m);
        for (auto e : fam.subsets[static_cast<std::size_t>(i)]) expected(static_cast<Eigen::Index>(e - 1)) = 1;
        if (fam.u.row(i).transpose() != expected || fam.v.row(i).transpose() != FpVec::Ones(m) - expected)
            throw InternalError("u_S / v_S are not the subset indicator and its complement");
    }
    const FpMat uv = gram_mod(fam.u, fam.v, p);
    const FpMat wd = gram_mod(fam.w, fam.d, p);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            if ((uv(i, j) == 0) != (i == j)) throw InternalError("<u_S, v_T> = 0 does not characterize S = T");
            if (wd(i, j) != pow_small(uv(i, j), prm.l, p))
                throw InternalError("<w_S, d_T> != <u_S, v_T>^l");
        }
    if (fam.field.element_order(fam.gamma) != prm.p) throw InternalError("gamma does not have order p");
}

InnerProductReport verify_inner_products(const MVFamily& fam) {
    const auto p = static_cast<std::int64_t>(fam.params.p);
    std::set<std::int64_t> powers;
    for (std::uint64_t q = 0; q < fam.params.p; ++q)
        powers.insert(static_cast<std::int64_t>(pow_mod(fam.params.r, q, fam.params.p)));

    InnerProductReport report;
    const FpMat wd = gram_mod(fam.w, fam.d, p);
    for (Eigen::Index i = 0; i < wd.rows(); ++i)
        for (Eigen::Index j = 0; j < wd.cols(); ++j) {
            ++report.pairs_checked;
            const std::int64_t value = wd(i, j);
            std::string reason;
            if (i == j && value != 0) reason = "diagonal inner product is nonzero";
            if (i != j) {
                report.off_diagonal_values.insert(value);
                if (value == 0) reason = "off-diagonal inner product vanishes";
                else if (!powers.contains(value)) reason = "off-diagonal value is not a power of r mod p";
            }
            if (!reason.empty() && report.pass) {
                report.pass = false;
                report.counterexample =
                    InnerProductCounterexample{static_cast<std::size_t>(i), static_cast<std::size_t>(j), value, reason};
            }
        }
    return report;
}

ExtElem f_eval(const MVFamily& fam, std::size_t i, const FpVec& x) {
    if (x.size() != fam.w.cols()) throw std::invalid_argument("f_eval: x has the wrong dimension");
    if (i >= fam.size()) throw std::invalid_argument("f_eval: index out of range");
    const auto p = static_cast<std::int64_t>(fam.params.p);
    const std::int64_t e = dot_mod(x, fam.w.row(static_cast<Eigen::Index>(i)).transpose(), p);
    return fam.field.pow(fam.gamma, static_cast<std::uint64_t>(e));
}

IdentityCheck decoding_identity(const MVFamily& fam, const SparsePoly& poly, std::size_t i, std::size_t j,
                                const FpVec& x) {
    const ExtField& f = fam.field;
    if (poly.r() != fam.params.r) throw std::invalid_argument("decoding_identity: polynomial over the wrong field");
    if (f.eval(poly, fam.gamma) != f.zero()) throw std::invalid_argument("decoding_identity: P(gamma) != 0");
    if (j >= fam.size()) throw std::invalid_argument("decoding_identity: index out of range");
    const auto p = static_cast<std::int64_t>(fam.params.p);
    const FpVec dj = fam.d.row(static_cast<Eigen::Index>(j)).transpose();

    IdentityCheck out{f.zero(), f.zero()};
    for (std::size_t s = 0; s < poly.k(); ++s) {
        const auto iota = static_cast<std::int64_t>(poly.support()[s] % fam.params.p);
        const FpVec shifted = reduce(x + iota * dj, p);
        out.lhs = f.add(out.lhs, f.scale(poly.coeffs()[s], f_eval(fam, i, shifted)));
    }
    if (i == j) out.rhs = f.scale(poly.at_one(), f_eval(fam, i, x));
    return out;
}

} // namespace dualcube
