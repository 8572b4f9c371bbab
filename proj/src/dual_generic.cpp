#include "dualcube/dualfn.hpp"

#include "dualcube/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dualcube {

namespace {

std::uint64_t group_size(std::int64_t p, Eigen::Index n, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(p);
        if (total > budget)
            throw BudgetError("|F_p^n| = " + std::to_string(p) + "^" + std::to_string(n) + " exceeds budget " +
                              std::to_string(budget));
    }
    return total;
}

std::complex<double> root_of_unity(std::int64_t numerator, std::int64_t p) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(numerator, p)) / static_cast<double>(p);
    return {std::cos(angle), std::sin(angle)};
}

void require_unit_disc(const GroupTable& f) {
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (std::abs(f(i)) > 1.0 + 1e-12) throw std::invalid_argument("table value outside the unit disc");
}

} // namespace

std::uint64_t position_index(const FpVec& x, std::int64_t p) {
    std::uint64_t idx = 0;
    for (Eigen::Index j = x.size(); j-- > 0;) idx = idx * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(mod(x(j), p));
    return idx;
}

FpVec position_vector(std::uint64_t index, std::int64_t p, Eigen::Index n) {
    FpVec x(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        x(j) = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p));
        index /= static_cast<std::uint64_t>(p);
    }
    return x;
}

std::complex<double> generic_dual_eval(std::int64_t p, Eigen::Index n, std::span<const std::int64_t> shifts,
                                       std::span<const GroupTable> tables, const FpVec& y) {
    const std::uint64_t size = group_size(p, n, kGenericDualBudget);
    if (shifts.size() != tables.size()) throw std::invalid_argument("one shift per table required");
    if (y.size() != n) throw std::invalid_argument("y has the wrong dimension");
    for (const auto& t : tables) {
        if (static_cast<std::uint64_t>(t.size()) != size) throw std::invalid_argument("table size must be p^n");
        require_unit_disc(t);
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const FpVec x = position_vector(idx, p, n);
        std::complex<double> term{1.0, 0.0};
        for (std::size_t j = 0; j < tables.size(); ++j)
            term *= tables[j](static_cast<Eigen::Index>(position_index(x + shifts[j] * y, p)));
        acc += term;
    }
    return acc / static_cast<double>(size);
}

GroupTable fourier_transform(const GroupTable& f, std::int64_t p, Eigen::Index n) {
    const auto size = static_cast<Eigen::Index>(group_size(p, n, kGenericDualBudget));
    if (f.size() != size) throw std::invalid_argument("table size must be p^n");
    GroupTable cur = f;
    Eigen::Index stride = 1;
    for (Eigen::Index axis = 0; axis < n; ++axis) {
        GroupTable next = GroupTable::Zero(size);
        for (Eigen::Index idx = 0; idx < size; ++idx) {
            const Eigen::Index digit = (idx / stride) % p;
            const Eigen::Index base = idx - digit * stride;
            std::complex<double> s{0.0, 0.0};
            for (Eigen::Index v = 0; v < p; ++v) s += cur(base + v * stride) * root_of_unity(-digit * v, p);
            next(idx) = s / static_cast<double>(p);
        }
        cur = std::move(next);
        stride *= p;
    }
    return cur;
}

Order2Decomposition fourier_decompose_order2(std::int64_t p, Eigen::Index n, std::span<const std::int64_t> shifts,
                                             const GroupTable& f1, const GroupTable& f2, double tol) {
    if (shifts.size() != 2) throw std::invalid_argument("order-2 decomposition needs two shifts");
    const std::uint64_t size = group_size(p, n, kFourierBudget);
    const std::int64_t dil = mod(shifts[1] - shifts[0], p);
    const GroupTable tables[2] = {f1, f2};

    Order2Decomposition out;
    out.phi.resize(static_cast<Eigen::Index>(size));
    for (std::uint64_t idx = 0; idx < size; ++idx)
        out.phi(static_cast<Eigen::Index>(idx)) = generic_dual_eval(p, n, shifts, tables, position_vector(idx, p, n));
    out.spectrum = fourier_transform(out.phi, p, n);

    const GroupTable h1 = fourier_transform(f1, p, n);
    const GroupTable h2 = fourier_transform(f2, p, n);
    out.alpha.resize(static_cast<Eigen::Index>(size));
    GroupTable pushed = GroupTable::Zero(static_cast<Eigen::Index>(size));  // sum of alpha over each fibre of xi -> dil xi
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const FpVec xi = position_vector(idx, p, n);
        const auto neg = static_cast<Eigen::Index>(position_index(-xi, p));
        const std::complex<double> a = h1(neg) * h2(static_cast<Eigen::Index>(idx));
        out.alpha(static_cast<Eigen::Index>(idx)) = a;
        pushed(static_cast<Eigen::Index>(position_index(dil * xi, p))) += a;
    }
    out.l1 = out.alpha.cwiseAbs().sum();

    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const auto i = static_cast<Eigen::Index>(idx);
        out.dilation_error = std::max(out.dilation_error, std::abs(out.spectrum(i) - pushed(i)));
        const bool in_dilated_set = dil != 0 || idx == 0;
        if (!in_dilated_set) out.off_support_max = std::max(out.off_support_max, std::abs(out.spectrum(i)));

        const FpVec y = position_vector(idx, p, n);
        std::complex<double> rebuilt{0.0, 0.0};
        for (std::uint64_t xi = 0; xi < size; ++xi)
            rebuilt += out.alpha(static_cast<Eigen::Index>(xi)) *
                       root_of_unity(dil * position_vector(xi, p, n).dot(y), p);
        out.reconstruction_error = std::max(out.reconstruction_error, std::abs(out.phi(i) - rebuilt));
    }
    out.l1_ok = out.l1 <= 1.0 + tol;
    out.support_ok = out.dilation_error <= tol && out.off_support_max <= tol;
    out.reconstruction_ok = out.reconstruction_error <= tol;
    return out;
}

} // namespace dualcube
