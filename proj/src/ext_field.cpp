#include "dualcube/ext_field.hpp"

#include "dualcube/errors.hpp"
#include "dualcube/modular.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace dualcube {

namespace {

std::uint64_t checked_power(std::uint32_t r, std::uint32_t t) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < t; ++i) {
        q *= r;
        if (q >= kMaxUntabulatedSize)
            throw BudgetError("field F_" + std::to_string(r) + "^" + std::to_string(t) + " exceeds the size limit " +
                              std::to_string(kMaxUntabulatedSize));
    }
    return q;
}

// Inverse of a modulo n (gcd(a, n) = 1, n >= 1).
std::uint64_t inverse_mod_composite(std::uint64_t a, std::uint64_t n) {
    std::int64_t old_r = static_cast<std::int64_t>(a % n), r = static_cast<std::int64_t>(n);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    return static_cast<std::uint64_t>(mod(old_s, static_cast<std::int64_t>(n)));
}

} // namespace

ExtField ExtField::build(std::uint32_t r, std::uint32_t t) {
    if (!is_prime(r)) throw std::invalid_argument("build_ext_field: r = " + std::to_string(r) + " is not prime");
    if (t < 1) throw std::invalid_argument("build_ext_field: degree must be >= 1");
    const std::uint64_t lead = checked_power(r, t);
    for (std::uint64_t low = 0; low < lead; ++low) {
        PolyFr candidate = PolyFr::from_packed(r, lead + low);
        if (is_irreducible(candidate)) return ExtField(candidate);
    }
    throw InternalError("no irreducible polynomial of degree " + std::to_string(t) + " found");
}

ExtField::ExtField() : ExtField(PolyFr(2, {0, 1})) {}

ExtField::ExtField(const PolyFr& modulus) : r_(modulus.r()) {
    if (modulus.degree() < 1 || !modulus.is_monic())
        throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
    t_ = static_cast<std::uint32_t>(modulus.degree());
    q_ = checked_power(r_, t_);
    if (!is_irreducible(modulus))
        throw std::invalid_argument("ExtField: modulus " + modulus.pretty() + " is reducible");
    auto tables = std::make_shared<Tables>();
    tables->modulus = modulus;
    tables_ = tables;
    build_tables(*tables);
}

void ExtField::build_tables(Tables& tables) const {
    const std::uint64_t group = q_ - 1;
    tables.group_factors = prime_factors(group);
    std::uint32_t g = 1;
    if (group > 1) {
        for (std::uint32_t c = 2; c < q_; ++c) {
            bool primitive = true;
            for (auto f : tables.group_factors) {
                if (pow_reference(ExtElem{c}, group / f) == one()) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                g = c;
                break;
            }
        }
    }
    tables.primitive = g;
    if (q_ <= kMaxFieldSize) {
        tables.exp.assign(group, 0);
        tables.log.assign(q_, 0);
        ExtElem acc = one();
        for (std::uint64_t i = 0; i < group; ++i) {
            tables.exp[i] = acc.code;
            tables.log[acc.code] = static_cast<std::uint32_t>(i);
            acc = mul_reference(acc, ExtElem{g});
        }
        if (acc != one()) throw InternalError("log table generator does not have full order");
    }

    // Tr(x^j) = sum_i (x^j)^{r^i}; every value must land in F_r.
    tables.trace_of_basis.assign(t_, 0);
    ExtElem basis = one();
    const ExtElem xe = x();
    for (std::uint32_t j = 0; j < t_; ++j) {
        ExtElem sum = zero();
        ExtElem frob = basis;
        for (std::uint32_t i = 0; i < t_; ++i) {
            sum = add(sum, frob);
            frob = pow_reference(frob, r_);
        }
        if (!in_base_field(sum)) throw InternalError("trace left the base field");
        tables.trace_of_basis[j] = sum.code;
        basis = mul_reference(basis, xe);
    }
}

ExtElem ExtField::pow_reference(ExtElem a, std::uint64_t e) const {
    ExtElem result = one();
    while (e > 0) {
        if (e & 1U) result = mul_reference(result, a);
        a = mul_reference(a, a);
        e >>= 1U;
    }
    return result;
}

std::uint64_t ExtField::order_from_factors(ExtElem e) const {
    std::uint64_t order = q_ - 1;
    for (std::uint64_t f : tables_->group_factors)
        while (order % f == 0 && pow(e, order / f) == one()) order /= f;
    return order;
}

ExtElem ExtField::x() const {
    if (t_ == 1) {
        // x is congruent to minus the constant term of the linear modulus.
        return from_base((r_ - modulus().coeff(0)) % r_);
    }
    return ExtElem{r_};
}

ExtElem ExtField::from_base(std::uint32_t c) const { return ExtElem{c % r_}; }

ExtElem ExtField::from_coords(std::span<const std::uint32_t> coords) const {
    if (coords.size() > t_) throw std::invalid_argument("from_coords: too many coordinates");
    std::uint64_t code = 0;
    for (std::size_t j = coords.size(); j-- > 0;) {
        if (coords[j] >= r_) throw std::invalid_argument("from_coords: coordinate out of range");
        code = code * r_ + coords[j];
    }
    return ExtElem{static_cast<std::uint32_t>(code)};
}

ExtElem ExtField::from_code(std::uint64_t code) const {
    if (code >= q_)
        throw std::invalid_argument("element code " + std::to_string(code) + " outside [0, " + std::to_string(q_) + ")");
    return ExtElem{static_cast<std::uint32_t>(code)};
}

std::vector<std::uint32_t> ExtField::coords(ExtElem e) const {
    std::vector<std::uint32_t> out(t_, 0);
    std::uint32_t c = e.code;
    for (std::uint32_t j = 0; j < t_; ++j) {
        out[j] = c % r_;
        c /= r_;
    }
    return out;
}

ExtElem ExtField::add(ExtElem a, ExtElem b) const {
    if (r_ == 2) return ExtElem{a.code ^ b.code};
    std::uint32_t out = 0, scale = 1, x = a.code, y = b.code;
    for (std::uint32_t j = 0; j < t_; ++j) {
        out += ((x % r_ + y % r_) % r_) * scale;
        x /= r_;
        y /= r_;
        scale *= r_;
    }
    return ExtElem{out};
}

ExtElem ExtField::neg(ExtElem a) const {
    if (r_ == 2) return a;
    std::uint32_t out = 0, scale = 1, x = a.code;
    for (std::uint32_t j = 0; j < t_; ++j) {
        out += ((r_ - x % r_) % r_) * scale;
        x /= r_;
        scale *= r_;
    }
    return ExtElem{out};
}

ExtElem ExtField::sub(ExtElem a, ExtElem b) const { return add(a, neg(b)); }

ExtElem ExtField::mul(ExtElem a, ExtElem b) const {
    if (a.code == 0 || b.code == 0) return zero();
    if (!tabulated()) return mul_reference(a, b);
    const std::uint64_t group = q_ - 1;
    const std::uint64_t s = std::uint64_t{tables_->log[a.code]} + tables_->log[b.code];
    return ExtElem{tables_->exp[s >= group ? s - group : s]};
}

ExtElem ExtField::scale(std::uint32_t c, ExtElem e) const { return mul(from_base(c), e); }

ExtElem ExtField::inv(ExtElem a) const {
    if (a.code == 0) throw std::invalid_argument("inverse of zero in F_" + std::to_string(q_));
    if (!tabulated()) return pow_reference(a, q_ - 2);
    const std::uint64_t group = q_ - 1;
    const std::uint32_t l = tables_->log[a.code];
    return ExtElem{tables_->exp[l == 0 ? 0 : group - l]};
}

ExtElem ExtField::pow(ExtElem a, std::uint64_t exp) const {
    if (exp == 0) return one();
    if (a.code == 0) return zero();
    const std::uint64_t group = q_ - 1;
    if (!tabulated()) return pow_reference(a, exp % group);
    return ExtElem{tables_->exp[mul_mod(tables_->log[a.code], exp % group, group)]};
}

std::uint32_t ExtField::trace(ExtElem e) const {
    std::uint64_t s = 0;
    std::uint32_t c = e.code;
    for (std::uint32_t j = 0; j < t_; ++j) {
        s += std::uint64_t{c % r_} * tables_->trace_of_basis[j];
        c /= r_;
    }
    return static_cast<std::uint32_t>(s % r_);
}

std::uint64_t ExtField::element_order(ExtElem e) const {
    if (e.code == 0) throw std::invalid_argument("element_order: zero has no multiplicative order");
    if (!tabulated()) return order_from_factors(e);
    const std::uint64_t group = q_ - 1;
    return group / std::gcd(std::uint64_t{tables_->log[e.code]}, group);
}

std::optional<std::uint64_t> ExtField::discrete_log(ExtElem base, ExtElem target) const {
    if (base.code == 0) throw std::invalid_argument("discrete_log: base must be nonzero");
    if (target.code == 0) return std::nullopt;
    if (!tabulated()) {
        ExtElem acc = one();
        const std::uint64_t order = element_order(base);
        if (order > kMaxFieldSize) throw BudgetError("discrete_log: untabulated search exceeds budget");
        for (std::uint64_t s = 0; s < order; ++s) {
            if (acc == target) return s;
            acc = mul(acc, base);
        }
        return std::nullopt;
    }
    const std::uint64_t group = q_ - 1;
    const std::uint64_t lb = tables_->log[base.code];
    const std::uint64_t lt = tables_->log[target.code];
    // Solve s * lb = lt (mod q - 1) for the least s >= 0.
    const std::uint64_t g = std::gcd(lb, group);
    if (lt % g != 0) return std::nullopt;
    const std::uint64_t order = group / g;
    if (order == 1) return 0;
    return mul_mod((lt / g) % order, inverse_mod_composite(lb / g, order), order);
}

std::optional<ExtElem> ExtField::smallest_of_order(std::uint64_t d) const {
    const std::uint64_t group = q_ - 1;
    if (d == 0 || group % d != 0) return std::nullopt;
    if (d == 1) return one();
    // c^{(q-1)/d} has order exactly d for primitive c; the order-d elements are
    // then the powers h^j with gcd(j, d) = 1.
    const ExtElem h = pow(primitive(), group / d);
    ExtElem best{static_cast<std::uint32_t>(q_)};
    ExtElem acc = one();
    for (std::uint64_t j = 1; j < d; ++j) {
        acc = mul(acc, h);
        if (std::gcd(j, d) == 1 && acc < best) best = acc;
    }
    return best;
}

ExtElem ExtField::eval(const PolyFr& f, ExtElem e) const {
    if (f.r() != r_) throw std::invalid_argument("eval: polynomial over a different base field");
    ExtElem acc = zero();
    const auto c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = add(mul(acc, e), from_base(c[i]));
    return acc;
}

ExtElem ExtField::eval(const SparsePoly& f, ExtElem e) const {
    if (f.r() != r_) throw std::invalid_argument("eval: polynomial over a different base field");
    ExtElem acc = zero();
    for (std::size_t i = 0; i < f.k(); ++i) acc = add(acc, scale(f.coeffs()[i], pow(e, f.support()[i])));
    return acc;
}

ExtElem ExtField::mul_reference(ExtElem a, ExtElem b) const {
    const PolyFr& m = tables_->modulus;
    if (r_ == 2) {
        // Carry-less multiply then reduce by the modulus bit pattern.
        const auto mbits = m.packed();
        std::uint64_t prod = 0;
        for (std::uint32_t j = 0; j < t_; ++j)
            if ((b.code >> j) & 1U) prod ^= std::uint64_t{a.code} << j;
        for (int bit = 2 * static_cast<int>(t_) - 2; bit >= static_cast<int>(t_); --bit)
            if ((prod >> bit) & 1U) prod ^= mbits << (bit - static_cast<int>(t_));
        return ExtElem{static_cast<std::uint32_t>(prod)};
    }
    const PolyFr pa = PolyFr::from_packed(r_, a.code);
    const PolyFr pb = PolyFr::from_packed(r_, b.code);
    return ExtElem{static_cast<std::uint32_t>(((pa * pb) % m).packed())};
}

} // namespace dualcube
