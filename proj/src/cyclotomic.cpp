#include "dualcube/cyclotomic.hpp"

#include "dualcube/errors.hpp"
#include "dualcube/modular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dualcube {

namespace {

void require_distinct_primes(std::uint64_t p, std::uint32_t r) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (!is_prime(r)) throw std::invalid_argument("r = " + std::to_string(r) + " is not prime");
    if (p == r) throw std::invalid_argument("p and r must be distinct primes");
}

bool field_fits(std::uint32_t r, std::uint64_t t) {
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < t; ++i) {
        q *= r;
        if (q > kMaxFieldSize) return false;
    }
    return true;
}

bool packed_less(const PolyFr& a, const PolyFr& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const auto ai = a.coeff(static_cast<std::size_t>(i));
        const auto bi = b.coeff(static_cast<std::size_t>(i));
        if (ai != bi) return ai < bi;
    }
    return false;
}

PolyFr product(const std::vector<PolyFr>& factors, std::uint32_t r) {
    PolyFr acc(r, {1});
    for (const auto& f : factors) acc = acc * f;
    return acc;
}

} // namespace

PolyFr cyclotomic_polynomial(std::uint64_t p, std::uint32_t r) {
    return PolyFr(r, std::vector<std::uint32_t>(p, 1));
}

std::vector<Coset> cyclotomic_cosets(std::uint64_t p, std::uint32_t r) {
    require_distinct_primes(p, r);
    std::vector<bool> seen(p, false);
    std::vector<Coset> out;
    for (std::uint64_t s = 1; s < p; ++s) {
        if (seen[s]) continue;
        Coset orbit;
        for (std::uint64_t e = s; !seen[e]; e = e * r % p) {
            seen[e] = true;
            orbit.push_back(e);
        }
        out.push_back(std::move(orbit));
    }
    return out;
}

CosetFactorization factor_cyclotomic(std::uint64_t p, std::uint32_t r) {
    require_distinct_primes(p, r);
    CosetFactorization out;
    out.p = p;
    out.r = r;
    out.t = mult_order(r, PrimeModulus(p));
    out.cosets = cyclotomic_cosets(p, r);
    const ExtField field = ExtField::build(r, static_cast<std::uint32_t>(out.t));
    const auto zeta = field.smallest_of_order(p);
    if (!zeta) throw InternalError("F_{r^t} has no element of order p");
    out.zeta = *zeta;

    for (const auto& coset : out.cosets) {
        if (coset.size() != out.t) throw InternalError("coset size differs from ord_p(r)");
        std::vector<ExtElem> poly{field.one()};
        for (std::uint64_t e : coset) {
            // poly *= (X - zeta^e)
            const ExtElem root = field.pow(out.zeta, e);
            std::vector<ExtElem> next(poly.size() + 1, field.zero());
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = field.add(next[i + 1], poly[i]);
                next[i] = field.sub(next[i], field.mul(poly[i], root));
            }
            poly = std::move(next);
        }
        std::vector<std::uint32_t> coeffs;
        for (ExtElem c : poly) {
            if (!field.in_base_field(c)) throw InternalError("coset product has a coefficient outside F_r");
            coeffs.push_back(c.code);
        }
        PolyFr factor(r, std::move(coeffs));
        if (!factor.is_monic() || factor.degree() != static_cast<int>(out.t) || !is_irreducible(factor))
            throw InternalError("coset product " + factor.pretty() + " is not monic irreducible of degree t");
        out.factors.push_back(std::move(factor));
    }
    for (std::size_t i = 0; i < out.factors.size(); ++i)
        for (std::size_t j = i + 1; j < out.factors.size(); ++j)
            if (out.factors[i] == out.factors[j]) throw InternalError("repeated cyclotomic factor");
    if (product(out.factors, r) != cyclotomic_polynomial(p, r))
        throw InternalError("coset factors do not multiply to Phi_p");
    return out;
}

std::vector<PolyFr> factor_cyclotomic_by_coset_sums(std::uint64_t p, std::uint32_t r) {
    require_distinct_primes(p, r);
    const std::uint64_t t = mult_order(r, PrimeModulus(p));
    const std::uint64_t count = (p - 1) / t;
    std::vector<PolyFr> factors{cyclotomic_polynomial(p, r)};
    for (const auto& coset : cyclotomic_cosets(p, r)) {
        if (factors.size() == count) break;
        std::vector<std::uint32_t> eta_coeffs(p, 0);
        for (std::uint64_t e : coset) eta_coeffs[e] = 1;
        const PolyFr eta(r, std::move(eta_coeffs));
        std::vector<PolyFr> next;
        for (auto& f : factors) {
            if (f.degree() == static_cast<int>(t)) {
                next.push_back(std::move(f));
                continue;
            }
            const PolyFr reduced = eta % f;
            for (std::uint32_t c = 0; c < r; ++c) {
                PolyFr g = gcd(f, reduced - PolyFr(r, {c}));
                if (g.degree() > 0) next.push_back(std::move(g));
            }
        }
        factors = std::move(next);
    }
    if (factors.size() != count) throw InternalError("coset-sum splitting did not separate every factor");
    for (const auto& f : factors)
        if (f.degree() != static_cast<int>(t) || !f.is_monic()) throw InternalError("split factor has wrong degree");
    if (product(factors, r) != cyclotomic_polynomial(p, r))
        throw InternalError("split factors do not multiply to Phi_p");
    std::sort(factors.begin(), factors.end(), packed_less);
    return factors;
}

std::optional<SparseSeed> sparse_factor_search(std::uint64_t p, std::uint32_t r) {
    require_distinct_primes(p, r);
    const std::uint64_t t = mult_order(r, PrimeModulus(p));
    // A single factor is Phi_p itself, whose support size p exceeds t.
    if ((p - 1) / t == 1) return std::nullopt;

    const bool small = field_fits(r, t);
    const std::vector<PolyFr> factors = small ? factor_cyclotomic(p, r).factors : factor_cyclotomic_by_coset_sums(p, r);
    const PolyFr* best = nullptr;
    std::size_t best_k = 0;
    for (const auto& f : factors) {
        const std::size_t k = SparsePoly(f).k();
        if (k > t) continue;
        if (best == nullptr || k < best_k || (k == best_k && packed_less(f, *best))) {
            best = &f;
            best_k = k;
        }
    }
    if (best == nullptr) return std::nullopt;

    SparseSeed seed;
    seed.p = p;
    seed.r = r;
    seed.t = t;
    seed.poly = SparsePoly(*best);
    const bool divides = (cyclotomic_polynomial(p, r) % *best).is_zero();
    if (!divides || seed.poly.at_one() == 0) throw InternalError("sparse factor fails P | Phi_p, P(1) != 0");
    if (small) {
        const ExtField field = ExtField::build(r, static_cast<std::uint32_t>(t));
        const ExtElem zeta = *field.smallest_of_order(p);
        for (std::uint64_t e = 1; e < p && !seed.gamma_exists; ++e)
            seed.gamma_exists = field.eval(seed.poly, field.pow(zeta, e)) == field.zero();
        if (!seed.gamma_exists) throw InternalError("sparse factor has no root of order p");
    } else {
        seed.gamma_exists = true;
    }
    return seed;
}

std::vector<SparseSeed> prime_scan(std::uint64_t p_min, std::uint64_t p_max, std::uint32_t r) {
    if (p_min > p_max) throw std::invalid_argument("prime_scan: p_min > p_max");
    if (!is_prime(r)) throw std::invalid_argument("r = " + std::to_string(r) + " is not prime");
    std::vector<SparseSeed> out;
    for (std::uint64_t p : primes_in_range(p_min, p_max)) {
        if (p == r) continue;
        if (auto seed = sparse_factor_search(p, r)) out.push_back(std::move(*seed));
    }
    return out;
}

std::optional<MersenneTrinomial> mersenne_trinomial(std::uint32_t t) {
    if (t < 2) throw std::invalid_argument("mersenne_trinomial: t must be >= 2");
    if (t >= 63) throw std::invalid_argument("mersenne_trinomial: t too large");
    const std::uint64_t p = (std::uint64_t{1} << t) - 1;
    if (!is_prime(p)) return std::nullopt;
    const ExtField field = ExtField::build(2, t);
    const ExtElem zeta = *field.smallest_of_order(p);
    const auto s = field.discrete_log(zeta, field.add(field.one(), zeta));
    if (!s || *s < 2) throw InternalError("1 + zeta is not a higher power of zeta");
    MersenneTrinomial out;
    out.p = p;
    out.s = *s;
    out.poly = SparsePoly(2, {0, 1, *s}, {1, 1, 1});
    if (field.eval(out.poly, zeta) != field.zero()) throw InternalError("trinomial does not vanish at zeta");
    return out;
}

ApReport ap_obstruction_search(std::uint64_t p, std::uint32_t r, std::size_t k_max, std::uint64_t budget) {
    require_distinct_primes(p, r);
    if (k_max < 2) throw std::invalid_argument("ap_obstruction_search: k_max must be >= 2");
    ApReport report;
    report.p = p;
    report.r = r;
    report.t = mult_order(r, PrimeModulus(p));

    // (p - 1) * sum_k (r-1)^2 r^{k-2}, with overflow checks against the budget.
    std::uint64_t total = 0;
    std::uint64_t per_k = std::uint64_t{r - 1} * (r - 1);
    for (std::size_t k = 2; k <= k_max; ++k) {
        if (per_k > budget || total + per_k * (p - 1) > budget)
            throw BudgetError("ap_obstruction_search: more than " + std::to_string(budget) + " candidates");
        total += per_k * (p - 1);
        per_k *= r;
    }
    report.candidates = total;

    const ExtField field = ExtField::build(r, static_cast<std::uint32_t>(report.t));
    const ExtElem zeta = *field.smallest_of_order(p);
    std::vector<ExtElem> zeta_pow(p);
    for (std::uint64_t j = 0; j < p; ++j) zeta_pow[j] = field.pow(zeta, j);

    for (std::uint64_t s = 1; s < p; ++s) {
        for (std::size_t k = 2; k <= k_max; ++k) {
            std::vector<std::uint32_t> c(k, 0);
            c[0] = 1;
            c[k - 1] = 1;
            // Odometer over c with c_0, c_{k-1} in 1..r-1 and the middle in 0..r-1.
            while (true) {
                std::uint64_t sum = 0;
                for (auto v : c) sum += v;
                if (sum % r != 0) {
                    bool has_root = false;
                    for (std::uint64_t e = 1; e < p && !has_root; ++e) {
                        ExtElem acc = field.zero();
                        for (std::size_t i = 0; i < k; ++i)
                            if (c[i] != 0) acc = field.add(acc, field.scale(c[i], zeta_pow[e * i % p * s % p]));
                        has_root = acc == field.zero();
                    }
                    if (has_root) {
                        ApHit hit;
                        hit.s = s;
                        hit.k = k;
                        hit.coeffs = c;
                        std::vector<std::uint64_t> support;
                        std::vector<std::uint32_t> nz;
                        for (std::size_t i = 0; i < k; ++i) {
                            if (c[i] == 0) continue;
                            support.push_back(i * s);
                            nz.push_back(c[i]);
                        }
                        hit.poly = SparsePoly(r, std::move(support), std::move(nz));
                        if (k <= report.t) report.violations.push_back(hit);
                        report.hits.push_back(std::move(hit));
                    }
                }
                std::size_t pos = 0;
                while (pos < k) {
                    const std::uint32_t lo = (pos == 0 || pos == k - 1) ? 1 : 0;
                    if (++c[pos] < r) break;
                    c[pos] = lo;
                    ++pos;
                }
                if (pos == k) break;
            }
        }
    }
    return report;
}

} // namespace dualcube
