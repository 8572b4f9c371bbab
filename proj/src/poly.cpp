#include "dualcube/poly.hpp"

#include "dualcube/modular.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace dualcube {

PolyFr::PolyFr(std::uint32_t r) : r_(r) {
    if (!is_prime(r)) throw std::invalid_argument("PolyFr: base " + std::to_string(r) + " is not prime");
}

PolyFr::PolyFr(std::uint32_t r, std::vector<std::uint32_t> coeffs) : PolyFr(r) {
    coeffs_ = std::move(coeffs);
    for (auto& c : coeffs_) c %= r_;
    normalize();
}

PolyFr PolyFr::monomial(std::uint32_t r, std::size_t degree, std::uint32_t c) {
    std::vector<std::uint32_t> coeffs(degree + 1, 0);
    coeffs[degree] = c;
    return PolyFr(r, std::move(coeffs));
}

PolyFr PolyFr::from_packed(std::uint32_t r, std::uint64_t packed) {
    std::vector<std::uint32_t> coeffs;
    while (packed > 0) {
        coeffs.push_back(static_cast<std::uint32_t>(packed % r));
        packed /= r;
    }
    return PolyFr(r, std::move(coeffs));
}

PolyFr PolyFr::parse(std::uint32_t r, std::string_view text) {
    std::vector<std::uint32_t> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(pos, end - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
            throw std::invalid_argument("malformed polynomial coefficient '" + std::string(token) + "'");
        if (value >= r)
            throw std::invalid_argument("coefficient " + std::to_string(value) + " not in F_" + std::to_string(r));
        coeffs.push_back(value);
        pos = end + 1;
    }
    return PolyFr(r, std::move(coeffs));
}

void PolyFr::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void PolyFr::require_same_field(const PolyFr& a, const PolyFr& b) {
    if (a.r_ != b.r_) throw std::invalid_argument("polynomials over different base fields");
}

std::uint32_t PolyFr::at_one() const {
    std::uint64_t s = 0;
    for (auto c : coeffs_) s += c;
    return static_cast<std::uint32_t>(s % r_);
}

std::uint32_t PolyFr::eval(std::uint32_t x) const {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x + *it) % r_;
    return static_cast<std::uint32_t>(acc);
}

std::uint64_t PolyFr::packed() const {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r_ + *it;
    return acc;
}

std::string PolyFr::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs_[i]);
    }
    return out;
}

std::string PolyFr::pretty() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const std::uint32_t c = coeffs_[i];
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += "x";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

PolyFr PolyFr::monic() const {
    if (is_zero()) return *this;
    const auto inv = static_cast<std::uint32_t>(inv_mod(leading(), r_));
    std::vector<std::uint32_t> c(coeffs_);
    for (auto& v : c) v = static_cast<std::uint32_t>(std::uint64_t{v} * inv % r_);
    return PolyFr(r_, std::move(c));
}

PolyFr operator+(const PolyFr& a, const PolyFr& b) {
    PolyFr::require_same_field(a, b);
    std::vector<std::uint32_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + b.coeff(i)) % a.r_;
    return PolyFr(a.r_, std::move(c));
}

PolyFr operator-(const PolyFr& a, const PolyFr& b) {
    PolyFr::require_same_field(a, b);
    std::vector<std::uint32_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + a.r_ - b.coeff(i)) % a.r_;
    return PolyFr(a.r_, std::move(c));
}

PolyFr operator*(const PolyFr& a, const PolyFr& b) {
    PolyFr::require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return PolyFr(a.r_);
    std::vector<std::uint64_t> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            acc[i + j] = (acc[i + j] + std::uint64_t{a.coeffs_[i]} * b.coeffs_[j]) % a.r_;
    return PolyFr(a.r_, std::vector<std::uint32_t>(acc.begin(), acc.end()));
}

std::pair<PolyFr, PolyFr> PolyFr::divmod(const PolyFr& divisor) const {
    require_same_field(*this, divisor);
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<std::uint32_t> rem(coeffs_);
    const int dd = divisor.degree();
    if (degree() < dd) return {PolyFr(r_), *this};
    std::vector<std::uint32_t> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
    const auto lead_inv = inv_mod(divisor.leading(), r_);
    for (int i = degree(); i >= dd; --i) {
        const std::uint32_t c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const auto f = static_cast<std::uint32_t>(std::uint64_t{c} * lead_inv % r_);
        quot[static_cast<std::size_t>(i - dd)] = f;
        for (int j = 0; j <= dd; ++j) {
            auto& slot = rem[static_cast<std::size_t>(i - dd + j)];
            const std::uint64_t sub = std::uint64_t{f} * divisor.coeffs_[static_cast<std::size_t>(j)] % r_;
            slot = static_cast<std::uint32_t>((slot + r_ - sub) % r_);
        }
    }
    return {PolyFr(r_, std::move(quot)), PolyFr(r_, std::move(rem))};
}

PolyFr gcd(PolyFr a, PolyFr b) {
    if (a.r() != b.r()) throw std::invalid_argument("gcd: polynomials over different base fields");
    while (!b.is_zero()) {
        PolyFr t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a.monic();
}

PolyFr pow_mod(const PolyFr& base, std::uint64_t exp, const PolyFr& modulus) {
    PolyFr result = PolyFr(base.r(), {1}) % modulus;
    PolyFr b = base % modulus;
    while (exp > 0) {
        if (exp & 1U) result = (result * b) % modulus;
        b = (b * b) % modulus;
        exp >>= 1U;
    }
    return result;
}

std::vector<PolyFr> monic_irreducibles_up_to(std::uint32_t r, int max_degree) {
    std::vector<PolyFr> found;
    for (int d = 1; d <= max_degree; ++d) {
        std::uint64_t lead = 1;
        for (int i = 0; i < d; ++i) lead *= r;
        for (std::uint64_t low = 0; low < lead; ++low) {
            PolyFr candidate = PolyFr::from_packed(r, lead + low);
            const bool has_factor = std::any_of(found.begin(), found.end(), [&](const PolyFr& g) {
                return 2 * g.degree() <= d && (candidate % g).is_zero();
            });
            if (!has_factor) found.push_back(std::move(candidate));
        }
    }
    return found;
}

namespace {

// x^{r^k} mod f by k repeated r-th powers.
PolyFr frobenius_power_of_x(const PolyFr& f, std::uint64_t k) {
    PolyFr acc = PolyFr(f.r(), {0, 1}) % f;
    for (std::uint64_t i = 0; i < k; ++i) acc = pow_mod(acc, f.r(), f);
    return acc;
}

} // namespace

bool is_irreducible(const PolyFr& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const auto n = static_cast<std::uint64_t>(f.degree());
    const PolyFr x = PolyFr(f.r(), {0, 1}) % f;
    if (frobenius_power_of_x(f, n) != x) return false;
    for (std::uint64_t q : prime_factors(n)) {
        const PolyFr g = gcd(f, frobenius_power_of_x(f, n / q) - x);
        if (g.degree() != 0) return false;
    }
    return true;
}

bool is_irreducible_by_trial_division(const PolyFr& f) {
    if (f.degree() < 1) return false;
    for (const auto& g : monic_irreducibles_up_to(f.r(), f.degree() / 2))
        if ((f % g).is_zero()) return false;
    return true;
}

SparsePoly::SparsePoly(std::uint32_t r, std::vector<std::uint64_t> support, std::vector<std::uint32_t> coeffs)
    : r_(r), support_(std::move(support)), coeffs_(std::move(coeffs)) {
    if (!is_prime(r)) throw std::invalid_argument("SparsePoly: base " + std::to_string(r) + " is not prime");
    if (support_.size() != coeffs_.size()) throw std::invalid_argument("SparsePoly: support/coefficient length mismatch");
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (i > 0 && support_[i] <= support_[i - 1])
            throw std::invalid_argument("SparsePoly: support must be strictly increasing");
        if (coeffs_[i] == 0 || coeffs_[i] >= r_)
            throw std::invalid_argument("SparsePoly: coefficients must be nonzero residues mod r");
    }
}

SparsePoly::SparsePoly(const PolyFr& dense) : r_(dense.r()) {
    const auto c = dense.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        support_.push_back(i);
        coeffs_.push_back(c[i]);
    }
}

bool SparsePoly::contains(std::uint64_t exponent) const {
    return std::binary_search(support_.begin(), support_.end(), exponent);
}

std::uint32_t SparsePoly::coeff_of(std::uint64_t exponent) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), exponent);
    if (it == support_.end() || *it != exponent) return 0;
    return coeffs_[static_cast<std::size_t>(it - support_.begin())];
}

std::uint32_t SparsePoly::at_one() const {
    std::uint64_t s = 0;
    for (auto c : coeffs_) s += c;
    return static_cast<std::uint32_t>(s % r_);
}

PolyFr SparsePoly::to_dense() const {
    if (support_.empty()) return PolyFr(r_);
    std::vector<std::uint32_t> c(support_.back() + 1, 0);
    for (std::size_t i = 0; i < support_.size(); ++i) c[support_[i]] = coeffs_[i];
    return PolyFr(r_, std::move(c));
}

} // namespace dualcube
