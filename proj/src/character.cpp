#include "dualcube/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace dualcube {

namespace {

std::string fraction(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

} // namespace

CharacterValue::CharacterValue(std::uint32_t r) : r_(r), counts_(r, 0) {
    if (r < 2) throw std::invalid_argument("CharacterValue: r must be >= 2");
}

CharacterValue::CharacterValue(std::uint32_t r, std::vector<std::int64_t> counts, std::int64_t denom)
    : r_(r), counts_(std::move(counts)), denom_(denom) {
    if (r < 2 || counts_.size() != r) throw std::invalid_argument("CharacterValue: need exactly r counts");
    if (denom_ <= 0) throw std::invalid_argument("CharacterValue: denominator must be positive");
}

CharacterValue CharacterValue::unit(std::uint32_t r, std::uint32_t exponent) {
    CharacterValue v(r);
    v.counts_[exponent % r] = 1;
    return v;
}

CharacterValue CharacterValue::rational(std::uint32_t r, std::int64_t num, std::int64_t den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    CharacterValue v(r);
    v.counts_[0] = num;
    v.denom_ = den;
    if (den == 0) throw std::invalid_argument("CharacterValue: zero denominator");
    return v;
}

void CharacterValue::add_unit(std::uint32_t exponent, std::int64_t multiplicity) {
    counts_[exponent % r_] += multiplicity;
}

void CharacterValue::set_denom(std::int64_t denom) {
    if (denom <= 0) throw std::invalid_argument("CharacterValue: denominator must be positive");
    denom_ = denom;
}

CharacterValue CharacterValue::canonical() const {
    CharacterValue out = *this;
    const std::int64_t lo = *std::min_element(out.counts_.begin(), out.counts_.end());
    for (auto& c : out.counts_) c -= lo;
    std::int64_t g = out.denom_;
    for (auto c : out.counts_) g = std::gcd(g, c);
    if (g > 1) {
        for (auto& c : out.counts_) c /= g;
        out.denom_ /= g;
    }
    return out;
}

std::complex<double> CharacterValue::value() const {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t j = 0; j < r_; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / r_;
        acc += static_cast<double>(counts_[j]) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc / static_cast<double>(denom_);
}

bool CharacterValue::real_nonpositive(double tol) const {
    if (auto q = as_rational()) return q->first <= 0;
    return real() <= tol;
}

std::optional<std::pair<std::int64_t, std::int64_t>> CharacterValue::as_rational() const {
    if (r_ != 2) return std::nullopt;
    std::int64_t num = counts_[0] - counts_[1];
    std::int64_t den = denom_;
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return std::pair{num, den};
}

std::string CharacterValue::to_string() const {
    if (auto q = as_rational()) return std::to_string(q->first) + "/" + std::to_string(q->second);
    return "[" + components_string() + "]";
}

std::string CharacterValue::components_string() const {
    const CharacterValue c = canonical();
    std::string out;
    for (std::uint32_t j = 0; j < r_; ++j) {
        if (j) out += ' ';
        out += fraction(c.counts_[j], c.denom_);
    }
    return out;
}

CharacterValue operator*(const CharacterValue& a, const CharacterValue& b) {
    if (a.r_ != b.r_) throw std::invalid_argument("CharacterValue: mismatched r");
    CharacterValue out(a.r_);
    for (std::uint32_t i = 0; i < a.r_; ++i)
        for (std::uint32_t j = 0; j < a.r_; ++j) out.counts_[(i + j) % a.r_] += a.counts_[i] * b.counts_[j];
    out.denom_ = a.denom_ * b.denom_;
    return out;
}

CharacterValue operator+(const CharacterValue& a, const CharacterValue& b) {
    if (a.r_ != b.r_) throw std::invalid_argument("CharacterValue: mismatched r");
    const std::int64_t den = std::lcm(a.denom_, b.denom_);
    CharacterValue out(a.r_);
    for (std::uint32_t j = 0; j < a.r_; ++j)
        out.counts_[j] = a.counts_[j] * (den / a.denom_) + b.counts_[j] * (den / b.denom_);
    out.denom_ = den;
    return out;
}

bool operator==(const CharacterValue& a, const CharacterValue& b) {
    if (a.r_ != b.r_) return false;
    const CharacterValue ca = a.canonical();
    const CharacterValue cb = b.canonical();
    return ca.denom_ == cb.denom_ && ca.counts_ == cb.counts_;
}

CharacterValue character_eval(const ExtField& field, ExtElem beta, ExtElem u) {
    return CharacterValue::unit(field.r(), field.trace(field.mul(beta, u)));
}

} // namespace dualcube
