#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dualcube/dualfn.hpp"
#include "dualcube/errors.hpp"

#include <random>

using namespace dualcube;

namespace {

DualInstance instance(std::uint64_t p, std::uint64_t m, const char* poly) {
    return bind_instance(build_family(derive_params(p, 2, m)), SparsePoly(PolyFr::parse(2, poly)));
}

BitVec unit_vector(std::size_t k, std::size_t i) {
    BitVec a(k, 0);
    a[i] = 1;
    return a;
}

FpVec d_row(const DualInstance& inst, std::size_t i) {
    return inst.family.d.row(static_cast<Eigen::Index>(i)).transpose();
}

CharacterValue frac(std::int64_t num, std::int64_t den) { return CharacterValue::rational(2, num, den); }

// Independent expansion: sum in F_4 coordinates then the trace via Frobenius x + x^2.
CharacterValue eval_F_oracle(const DualInstance& inst, const BitVec& a, std::uint64_t iota, const FpVec& x) {
    const ExtField& f = inst.field();
    ExtElem s = f.zero();
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!a[j]) continue;
        const FpVec w = inst.family.w.row(static_cast<Eigen::Index>(j)).transpose();
        const std::int64_t e = dot_mod(x, w, 3);
        ExtElem g = f.one();
        for (std::int64_t c = 0; c < e; ++c) g = f.mul_reference(g, inst.gamma());
        s = f.add(s, g);
    }
    const ExtElem u = f.mul_reference(inst.beta, f.scale(inst.poly.coeff_of(iota), s));
    const ExtElem tr = f.add(u, f.mul_reference(u, u));
    return CharacterValue::unit(2, f.coords(tr)[0]);
}

GroupTable random_disc(std::mt19937_64& rng, Eigen::Index size) {
    std::uniform_real_distribution<double> radius(0.0, 1.0), angle(0.0, 6.283185307179586);
    GroupTable t(size);
    for (auto& v : t) v = std::polar(radius(rng), angle(rng));
    return t;
}

} // namespace

TEST_CASE("choose_character and z") {
    const auto i7 = instance(7, 7, "1,1,0,1");
    CHECK(i7.z == frac(-1, 7));
    for (std::uint64_t code = 1; code < 8; ++code)
        CHECK(character_average(i7.family, i7.poly, i7.field().from_code(code)) == frac(-1, 7));
    CHECK(character_average(i7.family, i7.poly, i7.field().zero()) == frac(1, 1));
    CHECK(i7.field().eval(i7.poly, i7.gamma()) == i7.field().zero());
    CHECK(i7.field().element_order(i7.gamma()) == 7);

    const auto i3 = instance(3, 3, "1,1,1");
    CHECK(i3.z == frac(-1, 3));
    CHECK(i3.z.as_rational() == std::pair<std::int64_t, std::int64_t>{-1, 3});
}

TEST_CASE("bind_instance rebinds gamma to a root of P") {
    auto fam = build_family(derive_params(7, 2, 7));
    const ExtField& f = fam.field;
    // The other cubic factor of Phi_7; at most one of the two has the default gamma as a root.
    for (const char* poly : {"1,1,0,1", "1,0,1,1"}) {
        const auto inst = bind_instance(fam, SparsePoly(PolyFr::parse(2, poly)));
        CHECK(f.eval(inst.poly, inst.gamma()) == f.zero());
        CHECK(f.element_order(inst.gamma()) == 7);
        CHECK_NOTHROW(check_family_invariants(inst.family));
    }
    CHECK_THROWS_AS(bind_instance(fam, SparsePoly(PolyFr::parse(2, "1,1"))), std::invalid_argument);
    CHECK_THROWS_AS(bind_instance(fam, SparsePoly(PolyFr::parse(2, "0,1,1"))), std::invalid_argument);
}

TEST_CASE("eval_F") {
    const auto inst = instance(3, 3, "1,1,1");
    const BitVec zero(3, 0);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        FpVec x(3);
        for (auto& e : x) e = static_cast<std::int64_t>(rng() % 3);
        CHECK(eval_F(inst, zero, 0, x) == frac(1, 1));
        BitVec a(3);
        for (auto& b : a) b = static_cast<std::uint8_t>(rng() & 1U);
        for (std::uint64_t iota : {0, 1, 2}) CHECK(eval_F(inst, a, iota, x) == eval_F_oracle(inst, a, iota, x));
    }
    CHECK(eval_F(inst, unit_vector(3, 0), 1, FpVec::Zero(3)) == character_eval(inst.field(), inst.beta, inst.field().one()));
    CHECK_THROWS_AS(eval_F(inst, zero, 3, FpVec::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(eval_F(inst, BitVec(2, 0), 0, FpVec::Zero(3)), std::invalid_argument);
}

TEST_CASE("eval_phi brute and exact on p = 3") {
    const auto inst = instance(3, 3, "1,1,1");
    CHECK(eval_phi_brute(inst, unit_vector(3, 0), d_row(inst, 0)) == frac(-1, 3));
    CHECK(eval_phi_brute(inst, unit_vector(3, 0), d_row(inst, 1)) == frac(1, 1));
    CHECK(eval_phi_brute(inst, BitVec(3, 0), d_row(inst, 2)) == frac(1, 1));

    // Exhaustive oracle equivalence over all 8 a-vectors and 27 y.
    std::size_t compared = 0;
    for (unsigned mask = 0; mask < 8; ++mask) {
        BitVec a{static_cast<std::uint8_t>(mask & 1U), static_cast<std::uint8_t>((mask >> 1) & 1U),
                 static_cast<std::uint8_t>((mask >> 2) & 1U)};
        for (std::uint64_t idx = 0; idx < 27; ++idx) {
            const FpVec y = position_vector(idx, 3, 3);
            const auto brute = eval_phi_brute(inst, a, y);
            CHECK(eval_phi_exact(inst, a, y) == brute);
            CHECK(std::abs(brute.value()) <= 1.0 + 1e-12);
            ++compared;
        }
    }
    CHECK(compared == 216);
}

TEST_CASE("eval_phi_exact on p = 7") {
    const auto inst = instance(7, 7, "1,1,0,1");
    const BitVec ones(7, 1);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(eval_phi_exact(inst, unit_vector(7, i), d_row(inst, i)) == frac(-1, 7));
        CHECK(eval_phi_exact(inst, ones, d_row(inst, i)) == frac(-1, 7));
    }
    // Brute force over 7^28 points is out of reach; the budget guard fires.
    CHECK_THROWS_AS(eval_phi_brute(inst, ones, d_row(inst, 0)), BudgetError);
    CHECK_THROWS_AS(eval_phi_exact(inst, ones, FpVec::Ones(28), 6), BudgetError);
}

TEST_CASE("certify_hypercube") {
    const auto i3 = instance(3, 3, "1,1,1");
    const auto c3 = certify_hypercube(i3);
    REQUIRE(c3.passed());
    CHECK(c3.certificate.exhaustive);
    CHECK(c3.certificate.checked.size() == 24);

    const auto i7 = instance(7, 7, "1,1,0,1");
    const auto c7 = certify_hypercube(i7);
    REQUIRE(c7.passed());
    CHECK(c7.certificate.checked.size() == 896);
    CHECK(c7.certificate.z == frac(-1, 7));
    CHECK(c7.certificate.d.rows() == 7);
    for (const auto& check : c7.certificate.checked)
        CHECK(check.value == (check.a[check.i] ? frac(-1, 7) : frac(1, 1)));

    auto corrupted = i7;
    corrupted.z = CharacterValue(2);
    const auto bad = certify_hypercube(corrupted);
    REQUIRE_FALSE(bad.passed());
    // a = 0 passes every i; the first vector with a bit set is mask 1, i = 0.
    CHECK(bad.failure->a == unit_vector(7, 0));
    CHECK(bad.failure->i == 0);
    CHECK(bad.failure->got == frac(-1, 7));
    CHECK(bad.certificate.checked.size() == 7);

    CertifyOptions sampled;
    sampled.exhaustive_max_k = 2;
    sampled.samples = 10;
    sampled.seed = 9;
    const auto s = certify_hypercube(i7, sampled);
    CHECK(s.passed());
    CHECK_FALSE(s.certificate.exhaustive);
    CHECK(s.certificate.checked.size() == 70);
}

TEST_CASE("generic_dual_eval") {
    GroupTable ones = GroupTable::Ones(3);
    GroupTable delta = GroupTable::Zero(3);
    delta(0) = 1.0;
    const std::int64_t s01[] = {0, 1};
    const GroupTable pair_ones[] = {ones, ones};
    const GroupTable pair_delta[] = {delta, delta};
    for (std::int64_t y = 0; y < 3; ++y) {
        const FpVec yv = FpVec::Constant(1, y);
        CHECK(std::abs(generic_dual_eval(3, 1, s01, pair_ones, yv) - 1.0) < 1e-12);
        CHECK(std::abs(generic_dual_eval(3, 1, s01, pair_delta, yv) - (y == 0 ? 1.0 / 3 : 0.0)) < 1e-12);
    }
    const std::int64_t s012[] = {0, 1, 2};
    const GroupTable triple[] = {ones, ones, ones};
    CHECK(std::abs(generic_dual_eval(3, 1, s012, triple, FpVec::Constant(1, 2)) - 1.0) < 1e-12);

    GroupTable big = ones;
    big(1) = 1.5;
    const GroupTable pair_big[] = {big, ones};
    CHECK_THROWS_AS(generic_dual_eval(3, 1, s01, pair_big, FpVec::Zero(1)), std::invalid_argument);
    CHECK_THROWS_AS(generic_dual_eval(11, 6, s01, pair_ones, FpVec::Zero(6)), BudgetError);
}

TEST_CASE("fourier_transform") {
    std::mt19937_64 rng(3);
    const std::int64_t p = 5;
    const Eigen::Index n = 2;
    const GroupTable f = random_disc(rng, 25);
    const GroupTable h = fourier_transform(f, p, n);
    // Direct O(N^2) transform oracle.
    for (std::uint64_t xi = 0; xi < 25; ++xi) {
        std::complex<double> s = 0.0;
        for (std::uint64_t x = 0; x < 25; ++x) {
            const auto phase = position_vector(xi, p, n).dot(position_vector(x, p, n));
            s += f(static_cast<Eigen::Index>(x)) * std::polar(1.0, -2.0 * 3.141592653589793 * static_cast<double>(phase) / 5.0);
        }
        CHECK(std::abs(h(static_cast<Eigen::Index>(xi)) - s / 25.0) < 1e-12);
    }
    // Parseval with the normalized transform.
    CHECK(std::abs(f.squaredNorm() / 25.0 - h.squaredNorm()) < 1e-12);
    CHECK(position_index(position_vector(17, 5, 2), 5) == 17);
}

TEST_CASE("fourier_decompose_order2") {
    GroupTable delta = GroupTable::Zero(3);
    delta(0) = 1.0;
    const std::int64_t s01[] = {0, 1};
    const auto dec = fourier_decompose_order2(3, 1, s01, delta, delta);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(std::abs(dec.spectrum(i) - 1.0 / 9) < 1e-12);
        CHECK(std::abs(dec.alpha(i) - 1.0 / 9) < 1e-12);
    }
    CHECK(dec.l1 == doctest::Approx(1.0 / 3));
    CHECK(dec.l1_ok);
    CHECK(dec.support_ok);
    CHECK(dec.reconstruction_ok);

    const auto flat = fourier_decompose_order2(3, 1, s01, GroupTable::Ones(3), GroupTable::Ones(3));
    CHECK(std::abs(flat.spectrum(0) - 1.0) < 1e-12);
    CHECK(std::abs(flat.spectrum(1)) < 1e-12);
    CHECK(std::abs(flat.spectrum(2)) < 1e-12);

    std::mt19937_64 rng(11);
    const std::int64_t shift_sets[][2] = {{0, 1}, {1, 3}, {2, 2}};
    for (const auto& shifts : shift_sets) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto f1 = random_disc(rng, 5), f2 = random_disc(rng, 5);
            const auto d = fourier_decompose_order2(5, 1, shifts, f1, f2);
            CHECK(d.l1_ok);
            CHECK(d.support_ok);
            CHECK(d.reconstruction_ok);
        }
    }
    // Equal shifts collapse phi to a constant: only the trivial frequency survives.
    const std::int64_t same[] = {2, 2};
    const auto c = fourier_decompose_order2(5, 1, same, random_disc(rng, 5), random_disc(rng, 5));
    for (Eigen::Index i = 1; i < 5; ++i) CHECK(std::abs(c.spectrum(i)) < 1e-12);

    // n = 2 over F_3 with a non-unit dilation.
    const std::int64_t s02[] = {0, 2};
    const auto two = fourier_decompose_order2(3, 2, s02, random_disc(rng, 9), random_disc(rng, 9));
    CHECK(two.l1_ok);
    CHECK(two.support_ok);
    CHECK(two.reconstruction_ok);
    CHECK_THROWS_AS(fourier_decompose_order2(11, 4, s01, GroupTable::Ones(14641), GroupTable::Ones(14641)), BudgetError);
}
