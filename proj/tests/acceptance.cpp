// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "dualcube/cyclotomic.hpp"
#include "dualcube/dualfn.hpp"
#include "dualcube/entropy.hpp"
#include "dualcube/ldc.hpp"
#include "dualcube/matching.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace dualcube;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        out.pass = false;
        out.detail += "; over time limit";
    }
    if (!out.pass) ++failures;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " [" << t.str() << " s] "
              << out.detail << std::endl;
}

std::uint64_t order_of_two(std::uint64_t p) {
    std::uint64_t t = 1, v = 2 % p;
    while (v != 1) v = v * 2 % p, ++t;
    return t;
}

SparsePoly poly(const char* text) { return SparsePoly(PolyFr::parse(2, text)); }

std::string join(const std::vector<std::uint64_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

PointSet random_points(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index k) {
    std::normal_distribution<double> g(0.0, 1.0);
    PointSet a(rows, k);
    for (auto& x : a.reshaped()) x = {g(rng), g(rng)};
    return a;
}

PointSet stack(const PointSet& a, const PointSet& b) {
    PointSet out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

} // namespace

int main() {
    criterion(1, "coset factorization of Phi_p for primes p <= 31, r = 2", 1.0, [] {
        Outcome o;
        std::size_t factors = 0;
        for (std::uint64_t p : primes_in_range(3, 31)) {
            const auto fac = factor_cyclotomic(p, 2);
            const std::uint64_t t = order_of_two(p);
            PolyFr product = PolyFr::monomial(2, 0);
            for (const auto& f : fac.factors) {
                product = product * f;
                ++factors;
                if (static_cast<std::uint64_t>(f.degree()) != t || !is_irreducible_by_trial_division(f)) o.pass = false;
            }
            const PolyFr phi(2, std::vector<std::uint32_t>(p, 1));
            if (!(product == phi) || fac.factors.size() != (p - 1) / t) o.pass = false;
        }
        o.detail = std::to_string(factors) + " factors over 10 primes, product and degrees checked";
        return o;
    });

    criterion(2, "scan-primes 2..40 returns exactly {7, 23, 31}; Mersenne trinomials for t in {2, 3, 5}", 0, [] {
        Outcome o;
        std::vector<std::uint64_t> found;
        for (const auto& s : prime_scan(2, 40, 2)) {
            found.push_back(s.p);
            if (s.k() > s.t || s.poly.at_one() == 0) o.pass = false;
        }
        const std::vector<std::uint64_t> expected{7, 23, 31};
        if (found != expected) o.pass = false;
        std::string mersenne;
        for (std::uint32_t t : {2U, 3U, 5U}) {
            const auto tri = mersenne_trinomial(t);
            if (!tri || tri->poly.at_one() == 0 || tri->poly.k() != 3) {
                o.pass = false;
                mersenne += " t=" + std::to_string(t) + ":missing";
            } else {
                mersenne += " t=" + std::to_string(t) + ":" + tri->poly.to_string();
            }
        }
        o.detail = "found " + join(found) + ", expected " + join(expected) + ";" + mersenne;
        return o;
    });

    criterion(3, "matching vectors p=7 m=7: 49 inner products and 1000-point decoding identity", 10.0, [] {
        Outcome o;
        const auto fam = build_family(derive_params(7, 2, 7));
        std::set<std::int64_t> off;
        for (Eigen::Index i = 0; i < 7; ++i)
            for (Eigen::Index j = 0; j < 7; ++j) {
                const std::int64_t uv = fam.u.row(i).dot(fam.v.row(j)) % 7;
                const std::int64_t wd = fam.w.row(i).dot(fam.d.row(j)) % 7;
                if (wd != uv * uv % 7 || (wd == 0) != (i == j)) o.pass = false;
                if (i != j) off.insert(wd);
            }
        for (auto v : off)
            if (v != 1 && v != 2 && v != 4) o.pass = false;
        const auto inst = bind_instance(fam, poly("1,1,0,1"));
        const ExtField& f = inst.field();
        const ExtElem p1 = f.from_base(inst.poly.at_one());
        std::mt19937_64 rng(2024);
        std::size_t checks = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            FpVec x(28);
            for (auto& e : x) e = static_cast<std::int64_t>(rng() % 7);
            for (std::size_t i = 0; i < 7; ++i)
                for (std::size_t j = 0; j < 7; ++j) {
                    const FpVec dj = inst.family.d.row(static_cast<Eigen::Index>(j)).transpose();
                    ExtElem lhs = f.zero();
                    for (std::size_t idx = 0; idx < inst.poly.k(); ++idx) {
                        const auto iota = static_cast<std::int64_t>(inst.poly.support()[idx]);
                        lhs = f.add(lhs, f.scale(inst.poly.coeffs()[idx], f_eval(inst.family, i, reduce(FpVec(x + iota * dj), 7))));
                    }
                    const ExtElem rhs = i == j ? f.mul(f_eval(inst.family, i, x), p1) : f.zero();
                    if (lhs != rhs) o.pass = false;
                    ++checks;
                }
        }
        std::string vals;
        for (auto v : off) vals += (vals.empty() ? "" : ",") + std::to_string(v);
        o.detail = "off-diagonal values {" + vals + "}, " + std::to_string(checks) + " identity checks";
        return o;
    });

    criterion(4, "eval_phi_exact = eval_phi_brute on all 8 x 27 points for p=3 m=3", 0, [] {
        Outcome o;
        const auto inst = bind_instance(build_family(derive_params(3, 2, 3)), poly("1,1,1"));
        std::size_t equal = 0;
        for (unsigned mask = 0; mask < 8; ++mask) {
            BitVec a{static_cast<std::uint8_t>(mask & 1U), static_cast<std::uint8_t>((mask >> 1) & 1U),
                     static_cast<std::uint8_t>((mask >> 2) & 1U)};
            for (std::uint64_t idx = 0; idx < 27; ++idx) {
                const FpVec y = position_vector(idx, 3, 3);
                if (eval_phi_exact(inst, a, y) == eval_phi_brute(inst, a, y)) ++equal;
            }
        }
        o.pass = equal == 216;
        o.detail = std::to_string(equal) + "/216 exact equalities";
        return o;
    });

    criterion(5, "hypercube certificate p=7: 2^7 x 7 exact checks against z = -1/7", 60.0, [] {
        Outcome o;
        const auto inst = bind_instance(build_family(derive_params(7, 2, 7)), poly("1,1,0,1"));
        // z recomputed as (1/7) sum_{u in F_8^*} (-1)^{Tr(beta u)}, trace by Frobenius.
        const ExtField& f = inst.field();
        std::int64_t sum = 0;
        for (std::uint64_t code = 1; code < 8; ++code) {
            const ExtElem u = f.mul_reference(inst.beta, f.from_code(code));
            const ExtElem u2 = f.mul_reference(u, u);
            const ExtElem tr = f.add(f.add(u, u2), f.mul_reference(u2, u2));
            sum += tr == f.zero() ? 1 : -1;
        }
        const CharacterValue z = CharacterValue::rational(2, sum, 7);
        const auto res = certify_hypercube(inst);
        const bool z_ok = z == CharacterValue::rational(2, -1, 7) && inst.z == z;
        o.pass = z_ok && res.passed() && res.certificate.exhaustive && res.certificate.checked.size() == 896;
        o.detail = "z = " + z.to_string() + ", " + std::to_string(res.certificate.checked.size()) + " checks";
        return o;
    });

    criterion(6, "width functional: cube bound for k <= 10 and four properties on 100 trials each", 0, [] {
        Outcome o;
        double worst_margin = 1e300;
        for (std::size_t k = 1; k <= 10; ++k) {
            const double w = width_exact(cube_points_rational(7, -1, 7, k));
            worst_margin = std::min(worst_margin, w - static_cast<double>(k) / 2);
            if (w < static_cast<double>(k) / 2) o.pass = false;
        }
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int mono = 0, hull = 0, sub = 0, disc = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::Index k = 1 + trial % 6;
            const auto a = random_points(rng, 1 + trial % 4, k);
            const auto b = random_points(rng, 1 + trial % 3, k);
            const double wa = width_exact(a);
            if (wa <= width_exact(stack(a, b)) + 1e-9) ++mono;
            PointSet comb(3, k);
            for (Eigen::Index h = 0; h < 3; ++h) {
                Eigen::VectorXcd alpha(a.rows());
                for (auto& x : alpha) x = std::polar(u(rng), 6.283185307179586 * u(rng));
                alpha /= alpha.cwiseAbs().sum() * (1.0 + u(rng));
                comb.row(h) = alpha.transpose() * a;
            }
            if (std::abs(width_exact(stack(a, comb)) - wa) <= 1e-9) ++hull;
            PointSet sum(a.rows() * b.rows(), k);
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index j = 0; j < b.rows(); ++j) sum.row(i * b.rows() + j) = a.row(i) + b.row(j);
            if (width_exact(sum) <= wa + width_exact(b) + 1e-9) ++sub;
            const double eps = 0.05 + u(rng);
            PointSet extra(4, k);
            for (auto& x : extra.reshaped()) x = std::polar(eps * u(rng), 6.283185307179586 * u(rng));
            const PointSet ball = stack(eps * cube_points(1.0, -1.0, static_cast<std::size_t>(k)), extra);
            if (std::abs(width_exact(ball) - eps * static_cast<double>(k)) <= 1e-9) ++disc;
        }
        o.pass = o.pass && mono == 100 && hull == 100 && sub == 100 && disc == 100;
        std::ostringstream d;
        d << "min w - k/2 = " << worst_margin << "; monotone " << mono << ", hull " << hull << ", subadditive " << sub
          << ", disc " << disc << " of 100";
        o.detail = d.str();
        return o;
    });

    criterion(7, "crossover witness p=7 (k=3, t=3), eps=1/4, M=1, K=2 sqrt 2, m in [7, 500]", 0, [] {
        Outcome o;
        const auto seed = sparse_factor_search(7, 2);
        if (!seed || seed->k() != 3 || seed->t != 3) return Outcome{false, "no k = 3 seed for p = 7"};
        const auto rep = contradiction_scan(*seed, 0.25, 1.0, kDefaultKhintchine, 7, 500);
        if (!rep.crossover) return Outcome{false, "no crossover in range"};
        const auto& row = rep.rows[*rep.crossover - 7];
        const double phase = boost::multiprecision::cpp_int((row.n + 2) * (row.n + 1) / 2).convert_to<double>() * std::log2(7.0);
        o.pass = row.b_cube > phase && std::abs(*rep.cube_exponent - 3.0) <= 0.2 &&
                 std::abs(*rep.phase_exponent - 2.0) <= 0.2;
        std::ostringstream d;
        d << "m* = " << *rep.crossover << " (n = " << row.n << "), slopes " << *rep.cube_exponent << " vs "
          << *rep.phase_exponent;
        o.detail = d.str();
        return o;
    });

    criterion(8, "no AP-supported factor with k <= t for (p, r) in {(3,2), (5,2), (7,2), (23,2)}", 30.0, [] {
        Outcome o;
        std::uint64_t candidates = 0;
        for (std::uint64_t p : {3, 5, 7, 23}) {
            const std::uint64_t t = order_of_two(p);
            const auto rep = ap_obstruction_search(p, 2, std::max<std::uint64_t>(t, 2));
            candidates += rep.candidates;
            if (!rep.violations.empty()) o.pass = false;
            for (const auto& h : rep.hits)
                if (h.k <= t) o.pass = false;
        }
        o.detail = std::to_string(candidates) + " candidates searched exhaustively";
        return o;
    });

    criterion(9, "LDC: exact decoding 1000/1000, delta = 0.05 rate >= 0.85 - 3 stderr, p=3 smoothness exact", 0, [] {
        Outcome o;
        const auto inst = make_ldc(build_family(derive_params(7, 2, 7)), poly("1,1,0,1"));
        const Message msg = random_message(inst, 9);
        auto ch = Channel::exact(inst, msg);
        std::mt19937_64 rng(99);
        int ok = 0;
        for (int t = 0; t < 1000; ++t) ok += local_decode(inst, rng() % 7, ch, rng).success ? 1 : 0;
        const auto bench = benchmark(inst, msg, 0.05, 10000, 42);
        const auto tiny = make_ldc(build_family(derive_params(3, 2, 3)), poly("1,1,1"));
        bool smooth = true;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto s = smoothness_check(tiny, i, 0, 0);
            smooth = smooth && s.exhaustive && s.uniform;
        }
        o.pass = ok == 1000 && bench.rate >= 0.85 - 3 * bench.stderr_ && smooth;
        std::ostringstream d;
        d << "exact " << ok << "/1000, rate " << bench.rate << " +- " << bench.stderr_ << ", smoothness "
          << (smooth ? "uniform" : "NOT uniform");
        o.detail = d.str();
        return o;
    });

    criterion(10, "order-2 Fourier on F_5: l1 <= 1 + 1e-9 and dilation support on 100 random pairs", 0, [] {
        Outcome o;
        std::mt19937_64 rng(10);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto draw = [&] {
            GroupTable t(5);
            for (auto& v : t) v = std::polar(u(rng), 6.283185307179586 * u(rng));
            return t;
        };
        const std::int64_t shifts[] = {0, 1};
        double l1 = 0, err = 0;
        int good = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto f1 = draw();
            const auto f2 = draw();
            const auto d = fourier_decompose_order2(5, 1, shifts, f1, f2);
            l1 = std::max(l1, d.l1);
            err = std::max({err, d.dilation_error, d.off_support_max, d.reconstruction_error});
            if (d.l1_ok && d.support_ok && d.reconstruction_ok) ++good;
        }
        o.pass = good == 100;
        std::ostringstream d;
        d << good << "/100 pass, max l1 " << l1 << ", max error " << err;
        o.detail = d.str();
        return o;
    });

    std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
