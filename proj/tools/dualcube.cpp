#include "dualcube/cyclotomic.hpp"
#include "dualcube/dualfn.hpp"
#include "dualcube/entropy.hpp"
#include "dualcube/errors.hpp"
#include "dualcube/io.hpp"
#include "dualcube/ldc.hpp"
#include "dualcube/matching.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace dualcube;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInvalid = 2;

std::string join(std::span<const std::uint64_t> v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

std::string join(std::span<const std::uint32_t> v, char sep = ',') {
    std::vector<std::uint64_t> w(v.begin(), v.end());
    return join(std::span<const std::uint64_t>(w), sep);
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

// "# dualcube <path> --opt=value ..." for every option of the selected subcommands.
std::string header(const CLI::App& app) {
    std::string line = "# dualcube";
    const CLI::App* cur = &app;
    while (true) {
        const auto subs = cur->get_subcommands();
        if (subs.empty()) break;
        cur = subs.front();
        line += " " + cur->get_name();
        for (const CLI::Option* opt : cur->get_options()) {
            if (opt->get_lnames().empty()) continue;
            const std::string name = opt->get_lnames().front();
            if (name == "help") continue;
            std::string value;
            if (opt->get_type_size() == 0)
                value = opt->count() ? "true" : "false";
            else if (opt->count())
                value = CLI::detail::join(opt->results(), ",");
            else
                value = opt->get_default_str();
            line += " --" + name + "=" + (value.empty() ? "<none>" : value);
        }
    }
    return line;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

MVFamily load_family(const std::string& path) {
    auto in = open_in(path);
    return read_family(in);
}

DualInstance bind_instance_from(const std::string& family_path, const std::string& poly) {
    auto fam = load_family(family_path);
    const auto r = fam.params.r;
    return bind_instance(std::move(fam), SparsePoly(PolyFr::parse(r, poly)));
}

LdcInstance make_ldc_from(const std::string& family_path, const std::string& poly) {
    return LdcInstance{bind_instance_from(family_path, poly)};
}

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument("malformed integer list: " + text);
    }
    return out;
}

// Writes to `path`, or to stdout when path is empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    body(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matching-vector dual functions, hypercube certificates and LDC experiments"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    std::function<int()> run;

    std::uint32_t r = 2;
    std::uint64_t p = 7, pmin = 2, pmax = 40, m = 7, seed = 0, trials = 10000, budget = 0;
    std::string family_path, poly_text, out_path, message_path, codeword_path, x_text, shifts_text = "0,1";
    bool exhaustive = false;
    double c = 1.0, eps = 0.25, M = 1.0, K = kDefaultKhintchine, delta = 0.05;
    std::uint64_t k = 128, m_min = 7, m_max = 60, samples = 256, kmax = 3, index = 0, n_dim = 1;

    auto* scan = app.add_subcommand("scan-primes", "Sparse irreducible factors of Phi_p with support <= t");
    scan->add_option("--r", r, "base field characteristic");
    scan->add_option("--min", pmin, "smallest prime");
    scan->add_option("--max", pmax, "largest prime");
    scan->callback([&] {
        run = [&] {
            std::cout << header(app) << '\n' << "# p t k support coeffs\n";
            for (const auto& s : prime_scan(pmin, pmax, r))
                std::cout << s.p << ' ' << s.t << ' ' << s.k() << ' ' << join(s.poly.support()) << ' '
                          << join(s.poly.coeffs()) << '\n';
            return kOk;
        };
    });

    auto* factor = app.add_subcommand("factor-cyclotomic", "Factor Phi_p over F_r by cyclotomic cosets");
    factor->add_option("--p", p)->required();
    factor->add_option("--r", r);
    factor->callback([&] {
        run = [&] {
            const auto fac = factor_cyclotomic(p, r);
            std::cout << header(app) << '\n';
            std::cout << "t " << fac.t << "\nfactors " << fac.factors.size() << "\nzeta " << fac.zeta.code << '\n';
            std::cout << "# coset : coefficients (low to high) : polynomial\n";
            for (std::size_t i = 0; i < fac.factors.size(); ++i)
                std::cout << join(fac.cosets[i], ' ') << " : " << fac.factors[i].to_string() << " : "
                          << fac.factors[i].pretty() << '\n';
            auto sorted = fac.factors;
            std::sort(sorted.begin(), sorted.end(), [](const PolyFr& a, const PolyFr& b) { return a.packed() < b.packed(); });
            const bool agree = sorted == factor_cyclotomic_by_coset_sums(p, r);
            std::cout << "coset-sum route " << (agree ? "AGREES" : "DISAGREES") << '\n';
            return agree ? kOk : kVerificationFailure;
        };
    });

    auto* build = app.add_subcommand("build-family", "Build the matching-vector family and write it");
    build->add_option("--p", p)->required();
    build->add_option("--m", m)->required();
    build->add_option("--r", r);
    build->add_option("--out", out_path, "output file (stdout if omitted)");
    build->callback([&] {
        run = [&] {
            const auto fam = build_family(derive_params(p, r, m));
            const auto report = verify_inner_products(fam);
            emit(out_path, [&](std::ostream& os) {
                os << header(app) << '\n';
                write_family(os, fam);
            });
            if (!out_path.empty()) {
                std::cout << header(app) << '\n';
                std::cout << "k " << fam.params.k << "\nn " << fam.params.n << "\ngamma " << fam.gamma.code << '\n';
                std::cout << "inner products " << (report.pass ? "PASS" : "FAIL") << '\n';
            }
            return report.pass ? kOk : kVerificationFailure;
        };
    });

    auto* certify = app.add_subcommand("certify-cube", "Certify phi_a(d_i) = z^{a_i} over the hypercube");
    certify->add_option("--family", family_path)->required();
    certify->add_option("--poly", poly_text, "coefficients low to high")->required();
    certify->add_flag("--exhaustive", exhaustive, "all 2^k selection vectors");
    certify->add_option("--samples", samples, "sampled selection vectors when not exhaustive");
    certify->add_option("--seed", seed);
    certify->add_option("--out", out_path, "certificate file");
    certify->callback([&] {
        run = [&] {
            const auto inst = bind_instance_from(family_path, poly_text);
            CertifyOptions opts;
            opts.samples = samples;
            opts.seed = seed;
            if (exhaustive) {
                if (inst.k() > 24) throw BudgetError("exhaustive certification with k > 24");
                opts.exhaustive_max_k = inst.k();
            }
            const auto res = certify_hypercube(inst, opts);
            std::cout << header(app) << '\n';
            std::cout << "k " << inst.k() << "\nD " << res.certificate.d.rows() << "\nbeta " << inst.beta.code
                      << "\nz " << inst.z.to_string() << "\nchecked " << res.certificate.checked.size()
                      << "\nmode " << (res.certificate.exhaustive ? "exhaustive" : "sampled") << '\n';
            if (!out_path.empty())
                emit(out_path, [&](std::ostream& os) {
                    os << header(app) << '\n' << "# a i value\n";
                    write_certificate(os, res.certificate);
                });
            if (!res.passed()) {
                const auto& f = *res.failure;
                std::cout << "failure a=" << bitstring(f.a) << " i=" << f.i << " got " << f.got.to_string()
                          << " expected " << f.expected.to_string() << "\nstatus FAIL\n";
                return kVerificationFailure;
            }
            std::cout << "status PASS\n";
            return kOk;
        };
    });

    auto* entropy = app.add_subcommand("entropy-report", "Certified covering-number lower bound");
    entropy->add_option("--c", c);
    entropy->add_option("--eps", eps);
    entropy->add_option("--M", M);
    entropy->add_option("--k", k);
    entropy->add_option("--K", K, "Khintchine constant")->default_str(num(kDefaultKhintchine));
    entropy->callback([&] {
        run = [&] {
            const auto rep = certified_entropy_lower(c, eps, M, k, K);
            std::cout << header(app) << '\n';
            for (const auto& line : rep.trace) std::cout << "# " << line << '\n';
            std::cout << "lower_bound_log2 " << num(rep.lower_bound_log2) << '\n';
            return kOk;
        };
    });

    auto* cross = app.add_subcommand("crossover", "Compare cube-side and phase-count bounds over m");
    cross->add_option("--p", p);
    cross->add_option("--r", r);
    cross->add_option("--m-min", m_min);
    cross->add_option("--m-max", m_max);
    cross->add_option("--eps", eps);
    cross->add_option("--M", M);
    cross->add_option("--K", K)->default_str(num(kDefaultKhintchine));
    cross->callback([&] {
        run = [&] {
            const auto seed_poly = sparse_factor_search(p, r);
            if (!seed_poly) throw std::invalid_argument("no sparse factor of Phi_p with support <= t");
            const auto rep = contradiction_scan(*seed_poly, eps, M, K, m_min, m_max);
            std::cout << header(app) << '\n';
            std::cout << "# seed t=" << rep.t << " k=" << rep.support << " P=" << seed_poly->poly.to_string() << '\n';
            std::cout << "# m B_cube B_phase\n";
            for (const auto& row : rep.rows) std::cout << row.m << ' ' << num(row.b_cube) << ' ' << num(row.b_phase) << '\n';
            std::cout << "crossover " << (rep.crossover ? std::to_string(*rep.crossover) : "none") << '\n';
            if (rep.cube_exponent)
                std::cout << "exponents cube " << num(*rep.cube_exponent) << " phase " << num(*rep.phase_exponent) << '\n';
            return kOk;
        };
    });

    auto* ldc = app.add_subcommand("ldc", "Locally decodable code experiments");
    ldc->require_subcommand(1);
    auto add_instance_opts = [&](CLI::App* sub) {
        sub->add_option("--family", family_path)->required();
        sub->add_option("--poly", poly_text)->required();
    };
    auto load_message = [&](const LdcInstance& inst) {
        if (message_path.empty()) return random_message(inst, seed);
        auto in = open_in(message_path);
        auto msg = read_symbols(in, inst.field());
        if (msg.size() != inst.k()) throw ParseError("message file must hold k = " + std::to_string(inst.k()) + " symbols");
        return msg;
    };

    auto* encode = ldc->add_subcommand("encode", "Materialize a tiny codeword");
    add_instance_opts(encode);
    encode->add_option("--message", message_path, "message file (random from --seed if omitted)");
    encode->add_option("--seed", seed);
    encode->add_option("--out", out_path);
    encode->callback([&] {
        run = [&] {
            const auto inst = make_ldc_from(family_path, poly_text);
            const auto msg = load_message(inst);
            const auto table = encode_full(inst, msg);
            emit(out_path, [&](std::ostream& os) {
                os << header(app) << '\n' << "# N = " << inst.length_string() << ", message " << join([&] {
                    std::vector<std::uint64_t> codes;
                    for (auto a : msg) codes.push_back(a.code);
                    return codes;
                }()) << '\n';
                write_symbols(os, table);
            });
            return kOk;
        };
    });

    auto* decode = ldc->add_subcommand("decode", "Decode one message symbol from a codeword file");
    add_instance_opts(decode);
    decode->add_option("--codeword", codeword_path)->required();
    decode->add_option("--index", index)->required();
    decode->add_option("--x", x_text, "decoder position (random from --seed if omitted)");
    decode->add_option("--seed", seed);
    decode->add_option("--message", message_path, "message file to compare against");
    decode->callback([&] {
        run = [&] {
            const auto inst = make_ldc_from(family_path, poly_text);
            auto in = open_in(codeword_path);
            const auto table = read_symbols(in, inst.field());
            const BigCount& n = inst.family().params.n;
            if (n >= 64 || BigCount(table.size()) != boost::multiprecision::pow(BigCount(inst.family().params.p), n.convert_to<unsigned>())) throw ParseError("codeword file must hold N = " + inst.length_string() + " symbols");
            const bool known = !message_path.empty();
            const Message msg = known ? load_message(inst) : Message(inst.k(), inst.field().zero());
            const auto p_int = static_cast<std::int64_t>(inst.family().params.p);
            auto ch = Channel::adversarial(inst, msg, [&](const FpVec& pos, ExtElem) { return table[position_index(pos, p_int)]; });
            FpVec x;
            if (x_text.empty()) {
                std::mt19937_64 rng(seed);
                x = random_position(inst, rng);
            } else {
                const auto v = parse_list(x_text);
                x = FpVec::Map(v.data(), static_cast<Eigen::Index>(v.size()));
            }
            if (x.size() != inst.family().w.cols()) throw std::invalid_argument("--x must have n entries");
            const auto res = local_decode(inst, index, ch, reduce(x, p_int));
            std::cout << header(app) << '\n';
            std::cout << "index " << res.index << "\nrecovered " << res.recovered.code << "\nqueries";
            for (const auto& q : res.queried) std::cout << ' ' << position_index(q, p_int);
            std::cout << '\n';
            if (known) {
                std::cout << "expected " << msg[index].code << "\nstatus " << (res.success ? "PASS" : "FAIL") << '\n';
                return res.success ? kOk : kVerificationFailure;
            }
            return kOk;
        };
    });

    auto* bench = ldc->add_subcommand("bench", "Decoding success rate under iid corruption");
    add_instance_opts(bench);
    bench->add_option("--delta", delta);
    bench->add_option("--trials", trials);
    bench->add_option("--seed", seed);
    bench->add_option("--message", message_path);
    bench->callback([&] {
        run = [&] {
            const auto inst = make_ldc_from(family_path, poly_text);
            const auto rep = benchmark(inst, load_message(inst), delta, trials, seed);
            std::cout << header(app) << '\n';
            std::cout << "q " << inst.q() << "\nN " << inst.length_string() << "\nsuccesses " << rep.successes
                      << "\nrate " << num(rep.rate) << "\nstderr " << num(rep.stderr_) << "\nfloor " << num(rep.floor)
                      << '\n';
            const bool ok = rep.rate >= rep.floor - 3 * rep.stderr_;
            std::cout << "status " << (ok ? "PASS" : "FAIL") << '\n';
            return ok ? kOk : kVerificationFailure;
        };
    });

    auto* ap = app.add_subcommand("ap-check", "Search for AP-supported factors with k <= t");
    ap->add_option("--p", p)->required();
    ap->add_option("--r", r);
    ap->add_option("--kmax", kmax);
    ap->add_option("--budget", budget, "candidate budget (0 = default)");
    ap->callback([&] {
        run = [&] {
            const auto rep = ap_obstruction_search(p, r, kmax, budget ? budget : kDefaultApBudget);
            std::cout << header(app) << '\n';
            std::cout << "# t " << rep.t << " candidates " << rep.candidates << " hits " << rep.hits.size() << '\n';
            if (rep.violations.empty()) {
                std::cout << "NONE\n";
                return kOk;
            }
            for (const auto& v : rep.violations)
                std::cout << "s " << v.s << " k " << v.k << " coeffs " << join(v.coeffs) << " P " << v.poly.to_string() << '\n';
            return kVerificationFailure;
        };
    });

    auto* fourier = app.add_subcommand("fourier-demo", "Order-2 Fourier decomposition of random dual functions");
    fourier->add_option("--p", p);
    fourier->add_option("--n", n_dim);
    fourier->add_option("--shifts", shifts_text, "i_1,i_2");
    fourier->add_option("--trials", trials);
    fourier->add_option("--seed", seed);
    fourier->callback([&] {
        run = [&] {
            const auto shifts = parse_list(shifts_text);
            if (shifts.size() != 2) throw std::invalid_argument("--shifts needs two entries");
            std::uint64_t size = 1;
            for (std::uint64_t i = 0; i < n_dim; ++i) size *= p;
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            auto draw = [&] {
                GroupTable t(static_cast<Eigen::Index>(size));
                for (auto& v : t) v = std::polar(unit(rng), 6.283185307179586 * unit(rng));
                return t;
            };
            double l1 = 0, dil = 0, off = 0, rec = 0;
            bool ok = true;
            for (std::uint64_t t = 0; t < trials; ++t) {
                const auto f1 = draw();
                const auto f2 = draw();
                const auto d = fourier_decompose_order2(static_cast<std::int64_t>(p), static_cast<Eigen::Index>(n_dim), shifts, f1, f2);
                l1 = std::max(l1, d.l1);
                dil = std::max(dil, d.dilation_error);
                off = std::max(off, d.off_support_max);
                rec = std::max(rec, d.reconstruction_error);
                ok = ok && d.l1_ok && d.support_ok && d.reconstruction_ok;
            }
            std::cout << header(app) << '\n';
            std::cout << "max_l1 " << num(l1) << "\nmax_dilation_error " << num(dil) << "\nmax_off_support " << num(off)
                      << "\nmax_reconstruction_error " << num(rec) << "\nstatus " << (ok ? "PASS" : "FAIL") << '\n';
            return ok ? kOk : kVerificationFailure;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }
    try {
        return run();
    } catch (const InternalError& e) {
        std::cerr << "error: internal check failed: " << e.what() << '\n';
        return kVerificationFailure;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
}
