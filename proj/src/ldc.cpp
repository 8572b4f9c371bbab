#include "dualcube/ldc.hpp"

#include "dualcube/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace dualcube {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::int64_t prime(const LdcInstance& inst) { return static_cast<std::int64_t>(inst.family().params.p); }

std::optional<std::uint64_t> length_within(const LdcInstance& inst, std::uint64_t budget) {
    const BigCount& n = inst.family().params.n;
    BigCount total = 1;
    for (BigCount i = 0; i < n; ++i) {
        total *= inst.family().params.p;
        if (total > budget) return std::nullopt;
    }
    return total.convert_to<std::uint64_t>();
}

void check_message(const LdcInstance& inst, const Message& message) {
    if (message.size() != inst.k()) throw std::invalid_argument("message length must equal k");
    for (ExtElem a : message)
        if (a.code >= inst.field().size()) throw std::invalid_argument("message symbol outside F_{r^t}");
}

} // namespace

std::string LdcInstance::length_string() const {
    return std::to_string(family().params.p) + "^" + family().params.n.str();
}

LdcInstance make_ldc(MVFamily family, const SparsePoly& poly) { return LdcInstance{bind_instance(std::move(family), poly)}; }

Message random_message(const LdcInstance& inst, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Message m(inst.k());
    for (auto& a : m) a = inst.field().from_code(rng() % inst.field().size());
    return m;
}

ExtElem encode_symbol(const LdcInstance& inst, const Message& message, const FpVec& x) {
    check_message(inst, message);
    if (x.size() != inst.family().w.cols()) throw std::invalid_argument("position has the wrong dimension");
    const ExtField& f = inst.field();
    ExtElem c = f.zero();
    for (std::size_t j = 0; j < message.size(); ++j)
        if (message[j] != f.zero()) c = f.add(c, f.mul(message[j], f_eval(inst.family(), j, x)));
    return c;
}

Channel::Channel(const LdcInstance& inst, Message message, Mode mode, std::uint64_t budget)
    : inst_(&inst), message_(std::move(message)), mode_(mode), budget_(budget) {
    check_message(inst, message_);
}

Channel Channel::exact(const LdcInstance& inst, Message message, std::uint64_t budget) {
    return Channel(inst, std::move(message), Mode::exact, budget);
}

Channel Channel::iid(const LdcInstance& inst, Message message, double delta, std::uint64_t seed, std::uint64_t budget) {
    if (!(delta >= 0.0) || !(delta < 1.0)) throw std::invalid_argument("delta must lie in [0, 1)");
    Channel ch(inst, std::move(message), Mode::iid, budget);
    ch.delta_ = delta;
    ch.seed_ = seed;
    return ch;
}

Channel Channel::adversarial(const LdcInstance& inst, Message message, Callback callback, std::uint64_t budget) {
    if (!callback) throw std::invalid_argument("adversarial channel needs a callback");
    Channel ch(inst, std::move(message), Mode::adversarial, budget);
    ch.callback_ = std::move(callback);
    return ch;
}

std::uint64_t Channel::key(const FpVec& position) const {
    std::uint64_t h = splitmix64(seed_);
    for (Eigen::Index j = 0; j < position.size(); ++j) h = splitmix64(h ^ static_cast<std::uint64_t>(mod(position(j), prime(*inst_))));
    return h;
}

bool Channel::corrupts(const FpVec& position) const {
    if (mode_ != Mode::iid || delta_ == 0.0) return false;
    const double u = static_cast<double>(key(position) >> 11) * 0x1.0p-53;
    return u < delta_;
}

ExtElem Channel::query(const FpVec& position) {
    if (queries_ >= budget_) throw BudgetError("channel query budget " + std::to_string(budget_) + " exhausted");
    ++queries_;
    const ExtElem truth = encode_symbol(*inst_, message_, position);
    switch (mode_) {
    case Mode::exact:
        return truth;
    case Mode::adversarial:
        return callback_(position, truth);
    case Mode::iid:
        break;
    }
    if (!corrupts(position)) return truth;
    const std::uint64_t pick = splitmix64(key(position) ^ 0xD1B54A32D192ED03ULL) % (inst_->field().size() - 1);
    return inst_->field().from_code(pick < truth.code ? pick : pick + 1);
}

FpVec random_position(const LdcInstance& inst, std::mt19937_64& rng) {
    FpVec x(inst.family().w.cols());
    for (auto& e : x) e = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(prime(inst)));
    return x;
}

DecoderResult local_decode(const LdcInstance& inst, std::size_t i, Channel& channel, const FpVec& x) {
    if (i >= inst.k()) throw std::invalid_argument("decode index out of range");
    const ExtField& f = inst.field();
    const SparsePoly& poly = inst.poly();
    const ExtElem p1 = f.from_base(poly.at_one());
    if (p1 == f.zero()) throw std::invalid_argument("P(1) = 0: instance cannot decode");
    const std::int64_t p = prime(inst);
    const FpVec di = inst.family().d.row(static_cast<Eigen::Index>(i)).transpose();

    DecoderResult res;
    res.index = i;
    ExtElem sum = f.zero();
    for (std::size_t idx = 0; idx < poly.k(); ++idx) {
        const auto iota = static_cast<std::int64_t>(poly.support()[idx] % static_cast<std::uint64_t>(p));
        FpVec pos = reduce(FpVec(x + iota * di), p);
        sum = f.add(sum, f.scale(poly.coeffs()[idx], channel.query(pos)));
        res.queried.push_back(std::move(pos));
    }
    res.recovered = f.mul(sum, f.inv(f.mul(f_eval(inst.family(), i, x), p1)));
    res.success = res.recovered == channel.message()[i];
    return res;
}

DecoderResult local_decode(const LdcInstance& inst, std::size_t i, Channel& channel, std::mt19937_64& rng) {
    return local_decode(inst, i, channel, random_position(inst, rng));
}

SmoothnessReport smoothness_check(const LdcInstance& inst, std::size_t i, std::uint64_t trials, std::uint64_t seed) {
    if (i >= inst.k()) throw std::invalid_argument("index out of range");
    const std::int64_t p = prime(inst);
    const Eigen::Index n = inst.family().w.cols();
    const FpVec di = inst.family().d.row(static_cast<Eigen::Index>(i)).transpose();
    SmoothnessReport rep;
    if (const auto size = length_within(inst, kDefaultEncodeBudget)) {
        rep.exhaustive = true;
        rep.samples = *size;
        for (std::uint64_t iota : inst.poly().support()) {
            std::vector<std::uint64_t> hits(*size, 0);
            for (std::uint64_t idx = 0; idx < *size; ++idx) {
                const FpVec x = position_vector(idx, p, n);
                ++hits[position_index(x + static_cast<std::int64_t>(iota % inst.family().params.p) * di, p)];
            }
            for (auto h : hits) rep.max_deviation = std::max(rep.max_deviation, std::abs(static_cast<double>(h) - 1.0));
        }
        rep.uniform = rep.max_deviation == 0.0;
        return rep;
    }
    if (trials == 0) throw std::invalid_argument("statistical smoothness check needs trials");
    rep.samples = trials;
    std::mt19937_64 rng(seed);
    const auto support = inst.poly().support();
    // counts[(s * n + coord) * p + value]
    std::vector<std::uint64_t> counts(support.size() * static_cast<std::size_t>(n) * static_cast<std::size_t>(p), 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const FpVec x = random_position(inst, rng);
        for (std::size_t s = 0; s < support.size(); ++s) {
            const FpVec pos = reduce(FpVec(x + static_cast<std::int64_t>(support[s] % inst.family().params.p) * di), p);
            for (Eigen::Index c = 0; c < n; ++c) ++counts[(s * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)) * static_cast<std::size_t>(p) + static_cast<std::size_t>(pos(c))];
        }
    }
    const double prob = 1.0 / static_cast<double>(p);
    const double mean = static_cast<double>(trials) * prob;
    const double sigma = std::sqrt(static_cast<double>(trials) * prob * (1.0 - prob));
    for (auto cnt : counts) rep.max_deviation = std::max(rep.max_deviation, std::abs(static_cast<double>(cnt) - mean) / sigma);
    rep.uniform = rep.max_deviation <= 4.0;
    return rep;
}

BenchReport benchmark(const LdcInstance& inst, const Message& message, double delta, std::uint64_t trials,
                      std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("benchmark needs at least one trial");
    Channel channel = Channel::iid(inst, message, delta, seed);
    std::mt19937_64 rng(splitmix64(seed));
    BenchReport rep;
    rep.delta = delta;
    rep.trials = trials;
    rep.seed = seed;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t i = rng() % inst.k();
        if (local_decode(inst, i, channel, rng).success) ++rep.successes;
    }
    rep.rate = static_cast<double>(rep.successes) / static_cast<double>(trials);
    rep.stderr_ = std::sqrt(rep.rate * (1.0 - rep.rate) / static_cast<double>(trials));
    rep.floor = 1.0 - static_cast<double>(inst.q()) * delta;
    return rep;
}

std::vector<ExtElem> encode_full(const LdcInstance& inst, const Message& message, std::uint64_t budget) {
    const auto size = length_within(inst, budget);
    if (!size)
        throw BudgetError("codeword length N = " + inst.length_string() + " exceeds budget " + std::to_string(budget));
    const std::int64_t p = prime(inst);
    const Eigen::Index n = inst.family().w.cols();
    std::vector<ExtElem> out;
    out.reserve(*size);
    for (std::uint64_t idx = 0; idx < *size; ++idx) out.push_back(encode_symbol(inst, message, position_vector(idx, p, n)));
    return out;
}

} // namespace dualcube
