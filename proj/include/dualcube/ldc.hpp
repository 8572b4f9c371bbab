#pragma once

#include "dualcube/dualfn.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dualcube {

/// Matching-vector LDC: message a in F_{r^t}^k, codeword C(x) = sum_j a_j gamma^{<x, w_j>}
/// over the implicit positions x in F_p^n; q = |support(P)| queries per decode.
struct LdcInstance {
    DualInstance dual;

    const ExtField& field() const { return dual.field(); }
    const MVFamily& family() const { return dual.family; }
    const SparsePoly& poly() const { return dual.poly; }
    std::size_t q() const { return dual.poly.k(); }
    std::size_t k() const { return dual.k(); }
    /// "p^n", the codeword length.
    std::string length_string() const;
};

using Message = std::vector<ExtElem>;

LdcInstance make_ldc(MVFamily family, const SparsePoly& poly);

Message random_message(const LdcInstance& inst, std::uint64_t seed);

/// C(x) = sum_j a_j gamma^{<x, w_j>}.
ExtElem encode_symbol(const LdcInstance& inst, const Message& message, const FpVec& x);

inline constexpr std::uint64_t kDefaultChannelBudget = std::uint64_t{1} << 40;

/// Oracle access to a possibly corrupted codeword. Holds a reference to the instance.
class Channel {
public:
    enum class Mode { exact, iid, adversarial };
    /// Returns the symbol served at `position` given the true symbol.
    using Callback = std::function<ExtElem(const FpVec& position, ExtElem truth)>;

    static Channel exact(const LdcInstance& inst, Message message, std::uint64_t budget = kDefaultChannelBudget);
    /// Corrupts each position independently with probability delta; the decision and the
    /// replacement (uniform over symbols other than the truth) depend only on (seed, position).
    static Channel iid(const LdcInstance& inst, Message message, double delta, std::uint64_t seed,
                       std::uint64_t budget = kDefaultChannelBudget);
    static Channel adversarial(const LdcInstance& inst, Message message, Callback callback,
                               std::uint64_t budget = kDefaultChannelBudget);

    /// Throws BudgetError once more than `budget` queries have been made.
    ExtElem query(const FpVec& position);
    bool corrupts(const FpVec& position) const;
    std::uint64_t queries() const { return queries_; }
    Mode mode() const { return mode_; }
    const Message& message() const { return message_; }

private:
    Channel(const LdcInstance& inst, Message message, Mode mode, std::uint64_t budget);
    std::uint64_t key(const FpVec& position) const;

    const LdcInstance* inst_;
    Message message_;
    Mode mode_;
    double delta_ = 0.0;
    std::uint64_t seed_ = 0;
    Callback callback_;
    std::uint64_t budget_;
    std::uint64_t queries_ = 0;
};

struct DecoderResult {
    std::size_t index = 0;
    ExtElem recovered;
    std::vector<FpVec> queried;
    bool success = false;  ///< recovered == message[index]
};

/// Queries x + iota d_i for iota in support(P) and returns
/// (sum_iota c_iota y_iota) / (gamma^{<x, w_i>} P(1)).
DecoderResult local_decode(const LdcInstance& inst, std::size_t i, Channel& channel, const FpVec& x);
DecoderResult local_decode(const LdcInstance& inst, std::size_t i, Channel& channel, std::mt19937_64& rng);

FpVec random_position(const LdcInstance& inst, std::mt19937_64& rng);

struct SmoothnessReport {
    bool exhaustive = false;
    std::uint64_t samples = 0;
    /// exhaustive: max over iota of |count - 1| over all positions;
    /// statistical: max |z-score| over every (iota, coordinate, value) frequency.
    double max_deviation = 0.0;
    bool uniform = false;
};

inline constexpr std::uint64_t kDefaultEncodeBudget = 1'000'000;

/// Each query position x + iota d_i is uniform for uniform x. Exhaustive when
/// p^n <= kDefaultEncodeBudget, otherwise coordinate frequencies within 4 sigma over `trials` samples.
SmoothnessReport smoothness_check(const LdcInstance& inst, std::size_t i, std::uint64_t trials, std::uint64_t seed);

struct BenchReport {
    double delta = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t successes = 0;
    double rate = 0.0;
    double stderr_ = 0.0;
    double floor = 0.0;  ///< 1 - q delta
};

/// Decodes a uniform index at a fresh uniform x per trial through iid(delta, seed).
BenchReport benchmark(const LdcInstance& inst, const Message& message, double delta, std::uint64_t trials,
                      std::uint64_t seed);

/// All p^n symbols in base-p position order (x_0 least significant).
std::vector<ExtElem> encode_full(const LdcInstance& inst, const Message& message,
                                 std::uint64_t budget = kDefaultEncodeBudget);

} // namespace dualcube
