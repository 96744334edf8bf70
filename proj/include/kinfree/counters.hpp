/** \file counters.hpp
 * \brief Flux-evaluation instrumentation. Counts are exact: every split/full
 *   flux evaluation, erf invocation and tangent-linear product is tallied.
 *
 * Hot loops run under OpenMP, so tallies go to per-thread shards and are
 * summed on read. Within a run the totals are monotonically nondecreasing.
 */
#ifndef KINFREE_COUNTERS_HPP
#define KINFREE_COUNTERS_HPP

#include <array>
#include <cstdint>

namespace kinfree {

enum class EvalKind : int {
    SplitFlux = 0,  ///< closed-form half-range flux evaluation (one erf each)
    FullFlux = 1,   ///< full flux evaluation
    Erf = 2,        ///< error-function invocation
    JvpSplit = 3,   ///< exact tangent-linear split-flux product (one erf each)
    JvpFull = 4,    ///< exact tangent-linear full-flux product
};
inline constexpr int kNumEvalKinds = 5;

struct EvalSnapshot {
    std::array<std::uint64_t, kNumEvalKinds> n{};

    std::uint64_t split_flux() const { return n[0]; }
    std::uint64_t full_flux() const { return n[1]; }
    std::uint64_t erf() const { return n[2]; }
    std::uint64_t jvp_split() const { return n[3]; }
    std::uint64_t jvp_full() const { return n[4]; }
    std::uint64_t jvp_total() const { return n[3] + n[4]; }

    EvalSnapshot operator-(const EvalSnapshot& o) const
    {
        EvalSnapshot d;
        for (int k = 0; k < kNumEvalKinds; ++k) d.n[k] = n[k] - o.n[k];
        return d;
    }
};

class FluxEvalCounters {
public:
    void add(EvalKind k, std::uint64_t v = 1);
    EvalSnapshot snapshot() const;
    void reset();

private:
    struct alignas(64) Shard {
        std::array<std::uint64_t, kNumEvalKinds> n{};
    };
    static constexpr int kShards = 256;
    std::array<Shard, kShards> shards_{};
};

/// Process-wide counter instance used by the kinetics and tangent modules.
FluxEvalCounters& flux_counters();

}  // namespace kinfree

#endif
