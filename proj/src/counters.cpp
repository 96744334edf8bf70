#include "kinfree/counters.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kinfree {

namespace {
int shard_index()
{
#ifdef _OPENMP
    return omp_get_thread_num() & 255;
#else
    return 0;
#endif
}
}  // namespace

void FluxEvalCounters::add(EvalKind k, std::uint64_t v)
{
    shards_[shard_index()].n[static_cast<int>(k)] += v;
}

EvalSnapshot FluxEvalCounters::snapshot() const
{
    EvalSnapshot s;
    for (const Shard& sh : shards_)
        for (int k = 0; k < kNumEvalKinds; ++k) s.n[k] += sh.n[k];
    return s;
}

void FluxEvalCounters::reset()
{
    for (Shard& sh : shards_) sh.n.fill(0);
}

FluxEvalCounters& flux_counters()
{
    static FluxEvalCounters c;
    return c;
}

}  // namespace kinfree
