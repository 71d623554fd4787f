#include "rosguard/simkernel/scheduler.hpp"

#include <algorithm>

namespace rosguard::sim {

Step Step::fixed(TimeUs cost, std::function<void(Activation &)> on_begin)
{
    Step s;
    s.cost = cost;
    s.on_begin = std::move(on_begin);
    return s;
}

Step Step::run(workloads::WorkloadProgress &progress)
{
    Step s;
    s.workload = &progress;
    return s;
}

bool Activation::finished_step() const
{
    if (steps_.empty())
        return true;
    const Step &s = steps_.front();
    if (s.workload)
        return s.workload->done();
    return remaining_ == 0;
}

Activation *CoreScheduler::best_ready() const
{
    Activation *best = nullptr;
    for (Activation *a : ready_) {
        if (!best || a->priority() > best->priority() ||
            (a->priority() == best->priority() && a->ready_order() < best->ready_order()))
            best = a;
    }
    return best;
}

void CoreScheduler::remove_ready(Activation *a)
{
    ready_.erase(std::remove(ready_.begin(), ready_.end(), a), ready_.end());
}

} // namespace rosguard::sim
