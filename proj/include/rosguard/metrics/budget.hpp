#ifndef ROSGUARD_METRICS_BUDGET_HPP
#define ROSGUARD_METRICS_BUDGET_HPP

#include <cstdint>
#include <string_view>

#include "rosguard/common.hpp"

namespace rosguard::metrics {

enum class RegulationPolicy { IntervalBased, Monolithic };
enum class SamplingScheme { SelfSampling, ExternalSampling };

std::string_view to_string(RegulationPolicy p);
std::string_view to_string(SamplingScheme s);

struct RegulationConfig {
    TimeUs sampling_period_us = 1000;
    TimeUs regulation_period_us = 5000;
    double threshold_ratio = 0.3;
    // Total reference volume over the RT execution window, in MB. A
    // calibration input; never measured inside the simulation.
    double reference_total_mb = 1313.587;
    RegulationPolicy policy = RegulationPolicy::IntervalBased;
    SamplingScheme scheme = SamplingScheme::SelfSampling;

    void validate() const;
};

Bytes mb_to_bytes(double mb);
double bytes_to_mb(Bytes bytes);

/// Budget for one regulation interval, in MB. Interval-based budgets are the
/// monolithic budget scaled by regulation_period / rt_window.
double interval_budget_mb(const RegulationConfig &cfg, TimeUs rt_window_us);
Bytes interval_budget_bytes(const RegulationConfig &cfg, TimeUs rt_window_us);

/// Per-interval accumulated consumption against a fixed budget.
struct BudgetLedger {
    Bytes interval_budget = 0;
    Bytes consumed = 0;
    std::int64_t interval_index = 0;
    bool exceeded = false;

    double interval_budget_mb() const { return bytes_to_mb(interval_budget); }
    double consumed_mb() const { return bytes_to_mb(consumed); }

    friend bool operator==(const BudgetLedger &, const BudgetLedger &) = default;
};

struct ConsumeResult {
    BudgetLedger ledger;
    // True only on the call that first pushes consumption above the budget
    // within the current interval.
    bool exceeded_now = false;
};

ConsumeResult ledger_consume(BudgetLedger ledger, Bytes sample);
BudgetLedger ledger_replenish(BudgetLedger ledger);

} // namespace rosguard::metrics

#endif // ROSGUARD_METRICS_BUDGET_HPP
