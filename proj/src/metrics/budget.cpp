#include "rosguard/metrics/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace rosguard::metrics {

std::string_view to_string(RegulationPolicy p)
{
    return p == RegulationPolicy::IntervalBased ? "interval" : "monolithic";
}

std::string_view to_string(SamplingScheme s)
{
    return s == SamplingScheme::SelfSampling ? "self" : "external";
}

void RegulationConfig::validate() const
{
    if (sampling_period_us <= 0)
        throw std::invalid_argument("sampling_us must be > 0");
    if (regulation_period_us <= 0)
        throw std::invalid_argument("regulation_us must be > 0");
    if (sampling_period_us > regulation_period_us)
        throw std::invalid_argument("sampling_us must be <= regulation_us");
    if (!(threshold_ratio > 0.0 && threshold_ratio <= 1.0))
        throw std::invalid_argument("threshold_ratio must be in (0,1]");
    if (!(reference_total_mb > 0.0) || !std::isfinite(reference_total_mb))
        throw std::invalid_argument("reference_total_mb must be > 0");
}

Bytes mb_to_bytes(double mb)
{
    return static_cast<Bytes>(std::llround(mb * static_cast<double>(kBytesPerMb)));
}

double bytes_to_mb(Bytes bytes)
{
    return static_cast<double>(bytes) / static_cast<double>(kBytesPerMb);
}

double interval_budget_mb(const RegulationConfig &cfg, TimeUs rt_window_us)
{
    if (rt_window_us <= 0)
        throw std::invalid_argument("rt_window_us must be > 0");
    const double whole = cfg.threshold_ratio * cfg.reference_total_mb;
    if (cfg.policy == RegulationPolicy::Monolithic)
        return whole;
    return whole * (static_cast<double>(cfg.regulation_period_us) / static_cast<double>(rt_window_us));
}

Bytes interval_budget_bytes(const RegulationConfig &cfg, TimeUs rt_window_us)
{
    return mb_to_bytes(interval_budget_mb(cfg, rt_window_us));
}

ConsumeResult ledger_consume(BudgetLedger ledger, Bytes sample)
{
    if (sample < 0)
        throw std::invalid_argument("sample bytes must be >= 0");
    ledger.consumed += sample;
    const bool over = ledger.consumed > ledger.interval_budget;
    const bool first = over && !ledger.exceeded;
    ledger.exceeded = ledger.exceeded || over;
    return {ledger, first};
}

BudgetLedger ledger_replenish(BudgetLedger ledger)
{
    ledger.consumed = 0;
    ledger.exceeded = false;
    ++ledger.interval_index;
    return ledger;
}

} // namespace rosguard::metrics
