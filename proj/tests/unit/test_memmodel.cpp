#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rosguard/memmodel/memory_system.hpp"

using namespace rosguard;
using namespace rosguard::memmodel;

TEST_CASE("fair share examples")
{
    const std::vector<double> under{10000.0, 15000.0};
    CHECK(effective_rates(under, 30000.0) == under);

    const std::vector<double> over{26271.74, 26271.74};
    auto r = effective_rates(over, 30000.0);
    CHECK(r[0] == doctest::Approx(15000.0));
    CHECK(r[1] == doctest::Approx(15000.0));

    const std::vector<double> uneven{20000.0, 40000.0};
    r = effective_rates(uneven, 30000.0);
    CHECK(r[0] == doctest::Approx(10000.0));
    CHECK(r[1] == doctest::Approx(20000.0));

    const std::vector<double> none{0.0, 0.0};
    CHECK(effective_rates(none, 1.0) == none);
    CHECK_THROWS(effective_rates(none, 0.0));
    const std::vector<double> negative{-1.0};
    CHECK_THROWS(effective_rates(negative, 10.0));
}

TEST_CASE("fair share properties")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> n(1, 6);
    std::uniform_real_distribution<double> d(0.0, 30000.0), cap(100.0, 60000.0);
    for (int c = 0; c < 10000; ++c) {
        std::vector<double> dem(static_cast<std::size_t>(n(rng)));
        for (auto &x : dem)
            x = d(rng);
        const double capacity = cap(rng);
        const auto r = effective_rates(dem, capacity);
        const double sum_d = std::accumulate(dem.begin(), dem.end(), 0.0);
        const double sum_r = std::accumulate(r.begin(), r.end(), 0.0);
        CHECK(sum_r <= capacity * (1 + 1e-12));
        if (sum_d <= capacity)
            CHECK(r == dem);
        else
            CHECK(sum_r == doctest::Approx(capacity).epsilon(1e-9));
        for (std::size_t i = 0; i < dem.size(); ++i) {
            CHECK(r[i] <= dem[i] * (1 + 1e-12));
            CHECK(r[i] >= 0.0);
        }

        // Adding demand on another core never increases anyone's share.
        auto more = dem;
        more.push_back(d(rng));
        const auto r2 = effective_rates(more, capacity);
        for (std::size_t i = 0; i < dem.size(); ++i)
            CHECK(r2[i] <= r[i] * (1 + 1e-12));
    }
}

TEST_CASE("advance below saturation moves demand times time exactly")
{
    MemorySystem m(metrics::PlatformParams{}, 2);
    m.set_demand(0, mb_s_to_bps(1000.0));
    auto moved = m.advance(1000);
    CHECK(moved[0] == 1000 * kBytesPerMb / 1000);
    CHECK(moved[1] == 0);
    CHECK(m.now() == 1000);
    CHECK_FALSE(m.saturated());
}

TEST_CASE("bandwidth_read for one millisecond is 430436 cache lines")
{
    MemorySystem m(metrics::PlatformParams{}, 1);
    m.set_demand(0, mb_s_to_bps(26271.74));
    m.advance(1000);
    const auto d = m.read_counters(0, 0, 1000);
    CHECK(metrics::l3_accesses(d) == 430436);
    CHECK(d.cycles == 2'201'000);
    CHECK(metrics::bandwidth_mb_s(d, m.platform()).value == doctest::Approx(26271.74).epsilon(1e-5));
}

TEST_CASE("no core beats its demand and the total never beats capacity")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<RateBps> dem(0, mb_s_to_bps(40000.0));
    std::uniform_int_distribution<TimeUs> dt(1, 3000);
    std::uniform_int_distribution<int> cores(1, 4);
    for (int c = 0; c < 1000; ++c) {
        const int n = cores(rng);
        MemorySystem m(metrics::PlatformParams{}, n);
        Bytes total = 0;
        for (int step = 0; step < 10; ++step) {
            for (int k = 0; k < n; ++k)
                m.set_demand(k, dem(rng));
            const TimeUs t = dt(rng);
            const auto moved = m.advance(t);
            for (int k = 0; k < n; ++k) {
                CHECK(moved[static_cast<std::size_t>(k)] >= 0);
                // Nobody beats its own demand (plus carry of one byte).
                CHECK(static_cast<Int128>(moved[static_cast<std::size_t>(k)]) * kUsPerSecond <=
                      static_cast<Int128>(m.demand(k)) * t + kUsPerSecond);
            }
            const Bytes step_total = std::accumulate(moved.begin(), moved.end(), Bytes{0});
            CHECK(static_cast<Int128>(step_total) * kUsPerSecond <= static_cast<Int128>(m.capacity()) * t + kUsPerSecond);
            total += step_total;
        }
        Bytes counters = 0;
        for (int k = 0; k < n; ++k)
            counters += m.bytes(k);
        CHECK(counters == total);
    }
}

TEST_CASE("sustained saturation conserves the capacity volume")
{
    MemorySystem m(metrics::PlatformParams{}, 3);
    for (int k = 0; k < 3; ++k)
        m.set_demand(k, mb_s_to_bps(26271.74));
    Bytes total = 0;
    for (int i = 0; i < 777; ++i)
        for (Bytes b : m.advance(13))
            total += b;
    // 777 * 13 us at capacity; the global carry keeps the sum exact to a byte.
    const Int128 exact = static_cast<Int128>(m.capacity()) * 777 * 13;
    CHECK(static_cast<Int128>(total) * kUsPerSecond <= exact);
    CHECK(static_cast<Int128>(total + 1) * kUsPerSecond > exact);
}

TEST_CASE("interference is monotone in the co-runner's demand")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(0.0, 40000.0);
    for (int c = 0; c < 2000; ++c) {
        const double own = d(rng), lo = d(rng), hi = lo + d(rng);
        MemorySystem a(metrics::PlatformParams{}, 2), b(metrics::PlatformParams{}, 2);
        a.set_demand(0, mb_s_to_bps(own));
        b.set_demand(0, mb_s_to_bps(own));
        a.set_demand(1, mb_s_to_bps(lo));
        b.set_demand(1, mb_s_to_bps(hi));
        const Bytes ma = a.advance(5000)[0];
        const Bytes mb = b.advance(5000)[0];
        CHECK(mb <= ma + 1);
    }
}

TEST_CASE("counter reads are additive over adjacent windows")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<RateBps> dem(0, mb_s_to_bps(30000.0));
    std::uniform_int_distribution<TimeUs> dt(1, 700);
    MemorySystem m(metrics::PlatformParams{}, 2);
    for (int i = 0; i < 300; ++i) {
        m.set_demand(0, dem(rng));
        m.set_demand(1, dem(rng));
        m.advance(dt(rng));
    }
    std::uniform_int_distribution<TimeUs> any(0, m.now());
    for (int c = 0; c < 10000; ++c) {
        TimeUs t[3] = {any(rng), any(rng), any(rng)};
        std::sort(t, t + 3);
        if (t[0] == t[1] || t[1] == t[2])
            continue;
        const auto whole = metrics::l3_accesses(m.read_counters(0, t[0], t[2]));
        const auto left = metrics::l3_accesses(m.read_counters(0, t[0], t[1]));
        const auto right = metrics::l3_accesses(m.read_counters(0, t[1], t[2]));
        REQUIRE(whole == left + right);
        REQUIRE(left >= 0);
        REQUIRE(m.bytes_at(0, t[0]) <= m.bytes_at(0, t[1]));
    }
    CHECK(m.bytes_at(1, m.now()) == m.bytes(1));
}

TEST_CASE("write-back split and counter window errors")
{
    MemorySystem m(metrics::PlatformParams{}, 1);
    m.set_writeback_fraction(0.25);
    m.set_demand(0, mb_s_to_bps(1000.0));
    m.advance(1000);
    const auto d = m.read_counters(0, 0, 1000);
    CHECK(d.l2_writebacks == 4096);
    CHECK(d.l2_refills == 12288);
    CHECK_THROWS(m.read_counters(0, 0, 1001));
    CHECK_THROWS(m.read_counters(0, 500, 500));
    CHECK_THROWS(m.set_writeback_fraction(1.5));
    CHECK_THROWS(m.set_demand(1, 1));
    CHECK_THROWS(m.advance(-1));
}

TEST_CASE("time_to_move is the smallest sufficient step")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<RateBps> dem(1, mb_s_to_bps(30000.0));
    std::uniform_int_distribution<Bytes> amt(1, 50'000'000);
    for (int c = 0; c < 2000; ++c) {
        MemorySystem m(metrics::PlatformParams{}, 1);
        m.set_demand(0, dem(rng));
        const Bytes want = amt(rng);
        const TimeUs dt = m.time_to_move(0, want);
        if (dt > 1) {
            MemorySystem shorter(metrics::PlatformParams{}, 1);
            shorter.set_demand(0, m.demand(0));
            CHECK(shorter.advance(dt - 1)[0] < want);
        }
        CHECK(m.advance(dt)[0] >= want);
    }
    MemorySystem idle(metrics::PlatformParams{}, 1);
    CHECK(idle.time_to_move(0, 1) == kForever);
}
