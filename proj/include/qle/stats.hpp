// Running moments, ensemble results and reproducible random streams

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace qle {

struct Estimate {
    double mean{0.0};
    double std_error{0.0};
    std::size_t count{0};
};

// |a − b| in units of the combined standard error.
double combined_sigmas(const Estimate& a, const Estimate& b);
double sigmas_from(const Estimate& a, double exact);

// Welford accumulator with Chan's pairwise merge.
class RunningStats {
public:
    void add(double x) noexcept;
    void merge(const RunningStats& other) noexcept;

    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept;  // unbiased
    double std_error() const noexcept;
    Estimate estimate() const noexcept { return {mean_, std_error(), n_}; }

private:
    std::size_t n_{0};
    double mean_{0.0};
    double m2_{0.0};
};

struct RngProvenance {
    std::string engine{"mt19937_64"};
    std::uint64_t seed{0};
    std::string stream_rule{"splitmix64(seed, trajectory index)"};
};

struct EnsembleResult {
    std::vector<std::pair<std::string, Estimate>> moments;
    RngProvenance rng;
    std::size_t trajectories{0};
    std::size_t samples_per_trajectory{0};
    double dt{0.0};
    double sample_interval{0.0};

    // Throws std::out_of_range for an unknown name.
    const Estimate& at(std::string_view name) const;
};

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Independent engine for stream `index` of a run seeded with `seed`.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index);

} // namespace rng

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Calls body(i) for i in [0, n), split into contiguous chunks over `threads`
// workers. Bodies write to per-index slots, so results do not depend on the split.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace detail
} // namespace qle
