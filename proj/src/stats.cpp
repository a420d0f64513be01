#include "qle/stats.hpp"

#include <limits>
#include <stdexcept>

namespace qle {

double combined_sigmas(const Estimate& a, const Estimate& b) {
    const double se = std::hypot(a.std_error, b.std_error);
    const double diff = std::abs(a.mean - b.mean);
    if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / se;
}

double sigmas_from(const Estimate& a, double exact) { return combined_sigmas(a, Estimate{exact, 0.0, 0}); }

void RunningStats::add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    n_ += other.n_;
}

double RunningStats::variance() const noexcept {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStats::std_error() const noexcept {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

const Estimate& EnsembleResult::at(std::string_view name) const {
    for (const auto& [key, value] : moments) {
        if (key == name) return value;
    }
    throw std::out_of_range("EnsembleResult: no moment named " + std::string(name));
}

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)), static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                      static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index))),
                      static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index)) >> 32)};
    return std::mt19937_64(seq);
}

} // namespace rng
} // namespace qle
