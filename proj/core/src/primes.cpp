#include "mfunc/primes.hpp"

#include <algorithm>
#include <cmath>

#include "mfunc/types.hpp"

namespace mfunc {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t m = i * i; m <= limit; m += i) composite[m] = true;
    }
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.push_back(i);
    return out;
}

std::vector<std::uint64_t> first_primes(std::size_t n) {
    if (n == 0) return {};
    // p_n < n (ln n + ln ln n) for n >= 6; small n handled by the floor.
    double nn = static_cast<double>(n);
    std::uint64_t bound = 15;
    if (n >= 6) bound = static_cast<std::uint64_t>(nn * (std::log(nn) + std::log(std::log(nn)))) + 2;
    auto ps = primes_up_to(bound);
    while (ps.size() < n) {
        bound = bound * 2;
        ps = primes_up_to(bound);
    }
    ps.resize(n);
    return ps;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes, std::optional<std::uint64_t> excluded)
    : primes_(std::move(primes)), excluded_(excluded) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw validation_error("PrimeSet: " + std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw validation_error("PrimeSet: entries must be strictly increasing");
        if (excluded_ && primes_[i] == *excluded_)
            throw validation_error("PrimeSet: contains the excluded prime " + std::to_string(*excluded_));
    }
    if (excluded_ && !is_prime(*excluded_))
        throw validation_error("PrimeSet: excluded value " + std::to_string(*excluded_) + " is not prime");
}

PrimeSet PrimeSet::first_n(std::size_t n, std::optional<std::uint64_t> excluded) {
    if (!excluded) return PrimeSet(first_primes(n));
    // keep the first n primes distinct from q
    auto ps = first_primes(n + 1);
    std::erase(ps, *excluded);
    ps.resize(std::min(ps.size(), n));
    return PrimeSet(std::move(ps), excluded);
}

PrimeSet PrimeSet::up_to(std::uint64_t y, std::optional<std::uint64_t> excluded) {
    auto ps = primes_up_to(y);
    if (excluded) std::erase(ps, *excluded);
    return PrimeSet(std::move(ps), excluded);
}

bool PrimeSet::contains(std::uint64_t p) const noexcept {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::size_t PrimeSet::count_greater_than(std::uint64_t p0) const noexcept {
    return primes_.end() - std::upper_bound(primes_.begin(), primes_.end(), p0);
}

PrimeSet PrimeSet::without(const PrimeSet& other) const {
    std::vector<std::uint64_t> diff;
    std::set_difference(primes_.begin(), primes_.end(),
                        other.primes().begin(), other.primes().end(),
                        std::back_inserter(diff));
    return PrimeSet(std::move(diff), excluded_);
}

}  // namespace mfunc
