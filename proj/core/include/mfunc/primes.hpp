#pragma once

#include <cstdint>
#include <vector>

namespace mfunc {

/// Sieve of Eratosthenes: all primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// The first n primes, ascending.
std::vector<std::uint64_t> first_primes(std::size_t n);

/// Deterministic primality test (trial division; desk-scale inputs).
bool is_prime(std::uint64_t n);

}  // namespace mfunc
