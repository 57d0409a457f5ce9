#pragma once

#include <cstdint>
#include <vector>

namespace equidist {

bool is_prime(long long n);
std::vector<long long> primes_upto(long long n);
// Largest s with 2^s <= n; n must be >= 1.
int floor_log2(long long n);

}  // namespace equidist
