#include "equidist/numutil.hpp"

namespace equidist {

bool is_prime(long long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (long long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<long long> primes_upto(long long n) {
  std::vector<long long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n + 1), false);
  for (long long p = 2; p <= n; ++p) {
    if (composite[static_cast<size_t>(p)]) continue;
    out.push_back(p);
    for (long long q = p * p; q <= n; q += p) composite[static_cast<size_t>(q)] = true;
  }
  return out;
}

int floor_log2(long long n) {
  int s = 0;
  while ((1LL << (s + 1)) <= n) ++s;
  return s;
}

}  // namespace equidist
