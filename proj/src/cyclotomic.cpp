#include "gaugecount/cyclotomic.hpp"

#include "gaugecount/error.hpp"

#include <map>
#include <mutex>

namespace gaugecount {

namespace {

std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::int64_t lead = num[i];
    quot[i - dd] = lead;
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= lead * den[j];
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (num[j] != 0) fail(ErrorKind::BadParams, "cyclotomic polynomial division left a remainder");
  }
  return quot;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) fail(ErrorKind::BadParams, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<std::uint32_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<std::int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  // std::map never invalidates references, so callers may hold on to the entry.
  return cache.emplace(n, std::move(poly)).first->second;
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace gaugecount
