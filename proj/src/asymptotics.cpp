#include "ldiv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>

#include <omp.h>

#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

// base^e, or nothing once the power passes limit.
std::optional<std::uint64_t> capped_pow(std::uint64_t base, std::uint64_t e, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && out > limit / base) return std::nullopt;
    out *= base;
  }
  return out;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

void check_args(std::uint64_t x, std::uint64_t k, std::uint64_t j) {
  if (x < 1 || k < 1 || j < 1) throw ValidationError("x, k and j must be at least 1");
}

std::size_t bucket_cap(std::uint64_t k) {
  return static_cast<std::size_t>(std::min<std::uint64_t>(k, Profile::kMaxOmega - 1));
}

void classify(const std::vector<std::uint32_t>& spf, std::uint64_t n, std::uint64_t j,
              Profile& p) {
  std::size_t w = 0;
  bool squarefree = true;
  std::uint64_t min_exp = UINT64_MAX;
  while (n > 1) {
    const std::uint32_t q = spf[n];
    std::uint64_t e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    ++w;
    squarefree = squarefree && e == 1;
    min_exp = std::min(min_exp, e);
  }
  ++p.all[w];
  if (squarefree) ++p.squarefree[w];
  if (min_exp >= j) ++p.exponents_at_least_j[w];
}

void merge(Profile& into, const Profile& from) {
  for (std::size_t w = 0; w < Profile::kMaxOmega; ++w) {
    into.squarefree[w] += from.squarefree[w];
    into.exponents_at_least_j[w] += from.exponents_at_least_j[w];
    into.all[w] += from.all[w];
  }
}

}  // namespace

std::uint64_t estimated_sieve_bytes(std::uint64_t limit) {
  return (limit + 1) * sizeof(std::uint32_t);
}

std::uint64_t integer_root(std::uint64_t x, std::uint64_t j) {
  if (j == 0) throw ValidationError("root index must be positive");
  if (j == 1 || x < 2) return x;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / j));
  while (r > 0 && !capped_pow(r, j, x)) --r;
  while (capped_pow(r + 1, j, x)) ++r;
  return r;
}

Census::Census(std::uint64_t limit, std::uint64_t sieve_max) : limit_(limit) {
  if (limit > sieve_max)
    throw CapExceeded("sieve up to " + std::to_string(limit) + " exceeds the cap " +
                      std::to_string(sieve_max) + " (" + std::to_string(estimated_sieve_bytes(limit)) +
                      " bytes)");
  if (limit > UINT32_MAX) throw CapExceeded("sieve limit exceeds 32 bits");
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t m = i * i; m <= limit; m += i)
      if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(i);
  }
}

void Census::check_x(std::uint64_t x) const {
  if (x > limit_)
    throw ValidationError("x = " + std::to_string(x) + " exceeds the sieve limit " +
                          std::to_string(limit_));
}

std::uint64_t Census::omega(std::uint64_t n) const {
  check_x(n);
  std::uint64_t w = 0;
  while (n > 1) {
    const std::uint32_t q = spf_[n];
    while (n % q == 0) n /= q;
    ++w;
  }
  return w;
}

Profile Census::profile_serial(std::uint64_t x, std::uint64_t j) const {
  check_x(x);
  Profile p;
  for (std::uint64_t n = 1; n <= x; ++n) classify(spf_, n, j, p);
  return p;
}

Profile Census::profile(std::uint64_t x, std::uint64_t j) const {
  check_x(x);
  Profile total;
  const auto last = static_cast<std::int64_t>(x);
#pragma omp parallel if (!omp_in_parallel())
  {
    Profile local;
#pragma omp for schedule(static) nowait
    for (std::int64_t n = 1; n <= last; ++n) classify(spf_, static_cast<std::uint64_t>(n), j, local);
#pragma omp critical
    merge(total, local);
  }
  return total;
}

std::uint64_t Census::pi_k(std::uint64_t x, std::uint64_t k) const {
  check_args(x, k, 1);
  if (k >= Profile::kMaxOmega) return 0;
  return profile(x, 1).squarefree[k];
}

std::uint64_t Census::count_t(std::uint64_t x, std::uint64_t k, std::uint64_t j) const {
  check_args(x, k, j);
  const std::uint64_t root = integer_root(x, j);
  check_x(root);
  std::uint64_t m = 0;
  for (std::uint64_t s = 1; s <= root; ++s)
    if (omega(s) <= k) ++m;
  return 2 * m;
}

std::uint64_t Census::count_s(std::uint64_t x, std::uint64_t k, std::uint64_t j) const {
  check_args(x, k, j);
  const Profile p = profile(x, j);
  std::uint64_t m = 0;
  for (std::size_t w = 0; w <= bucket_cap(k); ++w) m += p.exponents_at_least_j[w];
  const std::uint64_t out = 2 * m;
  if (x <= kCrossCheckMax) {
    const std::uint64_t direct = count_s_definition(x, k, j);
    if (direct != out)
      throw InternalError("count_S mismatch at x=" + std::to_string(x) + " k=" + std::to_string(k) +
                          " j=" + std::to_string(j) + ": sieve " + std::to_string(out) +
                          ", enumeration " + std::to_string(direct));
  }
  return out;
}

std::uint64_t count_s_definition(std::uint64_t x, std::uint64_t k, std::uint64_t j) {
  check_args(x, k, j);
  // Positive values only; t -> -t mirrors them.
  std::vector<bool> hit(x + 1, false);
  const std::uint64_t root = integer_root(x, j);
  std::vector<std::uint64_t> stack;
  for (std::uint64_t s = 1; s <= root; ++s) {
    const auto primes = trial_primes(s);
    if (primes.size() > k) continue;
    const std::uint64_t sj = *capped_pow(s, j, x);
    // t ranges over positive integers built from the primes of s.
    stack.assign(1, sj);
    std::vector<std::size_t> from(1, 0);
    while (!stack.empty()) {
      const std::uint64_t v = stack.back();
      const std::size_t start = from.back();
      stack.pop_back();
      from.pop_back();
      hit[v] = true;
      for (std::size_t i = start; i < primes.size(); ++i) {
        if (v > x / primes[i]) continue;
        stack.push_back(v * primes[i]);
        from.push_back(i);
      }
    }
  }
  return 2 * static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), true));
}

std::uint64_t count_t_definition(std::uint64_t x, std::uint64_t k, std::uint64_t j) {
  check_args(x, k, j);
  std::vector<std::uint64_t> values;
  for (std::uint64_t s = 1;; ++s) {
    const auto sj = capped_pow(s, j, x);
    if (!sj) break;
    if (trial_primes(s).size() <= k) values.push_back(*sj);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return 2 * values.size();
}

RatioTable ratio_table(const std::vector<std::uint64_t>& xs, std::uint64_t k, std::uint64_t j,
                       std::uint64_t sieve_max) {
  if (xs.empty()) throw ValidationError("x list is empty");
  for (std::uint64_t x : xs)
    if (x < 16) throw ValidationError("ratios need x >= 16");
  check_args(16, k, j);
  const Census census(*std::max_element(xs.begin(), xs.end()), sieve_max);

  RatioTable out;
  const double fact = std::tgamma(static_cast<double>(k));  // (k-1)!
  out.s_target = 2.0 * static_cast<double>(j) / fact;
  out.pi_target = 1.0 / fact;
  out.rows.resize(xs.size());
  const auto n = static_cast<std::int64_t>(xs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const std::uint64_t x = xs[static_cast<std::size_t>(i)];
      CensusRow row;
      row.x = x;
      row.k = k;
      row.j = j;
      row.pi_k = census.pi_k(x, k);
      row.t_count = census.count_t(x, k, j);
      row.s_count = census.count_s(x, k, j);
      const double lx = std::log(static_cast<double>(x));
      const double llx = std::pow(std::log(lx), static_cast<double>(k - 1));
      row.s_ratio = static_cast<double>(row.s_count) * lx /
                    (std::pow(static_cast<double>(x), 1.0 / static_cast<double>(j)) * llx);
      row.pi_ratio = static_cast<double>(row.pi_k) * lx / (static_cast<double>(x) * llx);
      out.rows[static_cast<std::size_t>(i)] = row;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace lattdiv
