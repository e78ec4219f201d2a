#include "ldiv/numbounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw CapExceeded("integer overflow in bound arithmetic");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw CapExceeded("integer overflow in bound arithmetic");
  return out;
}

std::int64_t signed_of(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw CapExceeded("value exceeds 63 bits");
  return static_cast<std::int64_t>(v);
}

void require_prime(std::uint64_t ell) {
  if (!is_prime(ell)) throw ValidationError("ell = " + std::to_string(ell) + " is not prime");
}

std::int64_t ceil_of(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();  // positive
  std::int64_t q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

}  // namespace

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t unit_rank(const UnitData& u) {
  if (u.degree == 0) throw ValidationError("field degree must be positive");
  if (u.r1 + 2 * u.r2 != u.degree)
    throw ValidationError("r1 + 2 r2 = " + std::to_string(u.r1 + 2 * u.r2) +
                          " does not match degree " + std::to_string(u.degree));
  return u.r1 + u.r2 - 1;
}

UnitRank unit_l_rank(const UnitData& u, std::uint64_t ell) {
  require_prime(ell);
  UnitRank out;
  out.value = unit_rank(u);
  bool mu = u.has_mu_ell;
  if (ell == 2 && !mu) {
    mu = true;
    out.forced_mu = true;
  }
  if (mu) ++out.value;
  return out;
}

std::uint64_t e_ell(std::uint64_t n, std::uint64_t ell) {
  if (n == 0) throw ValidationError("valuation of 0 is undefined");
  require_prime(ell);
  std::uint64_t e = 0;
  while (n % ell == 0) {
    n /= ell;
    ++e;
  }
  return e;
}

std::uint64_t omega(std::int64_t n) {
  if (n == 0) throw ValidationError("omega(0) is undefined");
  const std::uint64_t m = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  return prime_divisors(m).size();
}

RankBound rank_bound(const RankBoundInput& in) {
  require_prime(in.ell);
  if (in.rel_degree == 0) throw ValidationError("rel_degree must be at least 1");
  const auto rk_k = unit_l_rank(in.unit_k, in.ell);
  const auto rk_f = unit_l_rank(in.unit_f, in.ell);
  if (in.unit_k.degree != checked_mul(in.rel_degree, in.unit_f.degree))
    throw ValidationError("[K:Q] must equal [K:F][F:Q]");

  RankBound out;
  out.rk_k = rk_k.value;
  out.rk_f = rk_f.value;
  out.e = e_ell(in.rel_degree, in.ell);
  if (rk_k.forced_mu) out.warnings.push_back("ell = 2: K contains -1, has_mu_ell set to true");
  if (rk_f.forced_mu) out.warnings.push_back("ell = 2: F contains -1, has_mu_ell set to true");

  const Rational units = Rational(signed_of(rk_f.value)) - Rational(signed_of(rk_k.value));
  Rational main{0};
  if (in.mode == RankMode::base) {
    main = Rational(signed_of(in.count)) - Rational(signed_of(in.kummer_rank));
    out.real_bound = main + units;
  } else {
    if (in.invariant < Rational(0)) throw ValidationError("invariant must be non-negative");
    if (in.count == 0) {
      out.warnings.push_back("count is 0; the bound assumes at least one such prime");
    } else {
      if (in.invariant == Rational(0))
        throw ValidationError("invariant is 0 with a positive count; the pair must be divisible");
      main = Rational(signed_of(in.count)) / in.invariant;
    }
    out.real_bound = main + units - Rational(signed_of(out.e));
  }
  out.effective_bound = ceil_of(out.real_bound);
  return out;
}

bool golod_shafarevich(std::int64_t rk_cl, std::int64_t free_unit_rank) {
  if (rk_cl < 0 || free_unit_rank < 0) throw ValidationError("ranks must be non-negative");
  if (rk_cl <= 2) return false;
  const auto lhs = static_cast<unsigned __int128>(rk_cl - 2) * static_cast<unsigned __int128>(rk_cl - 2);
  const auto rhs = static_cast<unsigned __int128>(4) * (static_cast<unsigned __int128>(free_unit_rank) + 1);
  return lhs > rhs;
}

TowerResult tower_criteria(const TowerInput& in) {
  if (in.degree < 2) throw ValidationError("[K:F] must exceed 1");
  const auto u = unit_rank(in.unit_k);
  unit_rank(in.unit_f);
  if (in.unit_k.degree != checked_mul(in.degree, in.unit_f.degree))
    throw ValidationError("[K:Q] must equal [K:F][F:Q]");
  if (in.closure_degree == 0 || in.closure_degree % in.unit_k.degree != 0)
    throw ValidationError("the Galois closure degree must be a multiple of [K:Q]");

  TowerResult out;
  const auto primes = prime_divisors(in.degree);
  out.omega_degree = primes.size();
  if (in.omega_degree && *in.omega_degree != out.omega_degree)
    throw ValidationError("omega_degree does not match the prime factorization of the degree");
  out.ceiling = (in.omega_f_disc + out.omega_degree - 1) / out.omega_degree;

  std::set<std::uint64_t> given;
  for (const auto& p : in.per_prime) {
    if (std::find(primes.begin(), primes.end(), p.ell) == primes.end())
      throw ValidationError("per_prime entry " + std::to_string(p.ell) + " does not divide the degree");
    if (!given.insert(p.ell).second)
      throw ValidationError("duplicate per_prime entry " + std::to_string(p.ell));
  }
  if (given.size() != primes.size()) throw ValidationError("per_prime must cover every prime dividing the degree");

  const std::int64_t n = signed_of(in.unit_k.degree);
  bool all_meet = true;
  for (const auto& p : in.per_prime) {
    TowerPrimeDetail d;
    d.ell = p.ell;
    d.delta = p.delta;
    d.rk_k = unit_l_rank(UnitData{in.unit_k.r1, in.unit_k.r2, in.unit_k.degree, p.mu_k}, p.ell).value;
    d.rk_f = unit_l_rank(UnitData{in.unit_f.r1, in.unit_f.r2, in.unit_f.degree, p.mu_f}, p.ell).value;
    d.e = e_ell(in.degree, p.ell);
    d.base = 2 + signed_of(d.rk_k) - signed_of(d.rk_f) + signed_of(d.e);
    d.radicand = u + 1;
    d.bracket_approx = static_cast<double>(d.base) + 2.0 * std::sqrt(static_cast<double>(d.radicand));

    // c >= delta (base + 2 sqrt r)  <=>  L = c - delta base >= 0 and L^2 >= 4 delta^2 r.
    const __int128 delta = p.delta;
    const __int128 slack = static_cast<__int128>(out.ceiling) - delta * d.base;
    d.meets = slack >= 0 && slack * slack >= 4 * delta * delta * static_cast<__int128>(d.radicand);

    const __int128 room = static_cast<__int128>(4) * n - d.base;
    d.bracket_within_4n = room >= 0 && room * room >= 4 * static_cast<__int128>(d.radicand);

    all_meet = all_meet && d.meets;
    out.details.push_back(d);
  }
  std::sort(out.details.begin(), out.details.end(),
            [](const TowerPrimeDetail& a, const TowerPrimeDetail& b) { return a.ell < b.ell; });

  out.omega_criterion = in.omega_f_disc > 0 && all_meet;
  const std::uint64_t needed =
      checked_mul(checked_mul(4, in.closure_degree), out.omega_degree);
  out.degree_criterion = in.omega_f_disc > 0 && in.omega_f_disc >= needed;
  return out;
}

RayClassBound rayclass_bound(std::uint64_t rk_cl_f, std::uint64_t s_inf, std::uint64_t ell,
                             const std::vector<Place>& places) {
  require_prime(ell);
  RayClassBound out;
  out.e = rk_cl_f;
  if (ell == 2) out.e = checked_add(out.e, s_inf);
  for (const auto& p : places) {
    if (p.residue_is_1_mod_ell && p.in_t0)
      throw ValidationError("a place above ell cannot have residue field size 1 mod ell");
    std::uint64_t eps = 0;
    if (p.residue_is_1_mod_ell) {
      eps = 1;
    } else if (p.in_t0) {
      if (p.local_degree == 0) throw ValidationError("places in T0 need a positive local degree");
      eps = checked_add(1, p.local_degree);
    }
    out.epsilons.push_back(eps);
    out.e = checked_add(out.e, eps);
  }
  // (ell^e - 1) / (ell - 1) = 1 + ell + ... + ell^(e-1)
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i < out.e; ++i) {
    out.bound = checked_add(out.bound, power);
    if (i + 1 < out.e) power = checked_mul(power, ell);
  }
  return out;
}

MalleA malle_a(const GroupPair& pair) {
  const std::uint64_t index = pair.g.order() / pair.h.order();
  if (index < 2) throw ValidationError("malle_a needs [G:H] >= 2");
  CosetAction cosets(pair.g, pair.h);
  MalleA out;
  bool found = false;
  for (const auto& x : pair.g.elements()) {
    const std::uint64_t n = cosets.act(x).orbit_count();
    if (n == index) {
      ++out.excluded;
      continue;
    }
    if (!found || n > out.best_orbits) {
      found = true;
      out.best_orbits = n;
      out.witness = x;
    }
  }
  if (!found) throw ValidationError("every element fixes all cosets");
  out.a = Rational(1, signed_of(index - out.best_orbits));
  return out;
}

MalleExponent malle_exponent(std::uint64_t index, std::uint64_t d,
                             const std::map<std::uint64_t, std::uint64_t>& deltas,
                             const std::map<std::uint64_t, std::uint64_t>& rk_f) {
  if (index == 0) throw ValidationError("index must be positive");
  MalleExponent out;
  out.deltas = deltas;
  if (index == 1) {
    out.degenerate = true;
    return out;
  }
  if (d == 0 || d % index != 0) throw ValidationError("d must be a positive multiple of [G:H]");
  std::optional<std::int64_t> best;
  for (std::uint64_t ell : prime_divisors(index)) {
    auto dl = deltas.find(ell);
    if (dl == deltas.end()) throw ValidationError("missing delta for ell = " + std::to_string(ell));
    auto rk = rk_f.find(ell);
    if (rk == rk_f.end()) throw ValidationError("missing unit rank of F for ell = " + std::to_string(ell));
    const std::int64_t delta = signed_of(dl->second);
    const std::int64_t linear =
        signed_of(d) + signed_of(e_ell(index, ell)) + 2 - signed_of(rk->second);
    // floor(delta * 2 sqrt d) = isqrt(4 delta^2 d)
    const std::uint64_t radical =
        isqrt(checked_mul(checked_mul(4, checked_mul(dl->second, dl->second)), d));
    const std::int64_t term = delta * linear + signed_of(radical);
    out.terms[ell] = term;
    best = best ? std::max(*best, term) : term;
  }
  out.e = signed_of(prime_divisors(index).size()) * *best;
  return out;
}

MalleExponent malle_exponent(const GroupPair& pair, std::uint64_t d,
                             const std::map<std::uint64_t, std::uint64_t>& rk_f,
                             const DivisibilityOptions& opts) {
  const std::uint64_t index = pair.g.order() / pair.h.order();
  std::map<std::uint64_t, std::uint64_t> deltas;
  for (std::uint64_t ell : prime_divisors(index)) {
    auto ev = exact_values(pair, ell, opts);
    if (!ev.divisible)
      throw ValidationError("G/H is not " + std::to_string(ell) + "-divisible; delta is undefined");
    deltas[ell] = *ev.delta;
  }
  auto out = malle_exponent(index, d, deltas, rk_f);
  out.nilpotent = nilpotency_class(pair.g).has_value();
  return out;
}

}  // namespace lattdiv
