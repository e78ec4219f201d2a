// Times each OpenMP kernel against its serial reference and checks that the
// results agree. Usage: ldiv_bench [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "ldiv/asymptotics.hpp"
#include "ldiv/constructors.hpp"
#include "ldiv/divisibility.hpp"
#include "ldiv/lattice.hpp"

using namespace lattdiv;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "match" : "MISMATCH");
}

// Runs f with a single OpenMP thread, for kernels that have no serial switch.
template <class F>
auto single_threaded(F&& f) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto out = f();
  omp_set_num_threads(saved);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads %d, best of %d\n", omp_get_max_threads(), repeats);
  bool all_same = true;

  {
    const auto a6 = alternating_group(6);
    GroupTable serial_table(a6), parallel_table(a6);
    const double s = best_of(repeats, [&] { single_threaded([&] { return GroupTable(a6).size(); }); });
    const double p = best_of(repeats, [&] { return GroupTable(a6).size(); });
    bool same = true;
    for (Elem a = 0; a < parallel_table.size(); ++a)
      for (Elem b = 0; b < parallel_table.size(); b += 7) same = same && serial_table.mul(a, b) == parallel_table.mul(a, b);
    report("multiplication table A6", s, p, same);
    all_same = all_same && same;
  }

  {
    const auto a6 = alternating_group(6);
    std::size_t ns = 0, np = 0;
    const double s = best_of(repeats, [&] {
      ns = single_threaded([&] { return subgroup_conjugacy_classes(a6).size(); });
    });
    const double p = best_of(repeats, [&] { np = subgroup_conjugacy_classes(a6).size(); });
    report("subgroup lattice A6", s, p, ns == np);
    all_same = all_same && ns == np;
  }

  {
    const auto a6 = alternating_group(6);
    const auto pair = group_pair(a6, subgroup(a6, {Permutation::from_cycles("(1 2)(3 4)", 6)}));
    GroupTable t(pair.g);
    WorkCounter work(kDefaultWorkLimit);
    const auto h = indexed(t, pair.h);
    const auto mids = join_ascent(t, h, work);
    PairEngine serial(t, h.members, mids, false), parallel(t, h.members, mids, true);
    const auto classes = parallel.weak_classes(2);
    std::vector<Bitset> ms, mp;
    const double s = best_of(repeats, [&] { ms = serial.weak_coverage(classes); });
    const double p = best_of(repeats, [&] { mp = parallel.weak_coverage(classes); });
    report("weak coverage A6/C2", s, p, ms == mp);
    all_same = all_same && ms == mp;

    const auto elements = parallel.strong_elements(2);
    const double s2 = best_of(repeats, [&] { ms = serial.strong_coverage(elements); });
    const double p2 = best_of(repeats, [&] { mp = parallel.strong_coverage(elements); });
    report("strong coverage A6/C2", s2, p2, ms == mp);
    all_same = all_same && ms == mp;

    std::vector<PermGroup> candidates;
    for (const auto& k : mids) candidates.push_back(to_perm_group(t, k));
    std::vector<Bitset> ref;
    const double r = best_of(1, [&] { ref = reference_weak_coverage(pair, 2, candidates); });
    const auto mw = parallel.weak_coverage(classes);
    report("weak coverage vs reference", r, p, ref == mw);
    all_same = all_same && ref == mw;
  }

  {
    const auto a6 = alternating_group(6);
    DivisibilityOptions serial_opts;
    serial_opts.parallel = false;
    std::size_t ns = 0, np = 0;
    const double s = best_of(1, [&] { ns = scan_all_primes(a6, serial_opts).all_prime_count; });
    const double p = best_of(1, [&] { np = scan_all_primes(a6).all_prime_count; });
    report("scan A6", s, p, ns == np);
    all_same = all_same && ns == np;
  }

  {
    const std::uint64_t x = 10'000'000;
    Census c(x);
    Profile ps, pp;
    const double s = best_of(repeats, [&] { ps = c.profile_serial(x, 2); });
    const double p = best_of(repeats, [&] { pp = c.profile(x, 2); });
    report("census profile 1e7", s, p, ps == pp);
    all_same = all_same && ps == pp;
  }
  return all_same ? 0 : 1;
}
