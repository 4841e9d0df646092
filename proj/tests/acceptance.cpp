// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Sample sizes, bounds and time limits are pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fairinit/fairinit.hpp"

using namespace fairinit;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = out.ok && in_time;
  if (!pass)
    ++failures;
  std::printf("%s  %2d  %-48s %8.3fs (limit %gs)  %s%s\n", pass ? "PASS" : "FAIL", id, title, secs, limit_seconds,
              out.detail.c_str(), in_time ? "" : " [too slow]");
  std::fflush(stdout);
}

std::string str(std::size_t x) { return std::to_string(x); }

Allocation example2_allocation() {
  Bundle rest;
  for (Resource r = 1; r < 100; ++r)
    rest.push_back(r);
  return Allocation({{0}, rest, {}});
}

} // namespace

int main() {
  run(1, "obs1: no EF1-init, four min-EF1-init", 1.0, [] {
    const auto inst = preset("obs1");
    std::size_t total = 0, ef1 = 0, min_ef1 = 0, min_ef1_single = 0;
    for_each_complete_allocation(inst, [&](const Allocation& a) {
      ++total;
      ef1 += satisfies(inst, a, NotionTag::Ef1Init);
      if (satisfies(inst, a, NotionTag::MinEf1Init)) {
        ++min_ef1;
        min_ef1_single += a.bundle(1).size() == 1;
      }
      return true;
    });
    return Outcome{total == 16 && ef1 == 0 && min_ef1 == 4 && min_ef1_single == 4,
                   str(total) + " allocations, " + str(ef1) + " EF1-init, " + str(min_ef1) + " min-EF1-init"};
  });

  run(2, "ex1: relaxed envy bound unsatisfiable", 5.0, [] {
    const auto inst = preset("ex1");
    std::size_t profiles = 0, profile_hits = 0, labeled = 0, labeled_hits = 0;
    for_each_count_profile(inst, [&](const std::vector<std::size_t>& c) {
      ++profiles;
      profile_hits += satisfies(inst, profile_allocation(c), NotionTag::Eq1Relax);
      return true;
    });
    for_each_complete_allocation(inst, [&](const Allocation& a) {
      ++labeled;
      labeled_hits += satisfies(inst, a, NotionTag::Eq1Relax);
      return true;
    });
    return Outcome{profiles == 66 && labeled == 59049 && profile_hits == 0 && labeled_hits == 0,
                   str(profiles) + " profiles / " + str(labeled) + " labeled, " + str(profile_hits + labeled_hits) +
                       " satisfying"};
  });

  run(3, "ex2: listed allocation is min-EF1-init", 1.0, [] {
    const auto report = check_allocation(preset("ex2"), example2_allocation(), NotionTag::MinEf1Init);
    std::size_t ok = 0;
    for (const auto& p : report.pairs)
      ok += p.verdict.ok;
    return Outcome{report.satisfied && report.pairs.size() == 6 && ok == 6, str(ok) + "/6 ordered pairs"};
  });

  run(4, "Round robin: complete, min-EF1-init, traces", 60.0, [] {
    std::size_t good = 0;
    const std::size_t runs = 10000;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
      Lcg64 pick(seed ^ 0x5eed);
      const RandomSpec spec{seed, 2 + pick.uniform(4), 1 + pick.uniform(8), 10, 30, static_cast<Flavor>(seed % 3)};
      const auto inst = random_instance(spec);
      const auto [alloc, trace] = run_round_robin(inst);
      good += is_complete(inst, alloc) && satisfies(inst, alloc, NotionTag::MinEf1Init) &&
              verify_trace(inst, trace).ok && check_activation_gap(inst, trace);
    }
    return Outcome{good == runs, str(good) + "/" + str(runs) + " instances"};
  });

  run(5, "Diminishing: min-EF1-init implies EF1-init", 60.0, [] {
    std::size_t counterexamples = 0, allocations = 0;
    const std::size_t runs = 1000;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
      Lcg64 pick(seed ^ 0xd1);
      const std::size_t n = 2 + pick.uniform(3);
      const std::size_t m = 1 + pick.uniform(12 / n);
      const auto inst = random_instance({seed, n, m, 10, 30, Flavor::Diminishing});
      allocations += count_complete_allocations(inst);
      counterexamples += diminishing_counterexample(inst).has_value();
    }
    return Outcome{counterexamples == 0,
                   str(counterexamples) + " counterexamples over " + str(allocations) + " allocations"};
  });

  run(6, "Identical resources: EF-init DP equals oracle", 120.0, [] {
    std::size_t agree = 0, yes = 0, witnesses_ok = 0;
    const std::size_t runs = 1000;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
      Lcg64 pick(seed ^ 0x1d);
      const auto inst = random_instance({seed, 2 + pick.uniform(3), 1 + pick.uniform(6), 5, 12, Flavor::Identical});
      const auto d = decide_ef_init_identical(inst);
      const bool oracle = exists_complete(inst, NotionTag::EfInit).has_value();
      agree += d.exists == oracle;
      if (d.allocation) {
        ++yes;
        witnesses_ok += is_complete(inst, *d.allocation) && satisfies(inst, *d.allocation, NotionTag::EfInit);
      }
    }
    return Outcome{agree == runs && witnesses_ok == yes,
                   str(agree) + "/" + str(runs) + " agree, " + str(witnesses_ok) + "/" + str(yes) + " witnesses"};
  });

  run(7, "Few agents: EF-init and EF1-init DPs equal oracle", 120.0, [] {
    std::size_t agree = 0, yes = 0, witnesses_ok = 0;
    const std::size_t runs = 500;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
      Lcg64 pick(seed ^ 0x7);
      const auto inst =
          random_instance({seed, 2 + pick.uniform(2), 1 + pick.uniform(5), 3, 6, static_cast<Flavor>(seed % 3)});
      const auto ef = dp_exists_ef_init(inst);
      const auto ef1 = dp_exists_ef1_init(inst);
      agree += (ef.allocation.has_value() == exists_complete(inst, NotionTag::EfInit).has_value()) &&
               (ef1.allocation.has_value() == exists_complete(inst, NotionTag::Ef1Init).has_value());
      for (const auto& [found, tag] : {std::pair{&ef.allocation, NotionTag::EfInit},
                                       std::pair{&ef1.allocation, NotionTag::Ef1Init}}) {
        if (!*found)
          continue;
        ++yes;
        witnesses_ok += is_complete(inst, **found) && satisfies(inst, **found, tag);
      }
    }
    return Outcome{agree == runs && witnesses_ok == yes,
                   str(agree) + "/" + str(runs) + " agree, " + str(witnesses_ok) + "/" + str(yes) + " witnesses"};
  });

  run(8, "Coloring reduction certified on small graphs", 300.0, [] {
    std::size_t cases = 0, certified = 0, graphs = 0;
    for (std::size_t v = 1; v <= 4; ++v) {
      for (const auto& g : nonisomorphic_graphs(v)) {
        ++graphs;
        for (std::size_t ell = 1; ell <= 3; ++ell) {
          ++cases;
          certified += certify_reduction(g, ell).certified;
        }
      }
    }
    return Outcome{graphs == 18 && certified == cases,
                   str(certified) + "/" + str(cases) + " cases over " + str(graphs) + " graphs"};
  });

  run(9, "Harmonic instance: no 1-MMS-init allocation", 1.0, [] {
    const auto inst = mms_harmonic_instance(Ratio(1));
    const auto cert = mms_count_certificate(inst, Ratio(1));
    const auto m = static_cast<Value>(inst.resources());
    bool bounds = true;
    Value power = 1;
    for (Agent i = 0; i < inst.agents(); ++i) {
      bounds = bounds && compute_mms_identical(inst, i) >= (m / static_cast<Value>(i + 1)) * power;
      power *= m;
    }
    return Outcome{inst.agents() == 11 && m == 22 && bounds && cert.impossible,
                   "n=" + str(inst.agents()) + " m=" + str(static_cast<std::size_t>(m)) + ", required " +
                       std::to_string(cert.total_required) + " > " + std::to_string(m)};
  });

  run(10, "Zero initial utilities collapse to EF1", 60.0, [] {
    std::size_t mismatches = 0, sampled = 0, rr_ok = 0;
    const std::size_t runs = 1000;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
      Lcg64 pick(seed ^ 0xb0);
      const auto inst = random_instance({seed, 2 + pick.uniform(4), 1 + pick.uniform(8), 10, 0,
                                         static_cast<Flavor>(seed % 3)});
      for (int s = 0; s < 20; ++s) {
        Allocation a(inst.agents());
        for (Resource r = 0; r < inst.resources(); ++r) {
          const auto owner = pick.uniform(inst.agents() + 1); // some left unallocated
          if (owner < inst.agents())
            a.give(owner, r);
        }
        ++sampled;
        mismatches += satisfies(inst, a, NotionTag::Ef1Init) != satisfies(inst, a, NotionTag::Ef1);
      }
      rr_ok += satisfies(inst, run_round_robin(inst).allocation, NotionTag::Ef1);
    }
    return Outcome{mismatches == 0 && rr_ok == runs, str(mismatches) + " mismatches over " + str(sampled) +
                                                         " allocations, round robin EF1 " + str(rr_ok) + "/" +
                                                         str(runs)};
  });

  run(11, "Identical resources, n=20 m=50 decided fast", 1.0, [] {
    // worst case: no violating pair (higher b, lower value), so every level
    // gets the full cap; plus a batch of random draws
    std::vector<Value> b, v;
    for (Value i = 0; i < 20; ++i) {
      b.push_back(i);
      v.push_back(20 - i);
    }
    double slowest = 0;
    std::size_t entries = 0;
    auto time_one = [&](const Instance& inst) {
      const auto start = std::chrono::steady_clock::now();
      entries = std::max(entries, decide_ef_init_identical(inst).entries);
      slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    };
    time_one(Instance::identical(50, b, v));
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      time_one(random_instance({seed, 20, 50, 10, 100, Flavor::Identical}));
    char buf[64];
    std::snprintf(buf, sizeof buf, "slowest %.4fs, max %zu entries", slowest, entries);
    return Outcome{slowest < 1.0, buf};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
