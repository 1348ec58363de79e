// Compares the serial reference evaluation kernel against the OpenMP path on
// the application batches a breadth-first program search actually generates,
// then times a few whole searches at both worker counts.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sammy/canon.hpp"
#include "sammy/construct.hpp"
#include "sammy/search.hpp"

using namespace sammy;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<OpApplication> make_batch() {
  std::vector<Value> pool = {Value{make_one()},
                             Value{make_two()},
                             Value{make_iso_two()},
                             Value{make_discrete(2)},
                             Value{make_chain(3)},
                             Value{constant_functor(ConstantFun::S)},
                             Value{constant_functor(ConstantFun::T)},
                             Value{constant_functor(ConstantFun::Bang21)},
                             Value{identity_functor(make_iso_two())},
                             Value{identity_nat(constant_functor(ConstantFun::S))}};
  std::vector<OpApplication> apps;
  for (size_t oi = 0; oi < op_registry().size(); ++oi) {
    const OpSpec& op = op_registry()[oi];
    if (op.max_args == 0) apps.push_back({static_cast<int>(oi), {}});
    if (op.max_args == 1)
      for (const Value& v : pool) apps.push_back({static_cast<int>(oi), {v}});
    if (op.min_args == 2)
      for (const Value& a : pool)
        for (const Value& b : pool) apps.push_back({static_cast<int>(oi), {a, b}});
  }
  return apps;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  RunLimits lim;
  lim.max_objects = 12;
  lim.max_morphisms = 40;

  auto batch = make_batch();
  std::printf("application batch: %zu entries\n", batch.size());

  auto t0 = std::chrono::steady_clock::now();
  auto serial = eval_applications_serial(batch, lim);
  double t_serial = seconds_since(t0);
  long ok = 0;
  for (auto& outs : serial) ok += outs.empty() ? 0 : 1;

  int max_workers = 1;
#ifdef _OPENMP
  max_workers = omp_get_max_threads();
#endif
  t0 = std::chrono::steady_clock::now();
  auto parallel = eval_applications_parallel(batch, lim, max_workers);
  double t_parallel = seconds_since(t0);

  bool agree = serial.size() == parallel.size();
  for (size_t i = 0; agree && i < serial.size(); ++i) {
    agree = serial[i].size() == parallel[i].size();
    for (size_t o = 0; agree && o < serial[i].size(); ++o)
      agree = exact_key(serial[i][o]) == exact_key(parallel[i][o]);
  }

  std::printf(
      "kernel   serial: %8.3f s   parallel(%d): %8.3f s   speedup %.2fx   agree: %s   "
      "applicable: %ld\n",
      t_serial, max_workers, t_parallel, t_serial / t_parallel, agree ? "yes" : "NO", ok);

  // a full exhaust: search for a table no straight-line program reaches
  FinCat hard;
  hard.n_objects = 1;
  hard.src = {0, 0};
  hard.tgt = {0, 0};
  hard.identity = {0};
  hard.comp = {0, 1, 1, 1};  // the two-element idempotent monoid
  for (int len = 3; len <= 5; ++len) {
    SearchBudget b;
    b.max_len = len;
    b.workers = 1;
    t0 = std::chrono::steady_clock::now();
    ComplexityReport r1 = k_search(Value{hard}, {}, SearchMode::UpToIso, b);
    double t1 = seconds_since(t0);
    b.workers = 0;
    t0 = std::chrono::steady_clock::now();
    ComplexityReport r2 = k_search(Value{hard}, {}, SearchMode::UpToIso, b);
    double t2 = seconds_since(t0);
    long frontier_total = 0;
    for (long s : r1.states_per_depth) frontier_total += s;
    std::printf(
        "exhaust len=%d  serial: %8.3f s  parallel: %8.3f s  states: %ld  values: %ld  "
        "identical: %s\n",
        len, t1, t2, frontier_total, r1.distinct_values,
        report_to_json(r1).dump() == report_to_json(r2).dump() ? "yes" : "NO");
  }
  return 0;
}
