#include <benchmark/benchmark.h>

#include <gmpxx.h>

#include <vector>

#include "qrlift/census.hpp"
#include "qrlift/ideal.hpp"
#include "qrlift/lift.hpp"
#include "qrlift/oracle.hpp"
#include "qrlift/ring.hpp"

namespace {

using namespace qrlift;

RingHandle zn(const mpz_class& n) { return make_ring(RingSpec::zmod(n)); }

// The descending power tower <p> > <p^2> > ... > <p^(k-1)> in Z(p^k).
CncChain tower(const RingHandle& r, long p, unsigned k) {
  std::vector<Ideal> links;
  mpz_class g = p;
  for (unsigned i = 1; i < k; ++i) {
    links.push_back(ideal_from_generators(r, {r->integer(g)}));
    g *= p;
  }
  return verify_cnc(r, links);
}

void BM_sqrt_zn_small(benchmark::State& state) {
  mpz_class n = 675;
  auto fact = factor_odd(n);
  for (auto _ : state) {
    SolutionSet roots = sqrt_zn(n, 1, fact);
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(BM_sqrt_zn_small);

void BM_sqrt_zn_two_big_primes(benchmark::State& state) {
  // Beyond any enumeration cap; the factorization is supplied up front.
  mpz_class p = 1000000007, q = 1000000009;
  mpz_class n = p * q;
  ZnFactorization fact{n, {{p, 1}, {q, 1}}};
  mpz_class a = mpz_class(123456789) * 123456789 % n;
  for (auto _ : state) {
    SolutionSet roots = sqrt_zn(n, a, fact);
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(BM_sqrt_zn_two_big_primes);

void BM_zn_census_with_brute_checks(benchmark::State& state) {
  for (auto _ : state) {
    ResidueReport rep = zn_census(675);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_zn_census_with_brute_checks);

void BM_zn_census_closed_form_only(benchmark::State& state) {
  // 3^5 * 5^4 * 7^3 * 11^2 * 13^2 sits far above the cap, so the census
  // runs entirely on closed forms.
  mpz_class n = mpz_class("1065252313125");
  auto fact = factor_odd(n);
  for (auto _ : state) {
    ResidueReport rep = zn_census(n, fact);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_zn_census_closed_form_only);

void BM_chain_census(benchmark::State& state) {
  RingHandle r = zn(243);
  CncChain chain = tower(r, 3, 5);
  for (auto _ : state) {
    ResidueReport rep = chain_census(r, chain);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_chain_census);

void BM_brute_square_table(benchmark::State& state) {
  RingHandle r = zn(static_cast<long>(state.range(0)));
  for (auto _ : state) {
    SquareTable table = brute_squares(r);
    benchmark::DoNotOptimize(table);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_brute_square_table)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_root_in_coset(benchmark::State& state) {
  // Quadratic refinement from a mod-5 root up to the full ring Z(5^7).
  RingHandle r = zn(78125);
  Ideal n1 = ideal_from_generators(r, {r->integer(5)});
  Element b = r->integer(144);
  Element g = r->integer(2);
  for (auto _ : state) {
    Element root = root_in_coset(r, n1, g, b);
    benchmark::DoNotOptimize(root);
  }
}
BENCHMARK(BM_root_in_coset);

void BM_chain_power_lift(benchmark::State& state) {
  RingHandle r = zn(78125);
  CncChain chain = tower(r, 5, 7);
  Element a = r->integer(144);
  Element g = r->integer(2);
  for (auto _ : state) {
    LiftWitness w = chain_power_lift(chain, g, a);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_chain_power_lift);

}  // namespace

BENCHMARK_MAIN();
