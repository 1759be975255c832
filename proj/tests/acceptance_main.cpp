// Acceptance gate for the residue lifting pipeline. Each criterion prints a
// single PASS or FAIL line with its measured time against a pinned budget.
// The process exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qrlift/census.hpp"
#include "qrlift/lift.hpp"
#include "qrlift/oracle.hpp"

using namespace qrlift;
using Clock = std::chrono::steady_clock;

namespace {

// The adjoined generator: parts are base ring coefficients, constant first.
Element make_gen(const RingHandle& r) {
  RingHandle base = r->zero().components()[0].ring()->shared_from_this();
  return r->from_components({base->zero(), base->one()});
}

// Budgets, in milliseconds. These are the contract; do not loosen casually.
constexpr double kBudgetTransversalMs = 1.0;
constexpr double kBudgetBijectionMs = 1.0;
constexpr double kBudgetTowersMs = 5000.0;
constexpr double kBudgetValidationMs = 5000.0;
constexpr double kBudgetZnSweepMs = 30000.0;
constexpr double kBudgetDualMs = 60000.0;
constexpr double kBudgetGroupMs = 60000.0;
constexpr double kBudgetChainTriplesMs = 120000.0;
constexpr double kBudgetPipelineMs = 30000.0;

int failures = 0;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int number, bool pass, const std::string& label, double elapsed_ms,
            double budget_ms, const std::string& detail = "") {
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << label << " ("
       << elapsed_ms << " ms, budget " << budget_ms << " ms)";
  if (!detail.empty()) line << " [" << detail << "]";
  std::cout << line.str() << "\n";
  if (!pass) ++failures;
}

RingHandle zn(const mpz_class& n) { return make_ring(RingSpec::zmod(n)); }

Ideal gen(const RingHandle& r, std::vector<long> gens) {
  std::vector<Element> es;
  for (long g : gens) es.push_back(r->integer(g));
  return ideal_from_generators(r, es);
}

CncChain power_chain(const RingHandle& r, const std::vector<Element>& gens) {
  Ideal start = ideal_from_generators(r, gens);
  std::vector<Ideal> links;
  for (std::uint64_t t = 1;; ++t) {
    Ideal J = t == 1 ? start : ideal_power(start, t);
    if (J.is_zero()) break;
    links.push_back(std::move(J));
  }
  return verify_cnc(r, links);
}

// criterion 1: the collapse power map fixes a full transversal of Z25 mod <5>
// to the exact values 0, 1, 7, 18, 24, within the millisecond budget.
void criterion_1() {
  RingHandle r = zn(25);
  Ideal n5 = gen(r, {5});
  const long expect[] = {0, 1, 7, 18, 24};
  std::string detail;
  auto start = Clock::now();
  bool ok = true;
  for (long a = 0; a < 5; ++a) {
    Element got = power_lift(r, n5, r->integer(a));
    if (got != r->integer(expect[a])) {
      ok = false;
      detail = "value " + std::to_string(a) + " lifted to " + r->format(got);
    }
  }
  double elapsed = ms_since(start);
  report(1, ok && elapsed <= kBudgetTransversalMs,
         "power lift sends the transversal of Z25 to its pinned values", elapsed,
         kBudgetTransversalMs, detail);
}

// criterion 2: squaring maps the coset 3 + <5> of Z25 bijectively onto the
// coset 4 + <5>.
void criterion_2() {
  RingHandle r = zn(25);
  const long coset[] = {3, 8, 13, 18, 23};
  const std::set<long> target = {4, 9, 14, 19, 24};
  auto start = Clock::now();
  std::set<long> image;
  for (long y : coset) {
    image.insert(((y * y) % 25));
  }
  bool ok = image.size() == 5 && image == target;
  double elapsed = ms_since(start);
  report(2, ok && elapsed <= kBudgetBijectionMs,
         "squaring carries the coset 3+<5> onto 4+<5> bijectively", elapsed,
         kBudgetBijectionMs);
}

// criterion 3: for p in {3,5,7,11} and k in {1,2,3}, the chain census of
// Z_{p^k} reports q = p^(k-1)(p-1)/2 with uniform root count 2, and a direct
// scan of the ring reproduces the same q.
void criterion_3() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul}) {
    for (unsigned k = 1; k <= 3 && ok; ++k) {
      unsigned long n = 1;
      for (unsigned j = 0; j < k; ++j) n *= p;
      RingHandle r = zn(n);
      CncChain chain = k == 1 ? verify_cnc(r, {})
                              : power_chain(r, {r->integer(static_cast<long>(p))});
      ResidueReport rep = chain_census(r, chain);

      mpz_class closed = 1;
      for (unsigned j = 0; j + 1 < k; ++j) closed *= p;
      closed *= (p - 1) / 2;

      // Independent scan: squares of units, counted without the census code.
      std::vector<bool> square(n, false);
      for (unsigned long y = 0; y < n; ++y) {
        if (y % p != 0) square[(y * y) % n] = true;
      }
      mpz_class brute = 0;
      for (unsigned long a = 0; a < n; ++a) {
        if (a % p != 0 && square[a]) ++brute;
      }

      bool here = rep.q_actual == closed && brute == closed &&
                  rep.alpha.has_value() && *rep.alpha == 2 && rep.all_checks_pass();
      if (!here) {
        ok = false;
        detail = "p=" + std::to_string(p) + " k=" + std::to_string(k) + " census " +
                 rep.q_actual.get_str() + " closed " + closed.get_str() + " brute " +
                 brute.get_str();
      }
    }
  }
  double elapsed = ms_since(start);
  report(3, ok && elapsed <= kBudgetTowersMs,
         "prime power towers report q = p^(k-1)(p-1)/2 with two roots each", elapsed,
         kBudgetTowersMs, detail);
}

// criterion 4: the closed form census of Z675 gives 90 squares with four
// roots each, and for every odd modulus up to 2000 the census count and the
// power-of-two root multiplicity match an exhaustive scan.
void criterion_4() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;

  ResidueReport base = zn_census(675);
  if (base.q_actual != 90 || !base.alpha || *base.alpha != 4) {
    ok = false;
    detail = "Z675 census " + base.q_actual.get_str();
  }

  for (unsigned long n = 3; ok && n <= 2000; n += 2) {
    ResidueReport rep = zn_census(n);
    // Distinct prime count fixes the expected root multiplicity.
    unsigned m = 0;
    ZnFactorization f = factor_odd(n);
    m = static_cast<unsigned>(f.factors.size());
    unsigned long expected_roots = 1ul << m;

    std::vector<unsigned> roots_of(n, 0);
    std::vector<bool> unit(n, false);
    for (unsigned long y = 0; y < n; ++y) {
      unit[y] = std::gcd(y, n) == 1;
      if (unit[y]) ++roots_of[(y * y) % n];
    }
    mpz_class brute = 0;
    for (unsigned long a = 0; a < n; ++a) {
      if (!unit[a] || roots_of[a] == 0) continue;
      ++brute;
      if (roots_of[a] != expected_roots) {
        ok = false;
        detail = "n=" + std::to_string(n) + " residue " + std::to_string(a) + " has " +
                 std::to_string(roots_of[a]) + " roots, expected " +
                 std::to_string(expected_roots);
      }
    }
    if (rep.q_actual != brute) {
      ok = false;
      detail = "n=" + std::to_string(n) + " census " + rep.q_actual.get_str() +
               " brute " + brute.get_str();
    }
  }
  double elapsed = ms_since(start);
  report(4, ok && elapsed <= kBudgetZnSweepMs,
         "odd moduli to 2000 match brute counts and power-of-two root sizes", elapsed,
         kBudgetZnSweepMs, detail);
}

// criterion 5: dual number rings over Z_{p^i} report q = p^(2i-1)(p-1)/2 and
// every invertible square has exactly two roots, confirmed by scan.
void criterion_5() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (unsigned long p : {3ul, 5ul}) {
    for (unsigned i = 1; i <= 2 && ok; ++i) {
      unsigned long pi = 1;
      for (unsigned j = 0; j < i; ++j) pi *= p;
      RingHandle r = make_ring(RingSpec::quotient_poly(RingSpec::zmod(pi), {0, 0, 1}));
      Element x = make_gen(r);
      CncChain chain = power_chain(r, {r->integer(static_cast<long>(p)), x});
      ResidueReport rep = chain_census(r, chain);

      mpz_class closed = 1;
      for (unsigned j = 0; j + 1 < 2 * i; ++j) closed *= p;
      closed *= (p - 1) / 2;

      SquareTable table(r);
      mpz_class brute = 0;
      bool two_each = true;
      for (std::uint64_t idx = 0; idx < r->size_u64(); ++idx) {
        Element a = r->element_at(idx);
        if (!r->is_unit(a)) continue;
        const auto& row = table.roots_of(a);
        if (row.empty()) continue;
        ++brute;
        if (row.size() != 2) two_each = false;
      }

      bool here = rep.q_actual == closed && brute == closed && two_each &&
                  rep.all_checks_pass();
      if (!here) {
        ok = false;
        detail = "p=" + std::to_string(p) + " i=" + std::to_string(i) + " census " +
                 rep.q_actual.get_str() + " closed " + closed.get_str() + " brute " +
                 brute.get_str();
      }
    }
  }
  double elapsed = ms_since(start);
  report(5, ok && elapsed <= kBudgetDualMs,
         "dual number rings report q = p^(2i-1)(p-1)/2 with two roots each", elapsed,
         kBudgetDualMs, detail);
}

// criterion 6: group rings Z_{3^i}[C2] report q = 3^(2(i-1)), the identity
// has four roots, the unit group has 4*3^(2(i-1)) members, and every element
// congruent to 1 in coefficients modulo 3 collapses to 1 under the chain
// power, all confirmed by scan.
void criterion_6() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (unsigned i = 1; i <= 3 && ok; ++i) {
    unsigned long m = 1;
    for (unsigned j = 0; j < i; ++j) m *= 3;
    RingHandle r = make_ring(RingSpec::group_ring(RingSpec::zmod(m), {2}));
    CncChain chain = i == 1 ? verify_cnc(r, {}) : power_chain(r, {r->integer(3)});
    ResidueReport rep = chain_census(r, chain);

    mpz_class q_closed = 1;
    for (unsigned j = 0; j < 2 * (i - 1); ++j) q_closed *= 3;
    mpz_class units_closed = 4 * q_closed;

    SquareTable table(r);
    mpz_class brute_q = 0;
    mpz_class brute_units = 0;
    for (std::uint64_t idx = 0; idx < r->size_u64(); ++idx) {
      Element a = r->element_at(idx);
      if (!r->is_unit(a)) continue;
      ++brute_units;
      if (!table.roots_of(a).empty()) ++brute_q;
    }

    std::size_t one_roots = table.roots_of(r->one()).size();

    // Exponent 3^(i-1) collapses 1 + <3> to the identity.
    mpz_class e = 1;
    for (unsigned j = 0; j + 1 < i; ++j) e *= 3;
    bool collapse = true;
    RingHandle base = r->zero().components()[0].ring()->shared_from_this();
    for (unsigned long a = 1; a < m; a += 3) {
      for (unsigned long b = 0; b < m; b += 3) {
        Element x = r->from_components({base->integer(a), base->integer(b)});
        if (r->pow(x, e) != r->one()) collapse = false;
      }
    }

    bool here = rep.q_actual == q_closed && brute_q == q_closed &&
                rep.unit_count == units_closed && brute_units == units_closed &&
                one_roots == 4 && collapse && rep.all_checks_pass();
    if (!here) {
      ok = false;
      detail = "i=" + std::to_string(i) + " census " + rep.q_actual.get_str() +
               " closed " + q_closed.get_str() + " brute " + brute_q.get_str() +
               " units " + rep.unit_count.get_str() + " one_roots " +
               std::to_string(one_roots);
    }
  }
  double elapsed = ms_since(start);
  report(6, ok && elapsed <= kBudgetGroupMs,
         "group rings over 3^i report q = 3^(2(i-1)) and collapse 1+<3> to 1", elapsed,
         kBudgetGroupMs, detail);
}

// criterion 7: chain validation accepts the full binary tower of Z16 and
// rejects the short chain with a characteristic diagnostic.
void criterion_7() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  RingHandle r = zn(16);
  try {
    CncChain chain = verify_cnc(r, {gen(r, {2}), gen(r, {4}), gen(r, {8})});
    if (chain.length() != 4) {
      ok = false;
      detail = "tower length " + std::to_string(chain.length());
    }
  } catch (const Error& e) {
    ok = false;
    detail = std::string("tower rejected: ") + e.what();
  }
  try {
    verify_cnc(r, {gen(r, {2})});
    ok = false;
    detail = "short chain accepted";
  } catch (const CncError& e) {
    if (e.condition() != CncError::Condition::Characteristic) {
      ok = false;
      detail = "short chain rejected on the wrong condition";
    }
  }
  double elapsed = ms_since(start);
  report(7, ok, "chain validation accepts the Z16 tower and faults the short chain",
         elapsed, kBudgetValidationMs, detail);
}

// criterion 8: one thousand randomized ring, chain, residue triples produce
// chain lift witnesses whose roots square to the lifted target, and the coset
// refinement returns the unique root of the original residue confirmed by a
// full coset scan.
void criterion_8() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;

  struct Family {
    RingHandle ring;
    CncChain chain;
    Quotient top_quotient;
  };
  std::vector<Family> families;
  auto add_family = [&](RingHandle r, CncChain chain) {
    Quotient q = quotient(r, chain.top());
    families.push_back(Family{std::move(r), std::move(chain), std::move(q)});
  };
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul}) {
    for (unsigned k = 1; k <= 3; ++k) {
      unsigned long n = 1;
      for (unsigned j = 0; j < k; ++j) n *= p;
      RingHandle r = zn(n);
      add_family(r, k == 1 ? verify_cnc(r, {})
                           : power_chain(r, {r->integer(static_cast<long>(p))}));
    }
  }
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    for (unsigned i = 1; i <= 2; ++i) {
      unsigned long pi = 1;
      for (unsigned j = 0; j < i; ++j) pi *= p;
      RingHandle r = make_ring(RingSpec::quotient_poly(RingSpec::zmod(pi), {0, 0, 1}));
      Element x = make_gen(r);
      add_family(r, power_chain(r, {r->integer(static_cast<long>(p)), x}));
    }
  }
  for (unsigned i = 1; i <= 2; ++i) {
    unsigned long m = 1;
    for (unsigned j = 0; j < i; ++j) m *= 3;
    RingHandle r = make_ring(RingSpec::group_ring(RingSpec::zmod(m), {2}));
    add_family(r, i == 1 ? verify_cnc(r, {}) : power_chain(r, {r->integer(3)}));
  }

  std::mt19937_64 rng(0x8c1f5a2eu);
  int checked = 0;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    const Family& fam = families[trial % families.size()];
    const RingHandle& r = fam.ring;
    std::uniform_int_distribution<std::uint64_t> pick(0, r->size_u64() - 1);

    // A random invertible square.
    Element y = r->element_at(pick(rng));
    while (!r->is_unit(y)) y = r->element_at(pick(rng));
    Element a = r->mul(y, y);

    // Seed: the least root of the projection modulo the top ideal.
    const Quotient& q = fam.top_quotient;
    Element pa = q.project(a);
    Element seed = q.ring()->zero();
    bool found = false;
    for (std::uint64_t j = 0; j < q.ring()->size_u64(); ++j) {
      Element c = q.ring()->element_at(j);
      if (q.ring()->mul(c, c) == pa) {
        seed = c;
        found = true;
        break;
      }
    }
    if (!found) {
      ok = false;
      detail = "no quotient root for a square in " + r->describe();
      break;
    }
    Element g = q.representative(seed);

    LiftWitness w = chain_power_lift(fam.chain, g, a);
    if (r->mul(w.root(), w.root()) != w.target() ||
        w.target() != r->pow(a, w.exponent())) {
      ok = false;
      detail = "witness mismatch in " + r->describe();
      break;
    }

    // Coset refinement of the original residue, checked against a scan.
    Element root = root_in_coset(r, fam.chain.top(), g, a, true);
    if (r->mul(root, root) != a) {
      ok = false;
      detail = "refined root does not square back in " + r->describe();
      break;
    }
    int in_coset = 0;
    for (const Element& m : fam.chain.top().elements()) {
      Element cand = r->add(g, m);
      if (r->mul(cand, cand) == a) {
        ++in_coset;
        if (cand != root) {
          ok = false;
          detail = "scan found a different root in " + r->describe();
        }
      }
    }
    if (in_coset != 1) {
      ok = false;
      detail = "coset of " + r->describe() + " holds " + std::to_string(in_coset) +
               " roots";
    }
    ++checked;
  }
  double elapsed = ms_since(start);
  report(8, ok && checked == 1000 && elapsed <= kBudgetChainTriplesMs,
         "1000 randomized chain lifts verify and refine to unique coset roots",
         elapsed, kBudgetChainTriplesMs, detail);
}

// criterion 9: for 100 random odd moduli up to a million, random unit squares
// produce exactly 2^m verified roots and random units match the Euler
// prediction, with no failures.
void criterion_9() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(0x3715deadu);
  std::uniform_int_distribution<unsigned long> pick_n(3, 1000000);
  int done = 0;
  while (done < 100 && ok) {
    unsigned long n = pick_n(rng) | 1ul;
    mpz_class nm(n);
    ZnFactorization fact = factor_odd(nm);
    unsigned m = static_cast<unsigned>(fact.factors.size());

    std::uniform_int_distribution<unsigned long> pick_a(1, n - 1);
    auto random_unit = [&] {
      for (;;) {
        mpz_class a(pick_a(rng));
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), nm.get_mpz_t());
        if (g == 1) return a;
      }
    };

    // Independent Euler test: a is a square unit mod n iff it is one mod
    // every prime divisor.
    auto euler_square = [&](const mpz_class& a) {
      for (const auto& [p, k] : fact.factors) {
        mpz_class e = (p - 1) / 2;
        mpz_class v;
        mpz_powm(v.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (v != 1) return false;
      }
      return true;
    };

    // A forced square.
    mpz_class y = random_unit();
    mpz_class forced = (y * y) % nm;
    SolutionSet roots = sqrt_zn(nm, forced, fact);
    if (roots.count() != (std::size_t{1} << m)) {
      ok = false;
      detail = "n=" + std::to_string(n) + " expected " +
               std::to_string(std::size_t{1} << m) + " roots, got " +
               std::to_string(roots.count());
      break;
    }
    for (const Element& root : roots.roots()) {
      if ((root.residue() * root.residue()) % nm != forced) {
        ok = false;
        detail = "n=" + std::to_string(n) + " root fails to square back";
      }
    }

    // A random unit, either way.
    mpz_class probe = random_unit();
    bool expect = euler_square(probe);
    SolutionSet probe_roots = sqrt_zn(nm, probe, fact);
    if (expect != !probe_roots.empty()) {
      ok = false;
      detail = "n=" + std::to_string(n) + " Euler disagreement on " + probe.get_str();
    }
    if (expect && probe_roots.count() != (std::size_t{1} << m)) {
      ok = false;
      detail = "n=" + std::to_string(n) + " wrong multiplicity on " + probe.get_str();
    }
    ++done;
  }
  double elapsed = ms_since(start);
  report(9, ok && done == 100 && elapsed <= kBudgetPipelineMs,
         "100 random odd moduli to a million verify the square root pipeline",
         elapsed, kBudgetPipelineMs, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
