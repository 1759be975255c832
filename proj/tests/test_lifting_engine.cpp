#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "qrlift/lift.hpp"

using namespace qrlift;

namespace {

RingHandle zn(unsigned long n) { return make_ring(RingSpec::zmod(n)); }

Ideal gen(const RingHandle& r, std::vector<long> gens) {
  std::vector<Element> es;
  for (long g : gens) es.push_back(r->integer(g));
  return ideal_from_generators(r, es);
}

}  // namespace

TEST_CASE("unit cosets are detected through the quotient") {
  RingHandle r = zn(25);
  Ideal n5 = gen(r, {5});
  CHECK(assert_unit_coset(r, n5, r->integer(4)));
  CHECK_FALSE(assert_unit_coset(r, n5, r->integer(5)));
  CHECK_FALSE(assert_unit_coset(r, n5, r->integer(0)));
  // Exhaustive mode re-checks each member upstairs.
  CHECK(assert_unit_coset(r, n5, r->integer(7), true));
}

TEST_CASE("quadratic refinement lands on the exact root") {
  RingHandle r = zn(25);
  Ideal n5 = gen(r, {5});
  Element y = root_in_coset(r, n5, r->integer(2), r->integer(19));
  CHECK(y == r->integer(12));
  CHECK(r->mul(y, y) == r->integer(19));
  // The other starting residue picks up the mirror root.
  CHECK(root_in_coset(r, n5, r->integer(3), r->integer(19)) == r->integer(13));
}

TEST_CASE("refinement scales to large prime powers") {
  // 3^20 is far outside any enumeration range; the symbolic ideal keeps the
  // iteration cheap.
  mpz_class n = 1;
  for (int i = 0; i < 20; ++i) n *= 3;
  RingHandle r = make_ring(RingSpec::zmod(n));
  Ideal n3 = ideal_from_generators(r, {r->integer(3)});
  mpz_class b = 7;  // 7 is 1 mod 3, and 1 is a square mod 3
  Element y = root_in_coset(r, n3, r->integer(1), r->integer(b));
  CHECK(r->mul(y, y) == r->integer(b));
}

TEST_CASE("refinement verifies uniqueness on request") {
  RingHandle r = zn(27);
  Ideal n3 = gen(r, {3});
  Element y = root_in_coset(r, n3, r->integer(1), r->integer(7), true);
  CHECK(r->mul(y, y) == r->integer(7));
  CHECK(n3.contains(r->sub(y, r->one())));
}

TEST_CASE("refinement rejects bad starting data") {
  RingHandle r = zn(25);
  Ideal n5 = gen(r, {5});
  // 3^2 - 19 = -10 is in <5>, fine; 2^2 - 17 = -13 is not.
  CHECK_THROWS_AS(root_in_coset(r, n5, r->integer(2), r->integer(17)),
                  HypothesisError);
  // In Z16 mod <2>, the derivative 2g is never invertible.
  RingHandle r16 = zn(16);
  CHECK_THROWS_AS(
      root_in_coset(r16, gen(r16, {2}), r16->integer(1), r16->integer(1)),
      HypothesisError);
}

TEST_CASE("collapse exponent matches the additive order") {
  RingHandle r = zn(25);
  CHECK(power_lift_exponent(r, gen(r, {5})) == 5);
  RingHandle r27 = zn(27);
  CHECK(power_lift_exponent(r27, gen(r27, {3})) == 9);
  CHECK(power_lift_exponent(r27, gen(r27, {9})) == 3);
  // Even characteristic trips the prime condition.
  RingHandle r16 = zn(16);
  CHECK_THROWS_AS(power_lift_exponent(r16, gen(r16, {2})), HypothesisError);
}

TEST_CASE("power map is constant on cosets and fixes a transversal") {
  RingHandle r = zn(25);
  Ideal n5 = gen(r, {5});
  // Representatives map to 0, 1, 7, 18, 24 and every coset member agrees.
  long expect[] = {0, 1, 7, 18, 24};
  for (long a = 0; a < 5; ++a) {
    Element target = power_lift(r, n5, r->integer(a));
    CHECK(target == r->integer(expect[a]));
    for (long k = 0; k < 5; ++k) {
      CHECK(power_lift(r, n5, r->integer(a + 5 * k)) == target);
    }
  }
}

TEST_CASE("power map is multiplicative") {
  RingHandle r = zn(49);
  Ideal n7 = gen(r, {7});
  std::mt19937_64 rng(0x77aa11u);
  std::uniform_int_distribution<long> pick(0, 48);
  for (int trial = 0; trial < 60; ++trial) {
    Element a = r->integer(pick(rng));
    Element b = r->integer(pick(rng));
    CHECK(power_lift(r, n7, r->mul(a, b)) ==
          r->mul(power_lift(r, n7, a), power_lift(r, n7, b)));
  }
}

TEST_CASE("witness construction re-verifies the square") {
  RingHandle r = zn(25);
  CHECK_THROWS_AS(LiftWitness(r, r->integer(19), r->integer(11), {}), DomainError);
  LiftWitness w(r, r->integer(19), r->integer(12), {mpz_class(5)});
  CHECK(w.exponent() == 5);
}

TEST_CASE("chain lift produces an exact root from a top-level one") {
  RingHandle r = zn(27);
  CncChain chain = verify_cnc(r, {gen(r, {3}), gen(r, {9})});
  // 1^2 = 7 modulo <3>; the chain exponent 9 collapses the error.
  LiftWitness w = chain_power_lift(chain, r->integer(1), r->integer(7));
  CHECK(w.exponent() == 9);
  CHECK(w.exponent_trace() == std::vector<mpz_class>{3, 3});
  CHECK(w.target() == r->pow(r->integer(7), 9));
  CHECK(r->mul(w.root(), w.root()) == w.target());
}

TEST_CASE("chain lift demands a root modulo the top ideal only") {
  RingHandle r = zn(125);
  CncChain chain = verify_cnc(r, {gen(r, {5}), gen(r, {25})});
  // 6^2 = 36 = 1 != 4 = 14 mod 5, so 6 is not a usable seed for target 14.
  CHECK_THROWS_AS(chain_power_lift(chain, r->integer(6), r->integer(14)),
                  HypothesisError);
  // 8^2 = 64 = 14 mod 5 works even though 64 != 14 in the ring.
  LiftWitness w = chain_power_lift(chain, r->integer(8), r->integer(14));
  CHECK(r->mul(w.root(), w.root()) == w.target());
  CHECK(w.target() == r->pow(r->integer(14), 25));
}

TEST_CASE("trivial chain lifts are immediate") {
  RingHandle r = zn(13);
  CncChain chain = verify_cnc(r, {});
  LiftWitness w = chain_power_lift(chain, r->integer(6), r->integer(10));
  CHECK(w.exponent() == 1);
  CHECK(w.root() == r->integer(6));  // 36 = 10 mod 13
  CHECK(w.target() == r->integer(10));
}

TEST_CASE("prime power expansion stays in the scaled ideal") {
  RingHandle r = zn(27);
  Ideal n3 = gen(r, {3});
  std::mt19937_64 rng(0x31337u);
  std::uniform_int_distribution<long> pick(0, 26);
  std::uniform_int_distribution<long> pick_n(0, 8);
  for (int trial = 0; trial < 50; ++trial) {
    Element a = r->integer(pick(rng));
    Element n = r->integer(3 * pick_n(rng));
    // <3> has nilpotency index 3 here, so primes 3 and up qualify.
    CHECK(freshman_power_check(r, n3, a, n, 3));
    CHECK(freshman_power_check(r, n3, a, n, 5));
  }
  // Below the index the expansion has extra cross terms and is refused.
  RingHandle r81 = zn(81);
  CHECK_THROWS_AS(
      freshman_power_check(r81, gen(r81, {3}), r81->one(), r81->integer(3), 3),
      HypothesisError);
}

TEST_CASE("chain lift in a group ring stabilizes the identity coset") {
  RingHandle r = make_ring(RingSpec::group_ring(RingSpec::zmod(9), {2}));
  Ideal n1 = gen(r, {3});
  CncChain chain = verify_cnc(r, {n1});
  Element u = r->from_components({r->zero().components()[0], r->one().components()[0]});
  // (1 + 3u)^2 = 1 + 6u + 9u^2 = 1 + 6u, congruent to 1 mod <3>.
  Element a = r->add(r->one(), r->scalar_mul(6, u));
  LiftWitness w = chain_power_lift(chain, r->one(), a);
  CHECK(r->mul(w.root(), w.root()) == w.target());
  CHECK(w.target() == r->pow(a, w.exponent().get_ui()));
}

TEST_CASE("random seeds land on verified roots across small towers") {
  std::mt19937_64 rng(0xd00dfeedu);
  struct Tower {
    unsigned long p;
    unsigned k;
  };
  for (Tower tw : {Tower{3, 3}, Tower{5, 2}, Tower{7, 2}, Tower{11, 2}}) {
    unsigned long pk = 1;
    for (unsigned i = 0; i < tw.k; ++i) pk *= tw.p;
    RingHandle r = zn(pk);
    std::vector<Ideal> links;
    for (unsigned long d = tw.p; d < pk; d *= tw.p) {
      links.push_back(gen(r, {static_cast<long>(d)}));
    }
    CncChain chain = verify_cnc(r, links);
    std::uniform_int_distribution<unsigned long> pick(1, pk - 1);
    int built = 0;
    while (built < 25) {
      unsigned long y = pick(rng);
      if (y % tw.p == 0) continue;
      Element a = r->mul(r->integer(y), r->integer(y));
      // y mod p squares to a mod p, so it seeds the chain lift.
      LiftWitness w = chain_power_lift(chain, r->integer(y % tw.p), a);
      CHECK(r->mul(w.root(), w.root()) == w.target());
      CHECK(w.target() == r->pow(a, w.exponent()));
      ++built;
    }
  }
}
