#pragma once

#include <vector>

#include "qrlift/ideal.hpp"

// Lifting machinery: unit-coset lifting, Newton-style square-root refinement
// within a coset, the collapse power map, and the full chain lift.

namespace qrlift {

// Certificate that root^2 = target; construction re-verifies the equation.
class LiftWitness {
 public:
  LiftWitness(RingHandle ring, Element target, Element root,
              std::vector<mpz_class> exponent_trace);

  const RingHandle& ring() const { return ring_; }
  const Element& target() const { return target_; }
  const Element& root() const { return root_; }
  // Per-link exponents applied, top link first; empty for direct root lifts.
  const std::vector<mpz_class>& exponent_trace() const { return trace_; }
  // Product of the trace; 1 when empty.
  mpz_class exponent() const;

 private:
  RingHandle ring_;
  Element target_;
  Element root_;
  std::vector<mpz_class> trace_;
};

// True iff a + N is invertible in R/N. Requires N nil. When
// check_every_element is set (test mode) and the answer is true, also scans
// the coset and throws HypothesisError if some member is not a unit of R.
bool assert_unit_coset(const RingHandle& r, const Ideal& N, const Element& a,
                       bool check_every_element = false);

// The unique y in g + N with y^2 = b, given g^2 = b modulo N and 2g + N
// invertible. Newton steps y <- y - (y^2 - b)(2y)^{-1} drive the defect into
// ever-deeper powers of N and land exactly because N is nilpotent. With
// verify_unique set, the coset is additionally scanned for a second root.
Element root_in_coset(const RingHandle& r, const Ideal& N, const Element& g,
                      const Element& b, bool verify_unique = false);

// The collapse exponent s of a nilpotent ideal: minimal s with s*N = {0},
// subject to every prime factor of s being at least the nilpotency index.
// Throws HypothesisError when N is not nilpotent or the prime condition
// fails (which is exactly the even-characteristic obstruction for s even).
mpz_class power_lift_exponent(const RingHandle& r, const Ideal& N);

// x^s for the collapse exponent: a well-defined multiplicative map on R/N,
// sending every member of x + N to the same ring element.
Element power_lift(const RingHandle& r, const Ideal& N, const Element& x);

// Walks the whole chain: for g with g^2 = a modulo the top ideal, raises to
// the product of the per-link exponents, yielding an exact square root:
// (g^e)^2 = a^e with e = s_1 * ... * s_{k-1}.
LiftWitness chain_power_lift(const CncChain& chain, const Element& g, const Element& a);

// Verifies the prime-power expansion: (a+n)^p - a^p lies in the ideal
// generated by p*n. Requires n in N and p prime at least the nilpotency
// index of N. A test-only helper.
bool freshman_power_check(const RingHandle& r, const Ideal& N, const Element& a,
                          const Element& n, const mpz_class& p);

}  // namespace qrlift
