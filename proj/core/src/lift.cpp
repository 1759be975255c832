#include "qrlift/lift.hpp"

#include <string>
#include <utility>

namespace qrlift {

namespace {

void check_same_ring(const RingHandle& r, const Ideal& N, const char* who) {
  if (!r) throw DomainError(std::string(who) + ": null ring");
  if (N.ring().get() != r.get()) {
    throw DomainError(std::string(who) + ": ideal belongs to a different ring");
  }
}

// Raises HypothesisError unless N is nilpotent with every prime factor of
// its collapse exponent s at least the nilpotency index t; returns (t, s).
NilpotencyData collapse_data(const RingHandle& r, const Ideal& N) {
  NilpotencyData nd = nilpotency_data(N, zero_ideal(r));  // throws if not nilpotent
  for (std::uint64_t q = 2; q < nd.t; ++q) {
    if (mpz_divisible_ui_p(nd.s.get_mpz_t(), q)) {
      throw HypothesisError("collapse exponent " + nd.s.get_str() + " of " + N.describe() +
                            " has prime factor " + std::to_string(q) +
                            " below the nilpotency index " + std::to_string(nd.t));
    }
  }
  return nd;
}

}  // namespace

LiftWitness::LiftWitness(RingHandle ring, Element target, Element root,
                         std::vector<mpz_class> exponent_trace)
    : ring_(std::move(ring)),
      target_(std::move(target)),
      root_(std::move(root)),
      trace_(std::move(exponent_trace)) {
  ring_->check_element(target_);
  ring_->check_element(root_);
  if (ring_->mul(root_, root_) != target_) {
    throw DomainError("lift witness rejected: root^2 differs from target (root " +
                      ring_->format(root_) + ", target " + ring_->format(target_) + ")");
  }
}

mpz_class LiftWitness::exponent() const {
  mpz_class out = 1;
  for (const mpz_class& s : trace_) out *= s;
  return out;
}

bool assert_unit_coset(const RingHandle& r, const Ideal& N, const Element& a,
                       bool check_every_element) {
  check_same_ring(r, N, "assert_unit_coset");
  r->check_element(a);
  nilpotency_data(N, zero_ideal(r));  // hypothesis: N nilpotent
  Quotient q = quotient(r, N);
  bool unit = q.ring()->is_unit(q.project(a));
  if (unit && check_every_element) {
    // A unit coset of a nilpotent ideal consists of units of R; verify that
    // member by member.
    for (const Element& n : N.elements()) {
      Element b = r->add(a, n);
      if (!r->is_unit(b)) {
        throw HypothesisError("unit coset lifting failed: " + r->format(b) +
                              " in the coset of " + r->format(a) + " is not a unit");
      }
    }
  }
  return unit;
}

Element root_in_coset(const RingHandle& r, const Ideal& N, const Element& g,
                      const Element& b, bool verify_unique) {
  check_same_ring(r, N, "root_in_coset");
  r->check_element(g);
  r->check_element(b);
  if (!N.contains(r->sub(r->mul(g, g), b))) {
    throw HypothesisError("root_in_coset: g^2 does not match b modulo the ideal");
  }
  {
    Quotient q = quotient(r, N);
    Element two_g = q.project(r->scalar_mul(2, g));
    if (!q.ring()->is_unit(two_g)) {
      throw HypothesisError(
          "root_in_coset: 2g is not invertible modulo the ideal; "
          "square roots cannot be separated when 2 fails to be a unit");
    }
  }
  // Each Newton step at least doubles the ideal-power depth of the defect
  // y^2 - b, so convergence is logarithmic in the nilpotency index. The
  // fixed bound is generous for any representable ring; hitting it means a
  // precondition was violated in a way the checks above could not see.
  Element y = g;
  for (int step = 0; step < 96; ++step) {
    Element defect = r->sub(r->mul(y, y), b);
    if (defect == r->zero()) {
      if (verify_unique) {
        for (const Element& n : N.elements()) {
          Element cand = r->add(g, n);
          if (cand != y && r->mul(cand, cand) == b) {
            throw HypothesisError("root_in_coset: second root " + r->format(cand) +
                                  " found in the coset; uniqueness violated");
          }
        }
      }
      return y;
    }
    std::optional<Element> inv = r->try_inverse(r->scalar_mul(2, y));
    if (!inv) {
      throw HypothesisError("root_in_coset: 2y became non-invertible during iteration; "
                            "the ideal is not nil");
    }
    y = r->sub(y, r->mul(defect, *inv));
  }
  throw HypothesisError("root_in_coset: iteration did not converge; the ideal is not nilpotent");
}

mpz_class power_lift_exponent(const RingHandle& r, const Ideal& N) {
  check_same_ring(r, N, "power_lift_exponent");
  return collapse_data(r, N).s;
}

Element power_lift(const RingHandle& r, const Ideal& N, const Element& x) {
  check_same_ring(r, N, "power_lift");
  r->check_element(x);
  return r->pow(x, collapse_data(r, N).s);
}

LiftWitness chain_power_lift(const CncChain& chain, const Element& g, const Element& a) {
  const RingHandle& r = chain.ring();
  r->check_element(g);
  r->check_element(a);
  if (!chain.top().contains(r->sub(r->mul(g, g), a))) {
    throw HypothesisError("chain_power_lift: g^2 does not match the target modulo the top ideal");
  }
  mpz_class e = chain.exponent_product();
  return LiftWitness(r, r->pow(a, e), r->pow(g, e), chain.additive_exponents());
}

bool freshman_power_check(const RingHandle& r, const Ideal& N, const Element& a,
                          const Element& n, const mpz_class& p) {
  check_same_ring(r, N, "freshman_power_check");
  r->check_element(a);
  r->check_element(n);
  if (!N.contains(n)) {
    throw DomainError("freshman_power_check: n is not a member of the ideal");
  }
  if (mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) {
    throw DomainError("freshman_power_check: exponent " + p.get_str() + " is not prime");
  }
  NilpotencyData nd = nilpotency_data(N, zero_ideal(r));
  if (p < nd.t) {
    throw HypothesisError("freshman_power_check: prime " + p.get_str() +
                          " is below the nilpotency index " + std::to_string(nd.t));
  }
  Element lhs = r->sub(r->pow(r->add(a, n), p), r->pow(a, p));
  Ideal pn = ideal_from_generators(r, {r->scalar_mul(p, n)});
  return pn.contains(lhs);
}

}  // namespace qrlift
