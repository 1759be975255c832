#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "qrlift/ring.hpp"

// Ideals, ideal chains, and quotient constructions. Ideals of Z/nZ stay
// symbolic (every one is <d> for a divisor d of n, however large n is);
// ideals of other rings are enumerated and therefore need an enumerable ring.

namespace qrlift {

class Ideal {
 public:
  const RingHandle& ring() const { return ring_; }
  const std::vector<Element>& generators() const { return generators_; }
  const mpz_class& size() const { return size_; }

  bool contains(const Element& a) const;
  bool subset_of(const Ideal& other) const;
  bool is_zero() const;
  bool is_whole_ring() const;
  bool operator==(const Ideal& other) const;
  bool operator!=(const Ideal& other) const { return !(*this == other); }

  // Canonical divisor d with I = <d> when the ring is Z/nZ (d = n encodes
  // the zero ideal); null for enumerated ideals.
  const mpz_class* principal_modulus() const;
  // Sorted enumeration-order indices; null when the ideal is symbolic.
  const std::vector<std::uint64_t>* element_indices() const;
  // Materializes elements in enumeration order; CapError when above the cap.
  std::vector<Element> elements() const;

  // "<g1, g2, ...>" with formatted generators.
  std::string describe() const;

 private:
  friend Ideal ideal_from_generators(const RingHandle&, const std::vector<Element>&);
  friend Ideal ideal_power(const Ideal&, std::uint64_t);
  Ideal() = default;

  RingHandle ring_;
  std::vector<Element> generators_;
  mpz_class size_;
  bool principal_ = false;
  mpz_class d_;
  std::vector<std::uint64_t> indices_;
  std::unordered_set<std::uint64_t> index_set_;
};

Ideal ideal_from_generators(const RingHandle& r, const std::vector<Element>& generators);
Ideal zero_ideal(const RingHandle& r);
// I^t for t >= 1, the ideal generated by t-fold products.
Ideal ideal_power(const Ideal& I, std::uint64_t t);

struct NilpotencyData {
  std::uint64_t t = 0;  // minimal t >= 2 with I^t inside J
  mpz_class s;          // minimal s >= 1 with s*I inside J
};

// Requires J to be an ideal of the same ring with J inside I. Throws
// HypothesisError when the powers of I stabilize outside J.
NilpotencyData nilpotency_data(const Ideal& I, const Ideal& J);

// A validated descending chain N_1 > N_2 > ... > N_k = {0} together with the
// per-link nilpotency exponents t_i and additive exponents s_i, where every
// prime factor of s_i is at least t_i. Built by verify_cnc only.
class CncChain {
 public:
  const RingHandle& ring() const { return ring_; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  const Ideal& top() const { return ideals_.front(); }
  std::size_t length() const { return ideals_.size(); }
  const std::vector<std::uint64_t>& nilpotency_exponents() const { return ts_; }
  const std::vector<mpz_class>& additive_exponents() const { return ss_; }
  // s_1 * ... * s_{k-1}; the exponent that collapses the whole chain.
  mpz_class exponent_product() const;

 private:
  friend CncChain verify_cnc(const RingHandle&, std::vector<Ideal>);
  CncChain() = default;

  RingHandle ring_;
  std::vector<Ideal> ideals_;
  std::vector<std::uint64_t> ts_;
  std::vector<mpz_class> ss_;
};

// Validates the three chain conditions and computes the exponents. The final
// zero ideal may be omitted from the input; it is appended when missing.
// Throws CncError naming the first violated condition and the 1-based link.
CncChain verify_cnc(const RingHandle& r, std::vector<Ideal> ideals);

// A quotient ring R/N with the projection and a canonical section. For the
// zero ideal the quotient is R itself; for Z/nZ it is the rebased ring Z/dZ;
// otherwise an enumerated ring of cosets (least-index representatives).
class Quotient {
 public:
  const RingHandle& ring() const { return ring_; }
  const RingHandle& parent() const { return parent_; }
  Element project(const Element& a) const;
  Element representative(const Element& q) const;

 private:
  friend Quotient quotient(const RingHandle&, const Ideal&);
  Quotient() = default;

  RingHandle parent_;
  RingHandle ring_;
  std::function<Element(const Element&)> project_;
  std::function<Element(const Element&)> represent_;
};

Quotient quotient(const RingHandle& r, const Ideal& N);

}  // namespace qrlift
