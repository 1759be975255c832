#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrlift/errors.hpp"

// Finite commutative rings with identity, built from four constructors:
// Z/nZ, quotients by a monic polynomial, group rings over finite abelian
// groups, and direct products. Elements are immutable values tied to the
// ring that made them; all arithmetic goes through the ring object.

namespace qrlift {

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

// Default bound on how many elements an operation may materialize or scan.
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Structural description of a constructible ring. Cheap to copy and compare;
// realize one into an actual Ring with make_ring().
class RingSpec {
 public:
  enum class Kind { ZMod, QuotientPoly, GroupRing, Product };

  static RingSpec zmod(mpz_class modulus);
  // modulus_poly lists coefficients low to high, constant term first. The
  // polynomial must be monic of degree >= 1; coefficients are reduced mod
  // the base characteristic.
  static RingSpec quotient_poly(RingSpec base, std::vector<mpz_class> modulus_poly);
  static RingSpec group_ring(RingSpec base, std::vector<std::uint64_t> cyclic_orders);
  static RingSpec product(std::vector<RingSpec> factors);

  Kind kind() const { return kind_; }
  const mpz_class& zmod_modulus() const;
  const RingSpec& base() const;
  const std::vector<mpz_class>& modulus_poly() const;
  const std::vector<std::uint64_t>& cyclic_orders() const;
  const std::vector<RingSpec>& factors() const;

  mpz_class cardinality() const;
  mpz_class characteristic() const;

  bool operator==(const RingSpec& other) const;
  bool operator!=(const RingSpec& other) const { return !(*this == other); }

 private:
  RingSpec() = default;

  Kind kind_ = Kind::ZMod;
  mpz_class n_;                           // ZMod
  std::shared_ptr<const RingSpec> base_;  // QuotientPoly, GroupRing
  std::vector<mpz_class> poly_;           // QuotientPoly, canonical form
  std::vector<std::uint64_t> orders_;     // GroupRing
  std::vector<RingSpec> factors_;         // Product
};

// An element of a specific Ring. Payload depends on the ring family:
//   mpz_class             residue in Z/nZ
//   std::uint64_t         coset index in an enumerated quotient ring
//   std::vector<Element>  poly coefficients (low first), group-ring
//                         coefficients (by group element index), or a
//                         product tuple (by factor)
// Elements compare structurally and only make sense within their own ring.
class Element {
 public:
  using Rep = std::variant<mpz_class, std::uint64_t, std::vector<Element>>;

  Element() = delete;

  const Ring* ring() const { return ring_; }
  const Rep& rep() const { return rep_; }

  const mpz_class& residue() const;
  std::uint64_t coset_index() const;
  const std::vector<Element>& components() const;

  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }

 private:
  friend class Ring;
  Element(const Ring* ring, Rep rep) : ring_(ring), rep_(std::move(rep)) {}

  const Ring* ring_;
  Rep rep_;
};

// Total order on elements of one ring, consistent with enumeration order
// where the ring is enumerable. Negative / zero / positive like strcmp.
int structural_compare(const Element& a, const Element& b);

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const {
    return structural_compare(a, b) < 0;
  }
};

// Prints via the owning ring's format().
std::ostream& operator<<(std::ostream& os, const Element& e);

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;
  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  // Empty for rings that exist only as quotient images of another ring.
  const std::optional<RingSpec>& spec() const { return spec_; }

  const mpz_class& cardinality() const { return cardinality_; }
  const mpz_class& characteristic() const { return characteristic_; }
  const Element& zero() const { return *zero_; }
  const Element& one() const { return *one_; }

  std::uint64_t enumeration_cap() const { return cap_; }
  // True when the whole ring may be walked element by element under the cap.
  bool enumerable() const;
  // Cardinality as an index bound; throws CapError when not enumerable.
  std::uint64_t size_u64() const;
  void require_enumerable() const;

  virtual std::string describe() const = 0;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  // Square-and-multiply; exponent must be >= 0.
  Element pow(const Element& a, const mpz_class& exponent) const;
  // k-fold sum, double-and-add; k may be negative.
  Element scalar_mul(const mpz_class& k, const Element& a) const;
  // The image of the integer k, i.e. k * one().
  virtual Element integer(const mpz_class& k) const;

  virtual bool is_unit(const Element& a) const;
  virtual std::optional<Element> try_inverse(const Element& a) const;
  // Like try_inverse but throws DomainError for non-units.
  Element inverse(const Element& a) const;

  // Enumeration. Indices run 0 .. size_u64()-1; composite rings use
  // mixed-radix order, least significant component first.
  virtual Element element_at(std::uint64_t index) const = 0;
  virtual std::uint64_t index_of(const Element& a) const = 0;

  // All units in enumeration order. Requires an enumerable ring.
  std::vector<Element> units() const;
  // |R*|. Closed form where the structure provides one, else a scan.
  virtual mpz_class unit_count() const;

  virtual std::string format(const Element& a) const = 0;

  // Builds an element from parts: polynomial coefficients (constant first),
  // group-ring coefficients (by group element index), or a product tuple.
  // Short part lists are zero-padded; products need one part per factor.
  // Throws DomainError for rings without component structure.
  virtual Element from_components(std::vector<Element> parts) const;

  // Throws DomainError unless a belongs to this ring.
  void check_element(const Element& a) const;

 protected:
  Ring(std::optional<RingSpec> spec, std::uint64_t cap)
      : spec_(std::move(spec)), cap_(cap) {}

  // Subclass constructors call this once the virtual table is usable.
  void init(mpz_class cardinality, mpz_class characteristic, Element zero, Element one);

  static Element wrap(const Ring* ring, Element::Rep rep) {
    return Element(ring, std::move(rep));
  }

  virtual Element add_impl(const Element& a, const Element& b) const = 0;
  virtual Element neg_impl(const Element& a) const = 0;
  virtual Element mul_impl(const Element& a, const Element& b) const = 0;

 private:
  struct UnitScan {
    static constexpr std::uint64_t kNone = ~std::uint64_t{0};
    std::vector<std::uint64_t> inverse_index;  // kNone marks non-units
  };
  const UnitScan& unit_scan() const;

  std::optional<RingSpec> spec_;
  std::uint64_t cap_;
  mpz_class cardinality_;
  mpz_class characteristic_;
  std::optional<Element> zero_;
  std::optional<Element> one_;

  mutable std::once_flag unit_scan_once_;
  mutable std::optional<UnitScan> unit_scan_;
};

// Realizes a spec into a ring object. Validation already happened in the
// spec factories; this allocates the arithmetic machinery.
RingHandle make_ring(const RingSpec& spec, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace qrlift
