#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrlift/ideal.hpp"

namespace qrlift {

// The set of square roots of a target, either exactly (y^2 = target) or
// modulo an ideal (y^2 - target in N). Construction re-checks every root
// and keeps them sorted and deduplicated.
class SolutionSet {
 public:
  SolutionSet(RingHandle ring, Element target, std::vector<Element> roots);
  SolutionSet(RingHandle ring, Element target, Ideal coset_ideal,
              std::vector<Element> roots);

  const RingHandle& ring() const { return ring_; }
  const Element& target() const { return target_; }
  const std::optional<Ideal>& coset_ideal() const { return coset_ideal_; }
  const std::vector<Element>& roots() const { return roots_; }
  std::size_t count() const { return roots_.size(); }
  bool empty() const { return roots_.empty(); }

 private:
  void normalize();

  RingHandle ring_;
  Element target_;
  std::optional<Ideal> coset_ideal_;
  std::vector<Element> roots_;
};

// One verified counting identity: lhs and rhs are the two sides after
// clearing denominators, pass records whether they agree.
struct IdentityCheck {
  std::string name;
  mpz_class lhs;
  mpz_class rhs;
  bool pass = false;
};

// Census of invertible squares in a ring, optionally relative to a chain.
// q_* figures count squares of units; alpha is the common root count per
// invertible square in the quotient by the top ideal, absent when the root
// counts fail to be uniform.
struct ResidueReport {
  RingHandle ring;
  std::optional<CncChain> chain;
  mpz_class n1_size = 1;
  mpz_class q_quotient_count = 0;
  mpz_class q_predicted = 0;
  mpz_class q_actual = 0;
  mpz_class unit_count = 0;
  mpz_class quotient_unit_count = 0;
  std::optional<mpz_class> alpha;
  std::optional<std::vector<Element>> invertible_squares;
  std::vector<IdentityCheck> checks;

  bool all_checks_pass() const;
};

// Factorization of an odd modulus into distinct odd prime powers.
struct ZnFactorization {
  mpz_class n;
  std::vector<std::pair<mpz_class, unsigned>> factors;
};

// Factors an odd n >= 3 by trial division, throwing CapError when a
// composite cofactor survives past the bound.
ZnFactorization factor_odd(const mpz_class& n,
                           std::uint64_t trial_bound = 1'000'000);

// All square roots of a in r, exhaustively for enumerable rings and via the
// prime-power pipeline for large odd Z_n with a a unit. Componentwise for
// products. CapError when no strategy applies.
SolutionSet sqrt_all(const RingHandle& r, const Element& a);

// Whether a is a unit and a square of a unit.
bool is_qr_unit(const RingHandle& r, const Element& a);

// Checks that membership in the invertible squares is constant on the coset
// a + N, equivalent to membership of the projection in the quotient.
// Requires N nilpotent with 2 invertible modulo N.
bool coset_equivalence_check(const RingHandle& r, const Ideal& N,
                             const Element& a);

// Root counts of a at every level of the chain: in r itself, then in each
// quotient r/N_i from the bottom ideal up to the top. The theory predicts
// one constant value; callers assert that.
std::vector<mpz_class> solution_count_chain(const RingHandle& r,
                                            const CncChain& chain,
                                            const Element& a);

// Full census of r relative to a verified chain: counts units and
// invertible squares in r and in r/N_1, predicts the lifted count, and
// records the identity checks.
ResidueReport chain_census(const RingHandle& r, const CncChain& chain);

// Combines factor censuses into one for the product ring; counts multiply
// and alpha survives only when every factor has one.
ResidueReport product_census(const std::vector<ResidueReport>& factors);

// Census of Z_n for odd n >= 3 using the radical chain and closed-form
// counts, with brute-force cross-checks when n fits under cap. Supply the
// factorization to skip trial division.
ResidueReport zn_census(
    const mpz_class& n,
    const std::optional<ZnFactorization>& factorization = std::nullopt,
    std::uint64_t cap = kDefaultEnumerationCap);

// Every square root of a modulo odd n with gcd(a, n) = 1, via per-prime
// roots, quadratic refinement, and sign combination.
SolutionSet sqrt_zn(
    const mpz_class& n, const mpz_class& a,
    const std::optional<ZnFactorization>& factorization = std::nullopt,
    std::uint64_t cap = kDefaultEnumerationCap);

// Serializations of a report; counts render as decimal strings so that
// arbitrarily large figures survive the trip.
std::string report_to_json(const ResidueReport& report, int indent = 2);
std::string report_to_table(const ResidueReport& report);

}  // namespace qrlift
