#include "qrlift/census.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <utility>

#include "detail.hpp"
#include "json.hpp"
#include "qrlift/lift.hpp"

namespace qrlift {

namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

bool is_odd_zmod(const RingHandle& r) {
  return r->spec() && r->spec()->kind() == RingSpec::Kind::ZMod &&
         mpz_odd_p(r->spec()->zmod_modulus().get_mpz_t());
}

bool is_product(const RingHandle& r) {
  return r->spec() && r->spec()->kind() == RingSpec::Kind::Product;
}

mpz_class pow2(unsigned m) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, m);
  return out;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return out;
}

// Euler's criterion; a must not be divisible by the odd prime p.
bool euler_qr(const mpz_class& a, const mpz_class& p) {
  return powm(a, (p - 1) / 2, p) == 1;
}

// One pass over a ring, or closed forms for odd Z_n: unit total, count of
// invertible squares, and the per-square root count when it is uniform.
struct UnitSquares {
  mpz_class units;
  mpz_class q_count;
  std::optional<mpz_class> alpha;
  std::optional<std::vector<Element>> q_list;
};

UnitSquares survey_unit_squares(const RingHandle& r) {
  if (r->enumerable()) {
    const std::uint64_t n = r->size_u64();
    std::vector<std::uint32_t> hist(n, 0);
    std::vector<std::uint8_t> unit(n, 0);
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      Element e = r->element_at(i);
      ++hist[r->index_of(r->mul(e, e))];
      if (r->is_unit(e)) {
        unit[i] = 1;
        ++units;
      }
    }
    // Roots of a unit are units, so the histogram restricted to unit targets
    // counts exactly the unit roots.
    std::vector<Element> q_list;
    std::optional<mpz_class> alpha;
    bool uniform = true;
    std::uint32_t common = 0;
    for (std::uint64_t b = 0; b < n; ++b) {
      if (!unit[b] || hist[b] == 0) continue;
      if (q_list.empty()) {
        common = hist[b];
      } else if (hist[b] != common) {
        uniform = false;
      }
      q_list.push_back(r->element_at(b));
    }
    if (uniform && !q_list.empty()) alpha = mpz_class(common);
    UnitSquares out;
    out.units = mpz_class(static_cast<unsigned long>(units));
    out.q_count = mpz_class(static_cast<unsigned long>(q_list.size()));
    out.alpha = std::move(alpha);
    out.q_list = std::move(q_list);
    return out;
  }
  if (is_odd_zmod(r)) {
    const mpz_class& n = r->spec()->zmod_modulus();
    std::vector<detail::PrimePower> f = detail::factorize(n, kTrialBound);
    mpz_class phi = 1;
    for (const detail::PrimePower& pp : f) {
      mpz_class pk;
      mpz_pow_ui(pk.get_mpz_t(), pp.p.get_mpz_t(), pp.k - 1);
      phi *= pk * (pp.p - 1);
    }
    const unsigned m = static_cast<unsigned>(f.size());
    UnitSquares out;
    out.units = phi;
    out.q_count = phi / pow2(m);
    out.alpha = pow2(m);
    return out;
  }
  throw CapError("cannot census " + r->describe() +
                 ": not enumerable under the cap and no closed form applies");
}

void check_row(std::vector<IdentityCheck>& checks, std::string name, mpz_class lhs,
               mpz_class rhs) {
  bool pass = lhs == rhs;
  checks.push_back({std::move(name), std::move(lhs), std::move(rhs), pass});
}

// Number of y with y^2 = x, by scan or by the odd modular closed form.
mpz_class root_count(const RingHandle& r, const Element& x) {
  if (r->enumerable()) {
    const std::uint64_t n = r->size_u64();
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      Element y = r->element_at(i);
      if (r->mul(y, y) == x) ++count;
    }
    return mpz_class(static_cast<unsigned long>(count));
  }
  if (is_odd_zmod(r)) {
    if (!r->is_unit(x)) {
      throw CapError("root counting for non-units needs an enumerable ring");
    }
    const mpz_class& n = r->spec()->zmod_modulus();
    std::vector<detail::PrimePower> f = detail::factorize(n, kTrialBound);
    const mpz_class& v = x.residue();
    for (const detail::PrimePower& pp : f) {
      if (!euler_qr(v % pp.p, pp.p)) return 0;
    }
    return pow2(static_cast<unsigned>(f.size()));
  }
  r->require_enumerable();
  return 0;  // unreachable
}

ZnFactorization resolve_factorization(const mpz_class& n,
                                      const std::optional<ZnFactorization>& given,
                                      std::uint64_t trial_bound) {
  if (!given) return factor_odd(n, trial_bound);
  const ZnFactorization& f = *given;
  if (f.n != n) {
    throw DomainError("the supplied factorization is for modulus " + f.n.get_str() +
                      ", not " + n.get_str());
  }
  if (f.factors.empty()) {
    throw DomainError("a factorization needs at least one prime power");
  }
  mpz_class prod = 1;
  for (const auto& [p, k] : f.factors) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()) ||
        mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) {
      throw DomainError("factorization entry " + p.get_str() + " is not an odd prime");
    }
    if (k == 0) throw DomainError("prime exponents must be positive");
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    prod *= pk;
  }
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
      if (f.factors[i].first == f.factors[j].first) {
        throw DomainError("factorization repeats the prime " + f.factors[i].first.get_str());
      }
    }
  }
  if (prod != n) {
    throw DomainError("the factorization multiplies out to " + prod.get_str() +
                      ", not " + n.get_str());
  }
  return f;
}

// Square root modulo an odd prime; a in [1, p) must pass Euler's criterion.
mpz_class prime_sqrt(const mpz_class& a, const mpz_class& p) {
  if (p < 50) {
    for (mpz_class y = 1; y < p; ++y) {
      if (y * y % p == a) return y;
    }
    throw DomainError("no square root of " + a.get_str() + " modulo " + p.get_str());
  }
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) return powm(a, (p + 1) / 4, p);
  // Tonelli and Shanks. The non-residue scan is deterministic; half of all
  // residues qualify so it ends quickly.
  mpz_class q = p - 1;
  const unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
  mpz_class z = 2;
  while (euler_qr(z, p)) ++z;
  unsigned long m = s;
  mpz_class c = powm(z, q, p);
  mpz_class t = powm(a, q, p);
  mpz_class r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned long i = 0;
    for (mpz_class tt = t; tt != 1; ++i) tt = tt * tt % p;
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// All square roots of a unit a modulo odd n: per-prime base roots, quadratic
// refinement up the prime power, then every sign mix glued together.
std::vector<mpz_class> sqrt_zn_residues(const mpz_class& n, const mpz_class& a,
                                        const ZnFactorization& f, std::uint64_t cap) {
  const std::size_t m = f.factors.size();
  if (m >= 63 || (std::uint64_t{1} << m) > cap) {
    throw CapError("the modulus has " + std::to_string(m) +
                   " prime factors, so the root count 2^" + std::to_string(m) +
                   " exceeds the cap");
  }
  std::vector<mpz_class> mods, plus;
  mods.reserve(m);
  plus.reserve(m);
  for (const auto& [p, k] : f.factors) {
    mpz_class ap = a % p;
    if (!euler_qr(ap, p)) return {};
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    mpz_class r0 = prime_sqrt(ap, p);
    mpz_class y = r0;
    if (k > 1) {
      RingHandle rp = make_ring(RingSpec::zmod(pk), cap);
      Ideal N = ideal_from_generators(rp, {rp->integer(p)});
      y = root_in_coset(rp, N, rp->integer(r0), rp->integer(a)).residue();
    }
    mods.push_back(std::move(pk));
    plus.push_back(std::move(y));
  }
  // Precompute the usual crt terms n/p^k * inverse, one per prime.
  std::vector<mpz_class> base(m);
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class mi = n / mods[i];
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mi.get_mpz_t(), mods[i].get_mpz_t());
    base[i] = mi * inv % n;
  }
  std::vector<mpz_class> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    mpz_class x = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const mpz_class& yi = (mask >> i & 1) ? mods[i] - plus[i] : plus[i];
      x += yi * base[i];
    }
    out.push_back(x % n);
  }
  return out;
}

void check_chain_hypotheses(const RingHandle& r, const CncChain& chain) {
  if (chain.ring().get() != r.get()) {
    throw DomainError("the chain belongs to a different ring");
  }
}

// 2 must be invertible modulo the top ideal for any of the lifting counts to
// hold; the zero ideal makes the quotient the ring itself and the counts
// tautological, so no hypothesis is needed there.
void check_two_unit(const Ideal& top, const Quotient& q) {
  if (top.is_zero()) return;
  if (!q.ring()->is_unit(q.ring()->integer(2))) {
    throw HypothesisError("2 is not invertible in " + q.ring()->describe() +
                          ", the quotient by the top ideal");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SolutionSet

SolutionSet::SolutionSet(RingHandle ring, Element target, std::vector<Element> roots)
    : ring_(std::move(ring)), target_(std::move(target)), roots_(std::move(roots)) {
  normalize();
}

SolutionSet::SolutionSet(RingHandle ring, Element target, Ideal coset_ideal,
                         std::vector<Element> roots)
    : ring_(std::move(ring)),
      target_(std::move(target)),
      coset_ideal_(std::move(coset_ideal)),
      roots_(std::move(roots)) {
  if (coset_ideal_->ring().get() != ring_.get()) {
    throw DomainError("the coset ideal belongs to a different ring");
  }
  normalize();
}

void SolutionSet::normalize() {
  ring_->check_element(target_);
  for (const Element& y : roots_) {
    ring_->check_element(y);
    Element defect = ring_->sub(ring_->mul(y, y), target_);
    bool ok = coset_ideal_ ? coset_ideal_->contains(defect) : defect == ring_->zero();
    if (!ok) {
      throw DomainError("solution set rejected " + ring_->format(y) +
                        ": its square misses the target " + ring_->format(target_));
    }
  }
  std::sort(roots_.begin(), roots_.end(), ElementLess{});
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
}

bool ResidueReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.pass; });
}

// ---------------------------------------------------------------------------
// Factoring

ZnFactorization factor_odd(const mpz_class& n, std::uint64_t trial_bound) {
  if (n < 3 || mpz_even_p(n.get_mpz_t())) {
    throw DomainError("expected an odd modulus of at least 3, got " + n.get_str());
  }
  ZnFactorization out;
  out.n = n;
  for (detail::PrimePower& pp : detail::factorize(n, trial_bound)) {
    out.factors.emplace_back(std::move(pp.p), pp.k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Membership and roots

bool is_qr_unit(const RingHandle& r, const Element& a) {
  r->check_element(a);
  if (is_product(r)) {
    for (const Element& c : a.components()) {
      if (!is_qr_unit(c.ring()->shared_from_this(), c)) return false;
    }
    return true;
  }
  if (is_odd_zmod(r)) {
    if (!r->is_unit(a)) return false;
    try {
      ZnFactorization f = factor_odd(r->spec()->zmod_modulus(), kTrialBound);
      for (const auto& [p, k] : f.factors) {
        if (!euler_qr(a.residue() % p, p)) return false;
      }
      return true;
    } catch (const CapError&) {
      if (!r->enumerable()) throw;
    }
  }
  r->require_enumerable();
  if (!r->is_unit(a)) return false;
  const std::uint64_t n = r->size_u64();
  for (std::uint64_t i = 0; i < n; ++i) {
    Element y = r->element_at(i);
    if (r->mul(y, y) == a) return true;
  }
  return false;
}

SolutionSet sqrt_all(const RingHandle& r, const Element& a) {
  r->check_element(a);
  if (is_product(r)) {
    // Roots combine freely across factors, so take the cartesian product of
    // the per-factor root lists.
    std::vector<std::vector<Element>> parts;
    std::uint64_t total = 1;
    for (const Element& c : a.components()) {
      SolutionSet s = sqrt_all(c.ring()->shared_from_this(), c);
      if (s.empty()) return SolutionSet(r, a, {});
      if (total > r->enumeration_cap() / s.count()) {
        throw CapError("the combined root count exceeds the enumeration cap");
      }
      total *= s.count();
      parts.push_back(s.roots());
    }
    std::vector<Element> out;
    out.reserve(total);
    std::vector<std::size_t> idx(parts.size(), 0);
    for (;;) {
      std::vector<Element> tuple;
      tuple.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) tuple.push_back(parts[i][idx[i]]);
      out.push_back(r->from_components(std::move(tuple)));
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == parts[j].size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
    return SolutionSet(r, a, std::move(out));
  }
  if (is_odd_zmod(r) && r->is_unit(a)) {
    const mpz_class& n = r->spec()->zmod_modulus();
    try {
      ZnFactorization f = factor_odd(n, kTrialBound);
      std::vector<Element> roots;
      for (mpz_class& y : sqrt_zn_residues(n, a.residue(), f, r->enumeration_cap())) {
        roots.push_back(r->integer(y));
      }
      return SolutionSet(r, a, std::move(roots));
    } catch (const CapError&) {
      if (!r->enumerable()) throw;
    }
  }
  r->require_enumerable();
  std::vector<Element> roots;
  const std::uint64_t n = r->size_u64();
  for (std::uint64_t i = 0; i < n; ++i) {
    Element y = r->element_at(i);
    if (r->mul(y, y) == a) roots.push_back(std::move(y));
  }
  return SolutionSet(r, a, std::move(roots));
}

bool coset_equivalence_check(const RingHandle& r, const Ideal& N, const Element& a) {
  r->check_element(a);
  if (N.ring().get() != r.get()) throw DomainError("the ideal belongs to a different ring");
  nilpotency_data(N, zero_ideal(r));
  Quotient q = quotient(r, N);
  check_two_unit(N, q);
  const bool side = is_qr_unit(q.ring(), q.project(a));
  for (const Element& m : N.elements()) {
    if (is_qr_unit(r, r->add(a, m)) != side) return false;
  }
  return true;
}

std::vector<mpz_class> solution_count_chain(const RingHandle& r, const CncChain& chain,
                                            const Element& a) {
  check_chain_hypotheses(r, chain);
  r->check_element(a);
  Quotient q1 = quotient(r, chain.top());
  check_two_unit(chain.top(), q1);
  if (!is_qr_unit(q1.ring(), q1.project(a))) {
    throw HypothesisError(r->format(a) +
                          " is not an invertible square modulo the top ideal");
  }
  // Bottom of the chain first: the zero ideal gives the count in the ring
  // itself, then each quotient up to the top.
  std::vector<mpz_class> counts;
  const std::vector<Ideal>& ideals = chain.ideals();
  for (std::size_t j = ideals.size(); j-- > 0;) {
    Quotient qj = quotient(r, ideals[j]);
    counts.push_back(root_count(qj.ring(), qj.project(a)));
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Censuses

ResidueReport chain_census(const RingHandle& r, const CncChain& chain) {
  check_chain_hypotheses(r, chain);
  const Ideal& top = chain.top();
  Quotient q = quotient(r, top);
  check_two_unit(top, q);
  UnitSquares ring_side = survey_unit_squares(r);
  UnitSquares quot_side = top.is_zero() ? ring_side : survey_unit_squares(q.ring());

  ResidueReport rep;
  rep.ring = r;
  rep.chain = chain;
  rep.n1_size = top.size();
  rep.q_quotient_count = quot_side.q_count;
  rep.q_predicted = rep.n1_size * quot_side.q_count;
  rep.q_actual = ring_side.q_count;
  rep.unit_count = ring_side.units;
  rep.quotient_unit_count = quot_side.units;
  rep.alpha = quot_side.alpha;
  rep.invertible_squares = std::move(ring_side.q_list);

  check_row(rep.checks, "units_lift", rep.unit_count, rep.n1_size * quot_side.units);
  check_row(rep.checks, "qr_lift", rep.q_actual, rep.q_predicted);
  if (rep.alpha) {
    check_row(rep.checks, "alpha_quotient", *rep.alpha * quot_side.q_count,
              quot_side.units);
    check_row(rep.checks, "alpha_lift", *rep.alpha * rep.q_actual,
              rep.n1_size * quot_side.units);
    check_row(rep.checks, "alpha_units", *rep.alpha * rep.q_actual, rep.unit_count);
  }
  return rep;
}

ResidueReport product_census(const std::vector<ResidueReport>& factors) {
  if (factors.empty()) {
    throw DomainError("a product census needs at least one factor report");
  }
  if (factors.size() == 1) return factors.front();
  std::vector<RingSpec> specs;
  std::uint64_t cap = kDefaultEnumerationCap;
  for (const ResidueReport& f : factors) {
    if (!f.ring->spec()) {
      throw DomainError("product census factors must be spec-backed rings");
    }
    specs.push_back(*f.ring->spec());
    cap = std::max(cap, f.ring->enumeration_cap());
  }
  ResidueReport rep;
  rep.ring = make_ring(RingSpec::product(std::move(specs)), cap);
  rep.n1_size = 1;
  rep.q_quotient_count = 1;
  rep.q_predicted = 1;
  rep.q_actual = 1;
  rep.unit_count = 1;
  rep.quotient_unit_count = 1;
  rep.alpha = mpz_class(1);
  for (const ResidueReport& f : factors) {
    rep.n1_size *= f.n1_size;
    rep.q_quotient_count *= f.q_quotient_count;
    rep.q_predicted *= f.q_predicted;
    rep.q_actual *= f.q_actual;
    rep.unit_count *= f.unit_count;
    rep.quotient_unit_count *= f.quotient_unit_count;
    if (rep.alpha && f.alpha) {
      *rep.alpha *= *f.alpha;
    } else {
      rep.alpha = std::nullopt;
    }
  }
  check_row(rep.checks, "qr_product", rep.q_actual, rep.q_predicted);
  if (rep.alpha) {
    check_row(rep.checks, "alpha_product_units", *rep.alpha * rep.q_actual,
              rep.unit_count);
    check_row(rep.checks, "alpha_product_lift", *rep.alpha * rep.q_actual,
              rep.n1_size * rep.quotient_unit_count);
  }
  return rep;
}

ResidueReport zn_census(const mpz_class& n, const std::optional<ZnFactorization>& fact,
                        std::uint64_t cap) {
  if (n < 3) throw DomainError("the census modulus must be at least 3");
  if (mpz_even_p(n.get_mpz_t())) {
    throw HypothesisError("the census requires 2 to be a unit, so the modulus must be odd");
  }
  ZnFactorization f = resolve_factorization(n, fact, kTrialBound);
  RingHandle r = make_ring(RingSpec::zmod(n), cap);

  mpz_class rad = 1, phi = 1, quot_units = 1;
  for (const auto& [p, k] : f.factors) {
    rad *= p;
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k - 1);
    phi *= pk * (p - 1);
    quot_units *= p - 1;
  }
  const unsigned m = static_cast<unsigned>(f.factors.size());

  // The radical chain: powers of <rad> shrink to the zero ideal and verify
  // as a valid chain; squarefree n collapses it to the trivial one.
  std::vector<Ideal> links;
  if (rad != n) {
    Ideal I = ideal_from_generators(r, {r->integer(rad)});
    for (unsigned t = 1;; ++t) {
      Ideal J = t == 1 ? I : ideal_power(I, t);
      if (J.is_zero()) break;
      links.push_back(std::move(J));
    }
  }
  CncChain chain = verify_cnc(r, links);

  ResidueReport rep;
  rep.ring = r;
  rep.chain = chain;
  rep.n1_size = chain.top().size();
  rep.q_quotient_count = quot_units / pow2(m);
  rep.q_predicted = rep.n1_size * rep.q_quotient_count;
  rep.q_actual = phi / pow2(m);
  rep.unit_count = phi;
  rep.quotient_unit_count = quot_units;
  rep.alpha = pow2(m);

  check_row(rep.checks, "units_lift", phi, rep.n1_size * quot_units);
  check_row(rep.checks, "qr_lift", rep.q_actual, rep.q_predicted);
  check_row(rep.checks, "alpha_units", *rep.alpha * rep.q_actual, phi);
  if (r->enumerable()) {
    UnitSquares brute = survey_unit_squares(r);
    check_row(rep.checks, "units_brute", phi, brute.units);
    check_row(rep.checks, "qr_brute", rep.q_actual, brute.q_count);
    check_row(rep.checks, "alpha_brute", *rep.alpha,
              brute.alpha ? *brute.alpha : mpz_class(-1));
    rep.invertible_squares = std::move(brute.q_list);
  }
  return rep;
}

SolutionSet sqrt_zn(const mpz_class& n, const mpz_class& a,
                    const std::optional<ZnFactorization>& fact, std::uint64_t cap) {
  if (n < 3 || mpz_even_p(n.get_mpz_t())) {
    throw DomainError("square root extraction needs an odd modulus of at least 3");
  }
  mpz_class v;
  mpz_fdiv_r(v.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  if (g != 1) {
    throw DomainError("gcd(" + v.get_str() + ", " + n.get_str() +
                      ") = " + g.get_str() + "; only unit residues are supported");
  }
  ZnFactorization f = resolve_factorization(n, fact, kTrialBound);
  RingHandle r = make_ring(RingSpec::zmod(n), cap);
  std::vector<Element> roots;
  for (mpz_class& y : sqrt_zn_residues(n, v, f, cap)) roots.push_back(r->integer(y));
  return SolutionSet(r, r->integer(v), std::move(roots));
}

// ---------------------------------------------------------------------------
// Rendering

std::string report_to_json(const ResidueReport& rep, int indent) {
  nlohmann::ordered_json j;
  j["ring_spec"] = rep.ring->describe();
  if (rep.chain) {
    nlohmann::ordered_json links = nlohmann::ordered_json::array();
    for (const Ideal& ideal : rep.chain->ideals()) {
      nlohmann::ordered_json gens = nlohmann::ordered_json::array();
      for (const Element& g : ideal.generators()) gens.push_back(rep.ring->format(g));
      links.push_back(std::move(gens));
    }
    j["chain"] = std::move(links);
  } else {
    j["chain"] = nullptr;
  }
  j["n1_size"] = rep.n1_size.get_str();
  j["q_quotient_count"] = rep.q_quotient_count.get_str();
  j["q_predicted"] = rep.q_predicted.get_str();
  j["q_actual"] = rep.q_actual.get_str();
  j["alpha"] = rep.alpha ? rep.alpha->get_str() : std::string("non-uniform");
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const IdentityCheck& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", c.lhs.get_str()},
                      {"rhs", c.rhs.get_str()},
                      {"pass", c.pass}});
  }
  j["checks"] = std::move(checks);
  return j.dump(indent);
}

std::string report_to_table(const ResidueReport& rep) {
  std::ostringstream out;
  out << "ring             " << rep.ring->describe() << "\n";
  if (rep.chain) {
    out << "chain            ";
    const std::vector<Ideal>& ideals = rep.chain->ideals();
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      if (i > 0) out << " > ";
      out << ideals[i].describe();
    }
    out << "\n";
  }
  out << "|N1|             " << rep.n1_size.get_str() << "\n";
  out << "units            " << rep.unit_count.get_str() << "\n";
  out << "quotient units   " << rep.quotient_unit_count.get_str() << "\n";
  out << "q quotient       " << rep.q_quotient_count.get_str() << "\n";
  out << "q predicted      " << rep.q_predicted.get_str() << "\n";
  out << "q actual         " << rep.q_actual.get_str() << "\n";
  out << "alpha            " << (rep.alpha ? rep.alpha->get_str() : "non-uniform") << "\n";
  for (const IdentityCheck& c : rep.checks) {
    out << (c.pass ? "pass  " : "FAIL  ") << c.name << "  " << c.lhs.get_str()
        << (c.pass ? " == " : " != ") << c.rhs.get_str() << "\n";
  }
  return out.str();
}

}  // namespace qrlift
