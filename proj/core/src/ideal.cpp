#include "qrlift/ideal.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace qrlift {

namespace {

bool same_ring(const RingHandle& a, const RingHandle& b) { return a.get() == b.get(); }

bool is_zmod(const RingHandle& r) {
  return r->spec() && r->spec()->kind() == RingSpec::Kind::ZMod;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideal

bool Ideal::contains(const Element& a) const {
  ring_->check_element(a);
  if (principal_) return mpz_divisible_p(a.residue().get_mpz_t(), d_.get_mpz_t()) != 0;
  return index_set_.count(ring_->index_of(a)) > 0;
}

bool Ideal::subset_of(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) {
    throw DomainError("cannot compare ideals of different rings");
  }
  if (principal_ != other.principal_) {
    throw DomainError("cannot compare symbolic and enumerated ideals");
  }
  if (principal_) {
    // <d1> is inside <d2> exactly when d2 divides d1.
    return mpz_divisible_p(d_.get_mpz_t(), other.d_.get_mpz_t()) != 0;
  }
  for (std::uint64_t idx : indices_) {
    if (other.index_set_.count(idx) == 0) return false;
  }
  return true;
}

bool Ideal::is_zero() const {
  return principal_ ? d_ == ring_->cardinality() : indices_.size() == 1;
}

bool Ideal::is_whole_ring() const {
  return principal_ ? d_ == 1 : size_ == ring_->cardinality();
}

bool Ideal::operator==(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_) || principal_ != other.principal_) return false;
  return principal_ ? d_ == other.d_ : indices_ == other.indices_;
}

const mpz_class* Ideal::principal_modulus() const {
  return principal_ ? &d_ : nullptr;
}

const std::vector<std::uint64_t>* Ideal::element_indices() const {
  return principal_ ? nullptr : &indices_;
}

std::vector<Element> Ideal::elements() const {
  std::vector<Element> out;
  if (principal_) {
    if (mpz_cmp_ui(size_.get_mpz_t(), ring_->enumeration_cap()) > 0) {
      throw CapError("ideal " + describe() + " has " + size_.get_str() +
                     " elements, above the enumeration cap");
    }
    const std::uint64_t count = mpz_get_ui(size_.get_mpz_t());
    out.reserve(count);
    mpz_class v = 0;
    for (std::uint64_t k = 0; k < count; ++k, v += d_) out.push_back(ring_->integer(v));
    return out;
  }
  out.reserve(indices_.size());
  for (std::uint64_t idx : indices_) out.push_back(ring_->element_at(idx));
  return out;
}

std::string Ideal::describe() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i > 0) out += ", ";
    out += ring_->format(generators_[i]);
  }
  return out + ">";
}

Ideal ideal_from_generators(const RingHandle& r, const std::vector<Element>& generators) {
  if (!r) throw DomainError("ideal_from_generators: null ring");
  for (const Element& g : generators) r->check_element(g);
  Ideal I;
  I.ring_ = r;
  I.generators_ = generators.empty() ? std::vector<Element>{r->zero()} : generators;
  if (is_zmod(r)) {
    const mpz_class& n = r->spec()->zmod_modulus();
    mpz_class d = n;
    for (const Element& g : generators) {
      mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), g.residue().get_mpz_t());
    }
    I.principal_ = true;
    I.d_ = std::move(d);
    I.size_ = n / I.d_;
    return I;
  }
  r->require_enumerable();
  const std::uint64_t n = r->size_u64();
  const std::uint64_t zero_idx = r->index_of(r->zero());
  // First all ring multiples of the generators, then the additive closure of
  // those; together that is exactly the generated ideal.
  std::vector<std::uint64_t> multiples;
  std::unordered_set<std::uint64_t> mset;
  for (const Element& g : generators) {
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t idx = r->index_of(r->mul(r->element_at(i), g));
      if (mset.insert(idx).second) multiples.push_back(idx);
    }
  }
  std::unordered_set<std::uint64_t> seen{zero_idx};
  std::vector<std::uint64_t> queue{zero_idx};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Element x = r->element_at(queue[qi]);
    for (std::uint64_t m : multiples) {
      std::uint64_t y = r->index_of(r->add(x, r->element_at(m)));
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  std::sort(queue.begin(), queue.end());
  I.indices_ = std::move(queue);
  I.index_set_ = std::move(seen);
  I.size_ = mpz_class(static_cast<unsigned long>(I.indices_.size()));
  return I;
}

Ideal zero_ideal(const RingHandle& r) { return ideal_from_generators(r, {}); }

Ideal ideal_power(const Ideal& I, std::uint64_t t) {
  if (t == 0) throw DomainError("ideal_power: exponent must be positive");
  if (t == 1) return I;
  const RingHandle& r = I.ring();
  if (I.principal_) {
    const mpz_class& n = r->spec()->zmod_modulus();
    mpz_class texp(static_cast<unsigned long>(t));
    mpz_class dt;
    mpz_powm(dt.get_mpz_t(), I.d_.get_mpz_t(), texp.get_mpz_t(), n.get_mpz_t());
    // gcd(d^t mod n, n) = gcd(d^t, n); a zero power lands on the zero ideal.
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), dt.get_mpz_t(), n.get_mpz_t());
    Ideal out;
    out.ring_ = r;
    out.principal_ = true;
    out.d_ = std::move(g);
    out.size_ = n / out.d_;
    out.generators_ = {r->integer(out.d_)};
    return out;
  }
  // The ideal generated by all t-fold products of generators.
  std::vector<Element> products{r->one()};
  for (std::uint64_t step = 0; step < t; ++step) {
    std::vector<Element> next;
    next.reserve(products.size() * I.generators_.size());
    for (const Element& p : products) {
      for (const Element& g : I.generators_) next.push_back(r->mul(p, g));
    }
    std::sort(next.begin(), next.end(), ElementLess{});
    next.erase(std::unique(next.begin(), next.end()), next.end());
    products = std::move(next);
  }
  return ideal_from_generators(r, products);
}

// ---------------------------------------------------------------------------
// Nilpotency and chain validation

NilpotencyData nilpotency_data(const Ideal& I, const Ideal& J) {
  const RingHandle& r = I.ring();
  if (!same_ring(r, J.ring())) {
    throw DomainError("nilpotency_data: ideals live in different rings");
  }
  if (!J.subset_of(I)) {
    throw DomainError("nilpotency_data: target ideal must sit inside the source ideal");
  }
  NilpotencyData out;
  Ideal power = ideal_power(I, 2);
  std::uint64_t t = 2;
  while (!power.subset_of(J)) {
    Ideal next = ideal_power(I, t + 1);
    if (next == power) {
      throw HypothesisError("ideal " + I.describe() + " is not nilpotent into " +
                            J.describe() + "; its powers stabilize with " +
                            power.size().get_str() + " elements");
    }
    power = std::move(next);
    ++t;
  }
  out.t = t;
  out.s = 1;
  if (const mpz_class* d = I.principal_modulus()) {
    // Minimal s with e | s*d, for J = <e>.
    const mpz_class& e = *J.principal_modulus();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d->get_mpz_t(), e.get_mpz_t());
    out.s = e / g;
  } else {
    for (const Element& g : I.generators()) {
      mpz_class ord = 1;
      Element acc = g;
      while (!J.contains(acc)) {
        acc = r->add(acc, g);
        ++ord;
      }
      mpz_lcm(out.s.get_mpz_t(), out.s.get_mpz_t(), ord.get_mpz_t());
    }
  }
  return out;
}

mpz_class CncChain::exponent_product() const {
  mpz_class out = 1;
  for (const mpz_class& s : ss_) out *= s;
  return out;
}

CncChain verify_cnc(const RingHandle& r, std::vector<Ideal> ideals) {
  if (!r) throw DomainError("verify_cnc: null ring");
  // An empty input is the trivial chain, just the zero ideal.
  if (ideals.empty()) ideals.push_back(zero_ideal(r));
  for (const Ideal& I : ideals) {
    if (!same_ring(r, I.ring())) {
      throw DomainError("verify_cnc: chain ideal belongs to a different ring");
    }
  }
  if (!ideals.back().is_zero()) ideals.push_back(zero_ideal(r));
  if (ideals.front().is_whole_ring()) {
    throw CncError(CncError::Condition::Chain, 1,
                   "link 1: the top ideal is the whole ring; it must be proper");
  }
  for (std::size_t i = 0; i + 1 < ideals.size(); ++i) {
    if (!ideals[i + 1].subset_of(ideals[i])) {
      throw CncError(CncError::Condition::Chain, i + 2,
                     "link " + std::to_string(i + 2) + ": ideal " +
                         ideals[i + 1].describe() + " is not contained in " +
                         ideals[i].describe());
    }
  }
  CncChain chain;
  chain.ring_ = r;
  for (std::size_t i = 0; i + 1 < ideals.size(); ++i) {
    NilpotencyData nd;
    try {
      nd = nilpotency_data(ideals[i], ideals[i + 1]);
    } catch (const HypothesisError& e) {
      throw CncError(CncError::Condition::Nilpotency, i + 1,
                     "link " + std::to_string(i + 1) + ": " + e.what());
    }
    // Every prime factor of s must be at least t. The smallest divisor of s
    // above 1 is prime, so scanning divisors below t is exact for any size s.
    for (std::uint64_t q = 2; q < nd.t; ++q) {
      if (mpz_divisible_ui_p(nd.s.get_mpz_t(), q)) {
        throw CncError(CncError::Condition::Characteristic, i + 1,
                       "link " + std::to_string(i + 1) + ": additive exponent " +
                           nd.s.get_str() + " has prime factor " + std::to_string(q) +
                           " below the nilpotency exponent " + std::to_string(nd.t));
      }
    }
    chain.ts_.push_back(nd.t);
    chain.ss_.push_back(nd.s);
  }
  chain.ideals_ = std::move(ideals);
  return chain;
}

// ---------------------------------------------------------------------------
// Quotients

namespace {

// Enumerated ring of cosets a + N. Representatives are least parent indices,
// so coset 0 is N itself and the quotient zero.
class CosetRing final : public Ring {
 public:
  CosetRing(RingHandle parent, const std::vector<Element>& ideal_elements,
            std::string ideal_desc)
      : Ring(std::nullopt, parent->enumeration_cap()),
        parent_(std::move(parent)),
        ideal_desc_(std::move(ideal_desc)),
        members_(ideal_elements) {
    const std::uint64_t n = parent_->size_u64();
    coset_of_.assign(n, kNone);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      if (coset_of_[idx] != kNone) continue;
      const std::uint64_t c = reps_.size();
      reps_.push_back(idx);
      Element a = parent_->element_at(idx);
      for (const Element& e : ideal_elements) {
        coset_of_[parent_->index_of(parent_->add(a, e))] = c;
      }
    }
    // Characteristic: least k with k*1 falling into the ideal.
    mpz_class ch = 1;
    Element acc = parent_->one();
    while (coset_of_[parent_->index_of(acc)] != 0) {
      acc = parent_->add(acc, parent_->one());
      ++ch;
    }
    init(mpz_class(static_cast<unsigned long>(reps_.size())), std::move(ch),
         wrap(this, std::uint64_t{0}),
         wrap(this, coset_of_[parent_->index_of(parent_->one())]));
  }

  std::string describe() const override { return parent_->describe() + "/" + ideal_desc_; }

  Element element_at(std::uint64_t index) const override {
    if (index >= reps_.size()) throw DomainError("element index out of range");
    return wrap(this, index);
  }

  std::uint64_t index_of(const Element& a) const override {
    check_element(a);
    return a.coset_index();
  }

  Element integer(const mpz_class& k) const override {
    return project_index(parent_->index_of(parent_->integer(k)));
  }

  std::string format(const Element& a) const override {
    check_element(a);
    return parent_->format(parent_->element_at(reps_[a.coset_index()]));
  }

  Element project_index(std::uint64_t parent_index) const {
    return wrap(this, coset_of_[parent_index]);
  }

  Element project(const Element& a) const { return project_index(parent_->index_of(a)); }

  Element representative(const Element& q) const {
    check_element(q);
    return parent_->element_at(reps_[q.coset_index()]);
  }

  // In a finite commutative ring units lift along any quotient, so a coset
  // is a unit exactly when one of its members is.
  bool is_unit(const Element& a) const override {
    check_element(a);
    Element rep = parent_->element_at(reps_[a.coset_index()]);
    for (const Element& m : members_) {
      if (parent_->is_unit(parent_->add(rep, m))) return true;
    }
    return false;
  }

  std::optional<Element> try_inverse(const Element& a) const override {
    check_element(a);
    Element rep = parent_->element_at(reps_[a.coset_index()]);
    for (const Element& m : members_) {
      std::optional<Element> inv = parent_->try_inverse(parent_->add(rep, m));
      if (inv) return project(*inv);
    }
    return std::nullopt;
  }

 protected:
  Element add_impl(const Element& a, const Element& b) const override {
    return lift2(a, b, [&](const Element& x, const Element& y) { return parent_->add(x, y); });
  }

  Element neg_impl(const Element& a) const override {
    return project(parent_->neg(parent_->element_at(reps_[a.coset_index()])));
  }

  Element mul_impl(const Element& a, const Element& b) const override {
    return lift2(a, b, [&](const Element& x, const Element& y) { return parent_->mul(x, y); });
  }

 private:
  static constexpr std::uint64_t kNone = ~std::uint64_t{0};

  template <typename F>
  Element lift2(const Element& a, const Element& b, F&& op) const {
    Element ra = parent_->element_at(reps_[a.coset_index()]);
    Element rb = parent_->element_at(reps_[b.coset_index()]);
    return project(op(ra, rb));
  }

  RingHandle parent_;
  std::string ideal_desc_;
  std::vector<Element> members_;
  std::vector<std::uint64_t> coset_of_;
  std::vector<std::uint64_t> reps_;
};

}  // namespace

Element Quotient::project(const Element& a) const {
  parent_->check_element(a);
  return project_(a);
}

Element Quotient::representative(const Element& q) const {
  ring_->check_element(q);
  return represent_(q);
}

Quotient quotient(const RingHandle& r, const Ideal& N) {
  if (!r) throw DomainError("quotient: null ring");
  if (!same_ring(r, N.ring())) throw DomainError("quotient: ideal belongs to a different ring");
  if (N.is_whole_ring()) {
    throw DomainError("quotient by the whole ring is the zero ring, which is not supported");
  }
  Quotient q;
  q.parent_ = r;
  if (N.is_zero()) {
    q.ring_ = r;
    q.project_ = [](const Element& a) { return a; };
    q.represent_ = [](const Element& a) { return a; };
    return q;
  }
  if (const mpz_class* d = N.principal_modulus()) {
    // Z/nZ / <d> is Z/dZ; residues map by reduction and lift verbatim.
    RingHandle qr = make_ring(RingSpec::zmod(*d), r->enumeration_cap());
    q.ring_ = qr;
    q.project_ = [qr](const Element& a) { return qr->integer(a.residue()); };
    RingHandle parent = r;
    q.represent_ = [parent](const Element& a) { return parent->integer(a.residue()); };
    return q;
  }
  r->require_enumerable();
  auto cr = std::make_shared<CosetRing>(r, N.elements(), N.describe());
  q.ring_ = cr;
  q.project_ = [cr](const Element& a) { return cr->project(a); };
  q.represent_ = [cr](const Element& a) { return cr->representative(a); };
  return q;
}

}  // namespace qrlift
