#include "qrlift/ring.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "detail.hpp"

namespace qrlift {

namespace {

// Group rings keep one coefficient per group element, so the group order is
// also the length of every element's representation. Keep it sane.
constexpr std::uint64_t kMaxGroupOrder = std::uint64_t{1} << 20;

std::string render_modulus_poly(const std::vector<mpz_class>& poly) {
  std::string out;
  for (std::size_t i = poly.size(); i-- > 0;) {
    const mpz_class& c = poly[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingSpec

RingSpec RingSpec::zmod(mpz_class modulus) {
  if (modulus < 2) throw DomainError("ZMod modulus must be at least 2");
  RingSpec s;
  s.kind_ = Kind::ZMod;
  s.n_ = std::move(modulus);
  return s;
}

RingSpec RingSpec::quotient_poly(RingSpec base, std::vector<mpz_class> modulus_poly) {
  mpz_class c = base.characteristic();
  for (mpz_class& coeff : modulus_poly) {
    mpz_fdiv_r(coeff.get_mpz_t(), coeff.get_mpz_t(), c.get_mpz_t());
  }
  while (!modulus_poly.empty() && modulus_poly.back() == 0) modulus_poly.pop_back();
  if (modulus_poly.size() < 2) {
    throw DomainError("modulus polynomial must have degree at least 1");
  }
  if (modulus_poly.back() != 1) {
    throw DomainError("modulus polynomial must be monic");
  }
  RingSpec s;
  s.kind_ = Kind::QuotientPoly;
  s.base_ = std::make_shared<const RingSpec>(std::move(base));
  s.poly_ = std::move(modulus_poly);
  return s;
}

RingSpec RingSpec::group_ring(RingSpec base, std::vector<std::uint64_t> cyclic_orders) {
  if (cyclic_orders.empty()) throw DomainError("group ring needs at least one cyclic factor");
  mpz_class order = 1;
  for (std::uint64_t k : cyclic_orders) {
    if (k < 2) throw DomainError("cyclic factor orders must be at least 2");
    order *= mpz_class(static_cast<unsigned long>(k));
  }
  if (order > kMaxGroupOrder) throw DomainError("group order too large for a group ring");
  RingSpec s;
  s.kind_ = Kind::GroupRing;
  s.base_ = std::make_shared<const RingSpec>(std::move(base));
  s.orders_ = std::move(cyclic_orders);
  return s;
}

RingSpec RingSpec::product(std::vector<RingSpec> factors) {
  if (factors.size() < 2) throw DomainError("product needs at least two factors");
  RingSpec s;
  s.kind_ = Kind::Product;
  s.factors_ = std::move(factors);
  return s;
}

const mpz_class& RingSpec::zmod_modulus() const {
  if (kind_ != Kind::ZMod) throw DomainError("spec is not a ZMod ring");
  return n_;
}

const RingSpec& RingSpec::base() const {
  if (!base_) throw DomainError("spec has no base ring");
  return *base_;
}

const std::vector<mpz_class>& RingSpec::modulus_poly() const {
  if (kind_ != Kind::QuotientPoly) throw DomainError("spec is not a polynomial quotient");
  return poly_;
}

const std::vector<std::uint64_t>& RingSpec::cyclic_orders() const {
  if (kind_ != Kind::GroupRing) throw DomainError("spec is not a group ring");
  return orders_;
}

const std::vector<RingSpec>& RingSpec::factors() const {
  if (kind_ != Kind::Product) throw DomainError("spec is not a product");
  return factors_;
}

mpz_class RingSpec::cardinality() const {
  switch (kind_) {
    case Kind::ZMod:
      return n_;
    case Kind::QuotientPoly: {
      mpz_class out;
      mpz_pow_ui(out.get_mpz_t(), base_->cardinality().get_mpz_t(),
                 static_cast<unsigned long>(poly_.size() - 1));
      return out;
    }
    case Kind::GroupRing: {
      unsigned long g = 1;
      for (std::uint64_t k : orders_) g *= static_cast<unsigned long>(k);
      mpz_class out;
      mpz_pow_ui(out.get_mpz_t(), base_->cardinality().get_mpz_t(), g);
      return out;
    }
    case Kind::Product: {
      mpz_class out = 1;
      for (const RingSpec& f : factors_) out *= f.cardinality();
      return out;
    }
  }
  throw DomainError("unreachable spec kind");
}

mpz_class RingSpec::characteristic() const {
  switch (kind_) {
    case Kind::ZMod:
      return n_;
    case Kind::QuotientPoly:
    case Kind::GroupRing:
      // The base embeds (constant polynomials, identity coefficient).
      return base_->characteristic();
    case Kind::Product: {
      mpz_class out = 1;
      for (const RingSpec& f : factors_) {
        mpz_class c = f.characteristic();
        mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), c.get_mpz_t());
      }
      return out;
    }
  }
  throw DomainError("unreachable spec kind");
}

bool RingSpec::operator==(const RingSpec& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::ZMod:
      return n_ == other.n_;
    case Kind::QuotientPoly:
      return poly_ == other.poly_ && *base_ == *other.base_;
    case Kind::GroupRing:
      return orders_ == other.orders_ && *base_ == *other.base_;
    case Kind::Product:
      return factors_ == other.factors_;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Element

const mpz_class& Element::residue() const {
  const mpz_class* r = std::get_if<mpz_class>(&rep_);
  if (!r) throw DomainError("element does not carry a residue payload");
  return *r;
}

std::uint64_t Element::coset_index() const {
  const std::uint64_t* r = std::get_if<std::uint64_t>(&rep_);
  if (!r) throw DomainError("element does not carry a coset-index payload");
  return *r;
}

const std::vector<Element>& Element::components() const {
  const std::vector<Element>* r = std::get_if<std::vector<Element>>(&rep_);
  if (!r) throw DomainError("element does not carry a component payload");
  return *r;
}

bool Element::operator==(const Element& other) const {
  return ring_ == other.ring_ && structural_compare(*this, other) == 0;
}

int structural_compare(const Element& a, const Element& b) {
  const Element::Rep& x = a.rep();
  const Element::Rep& y = b.rep();
  if (x.index() != y.index()) return x.index() < y.index() ? -1 : 1;
  if (const auto* xi = std::get_if<mpz_class>(&x)) {
    return mpz_cmp(xi->get_mpz_t(), std::get<mpz_class>(y).get_mpz_t());
  }
  if (const auto* xi = std::get_if<std::uint64_t>(&x)) {
    std::uint64_t yi = std::get<std::uint64_t>(y);
    return *xi == yi ? 0 : (*xi < yi ? -1 : 1);
  }
  const auto& xv = std::get<std::vector<Element>>(x);
  const auto& yv = std::get<std::vector<Element>>(y);
  if (xv.size() != yv.size()) return xv.size() < yv.size() ? -1 : 1;
  // Components are stored least significant first; compare from the top so
  // the order matches enumeration indices.
  for (std::size_t i = xv.size(); i-- > 0;) {
    int c = structural_compare(xv[i], yv[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::ostream& operator<<(std::ostream& os, const Element& e) {
  return os << e.ring()->format(e);
}

// ---------------------------------------------------------------------------
// Ring base

void Ring::init(mpz_class cardinality, mpz_class characteristic, Element zero, Element one) {
  cardinality_ = std::move(cardinality);
  characteristic_ = std::move(characteristic);
  zero_.emplace(std::move(zero));
  one_.emplace(std::move(one));
}

bool Ring::enumerable() const {
  return mpz_cmp_ui(cardinality_.get_mpz_t(), cap_) <= 0;
}

std::uint64_t Ring::size_u64() const {
  require_enumerable();
  return mpz_get_ui(cardinality_.get_mpz_t());
}

void Ring::require_enumerable() const {
  if (!enumerable()) {
    throw CapError("ring " + describe() + " has " + cardinality_.get_str() +
                   " elements, above the enumeration cap of " + std::to_string(cap_));
  }
}

Element Ring::from_components(std::vector<Element>) const {
  throw DomainError("elements of " + describe() + " have no component structure");
}

void Ring::check_element(const Element& a) const {
  if (a.ring() != this) {
    throw DomainError("element of " + a.ring()->describe() + " used in " + describe());
  }
}

Element Ring::add(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  return add_impl(a, b);
}

Element Ring::sub(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  return add_impl(a, neg_impl(b));
}

Element Ring::neg(const Element& a) const {
  check_element(a);
  return neg_impl(a);
}

Element Ring::mul(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  return mul_impl(a, b);
}

Element Ring::pow(const Element& a, const mpz_class& exponent) const {
  check_element(a);
  if (exponent < 0) throw DomainError("pow: exponent must be non-negative");
  Element acc = one();
  for (std::size_t bit = mpz_sizeinbase(exponent.get_mpz_t(), 2); bit-- > 0;) {
    acc = mul_impl(acc, acc);
    if (mpz_tstbit(exponent.get_mpz_t(), bit)) acc = mul_impl(acc, a);
  }
  return acc;
}

Element Ring::scalar_mul(const mpz_class& k, const Element& a) const {
  check_element(a);
  if (k < 0) return neg_impl(scalar_mul(-k, a));
  Element acc = zero();
  for (std::size_t bit = mpz_sizeinbase(k.get_mpz_t(), 2); bit-- > 0;) {
    acc = add_impl(acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), bit)) acc = add_impl(acc, a);
  }
  return acc;
}

Element Ring::integer(const mpz_class& k) const { return scalar_mul(k, one()); }

const Ring::UnitScan& Ring::unit_scan() const {
  std::call_once(unit_scan_once_, [&] {
    require_enumerable();
    const std::uint64_t n = size_u64();
    UnitScan scan;
    scan.inverse_index.assign(n, UnitScan::kNone);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (scan.inverse_index[i] != UnitScan::kNone) continue;
      Element a = element_at(i);
      for (std::uint64_t j = i; j < n; ++j) {
        if (mul_impl(a, element_at(j)) == one()) {
          scan.inverse_index[i] = j;
          scan.inverse_index[j] = i;
          break;
        }
      }
    }
    unit_scan_.emplace(std::move(scan));
  });
  return *unit_scan_;
}

bool Ring::is_unit(const Element& a) const {
  check_element(a);
  return unit_scan().inverse_index[index_of(a)] != UnitScan::kNone;
}

std::optional<Element> Ring::try_inverse(const Element& a) const {
  check_element(a);
  std::uint64_t j = unit_scan().inverse_index[index_of(a)];
  if (j == UnitScan::kNone) return std::nullopt;
  return element_at(j);
}

Element Ring::inverse(const Element& a) const {
  std::optional<Element> inv = try_inverse(a);
  if (!inv) throw DomainError("not a unit: " + format(a) + " in " + describe());
  return *std::move(inv);
}

std::vector<Element> Ring::units() const {
  require_enumerable();
  std::vector<Element> out;
  const std::uint64_t n = size_u64();
  for (std::uint64_t i = 0; i < n; ++i) {
    Element e = element_at(i);
    if (is_unit(e)) out.push_back(std::move(e));
  }
  return out;
}

mpz_class Ring::unit_count() const {
  require_enumerable();
  const std::uint64_t n = size_u64();
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (is_unit(element_at(i))) ++count;
  }
  return mpz_class(static_cast<unsigned long>(count));
}

// ---------------------------------------------------------------------------
// Z/nZ

namespace {

class ZModRing final : public Ring {
 public:
  ZModRing(const RingSpec& spec, std::uint64_t cap)
      : Ring(spec, cap), n_(spec.zmod_modulus()) {
    init(n_, n_, wrap(this, mpz_class(0)), wrap(this, mpz_class(1)));
  }

  std::string describe() const override { return "Z" + n_.get_str(); }

  Element integer(const mpz_class& k) const override {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), k.get_mpz_t(), n_.get_mpz_t());
    return wrap(this, std::move(r));
  }

  bool is_unit(const Element& a) const override {
    check_element(a);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.residue().get_mpz_t(), n_.get_mpz_t());
    return g == 1;
  }

  std::optional<Element> try_inverse(const Element& a) const override {
    check_element(a);
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.residue().get_mpz_t(), n_.get_mpz_t()) == 0) {
      return std::nullopt;
    }
    return wrap(this, std::move(r));
  }

  mpz_class unit_count() const override {
    // Euler phi from the factorization; falls back to a gcd scan only if the
    // modulus resists trial division and is small enough to walk.
    try {
      mpz_class phi = 1;
      for (const auto& [p, k] : detail::factorize(n_, 1'000'000)) {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k - 1);
        phi *= pk * (p - 1);
      }
      return phi;
    } catch (const CapError&) {
      return Ring::unit_count();
    }
  }

  Element element_at(std::uint64_t index) const override {
    if (mpz_cmp_ui(n_.get_mpz_t(), index) <= 0) {
      throw DomainError("element index out of range");
    }
    return wrap(this, mpz_class(static_cast<unsigned long>(index)));
  }

  std::uint64_t index_of(const Element& a) const override {
    check_element(a);
    if (!mpz_fits_ulong_p(a.residue().get_mpz_t())) {
      throw CapError("residue too large to index");
    }
    return mpz_get_ui(a.residue().get_mpz_t());
  }

  std::string format(const Element& a) const override { return a.residue().get_str(); }

  const mpz_class& modulus() const { return n_; }

 protected:
  Element add_impl(const Element& a, const Element& b) const override {
    mpz_class r = a.residue() + b.residue();
    if (r >= n_) r -= n_;
    return wrap(this, std::move(r));
  }

  Element neg_impl(const Element& a) const override {
    if (a.residue() == 0) return a;
    return wrap(this, mpz_class(n_ - a.residue()));
  }

  Element mul_impl(const Element& a, const Element& b) const override {
    mpz_class r = a.residue() * b.residue();
    r %= n_;
    return wrap(this, std::move(r));
  }

 private:
  mpz_class n_;
};

// ---------------------------------------------------------------------------
// Unit testing for free algebras over a base ring. An element is a unit
// exactly when its multiplication matrix has unit determinant over the base,
// and the inverse falls out of the adjugate. Cofactor expansion keeps the
// arithmetic division-free; basis lengths stay small so d! is affordable.

Element base_det(const RingHandle& base, const std::vector<std::vector<Element>>& m) {
  const std::size_t d = m.size();
  if (d == 0) return base->one();
  if (d == 1) return m[0][0];
  Element out = base->zero();
  for (std::size_t j = 0; j < d; ++j) {
    if (m[0][j] == base->zero()) continue;
    std::vector<std::vector<Element>> minor;
    minor.reserve(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
      std::vector<Element> row;
      row.reserve(d - 1);
      for (std::size_t jj = 0; jj < d; ++jj) {
        if (jj != j) row.push_back(m[i][jj]);
      }
      minor.push_back(std::move(row));
    }
    Element term = base->mul(m[0][j], base_det(base, minor));
    out = (j % 2 == 0) ? base->add(out, term) : base->sub(out, term);
  }
  return out;
}

// Columns are the coordinates of a times each basis vector.
std::vector<std::vector<Element>> mult_matrix(const Ring* r, const RingHandle& base,
                                              const Element& a, std::size_t d) {
  std::vector<std::vector<Element>> m(d, std::vector<Element>(d, base->zero()));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Element> basis(j + 1, base->zero());
    basis[j] = base->one();
    Element col = r->mul(a, r->from_components(std::move(basis)));
    const std::vector<Element>& cv = col.components();
    for (std::size_t i = 0; i < d; ++i) m[i][j] = cv[i];
  }
  return m;
}

// First column of the inverse matrix, which is the coordinate vector of 1/a.
std::vector<Element> adjugate_column(const RingHandle& base,
                                     const std::vector<std::vector<Element>>& m,
                                     const Element& det_inverse) {
  const std::size_t d = m.size();
  std::vector<Element> out;
  out.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<Element>> minor;
    minor.reserve(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
      std::vector<Element> row;
      row.reserve(d - 1);
      for (std::size_t jj = 0; jj < d; ++jj) {
        if (jj != j) row.push_back(m[i][jj]);
      }
      minor.push_back(std::move(row));
    }
    Element c = base_det(base, minor);
    if (j % 2 == 1) c = base->neg(c);
    out.push_back(base->mul(det_inverse, c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Base[x]/(f) for monic f

class QuotientPolyRing final : public Ring {
 public:
  QuotientPolyRing(const RingSpec& spec, RingHandle base, std::uint64_t cap)
      : Ring(spec, cap), base_(std::move(base)) {
    const std::vector<mpz_class>& poly = spec.modulus_poly();
    deg_ = poly.size() - 1;
    fmod_.reserve(deg_);
    for (std::size_t i = 0; i < deg_; ++i) fmod_.push_back(base_->integer(poly[i]));
    std::vector<Element> zero(deg_, base_->zero());
    std::vector<Element> one = zero;
    one[0] = base_->one();
    init(spec.cardinality(), spec.characteristic(), wrap(this, std::move(zero)),
         wrap(this, std::move(one)));
  }

  std::string describe() const override {
    std::string base = base_->describe();
    if (base_->spec() && base_->spec()->kind() == RingSpec::Kind::Product) {
      base = "(" + base + ")";
    }
    return base + "[x]/(" + render_modulus_poly(spec()->modulus_poly()) + ")";
  }

  Element element_at(std::uint64_t index) const override {
    const std::uint64_t bsize = base_->size_u64();
    std::vector<Element> coeffs;
    coeffs.reserve(deg_);
    for (std::size_t i = 0; i < deg_; ++i) {
      coeffs.push_back(base_->element_at(index % bsize));
      index /= bsize;
    }
    if (index != 0) throw DomainError("element index out of range");
    return wrap(this, std::move(coeffs));
  }

  std::uint64_t index_of(const Element& a) const override {
    check_element(a);
    require_enumerable();
    const std::uint64_t bsize = base_->size_u64();
    std::uint64_t index = 0;
    const std::vector<Element>& coeffs = a.components();
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      index = index * bsize + base_->index_of(coeffs[i]);
    }
    return index;
  }

  Element from_components(std::vector<Element> parts) const override {
    if (parts.size() > deg_) {
      throw DomainError("too many coefficients for " + describe());
    }
    for (const Element& p : parts) base_->check_element(p);
    while (parts.size() < deg_) parts.push_back(base_->zero());
    return wrap(this, std::move(parts));
  }

  bool is_unit(const Element& a) const override {
    check_element(a);
    return base_->is_unit(base_det(base_, mult_matrix(this, base_, a, deg_)));
  }

  std::optional<Element> try_inverse(const Element& a) const override {
    check_element(a);
    auto m = mult_matrix(this, base_, a, deg_);
    std::optional<Element> dinv = base_->try_inverse(base_det(base_, m));
    if (!dinv) return std::nullopt;
    return wrap(this, adjugate_column(base_, m, *dinv));
  }

  std::string format(const Element& a) const override {
    const std::vector<Element>& coeffs = a.components();
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == base_->zero()) continue;
      if (!out.empty()) out += " + ";
      std::string c = base_->format(coeffs[i]);
      if (i == 0) {
        out += c;
        continue;
      }
      if (coeffs[i] != base_->one()) {
        bool atomic = c.find_first_of("+* ") == std::string::npos;
        out += atomic ? c + "*" : "(" + c + ")*";
      }
      out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 protected:
  Element add_impl(const Element& a, const Element& b) const override {
    const auto& av = a.components();
    const auto& bv = b.components();
    std::vector<Element> out;
    out.reserve(deg_);
    for (std::size_t i = 0; i < deg_; ++i) out.push_back(base_->add(av[i], bv[i]));
    return wrap(this, std::move(out));
  }

  Element neg_impl(const Element& a) const override {
    std::vector<Element> out;
    out.reserve(deg_);
    for (const Element& c : a.components()) out.push_back(base_->neg(c));
    return wrap(this, std::move(out));
  }

  Element mul_impl(const Element& a, const Element& b) const override {
    const auto& av = a.components();
    const auto& bv = b.components();
    std::vector<Element> conv(2 * deg_ - 1, base_->zero());
    for (std::size_t i = 0; i < deg_; ++i) {
      if (av[i] == base_->zero()) continue;
      for (std::size_t j = 0; j < deg_; ++j) {
        conv[i + j] = base_->add(conv[i + j], base_->mul(av[i], bv[j]));
      }
    }
    // Reduce top coefficients using x^deg = -(f_0 + ... + f_{deg-1} x^{deg-1}).
    for (std::size_t j = 2 * deg_ - 2; j + 1 > deg_; --j) {
      const Element& c = conv[j];
      if (c == base_->zero()) continue;
      for (std::size_t i = 0; i < deg_; ++i) {
        conv[j - deg_ + i] = base_->sub(conv[j - deg_ + i], base_->mul(c, fmod_[i]));
      }
    }
    conv.erase(conv.begin() + static_cast<std::ptrdiff_t>(deg_), conv.end());
    return wrap(this, std::move(conv));
  }

 private:
  RingHandle base_;
  std::size_t deg_;
  std::vector<Element> fmod_;
};

// ---------------------------------------------------------------------------
// Base[G] for G a finite product of cyclic groups

class GroupRingRing final : public Ring {
 public:
  GroupRingRing(const RingSpec& spec, RingHandle base, std::uint64_t cap)
      : Ring(spec, cap), base_(std::move(base)), orders_(spec.cyclic_orders()) {
    gsize_ = 1;
    for (std::uint64_t k : orders_) gsize_ *= k;
    std::vector<Element> zero(gsize_, base_->zero());
    std::vector<Element> one = zero;
    one[0] = base_->one();
    init(spec.cardinality(), spec.characteristic(), wrap(this, std::move(zero)),
         wrap(this, std::move(one)));
  }

  std::string describe() const override {
    std::string base = base_->describe();
    if (base_->spec() && base_->spec()->kind() == RingSpec::Kind::Product) {
      base = "(" + base + ")";
    }
    std::string group;
    for (std::uint64_t k : orders_) {
      if (!group.empty()) group += "*";
      group += "C" + std::to_string(k);
    }
    return base + "[" + group + "]";
  }

  Element element_at(std::uint64_t index) const override {
    const std::uint64_t bsize = base_->size_u64();
    std::vector<Element> coeffs;
    coeffs.reserve(gsize_);
    for (std::uint64_t i = 0; i < gsize_; ++i) {
      coeffs.push_back(base_->element_at(index % bsize));
      index /= bsize;
    }
    if (index != 0) throw DomainError("element index out of range");
    return wrap(this, std::move(coeffs));
  }

  std::uint64_t index_of(const Element& a) const override {
    check_element(a);
    require_enumerable();
    const std::uint64_t bsize = base_->size_u64();
    std::uint64_t index = 0;
    const std::vector<Element>& coeffs = a.components();
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      index = index * bsize + base_->index_of(coeffs[i]);
    }
    return index;
  }

  Element from_components(std::vector<Element> parts) const override {
    if (parts.size() > gsize_) {
      throw DomainError("too many coefficients for " + describe());
    }
    for (const Element& p : parts) base_->check_element(p);
    while (parts.size() < gsize_) parts.push_back(base_->zero());
    return wrap(this, std::move(parts));
  }

  bool is_unit(const Element& a) const override {
    check_element(a);
    return base_->is_unit(base_det(base_, mult_matrix(this, base_, a, gsize_)));
  }

  std::optional<Element> try_inverse(const Element& a) const override {
    check_element(a);
    auto m = mult_matrix(this, base_, a, gsize_);
    std::optional<Element> dinv = base_->try_inverse(base_det(base_, m));
    if (!dinv) return std::nullopt;
    return wrap(this, adjugate_column(base_, m, *dinv));
  }

  std::string format(const Element& a) const override {
    const std::vector<Element>& coeffs = a.components();
    std::string out;
    for (std::uint64_t t = 0; t < gsize_; ++t) {
      if (coeffs[t] == base_->zero()) continue;
      if (!out.empty()) out += " + ";
      std::string c = base_->format(coeffs[t]);
      std::string g = group_name(t);
      if (g.empty()) {
        out += c;
      } else if (coeffs[t] == base_->one()) {
        out += g;
      } else {
        bool atomic = c.find_first_of("+* ") == std::string::npos;
        out += (atomic ? c : "(" + c + ")") + "*" + g;
      }
    }
    return out.empty() ? "0" : out;
  }

 protected:
  Element add_impl(const Element& a, const Element& b) const override {
    const auto& av = a.components();
    const auto& bv = b.components();
    std::vector<Element> out;
    out.reserve(gsize_);
    for (std::uint64_t i = 0; i < gsize_; ++i) out.push_back(base_->add(av[i], bv[i]));
    return wrap(this, std::move(out));
  }

  Element neg_impl(const Element& a) const override {
    std::vector<Element> out;
    out.reserve(gsize_);
    for (const Element& c : a.components()) out.push_back(base_->neg(c));
    return wrap(this, std::move(out));
  }

  Element mul_impl(const Element& a, const Element& b) const override {
    const auto& av = a.components();
    const auto& bv = b.components();
    std::vector<Element> out(gsize_, base_->zero());
    for (std::uint64_t i = 0; i < gsize_; ++i) {
      if (av[i] == base_->zero()) continue;
      for (std::uint64_t j = 0; j < gsize_; ++j) {
        if (bv[j] == base_->zero()) continue;
        std::uint64_t k = group_mul(i, j);
        out[k] = base_->add(out[k], base_->mul(av[i], bv[j]));
      }
    }
    return wrap(this, std::move(out));
  }

 private:
  // Group elements are indexed mixed-radix over the cyclic orders, first
  // factor least significant; the group operation is digit-wise addition.
  std::uint64_t group_mul(std::uint64_t i, std::uint64_t j) const {
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    for (std::uint64_t k : orders_) {
      std::uint64_t d = (i % k + j % k) % k;
      out += d * scale;
      scale *= k;
      i /= k;
      j /= k;
    }
    return out;
  }

  std::string group_name(std::uint64_t t) const {
    std::string out;
    for (std::size_t f = 0; f < orders_.size(); ++f) {
      std::uint64_t d = t % orders_[f];
      t /= orders_[f];
      if (d == 0) continue;
      if (!out.empty()) out += "*";
      out += "g" + std::to_string(f + 1);
      if (d >= 2) out += "^" + std::to_string(d);
    }
    return out;  // empty names the group identity
  }

  RingHandle base_;
  std::vector<std::uint64_t> orders_;
  std::uint64_t gsize_;
};

// ---------------------------------------------------------------------------
// Direct products

class ProductRing final : public Ring {
 public:
  ProductRing(const RingSpec& spec, std::vector<RingHandle> factors, std::uint64_t cap)
      : Ring(spec, cap), factors_(std::move(factors)) {
    std::vector<Element> zero;
    std::vector<Element> one;
    for (const RingHandle& f : factors_) {
      zero.push_back(f->zero());
      one.push_back(f->one());
    }
    init(spec.cardinality(), spec.characteristic(), wrap(this, std::move(zero)),
         wrap(this, std::move(one)));
  }

  std::string describe() const override {
    std::string out;
    for (const RingHandle& f : factors_) {
      if (!out.empty()) out += " * ";
      if (f->spec() && f->spec()->kind() == RingSpec::Kind::Product) {
        out += "(" + f->describe() + ")";
      } else {
        out += f->describe();
      }
    }
    return out;
  }

  Element integer(const mpz_class& k) const override {
    std::vector<Element> out;
    out.reserve(factors_.size());
    for (const RingHandle& f : factors_) out.push_back(f->integer(k));
    return wrap(this, std::move(out));
  }

  bool is_unit(const Element& a) const override {
    check_element(a);
    const auto& av = a.components();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (!factors_[i]->is_unit(av[i])) return false;
    }
    return true;
  }

  std::optional<Element> try_inverse(const Element& a) const override {
    check_element(a);
    const auto& av = a.components();
    std::vector<Element> out;
    out.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::optional<Element> inv = factors_[i]->try_inverse(av[i]);
      if (!inv) return std::nullopt;
      out.push_back(*std::move(inv));
    }
    return wrap(this, std::move(out));
  }

  mpz_class unit_count() const override {
    mpz_class out = 1;
    for (const RingHandle& f : factors_) out *= f->unit_count();
    return out;
  }

  Element element_at(std::uint64_t index) const override {
    std::vector<Element> out;
    out.reserve(factors_.size());
    for (const RingHandle& f : factors_) {
      const std::uint64_t fsize = f->size_u64();
      out.push_back(f->element_at(index % fsize));
      index /= fsize;
    }
    if (index != 0) throw DomainError("element index out of range");
    return wrap(this, std::move(out));
  }

  std::uint64_t index_of(const Element& a) const override {
    check_element(a);
    require_enumerable();
    std::uint64_t index = 0;
    const std::vector<Element>& av = a.components();
    for (std::size_t i = av.size(); i-- > 0;) {
      index = index * factors_[i]->size_u64() + factors_[i]->index_of(av[i]);
    }
    return index;
  }

  Element from_components(std::vector<Element> parts) const override {
    if (parts.size() != factors_.size()) {
      throw DomainError("a product tuple needs exactly one entry per factor");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->check_element(parts[i]);
    return wrap(this, std::move(parts));
  }

  std::string format(const Element& a) const override {
    std::string out = "(";
    const auto& av = a.components();
    for (std::size_t i = 0; i < av.size(); ++i) {
      if (i > 0) out += ", ";
      out += factors_[i]->format(av[i]);
    }
    return out + ")";
  }

 protected:
  Element add_impl(const Element& a, const Element& b) const override {
    return zip(a, b, [&](std::size_t i, const Element& x, const Element& y) {
      return factors_[i]->add(x, y);
    });
  }

  Element neg_impl(const Element& a) const override {
    std::vector<Element> out;
    out.reserve(factors_.size());
    const auto& av = a.components();
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i]->neg(av[i]));
    return wrap(this, std::move(out));
  }

  Element mul_impl(const Element& a, const Element& b) const override {
    return zip(a, b, [&](std::size_t i, const Element& x, const Element& y) {
      return factors_[i]->mul(x, y);
    });
  }

 private:
  template <typename F>
  Element zip(const Element& a, const Element& b, F&& op) const {
    const auto& av = a.components();
    const auto& bv = b.components();
    std::vector<Element> out;
    out.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(op(i, av[i], bv[i]));
    return wrap(this, std::move(out));
  }

  std::vector<RingHandle> factors_;
};

}  // namespace

RingHandle make_ring(const RingSpec& spec, std::uint64_t cap) {
  switch (spec.kind()) {
    case RingSpec::Kind::ZMod:
      return std::make_shared<ZModRing>(spec, cap);
    case RingSpec::Kind::QuotientPoly:
      return std::make_shared<QuotientPolyRing>(spec, make_ring(spec.base(), cap), cap);
    case RingSpec::Kind::GroupRing:
      return std::make_shared<GroupRingRing>(spec, make_ring(spec.base(), cap), cap);
    case RingSpec::Kind::Product: {
      std::vector<RingHandle> factors;
      factors.reserve(spec.factors().size());
      for (const RingSpec& f : spec.factors()) factors.push_back(make_ring(f, cap));
      return std::make_shared<ProductRing>(spec, std::move(factors), cap);
    }
  }
  throw DomainError("unreachable spec kind");
}

}  // namespace qrlift
