#include "qrlift/specparse.hpp"

#include <cctype>
#include <utility>

namespace qrlift {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool at_end() { return peek() == '\0'; }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("'") + c + "'");
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("expected " + expected, pos);
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("a number");
    return mpz_class(text.substr(start, pos - start), 10);
  }

  unsigned long small_integer() {
    std::size_t at = pos;
    mpz_class v = integer();
    if (!mpz_fits_ulong_p(v.get_mpz_t())) throw ParseError("number too large", at);
    return mpz_get_ui(v.get_mpz_t());
  }
};

// ---------------------------------------------------------------------------
// Ring specs

std::vector<mpz_class> parse_poly(Cursor& cur) {
  std::vector<mpz_class> coeffs;
  auto bump = [&](std::size_t e, const mpz_class& c) {
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
    coeffs[e] += c;
  };
  bool negative = cur.eat('-');
  for (;;) {
    mpz_class c = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      c = cur.integer();
      saw_coeff = true;
      cur.eat('*');
    }
    std::size_t e = 0;
    if (cur.peek() == 'x') {
      ++cur.pos;
      e = cur.eat('^') ? cur.small_integer() : 1;
    } else if (!saw_coeff) {
      cur.fail("a coefficient or x");
    }
    bump(e, negative ? mpz_class(-c) : c);
    if (cur.eat('+')) {
      negative = false;
    } else if (cur.eat('-')) {
      negative = true;
    } else {
      break;
    }
  }
  return coeffs;
}

RingSpec parse_product(Cursor& cur);

RingSpec parse_postfix(Cursor& cur) {
  std::size_t at = cur.pos;
  RingSpec spec = [&] {
    if (cur.eat('(')) {
      RingSpec inner = parse_product(cur);
      cur.expect(')');
      return inner;
    }
    if (cur.eat('Z')) {
      std::size_t num_at = cur.pos;
      mpz_class n = cur.integer();
      try {
        return RingSpec::zmod(std::move(n));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), num_at);
      }
    }
    cur.fail("'Z' or '('");
  }();
  while (cur.peek() == '[') {
    at = cur.pos;
    cur.expect('[');
    if (cur.eat('x')) {
      cur.expect(']');
      cur.expect('/');
      cur.expect('(');
      std::vector<mpz_class> poly = parse_poly(cur);
      cur.expect(')');
      try {
        spec = RingSpec::quotient_poly(std::move(spec), std::move(poly));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), at);
      }
    } else if (cur.peek() == 'C') {
      std::vector<std::uint64_t> orders;
      do {
        cur.expect('C');
        orders.push_back(cur.small_integer());
      } while (cur.eat('*'));
      cur.expect(']');
      try {
        spec = RingSpec::group_ring(std::move(spec), std::move(orders));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), at);
      }
    } else {
      cur.fail("'x' or 'C'");
    }
  }
  return spec;
}

RingSpec parse_product(Cursor& cur) {
  std::vector<RingSpec> factors;
  factors.push_back(parse_postfix(cur));
  while (cur.eat('*')) factors.push_back(parse_postfix(cur));
  if (factors.size() == 1) return std::move(factors.front());
  return RingSpec::product(std::move(factors));
}

// ---------------------------------------------------------------------------
// Element literals

std::string render_poly(const std::vector<mpz_class>& poly) {
  std::string out;
  for (std::size_t i = poly.size(); i-- > 0;) {
    if (poly[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || poly[i] != 1) {
      out += poly[i].get_str();
      if (i > 0) out += "*";
    }
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

RingHandle component_ring(const RingHandle& r, std::size_t i) {
  return r->zero().components().at(i).ring()->shared_from_this();
}

// x names the variable of the nearest quotient polynomial ring, embedding
// through any group ring layers above it.
Element resolve_x(const RingHandle& r, std::size_t at) {
  const std::optional<RingSpec>& spec = r->spec();
  if (!spec) throw ParseError("x has no meaning in this ring", at);
  switch (spec->kind()) {
    case RingSpec::Kind::QuotientPoly: {
      if (spec->modulus_poly().size() >= 3) {
        RingHandle base = component_ring(r, 0);
        return r->from_components({base->zero(), base->one()});
      }
      // Degree one modulus makes x a constant.
      return r->neg(r->integer(spec->modulus_poly()[0]));
    }
    case RingSpec::Kind::GroupRing:
      return r->from_components({resolve_x(component_ring(r, 0), at)});
    default:
      throw ParseError("x has no meaning in this ring", at);
  }
}

// g<k> names the k-th cyclic generator of the nearest group ring.
Element resolve_g(const RingHandle& r, unsigned long k, std::size_t at) {
  const std::optional<RingSpec>& spec = r->spec();
  if (!spec) throw ParseError("group generators have no meaning in this ring", at);
  switch (spec->kind()) {
    case RingSpec::Kind::GroupRing: {
      const std::vector<std::uint64_t>& orders = spec->cyclic_orders();
      if (k == 0 || k > orders.size()) {
        throw ParseError("the group has " + std::to_string(orders.size()) +
                             " generators",
                         at);
      }
      std::uint64_t index = 1;
      for (std::size_t j = 0; j + 1 < k; ++j) index *= orders[j];
      RingHandle base = component_ring(r, 0);
      std::vector<Element> parts(index + 1, base->zero());
      parts[index] = base->one();
      return r->from_components(std::move(parts));
    }
    case RingSpec::Kind::QuotientPoly:
      return r->from_components({resolve_g(component_ring(r, 0), k, at)});
    default:
      throw ParseError("group generators have no meaning in this ring", at);
  }
}

Element parse_sum(Cursor& cur, const RingHandle& r);

Element parse_value(Cursor& cur, const RingHandle& r) {
  if (r->spec() && r->spec()->kind() == RingSpec::Kind::Product) {
    cur.expect('(');
    std::vector<Element> parts;
    const std::size_t count = r->spec()->factors().size();
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) cur.expect(',');
      parts.push_back(parse_sum(cur, component_ring(r, i)));
    }
    cur.expect(')');
    return r->from_components(std::move(parts));
  }
  return parse_sum(cur, r);
}

Element parse_atom(Cursor& cur, const RingHandle& r) {
  std::size_t at = cur.pos;
  char c = cur.peek();
  if (c == '(') {
    ++cur.pos;
    Element e = parse_sum(cur, r);
    cur.expect(')');
    return e;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) return r->integer(cur.integer());
  if (c == 'x') {
    ++cur.pos;
    return resolve_x(r, at);
  }
  if (c == 'u') {
    ++cur.pos;
    return resolve_g(r, 1, at);
  }
  if (c == 'g') {
    ++cur.pos;
    return resolve_g(r, cur.small_integer(), at);
  }
  cur.fail("an element");
}

Element parse_factor(Cursor& cur, const RingHandle& r) {
  Element e = parse_atom(cur, r);
  if (cur.eat('^')) e = r->pow(e, cur.integer());
  return e;
}

Element parse_term(Cursor& cur, const RingHandle& r) {
  Element e = parse_factor(cur, r);
  for (;;) {
    char c = cur.peek();
    if (c == '*') {
      ++cur.pos;
      e = r->mul(e, parse_factor(cur, r));
    } else if (c == 'x' || c == 'g' || c == 'u' || c == '(') {
      // Juxtaposition, as in 3x or 2g1.
      e = r->mul(e, parse_factor(cur, r));
    } else {
      break;
    }
  }
  return e;
}

Element parse_sum(Cursor& cur, const RingHandle& r) {
  bool negative = cur.eat('-');
  Element e = parse_term(cur, r);
  if (negative) e = r->neg(e);
  for (;;) {
    if (cur.eat('+')) {
      e = r->add(e, parse_term(cur, r));
    } else if (cur.eat('-')) {
      e = r->sub(e, parse_term(cur, r));
    } else {
      return e;
    }
  }
}

}  // namespace

RingSpec parse_ring_spec(const std::string& text) {
  Cursor cur{text};
  RingSpec spec = parse_product(cur);
  if (!cur.at_end()) cur.fail("end of input");
  return spec;
}

std::string render_spec(const RingSpec& spec) {
  auto wrap_base = [](const RingSpec& base) {
    std::string s = render_spec(base);
    return base.kind() == RingSpec::Kind::Product ? "(" + s + ")" : s;
  };
  switch (spec.kind()) {
    case RingSpec::Kind::ZMod:
      return "Z" + spec.zmod_modulus().get_str();
    case RingSpec::Kind::QuotientPoly:
      return wrap_base(spec.base()) + "[x]/(" + render_poly(spec.modulus_poly()) + ")";
    case RingSpec::Kind::GroupRing: {
      std::string group;
      for (std::uint64_t k : spec.cyclic_orders()) {
        if (!group.empty()) group += "*";
        group += "C" + std::to_string(k);
      }
      return wrap_base(spec.base()) + "[" + group + "]";
    }
    case RingSpec::Kind::Product: {
      std::string out;
      for (const RingSpec& f : spec.factors()) {
        if (!out.empty()) out += " * ";
        out += f.kind() == RingSpec::Kind::Product ? "(" + render_spec(f) + ")"
                                                   : render_spec(f);
      }
      return out;
    }
  }
  throw DomainError("unknown spec kind");
}

Element parse_element(const RingHandle& r, const std::string& text) {
  Cursor cur{text};
  Element e = parse_value(cur, r);
  if (!cur.at_end()) cur.fail("end of input");
  return e;
}

std::vector<std::vector<Element>> parse_chain_generators(const RingHandle& r,
                                                         const std::string& text) {
  Cursor cur{text};
  std::vector<std::vector<Element>> out;
  if (cur.at_end()) return out;
  do {
    std::vector<Element> gens;
    do {
      gens.push_back(parse_value(cur, r));
    } while (cur.eat(','));
    out.push_back(std::move(gens));
  } while (cur.eat(';'));
  if (!cur.at_end()) cur.fail("';' or end of input");
  return out;
}

ZnFactorization parse_factorization(const std::string& text) {
  Cursor cur{text};
  ZnFactorization out;
  out.n = 1;
  do {
    mpz_class p = cur.integer();
    unsigned long k = cur.eat('^') ? cur.small_integer() : 1;
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    out.n *= pk;
    out.factors.emplace_back(std::move(p), static_cast<unsigned>(k));
  } while (cur.eat('*'));
  if (!cur.at_end()) cur.fail("'*' or end of input");
  return out;
}

}  // namespace qrlift
