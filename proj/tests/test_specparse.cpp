#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "qrlift/specparse.hpp"

using namespace qrlift;

TEST_CASE("modular specs parse in any spacing") {
  CHECK(parse_ring_spec("Z25") == RingSpec::zmod(25));
  CHECK(parse_ring_spec("  Z 25  ") == RingSpec::zmod(25));
  CHECK(parse_ring_spec("Z1000000007") == RingSpec::zmod(mpz_class("1000000007")));
}

TEST_CASE("polynomial quotient specs parse") {
  RingSpec dual = RingSpec::quotient_poly(RingSpec::zmod(5), {0, 0, 1});
  CHECK(parse_ring_spec("Z5[x]/(x^2)") == dual);
  CHECK(parse_ring_spec("Z5 [ x ] / ( x ^ 2 )") == dual);
  CHECK(parse_ring_spec("Z7[x]/(x^3+2*x+5)") ==
        RingSpec::quotient_poly(RingSpec::zmod(7), {5, 2, 0, 1}));
  CHECK(parse_ring_spec("Z7[x]/(x^3 + 2x + 5)") ==
        RingSpec::quotient_poly(RingSpec::zmod(7), {5, 2, 0, 1}));
  // Signs fold into the coefficients.
  CHECK(parse_ring_spec("Z11[x]/(x^2-1)") ==
        RingSpec::quotient_poly(RingSpec::zmod(11), {-1, 0, 1}));
}

TEST_CASE("group ring specs parse") {
  CHECK(parse_ring_spec("Z3[C2]") == RingSpec::group_ring(RingSpec::zmod(3), {2}));
  CHECK(parse_ring_spec("Z5[C2*C4]") == RingSpec::group_ring(RingSpec::zmod(5), {2, 4}));
  CHECK(parse_ring_spec("Z5[C2 * C4]") == RingSpec::group_ring(RingSpec::zmod(5), {2, 4}));
}

TEST_CASE("product specs parse and nest") {
  RingSpec p = RingSpec::product({RingSpec::zmod(9), RingSpec::zmod(25)});
  CHECK(parse_ring_spec("Z9*Z25") == p);
  CHECK(parse_ring_spec("Z9 * Z25") == p);
  CHECK(parse_ring_spec("Z9*Z25*Z49") ==
        RingSpec::product({RingSpec::zmod(9), RingSpec::zmod(25), RingSpec::zmod(49)}));
  // Parentheses force explicit nesting.
  CHECK(parse_ring_spec("(Z9*Z25)*Z49") ==
        RingSpec::product({RingSpec::product({RingSpec::zmod(9), RingSpec::zmod(25)}),
                           RingSpec::zmod(49)}));
  // Suffixes bind tighter than the product.
  CHECK(parse_ring_spec("Z3[C2]*Z5[x]/(x^2)") ==
        RingSpec::product({RingSpec::group_ring(RingSpec::zmod(3), {2}),
                           RingSpec::quotient_poly(RingSpec::zmod(5), {0, 0, 1})}));
}

TEST_CASE("parse failures carry the offset") {
  try {
    parse_ring_spec("Z(7");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
    CHECK(std::string(e.what()).find("offset 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_ring_spec(""), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z25 x"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Q5"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z25["), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z25[x]/(x^2"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z0"), ParseError);   // no such modulus
  CHECK_THROWS_AS(parse_ring_spec("Z5[C0]"), ParseError);
}

TEST_CASE("rendered specs parse back to themselves") {
  std::vector<std::string> texts = {
      "Z7",
      "Z1000003",
      "Z5[x]/(x^2)",
      "Z7[x]/(x^3+2*x+5)",
      "Z3[C2]",
      "Z9[C2*C2]",
      "Z9*Z25",
      "Z3[C2]*Z25[x]/(x^2)",
      "(Z9*Z25)*Z49",
  };
  for (const std::string& t : texts) {
    RingSpec spec = parse_ring_spec(t);
    CHECK(parse_ring_spec(render_spec(spec)) == spec);
  }
}

TEST_CASE("random specs survive the render and parse loop") {
  std::mt19937_64 rng(0x5eedbeefu);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<unsigned long> modulus(2, 97);
  std::uniform_int_distribution<int> small(1, 4);
  auto random_spec = [&](auto&& self, int depth) -> RingSpec {
    int k = depth > 1 ? 0 : kind(rng);
    switch (k) {
      case 1: {
        std::vector<mpz_class> coeffs;
        int deg = small(rng);
        for (int i = 0; i < deg; ++i) coeffs.push_back(static_cast<long>(small(rng)) - 2);
        coeffs.push_back(1);
        if (coeffs.size() < 2) coeffs = {0, 1};
        return RingSpec::quotient_poly(RingSpec::zmod(modulus(rng)), coeffs);
      }
      case 2: {
        std::vector<std::uint64_t> orders;
        int cnt = small(rng) > 2 ? 2 : 1;
        for (int i = 0; i < cnt; ++i) orders.push_back(static_cast<std::uint64_t>(small(rng)) + 1);
        return RingSpec::group_ring(RingSpec::zmod(modulus(rng)), orders);
      }
      case 3: {
        std::vector<RingSpec> fs;
        int cnt = 2;
        for (int i = 0; i < cnt; ++i) fs.push_back(self(self, depth + 1));
        return RingSpec::product(fs);
      }
      default:
        return RingSpec::zmod(modulus(rng));
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    RingSpec spec = random_spec(random_spec, 0);
    std::string text = render_spec(spec);
    CHECK(parse_ring_spec(text) == spec);
  }
}

TEST_CASE("rendered specs match ring descriptions") {
  for (const char* t : {"Z7", "Z5[x]/(x^2)", "Z3[C2]", "Z9*Z25"}) {
    RingSpec spec = parse_ring_spec(t);
    CHECK(render_spec(spec) == make_ring(spec)->describe());
  }
}

TEST_CASE("element literals in modular rings") {
  RingHandle r = make_ring(parse_ring_spec("Z25"));
  CHECK(parse_element(r, "7") == r->integer(7));
  CHECK(parse_element(r, "-3") == r->integer(22));
  CHECK(parse_element(r, "30") == r->integer(5));
  CHECK(parse_element(r, "2+3*4") == r->integer(14));
  CHECK(parse_element(r, "(2+3)*4") == r->integer(20));
  CHECK(parse_element(r, "2^10") == r->integer(1024));
  CHECK_THROWS_AS(parse_element(r, "x"), ParseError);
  CHECK_THROWS_AS(parse_element(r, "(1,2)"), ParseError);
  CHECK_THROWS_AS(parse_element(r, ""), ParseError);
  CHECK_THROWS_AS(parse_element(r, "7 junk"), ParseError);
}

TEST_CASE("element literals with the polynomial generator") {
  RingHandle r = make_ring(parse_ring_spec("Z5[x]/(x^2)"));
  RingHandle base = r->zero().components()[0].ring()->shared_from_this();
  Element x = r->from_components({base->zero(), base->one()});
  CHECK(parse_element(r, "x") == x);
  CHECK(parse_element(r, "4+3x") == r->add(r->integer(4), r->scalar_mul(3, x)));
  CHECK(parse_element(r, "4+3*x") == parse_element(r, "4 + 3 x"));
  CHECK(parse_element(r, "x^2") == r->zero());
  CHECK(parse_element(r, "(1+x)^2") == r->add(r->one(), r->scalar_mul(2, x)));
  CHECK(parse_element(r, "-x") == r->neg(x));
  CHECK(parse_element(r, "2-x") == r->sub(r->integer(2), x));
}

TEST_CASE("element literals with group generators") {
  RingHandle r = make_ring(parse_ring_spec("Z3[C2]"));
  Element g = r->from_components({r->zero().components()[0], r->one().components()[0]});
  CHECK(parse_element(r, "g1") == g);
  CHECK(parse_element(r, "u") == g);  // u names the first generator too
  CHECK(parse_element(r, "1+2g1") == r->add(r->one(), r->scalar_mul(2, g)));
  CHECK(parse_element(r, "g1^2") == r->one());
  CHECK_THROWS_AS(parse_element(r, "g2"), ParseError);

  RingHandle r2 = make_ring(parse_ring_spec("Z5[C2*C2]"));
  Element g1 = parse_element(r2, "g1");
  Element g2 = parse_element(r2, "g2");
  CHECK(g1 != g2);
  CHECK(r2->mul(g1, g1) == r2->one());
  CHECK(r2->mul(g2, g2) == r2->one());
  CHECK(parse_element(r2, "g1*g2") == r2->mul(g1, g2));
  CHECK_THROWS_AS(parse_element(r2, "g3"), ParseError);
}

TEST_CASE("element literals in product rings are tuples") {
  RingHandle r = make_ring(parse_ring_spec("Z9*Z25"));
  Element a = parse_element(r, "(4, 19)");
  CHECK(a.components()[0].residue() == 4);
  CHECK(a.components()[1].residue() == 19);
  CHECK(parse_element(r, "(4,19)") == a);
  CHECK_THROWS_AS(parse_element(r, "(4)"), ParseError);
  CHECK_THROWS_AS(parse_element(r, "(4, 19, 1)"), ParseError);
  CHECK_THROWS_AS(parse_element(r, "7"), ParseError);  // bare scalars stay ambiguous
  // Components may use their own ring syntax.
  RingHandle m = make_ring(parse_ring_spec("Z9*Z5[x]/(x^2)"));
  Element b = parse_element(m, "(2, 1+x)");
  CHECK(b.components()[0].residue() == 2);
}

TEST_CASE("chain generator lists split on semicolons") {
  RingHandle r = make_ring(parse_ring_spec("Z16"));
  auto chains = parse_chain_generators(r, "2; 4; 8");
  REQUIRE(chains.size() == 3);
  CHECK(chains[0] == std::vector<Element>{r->integer(2)});
  CHECK(chains[2] == std::vector<Element>{r->integer(8)});
  CHECK(parse_chain_generators(r, "").empty());
  auto multi = parse_chain_generators(r, "2, 6; 4");
  REQUIRE(multi.size() == 2);
  CHECK(multi[0].size() == 2);
  CHECK_THROWS_AS(parse_chain_generators(r, "2;"), ParseError);
  CHECK_THROWS_AS(parse_chain_generators(r, ";2"), ParseError);
}

TEST_CASE("chain generators may use ring syntax") {
  RingHandle r = make_ring(parse_ring_spec("Z9[x]/(x^2)"));
  auto chains = parse_chain_generators(r, "3, x; 3x");
  REQUIRE(chains.size() == 2);
  CHECK(chains[0].size() == 2);
  CHECK(chains[1].size() == 1);
}

TEST_CASE("factorization strings parse to prime power lists") {
  ZnFactorization f = parse_factorization("3^3*5^2");
  CHECK(f.n == 675);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == 3);
  CHECK(f.factors[0].second == 3);
  CHECK(f.factors[1].first == 5);
  CHECK(f.factors[1].second == 2);

  ZnFactorization single = parse_factorization("7");
  CHECK(single.n == 7);
  CHECK(single.factors.size() == 1);
  CHECK(single.factors[0].second == 1);

  CHECK(parse_factorization("3 ^ 3 * 5 ^ 2").n == 675);
  CHECK_THROWS_AS(parse_factorization(""), ParseError);
  CHECK_THROWS_AS(parse_factorization("3^"), ParseError);
  CHECK_THROWS_AS(parse_factorization("3*"), ParseError);
}
