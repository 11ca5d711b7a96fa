#include <doctest.h>

#include "ordlang/error.hpp"
#include "ordlang/ordinal.hpp"
#include "ordlang/verify.hpp"

using namespace ordlang;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

}  // namespace

TEST_CASE("parse and print") {
  CHECK(O("0").is_zero());
  CHECK(O("5") == Ordinal::natural(5));
  CHECK(O("w") == Ordinal::omega());
  CHECK(O("w^2+w").to_string() == "w^2+w");
  CHECK(O(" w ^ ( w * 2 + 1 ) * 3 + 5 ").to_string() == "w^(w*2+1)*3+5");
  CHECK(O("w^(w^w)").to_string() == "w^(w^w)");
  CHECK_THROWS_AS(O("w^w^w"), ParseError);
  CHECK(O("w^1").to_string() == "w");
  CHECK(O("w^0").to_string() == "1");
  CHECK(O("w+w").to_string() == "w*2");
  CHECK(O("1+w").to_string() == "w");
  CHECK_THROWS_AS(O("w^"), ParseError);
  CHECK_THROWS_AS(O("w*0"), ParseError);
  CHECK_THROWS_AS(O("x"), ParseError);
  CHECK_THROWS_AS(O(""), ParseError);
  try {
    O("w+)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("compare") {
  CHECK(compare(O("0"), O("0")) == 0);
  CHECK(O("w") < O("w^2"));
  CHECK(O("w^w+1") > O("w^w"));
  CHECK(O("w*2") > O("w+100"));
  CHECK(O("w^(w+1)") > O("w^w*1000"));
}

TEST_CASE("add") {
  CHECK(add(O("w^2"), O("w")) == O("w^2+w"));
  CHECK(add(O("w"), O("w^2")) == O("w^2"));
  CHECK(add(O("2"), O("3")) == O("5"));
  CHECK(add(O("w*2+3"), O("w*4+1")) == O("w*6+1"));
  CHECK(add(O("w^3+w"), O("w^2")) == O("w^3+w^2"));
}

TEST_CASE("omega_pow, mul_nat, tower_omega") {
  CHECK(omega_pow(O("0")) == O("1"));
  CHECK(omega_pow(O("1")) == O("w"));
  CHECK(omega_pow(O("w^2")).to_string() == "w^(w^2)");
  CHECK(mul_nat(O("w^2"), 3) == O("w^2*3"));
  CHECK(mul_nat(O("w+1"), 2) == O("w*2+1"));
  CHECK(mul_nat(O("5"), 4) == O("20"));
  CHECK(mul_nat(O("w"), 0).is_zero());
  CHECK(tower_omega(0, O("w")) == O("w"));
  CHECK(tower_omega(1, O("w")) == O("w^w"));
  CHECK(tower_omega(2, O("3")) == O("w^(w^3)"));
}

TEST_CASE("fundamental sequences") {
  CHECK(fundamental(O("w"), 3) == O("3"));
  CHECK(fundamental(O("w^2"), 3) == O("w*3"));
  CHECK(fundamental(O("w^w"), 3) == O("w^3"));
  CHECK(fundamental(O("w*3"), 4) == O("w*2+4"));
  CHECK(fundamental(O("w^2*2+w"), 5) == O("w^2*2+5"));
  CHECK(fundamental(O("w^(w+1)"), 2) == O("w^w*2"));
  CHECK_THROWS_WITH_AS(fundamental(O("0"), 2), "not a limit", Error);
  CHECK_THROWS_WITH_AS(fundamental(O("w+1"), 2), "not a limit", Error);
  CHECK_THROWS_AS(fundamental(O("w"), 0), Error);
}

TEST_CASE("ordinal_size") {
  CHECK(ordinal_size(O("0")) == 0);
  CHECK(ordinal_size(O("3")) == 3);
  CHECK(ordinal_size(O("w")) == 2);
  CHECK(ordinal_size(O("w^2+w")) == 5);
  CHECK(ordinal_size(O("w^w")) == 3);
}

TEST_CASE("predecessor and classification") {
  CHECK(predecessor(O("w+1")) == O("w"));
  CHECK(predecessor(O("w*2+3")) == O("w*2+2"));
  CHECK_THROWS_AS(predecessor(O("w")), Error);
  CHECK(O("w^2+1").is_successor());
  CHECK(O("w^2").is_limit());
  CHECK(O("7").is_finite());
  CHECK(*O("7").as_natural() == 7);
  CHECK_FALSE(O("w").as_natural().has_value());
}

TEST_CASE("from_terms rejects non-normal forms") {
  using T = Ordinal::Term;
  CHECK_THROWS_AS(Ordinal::from_terms({T{O("1"), 1}, T{O("2"), 1}}), Error);
  CHECK_THROWS_AS(Ordinal::from_terms({T{O("1"), 0}}), Error);
  CHECK_THROWS_AS(mul_nat(O("w*4"), std::uint64_t(1) << 63), Error);
}

TEST_CASE("algebra laws on random ordinals") {
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const Ordinal a = random_ordinal(rng, 3, 4, 3);
    const Ordinal b = random_ordinal(rng, 3, 4, 3);
    const Ordinal c = random_ordinal(rng, 3, 4, 3);
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    // total order
    const int lt = (a < b) + (a == b) + (a > b);
    CHECK(lt == 1);
    if (a <= b && b <= c) CHECK(a <= c);
    // absorption: a entirely below b's leading exponent vanishes
    if (!b.is_zero() && (a.is_zero() || a.leading_exponent() < b.leading_exponent())) {
      CHECK(add(a, b) == b);
    }
    if (a < b) CHECK(omega_pow(a) < omega_pow(b));
    if (!a.is_zero()) CHECK(a < omega_pow(a));
    CHECK(Ordinal::parse(a.to_string()) == a);
  }
}

TEST_CASE("fundamental sequences descend and increase") {
  Rng rng(102);
  for (int i = 0; i < 1000; ++i) {
    const Ordinal lam = random_limit(rng, 3, 4, 3);
    for (std::uint64_t m = 1; m <= 4; ++m) {
      const Ordinal f = fundamental(lam, m);
      CHECK(f < lam);
      CHECK(f < fundamental(lam, m + 1));
    }
  }
}

TEST_CASE("mul_nat agrees with repeated addition") {
  Rng rng(103);
  for (int i = 0; i < 500; ++i) {
    const Ordinal a = random_ordinal(rng, 3, 4, 3);
    Ordinal sum;
    for (std::uint64_t m = 0; m <= 5; ++m) {
      CHECK(mul_nat(a, m) == sum);
      sum = add(sum, a);
    }
  }
}

TEST_CASE("sum_of_powers agrees with a left fold of add") {
  Rng rng(104);
  for (int i = 0; i < 500; ++i) {
    std::vector<Ordinal> exps;
    for (int k = 0; k < 8; ++k) exps.push_back(random_ordinal(rng, 2, 3, 2));
    std::vector<const Ordinal*> ptrs;
    Ordinal fold;
    for (const auto& e : exps) {
      ptrs.push_back(&e);
      fold = add(fold, omega_pow(e));
    }
    CHECK(sum_of_powers(ptrs) == fold);
  }
}
