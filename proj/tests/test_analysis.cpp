#include <doctest.h>

#include <cstdlib>

#include "ordlang/analysis.hpp"
#include "ordlang/error.hpp"
#include "ordlang/rewriter.hpp"
#include "ordlang/verify.hpp"

using namespace ordlang;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

BigNat measured(const Ordinal& a, std::uint64_t n) {
  return BigNat(length_run(synthesize(a), n, 100'000'000).final_length - n);
}

// Length added while the leading atom of w^e + w^w (run before the w^w atom)
// is consumed, read off the rewriter directly.
BigNat stepped_eager(const Ordinal& e, std::uint64_t n) {
  const Ordinal ww = O("w^w");
  Rewriter rw(synthesize(add(ww, omega_pow(e))));
  std::uint64_t len = n;
  while (rw.ordinal() != ww) {
    if (rw.step(len).rule == Rule::Application) ++len;
  }
  return BigNat(len - n);
}

}  // namespace

TEST_CASE("size matches the rewriter below w^w") {
  for (const char* text : {"0", "1", "4", "w", "w+3", "w*2", "w^2", "w^2+w*2+1", "w^3", "w^3*2"}) {
    for (std::uint64_t n : {2, 3, 4}) {
      INFO(text << " n=" << n);
      CHECK(size_fn(O(text), n).value() == measured(O(text), n));
    }
  }
  CHECK(size_fn(O("w^2"), 2).value() == 9);
  CHECK(size_fn(O("w^3*2+w"), 2).value() == 2 * 27 + 3);
}

TEST_CASE("size matches the rewriter at and above w^w") {
  CHECK(size_fn(O("w^w"), 2).value() == 27);
  CHECK(size_fn(O("w^w"), 3).value() == 256);
  CHECK(size_fn(O("w^w+w"), 2).value() == 46659);
  CHECK(measured(O("w^w"), 2) == 27);
  CHECK(measured(O("w^w"), 3) == 256);
  CHECK(measured(O("w^w+w"), 2) == 46659);
  CHECK(size_fn(O("w^w+1"), 2).value() == measured(O("w^w+1"), 2));
  // w^2 runs eagerly first: 21 cells, then w^w at n = 23.
  BigNat big;
  mpz_ui_pow_ui(big.get_mpz_t(), 24, 24);
  CHECK(size_fn(O("w^w+w^2"), 2).value() == 21 + big);
}

TEST_CASE("w^w*2 overflows and the rewriter agrees it is huge") {
  const BoundedValue v = size_fn(O("w^w*2"), 2);
  CHECK_FALSE(v.is_exact());
  CHECK(v.lower_bound_bits() > 1'000'000);
  CHECK(v.to_string().rfind("overflow(>= ", 0) == 0);
  CHECK_THROWS_AS(length_run(synthesize(O("w^w*2")), 2, 1'000'000), FuelExhausted);
}

TEST_CASE("eager sizes agree with a stepping oracle") {
  Analyzer an;
  CHECK(an.eager_size(O("2"), 2).value() == 21);
  CHECK(an.eager_size(O("2"), 3).value() == 60);
  for (const char* e : {"0", "1", "2"}) {
    for (std::uint64_t n : {2, 3, 4}) {
      INFO(e << " n=" << n);
      CHECK(an.eager_size(O(e), n).value() == stepped_eager(O(e), n));
    }
  }
  CHECK_FALSE(an.eager_size(O("3"), 2).is_exact());
  // Standalone never exceeds eager.
  for (const char* e : {"1", "2", "3"}) {
    CHECK(an.eager_size(O(e), 2).at_least(an.standalone_size(O(e), 2).value()));
  }
}

TEST_CASE("size is additive on non-absorbing sums below w^w") {
  Rng rng(501);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Ordinal b = random_ordinal(rng, 1, 3, 3);
    const Ordinal g = random_ordinal(rng, 1, 3, 3);
    if (b.is_zero() || g.is_zero()) continue;
    if (b.terms().back().exponent < g.leading_exponent()) continue;
    const std::uint64_t n = 2 + i % 3;
    CHECK(size_fn(add(b, g), n).value() == size_fn(b, n).value() + size_fn(g, n).value());
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("size is monotone in n") {
  Rng rng(502);
  for (int i = 0; i < 200; ++i) {
    const Ordinal a = random_ordinal(rng, 1, 3, 3);
    for (std::uint64_t n = 2; n < 6; ++n) {
      CHECK(size_fn(a, n).value() <= size_fn(a, n + 1).value());
    }
  }
}

TEST_CASE("runtime bound") {
  for (std::uint64_t m : {0, 1, 5, 40}) CHECK(runtime_bound(Ordinal::natural(m), 3).value() == m);
  // The measured cost of <2> at n=2 is 30, above the naive l^c + l*c^2 = 21.
  const auto cost = length_run(synthesize(O("w^2")), 2, 1000).total_cost;
  CHECK(cost == 30);
  CHECK(cost > 9 + 3 * 4);
  CHECK(runtime_bound(O("w^2"), 2).value() >= cost);

  Rng rng(503);
  for (int i = 0; i < 200; ++i) {
    const Ordinal a = random_ordinal(rng, 1, 3, 3);
    const std::uint64_t n = 2 + i % 3;
    const auto s = length_run(synthesize(a), n, 10'000'000);
    CHECK(runtime_bound(a, n).value() >= s.total_cost);
  }
  for (const char* text : {"w^w", "w^w+1", "w^w+w"}) {
    const auto s = length_run(synthesize(O(text)), 2, 10'000'000);
    CHECK(runtime_bound(O(text), 2).value() >= s.total_cost);
  }
}

TEST_CASE("wainer hierarchy") {
  CHECK_THROWS_AS(wainer(O("0"), 5), Error);
  CHECK(wainer(O("1"), 5).value() == 11);
  CHECK(wainer(O("2"), 2).value() == 23);
  CHECK(wainer(O("2"), 3).value() == 63);
  CHECK(wainer(O("3"), 1).value() == 2047);
  CHECK(wainer(O("w"), 2).value() == 23);
  CHECK(wainer(O("w"), 1).value() == 3);
  // F_{w+1}(1) = F_w(F_w(1)) = F_3(3), far past the cap.
  CHECK_FALSE(wainer(O("w+1"), 1).is_exact());
  CHECK(wainer(O("w+1"), 1).lower_bound_bits() >= wainer(O("3"), 2).lower_bound_bits());
  CHECK_FALSE(wainer(O("4"), 3).is_exact());
  CHECK_THROWS_AS(wainer(O("w"), 0), Error);
  for (std::uint64_t n = 1; n < 6; ++n) {
    CHECK(wainer(O("1"), n).value() < wainer(O("2"), n).value());
    CHECK(wainer(O("2"), n).value() < wainer(O("2"), n + 1).value());
  }
  // F_2 against its defining iteration.
  for (std::uint64_t n = 0; n < 8; ++n) {
    BigNat x = n;
    for (std::uint64_t i = 0; i <= n; ++i) x = 2 * x + 1;
    CHECK(wainer(O("2"), n).value() == x);
  }
}

TEST_CASE("towers and elementary bounds") {
  CHECK(tower_num(3, 0, 3).value() == 3);
  CHECK(tower_num(3, 1, 3).value() == 27);
  CHECK(tower_num(3, 2, 3).value() == BigNat("7625597484987"));
  CHECK(tower_num(2, 2, 5).value() == BigNat("4294967296"));
  CHECK_FALSE(tower_num(3, 4, 3).is_exact());

  CHECK(elem_bound(0, 7).value() == 7);
  CHECK(elem_bound(1, 3).value() == 81);
  CHECK(size_fn(O("w^w"), 2).value() <= elem_bound(1, 3).value());
  CHECK(elem_bound(2, 3).value() == tower_num(3, 1, tower_num(3, 1, 5).value()).value());
  CHECK_FALSE(elem_bound(3, 3).is_exact());
  CHECK_THROWS_AS(elem_bound(1, 2), Error);
}

TEST_CASE("bounded values") {
  const BoundedValue e = BoundedValue::exact(100);
  CHECK(e.at_least(100));
  CHECK_FALSE(e.at_least(101));
  CHECK(e.lower_bound_bits() == 7);
  CHECK(e.to_string() == "100");
  const BoundedValue o = BoundedValue::overflow(64);
  CHECK(o.at_least(BigNat("9223372036854775807")));
  CHECK_FALSE(o.at_least(BigNat(1) << 70));
  CHECK(o.to_string() == "overflow(>= 64 bits)");
  CHECK_THROWS_AS(o.value(), Error);

  CHECK(default_cap_bits() == 1'000'000);
  setenv("ORDLANG_CAP_BITS", "16", 1);
  CHECK(default_cap_bits() == 16);
  CHECK_FALSE(size_fn(O("w^w"), 6).is_exact());  // 7^7 needs 20 bits
  unsetenv("ORDLANG_CAP_BITS");
  CHECK(size_fn(O("w^w"), 6).value() == 823543);
}

TEST_CASE("milestones") {
  auto ms = least_milestone(O("5"));
  CHECK(ms.family == Family::Constant);
  CHECK(ms.c == 5);

  ms = least_milestone(O("w^2+1"));
  CHECK(ms.family == Family::Polytime);
  CHECK(ms.c == 3);

  ms = least_milestone(O("w^w"));
  CHECK(ms.family == Family::Superexponential);
  CHECK(ms.c == 1);

  ms = least_milestone(O("w^(w+1)"));
  CHECK(ms.family == Family::Grzegorczyk);
  CHECK(ms.index == O("3"));

  ms = least_milestone(O("w^(w*3+2)"));
  CHECK(ms.family == Family::TwoNested);
  CHECK(ms.index == O("w*2+2"));

  ms = least_milestone(O("w^(w^2)"));
  CHECK(ms.family == Family::Large);

  ms = least_milestone(O("w^(w^w)"));
  CHECK(ms.family == Family::Superexponential);
  CHECK(ms.c == 2);

  Rng rng(504);
  for (int i = 0; i < 500; ++i) {
    const Ordinal a = random_ordinal(rng, 3, 3, 3);
    CHECK(least_milestone(a).ordinal >= a);
    const Ordinal b = random_ordinal(rng, 3, 3, 3);
    if (a <= b) CHECK(least_milestone(a).ordinal <= least_milestone(b).ordinal);
  }
}

TEST_CASE("tight bounds per family") {
  auto b = grz_bounds(O("w^(w+1)"));
  CHECK(b.lower.to_string() == "F_3(n)");
  CHECK(b.upper.to_string() == "F_3(n+1)");

  b = grz_bounds(O("w^(w^2)"));
  CHECK(b.lower.offset == -1);
  CHECK(b.upper.offset == 1);
  CHECK(b.lower.to_string().find("(n-1)") != std::string::npos);

  b = grz_bounds(O("w^(w^w)"));
  CHECK(b.lower.to_string() == "l_2");
  CHECK(b.upper.to_string() == "(l+2)_2");

  b = grz_bounds(O("w^(w*2)"));
  CHECK(b.lower.to_string() == "F_w(n)");
  CHECK(b.upper.to_string() == "F_w(n+2)");

  CHECK_THROWS_WITH_AS(grz_bounds(O("w^5")), "use polynomial bound", Error);
}
