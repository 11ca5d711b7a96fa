#include <doctest.h>

#include <json.hpp>

#include "ordlang/error.hpp"
#include "ordlang/rewriter.hpp"
#include "ordlang/verify.hpp"

using namespace ordlang;

namespace {

Program P(const char* s) { return parse_program(s); }
Ordinal O(const char* s) { return Ordinal::parse(s); }

std::uint64_t final_length(const char* p, std::uint64_t n) {
  return length_run(P(p), n, 100'000'000).final_length;
}

}  // namespace

TEST_CASE("step_once applies each rule") {
  auto [id, rec] = step_once(ID{P("<1>"), Datum::unary(2)});
  CHECK(id.program == P("111"));
  CHECK(rec.rule == Rule::OmegaElimination);
  CHECK(rec.l == 3);
  CHECK(rec.cost == 3);

  std::tie(id, rec) = step_once(ID{P("<2>"), Datum::unary(2)});
  CHECK(id.program == P("<1><1><1>"));
  CHECK(rec.rule == Rule::Reduction);
  CHECK(rec.before == O("w^2"));
  CHECK(rec.after == O("w*3"));

  std::tie(id, rec) = step_once(ID{P("a<1>"), Datum::unary(2)});
  CHECK(id.program == P("<1>a"));
  CHECK(rec.rule == Rule::Postponement);
  CHECK(id.datum == Datum::unary(2));

  std::tie(id, rec) = step_once(ID{P("a<<1>>"), Datum::unary(2)});
  CHECK(rec.rule == Rule::Application);
  CHECK(id.datum.length() == 3);

  std::tie(id, rec) = step_once(ID{P("<<2>b>"), Datum::unary(2)});
  CHECK(id.program == P("<<1><1><1>b>"));
  CHECK(rec.cost == 3 * 2);

  CHECK_THROWS_WITH_AS(step_once(ID{Program(), Datum::unary(2)}), "computation finished", Error);
}

TEST_CASE("worked examples") {
  CHECK(run(P("<1>"), Datum::unary(2)).final_length == 5);
  CHECK(run(P("<2>"), Datum::unary(2)).final_length == 11);
  CHECK(run(P("<<1>>"), Datum::unary(2)).final_length == 29);
  CHECK(final_length("<1><1><1>", 2) == 11);
  CHECK(final_length("<<1>>", 3) == 259);
  CHECK(final_length("<1><<1>>", 2) == 46661);
  CHECK(final_length("<3>", 4) == 4 + 125);
}

TEST_CASE("run requires |x| >= 2") {
  CHECK_THROWS_AS(run(P("1"), Datum::unary(1)), Error);
  CHECK_THROWS_AS(length_run(P("1"), 1, 10), Error);
}

TEST_CASE("fuel exhaustion keeps the partial trace") {
  RunOptions opt;
  opt.fuel = 10;
  try {
    run(P("<<1>>"), Datum::unary(2), Interpretation{}, opt);
    FAIL("expected fuel exhaustion");
  } catch (const FuelExhausted& e) {
    CHECK(e.partial().step_count == 10);
    CHECK(e.partial().steps.size() == 10);
  }
  CHECK_THROWS_AS(length_run(P("<<1>>"), 2, 10), FuelExhausted);
}

TEST_CASE("initial programs must add exactly one") {
  Interpretation bad;
  bad.bind('b', [](const Datum& x) { return x; });
  CHECK_THROWS_AS(run(P("b"), Datum::unary(2), bad), Error);

  Interpretation good;
  good.bind('b', [](const Datum& x) {
    Datum y = x;
    y.components.push_back(std::u32string(x.length() + 1, U'*'));
    return y;
  });
  const auto t = run(P("<b>"), Datum::unary(2), good);
  CHECK(t.final_length == 5);
  CHECK(t.final_datum.components.size() == 4);
}

TEST_CASE("trace json") {
  const auto t = run(P("<1>"), Datum::unary(2));
  const auto j = nlohmann::json::parse(trace_json(t));
  CHECK(j["finalLength"] == 5);
  CHECK(j["applications"] == 3);
  REQUIRE(j["steps"].size() == 4);
  CHECK(j["steps"][0]["rule"] == "omega");
  CHECK(j["steps"][0]["ordBefore"] == "w");
  CHECK(j["steps"][0]["ordAfter"] == "3");
  CHECK(j["steps"][1]["rule"] == "A");
}

TEST_CASE("record limit elides later steps") {
  RunOptions opt;
  opt.record_limit = 5;
  const auto t = run(P("<<1>>"), Datum::unary(2), Interpretation{}, opt);
  CHECK(t.steps.size() == 5);
  CHECK(t.steps_elided);
  CHECK(t.step_count > 5);
}

TEST_CASE("every step strictly descends") {
  Rng rng(301);
  for (int i = 0; i < 150; ++i) {
    const Program p = random_program(rng, 12, 3, "ab");
    RunOptions opt;
    opt.fuel = 1000;
    opt.record_limit = 1000;
    Trace t;
    try {
      t = run(p, Datum::unary(2), Interpretation{}, opt);
    } catch (const FuelExhausted& e) {
      t = e.partial();
    }
    for (const auto& s : t.steps) CHECK(s.after < s.before);
  }
}

TEST_CASE("rule selection follows the leading atom") {
  Rng rng(302);
  for (int i = 0; i < 500; ++i) {
    const Program p = random_program(rng, 15, 3, "ab");
    const auto [next, rec] = step_once(ID{p, Datum::unary(3)});
    if (p.atoms().front().is_initial()) {
      CHECK((rec.rule == Rule::Application || rec.rule == Rule::Postponement));
    } else {
      CHECK((rec.rule == Rule::Reduction || rec.rule == Rule::OmegaElimination));
    }
    // The rewritten program is well formed: it renders and parses back.
    CHECK(parse_program(render(next.program), Alphabet{"ab", 'a'}) == next.program);
  }
}

TEST_CASE("safe programs postpone and keep l fixed") {
  Rng rng(303);
  for (int i = 0; i < 300; ++i) {
    const Program p = random_program(rng, 6, 1, "ab");
    const std::uint64_t n = 2 + i % 2;
    const auto t = run(p, Datum::unary(n));
    Datum replay = Datum::unary(n);
    const Interpretation interp;
    for (const auto& s : t.steps) {
      if (s.rule == Rule::Reduction || s.rule == Rule::OmegaElimination) CHECK(s.l == n + 1);
      if (s.rule == Rule::Application) replay = interp.apply(s.symbol, replay);
    }
    CHECK(replay == t.final_datum);
  }
}

TEST_CASE("run and length_run agree") {
  Rng rng(304);
  for (int i = 0; i < 200; ++i) {
    const Program p = random_program(rng, 12, 2, "ab");
    const std::uint64_t n = 2 + i % 2;
    RunOptions opt;
    opt.fuel = 5000;
    opt.record_limit = 0;
    std::uint64_t a_len = 0, a_app = 0, b_len = 0, b_app = 0;
    try {
      const auto t = run(p, Datum::unary(n), Interpretation{}, opt);
      a_len = t.final_length;
      a_app = t.applications;
    } catch (const FuelExhausted& e) {
      a_len = e.partial().final_length;
      a_app = e.partial().applications;
    }
    try {
      const auto s = length_run(p, n, 5000);
      b_len = s.final_length;
      b_app = s.applications;
    } catch (const FuelExhausted& e) {
      b_len = e.partial().final_length;
      b_app = e.partial().applications;
    }
    CHECK(a_len == b_len);
    CHECK(a_app == b_app);
  }
}

TEST_CASE("first step of a canonical limit program") {
  Rng rng(305);
  for (int i = 0; i < 300; ++i) {
    const Ordinal a = random_limit(rng, 3, 3, 3);
    for (std::uint64_t n : {2, 3, 5}) {
      const auto [next, rec] = step_once(ID{synthesize(a), Datum::unary(n)});
      CHECK(rec.after == fundamental(a, n + 1));
    }
  }
}

TEST_CASE("rewriter ordinal matches a fresh fold") {
  Rng rng(306);
  for (int i = 0; i < 200; ++i) {
    Rewriter rw(random_program(rng, 12, 2, "ab"));
    std::uint64_t len = 2;
    for (int k = 0; k < 200 && !rw.done(); ++k) {
      if (rw.step(len).rule == Rule::Application) ++len;
      CHECK(rw.ordinal() == rw.program().ordinal());
    }
  }
}
