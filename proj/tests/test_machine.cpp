#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ordlang/analysis.hpp"
#include "ordlang/error.hpp"
#include "ordlang/machine.hpp"
#include "ordlang/verify.hpp"

using namespace ordlang;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Configuration single(std::uint32_t state, std::vector<TapeSymbol> left, TapeSymbol scanned,
                     std::vector<TapeSymbol> right) {
  return Configuration{state, {Tape{std::move(left), scanned, std::move(right)}}};
}

}  // namespace

TEST_CASE("unary appender by hand") {
  const TuringMachine m = unary_appender();
  Configuration c = Configuration::initial(1);
  CHECK(c == single(1, {}, 1, {}));
  c = tm_step(m, c);
  CHECK(c == single(2, {}, 2, {}));
  c = tm_step(m, c);
  CHECK(c == single(1, {2}, 1, {}));
  c = tm_step(m, c);
  CHECK(c == single(2, {2}, 2, {}));
  CHECK(tm_run(m, Configuration::initial(1), 3) == c);
  // Every two steps one more S_2 cell.
  CHECK(tm_run(m, Configuration::initial(1), 10) == single(1, {2, 2, 2, 2, 2}, 1, {}));
}

TEST_CASE("committed machine file matches the built-in appender") {
  const auto m = TuringMachine::from_json(slurp(ORDLANG_DATA_DIR "/machines/unary_appender.json"));
  CHECK(m.to_json() == unary_appender().to_json());
}

TEST_CASE("identity machine moves every head right") {
  std::vector<Transition> table;
  for (int i = 0; i < 2 * 2 * 2; ++i) table.push_back(Transition{static_cast<std::uint32_t>(1 + i / 4), {0, 0}});
  const TuringMachine m(2, 2, 2, table);
  Configuration c{1, {Tape{{}, 2, {1, 2}}, Tape{{1}, 1, {}}}};
  const Configuration d = tm_step(m, c);
  CHECK(d.tapes[0] == Tape{{2}, 1, {2}});
  CHECK(d.tapes[1] == Tape{{1, 1}, 1, {}});
}

TEST_CASE("tape underflow") {
  const TuringMachine m(1, 1, 1, {Transition{1, {-1}}});
  CHECK_THROWS_WITH_AS(tm_step(m, Configuration::initial(1)), "tape underflow", Error);
}

TEST_CASE("machine validation") {
  CHECK_THROWS_AS(TuringMachine(1, 1, 2, {Transition{1, {0}}}), Error);
  CHECK_THROWS_AS(TuringMachine(1, 1, 1, {Transition{2, {0}}}), Error);
  CHECK_THROWS_AS(TuringMachine(1, 1, 1, {Transition{1, {2}}}), Error);
  CHECK_THROWS_AS(TuringMachine::from_json("{"), Error);
  CHECK_THROWS_AS(TuringMachine::from_json(R"({"q":1,"d":1,"k":2,"table":[
      {"state":1,"scan":[1],"next":1,"actions":[0]}]})"),
                  Error);
  CHECK_THROWS_AS(TuringMachine::from_json(R"({"q":1,"d":1,"k":1,"table":[
      {"state":1,"scan":[1],"next":1,"actions":[0]},
      {"state":1,"scan":[1],"next":1,"actions":[0]}]})"),
                  Error);
  CHECK_THROWS_AS(TuringMachine::from_json(R"({"q":1,"d":1,"k":1})"), Error);
}

TEST_CASE("encoding shape") {
  const TuringMachine m = unary_appender();
  const Datum x = encode_config(m, Configuration::initial(1), 0, 2);
  REQUIRE(x.components.size() == 5);
  CHECK(x.components[0] == std::u32string{1});
  CHECK(x.components[1].empty());
  CHECK(x.components[2] == std::u32string{3});  // S_1 after the two state codes
  CHECK(x.components[3].empty());
  CHECK(x.components[4] == std::u32string{1, 1});
  CHECK(x.length() == 2);

  // The right part is stored reversed.
  const Datum y = encode_config(m, single(2, {2}, 1, {1, 2}), 3, 1);
  CHECK(y.components[3] == (std::u32string{4, 3}));
  CHECK(y.components[4].size() == 4);
}

TEST_CASE("decoding rejects malformed data") {
  const TuringMachine m = unary_appender();
  Datum x = encode_config(m, Configuration::initial(1), 0, 2);
  Datum bad = x;
  bad.components.pop_back();
  CHECK_THROWS_AS(decode_config(m, bad, 2), Error);
  bad = x;
  bad.components[0] = std::u32string{9};
  CHECK_THROWS_AS(decode_config(m, bad, 2), Error);
  bad = x;
  bad.components[2] = std::u32string{3, 3};
  CHECK_THROWS_AS(decode_config(m, bad, 2), Error);
  bad = x;
  bad.components[4] = std::u32string{1, 2};
  CHECK_THROWS_AS(decode_config(m, bad, 2), Error);
  CHECK_THROWS_AS(decode_config(m, x, 3), Error);
}

TEST_CASE("encode/decode round trip") {
  Rng rng(401);
  for (int i = 0; i < 1000; ++i) {
    const TuringMachine m = random_machine(rng, 4, 3, 4);
    const Configuration cfg = random_configuration(rng, m, 6);
    const std::uint64_t t = i % 17;
    const std::uint64_t s = i % 5;
    const auto [back, steps] = decode_config(m, encode_config(m, cfg, t, s), s);
    CHECK(back == cfg);
    CHECK(steps == t);
    CHECK(encode_config(m, cfg, t, s).length() >= t + s);
  }
}

TEST_CASE("compiled step advances the machine and the counter") {
  Rng rng(402);
  for (int i = 0; i < 100; ++i) {
    const TuringMachine m = random_machine(rng, 3, 2, 3);
    const Configuration start = random_configuration(rng, m, 4);
    const auto nxt = compile_step(m);
    // Padding long enough to dominate every reachable encoding.
    const std::uint64_t s = 30;
    Datum x = encode_config(m, start, 0, s);
    for (std::uint64_t t = 0; t < 10; ++t) {
      const Datum y = nxt(x);
      CHECK(y.length() == x.length() + 1);
      CHECK(y == encode_config(m, tm_run(m, start, t + 1), t + 1, s));
      x = y;
    }
    CHECK(decode_config(m, x, s).first == tm_run(m, start, 10));
  }
}

TEST_CASE("simulation through canonical programs") {
  const TuringMachine m = unary_appender();
  const Configuration start = Configuration::initial(1);
  for (const char* text : {"1", "5", "w", "w+2", "w^2", "w^2*2+w"}) {
    const Ordinal a = Ordinal::parse(text);
    const Simulation sim = simulate_via_language(m, a, start, 10'000'000);
    CHECK(sim.initial_length == 2);
    CHECK(BigNat(sim.steps) == size_fn(a, 2).value());
    CHECK(sim.final == tm_run(m, start, sim.steps));
  }
  CHECK(simulate_via_language(m, Ordinal::parse("w^2"), start, 1000).steps == 9);
  CHECK(simulate_via_language(m, Ordinal::parse("1"), start, 1000).steps == 1);
}
