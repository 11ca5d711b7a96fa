#include "ordlang/machine.hpp"

#include <algorithm>

#include <json.hpp>

namespace ordlang {

Configuration Configuration::initial(std::uint32_t tapes) {
  Configuration cfg;
  cfg.tapes.assign(tapes, Tape{});
  return cfg;
}

TuringMachine::TuringMachine(std::uint32_t states, std::uint32_t tapes, std::uint32_t symbols,
                             std::vector<Transition> table)
    : states_(states), tapes_(tapes), symbols_(symbols), table_(std::move(table)) {
  if (states_ == 0 || tapes_ == 0 || symbols_ == 0) {
    throw Error("machine needs at least one state, tape and symbol");
  }
  std::size_t rows = states_;
  for (std::uint32_t h = 0; h < tapes_; ++h) rows *= symbols_;
  if (table_.size() != rows) {
    throw Error("transition table must have q * k^d entries, got " + std::to_string(table_.size()));
  }
  for (const auto& t : table_) {
    if (t.next < 1 || t.next > states_) throw Error("next state out of range");
    if (t.actions.size() != tapes_) throw Error("one action per tape required");
    for (auto a : t.actions) {
      if (a < -1 || a > static_cast<std::int32_t>(symbols_)) throw Error("action out of range");
    }
  }
}

std::size_t TuringMachine::index(std::uint32_t state, const std::vector<TapeSymbol>& scan) const {
  if (state < 1 || state > states_) throw Error("state out of range");
  if (scan.size() != tapes_) throw Error("scan vector has the wrong arity");
  std::size_t i = state - 1;
  for (auto s : scan) {
    if (s < 1 || s > symbols_) throw Error("scanned symbol out of range");
    i = i * symbols_ + (s - 1);
  }
  return i;
}

const Transition& TuringMachine::transition(std::uint32_t state,
                                            const std::vector<TapeSymbol>& scan) const {
  return table_[index(state, scan)];
}

TuringMachine TuringMachine::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("machine description: ") + e.what());
  }
  try {
    const auto q = j.at("q").get<std::uint32_t>();
    const auto d = j.at("d").get<std::uint32_t>();
    const auto k = j.at("k").get<std::uint32_t>();
    if (q == 0 || d == 0 || k == 0) throw Error("machine needs at least one state, tape and symbol");
    std::size_t rows = q;
    for (std::uint32_t h = 0; h < d; ++h) rows *= k;
    std::vector<Transition> table(rows);
    std::vector<bool> seen(rows, false);
    // Build a throwaway machine only for index computation.
    TuringMachine shape(q, d, k, std::vector<Transition>(rows, Transition{1, std::vector<std::int32_t>(d, 0)}));
    for (const auto& row : j.at("table")) {
      const auto state = row.at("state").get<std::uint32_t>();
      const auto scan = row.at("scan").get<std::vector<TapeSymbol>>();
      const auto i = shape.index(state, scan);
      if (seen[i]) throw Error("duplicate table entry");
      seen[i] = true;
      table[i] = Transition{row.at("next").get<std::uint32_t>(),
                            row.at("actions").get<std::vector<std::int32_t>>()};
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error("transition table is not total");
    }
    return TuringMachine(q, d, k, std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("machine description: ") + e.what());
  }
}

std::string TuringMachine::to_json() const {
  nlohmann::json j{{"q", states_}, {"d", tapes_}, {"k", symbols_}};
  j["table"] = nlohmann::json::array();
  std::vector<TapeSymbol> scan(tapes_, 1);
  for (std::uint32_t state = 1; state <= states_; ++state) {
    std::fill(scan.begin(), scan.end(), 1);
    for (;;) {
      const auto& t = transition(state, scan);
      j["table"].push_back({{"state", state}, {"scan", scan}, {"next", t.next}, {"actions", t.actions}});
      std::size_t h = tapes_;
      while (h > 0 && scan[h - 1] == symbols_) scan[--h] = 1;
      if (h == 0) break;
      ++scan[h - 1];
    }
  }
  return j.dump();
}

Configuration tm_step(const TuringMachine& m, const Configuration& cfg) {
  if (cfg.tapes.size() != m.tapes()) throw Error("configuration has the wrong number of tapes");
  std::vector<TapeSymbol> scan;
  scan.reserve(cfg.tapes.size());
  for (const auto& t : cfg.tapes) scan.push_back(t.scanned);
  const auto& tr = m.transition(cfg.state, scan);

  Configuration out = cfg;
  out.state = tr.next;
  for (std::size_t h = 0; h < out.tapes.size(); ++h) {
    auto& tape = out.tapes[h];
    const auto action = tr.actions[h];
    if (action > 0) {
      tape.scanned = static_cast<TapeSymbol>(action);
    } else if (action == 0) {
      tape.left.push_back(tape.scanned);
      if (tape.right.empty()) {
        tape.scanned = 1;
      } else {
        tape.scanned = tape.right.front();
        tape.right.erase(tape.right.begin());
      }
    } else {
      if (tape.left.empty()) throw Error("tape underflow");
      tape.right.insert(tape.right.begin(), tape.scanned);
      tape.scanned = tape.left.back();
      tape.left.pop_back();
    }
  }
  return out;
}

Configuration tm_run(const TuringMachine& m, Configuration cfg, std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) cfg = tm_step(m, cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Encoding into data

namespace {

constexpr char32_t kPad = 1;

std::u32string encode_cells(const TuringMachine& m, const std::vector<TapeSymbol>& cells) {
  std::u32string out;
  out.reserve(cells.size());
  for (auto s : cells) out.push_back(static_cast<char32_t>(m.states() + s));
  return out;
}

std::vector<TapeSymbol> decode_cells(const TuringMachine& m, const std::u32string& s) {
  std::vector<TapeSymbol> out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (c <= m.states() || c > m.states() + m.symbols()) throw Error("malformed tape component");
    out.push_back(static_cast<TapeSymbol>(c - m.states()));
  }
  return out;
}

Datum encode_with_pad(const TuringMachine& m, const Configuration& cfg, std::uint64_t pad) {
  if (cfg.tapes.size() != m.tapes()) throw Error("configuration has the wrong number of tapes");
  Datum x;
  x.components.reserve(3 * cfg.tapes.size() + 2);
  x.components.push_back(std::u32string(1, static_cast<char32_t>(cfg.state)));
  for (const auto& t : cfg.tapes) {
    x.components.push_back(encode_cells(m, t.left));
    x.components.push_back(encode_cells(m, {t.scanned}));
    std::u32string right = encode_cells(m, t.right);
    std::reverse(right.begin(), right.end());
    x.components.push_back(std::move(right));
  }
  x.components.push_back(std::u32string(pad, kPad));
  return x;
}

std::pair<Configuration, std::uint64_t> decode_with_pad(const TuringMachine& m, const Datum& x) {
  const auto& c = x.components;
  if (c.size() != 3 * static_cast<std::size_t>(m.tapes()) + 2) {
    throw Error("datum has the wrong number of components for this machine");
  }
  if (c.front().size() != 1 || c.front()[0] < 1 || c.front()[0] > m.states()) {
    throw Error("malformed state component");
  }
  Configuration cfg;
  cfg.state = static_cast<std::uint32_t>(c.front()[0]);
  for (std::uint32_t h = 0; h < m.tapes(); ++h) {
    Tape t;
    t.left = decode_cells(m, c[1 + 3 * h]);
    const auto scanned = decode_cells(m, c[2 + 3 * h]);
    if (scanned.size() != 1) throw Error("malformed scanned component");
    t.scanned = scanned.front();
    t.right = decode_cells(m, c[3 + 3 * h]);
    std::reverse(t.right.begin(), t.right.end());
    cfg.tapes.push_back(std::move(t));
  }
  const auto& pad = c.back();
  if (std::any_of(pad.begin(), pad.end(), [](char32_t s) { return s != kPad; })) {
    throw Error("malformed padding component");
  }
  return {std::move(cfg), pad.size()};
}

}  // namespace

Datum encode_config(const TuringMachine& m, const Configuration& cfg, std::uint64_t steps,
                    std::uint64_t input_size) {
  return encode_with_pad(m, cfg, steps + input_size);
}

std::pair<Configuration, std::uint64_t> decode_config(const TuringMachine& m, const Datum& x,
                                                      std::uint64_t input_size) {
  auto [cfg, pad] = decode_with_pad(m, x);
  if (pad < input_size) throw Error("padding shorter than the input size");
  return {std::move(cfg), pad - input_size};
}

SymbolFunction compile_step(const TuringMachine& m) {
  return [m](const Datum& x) {
    auto [cfg, pad] = decode_with_pad(m, x);
    Datum y = encode_with_pad(m, tm_step(m, cfg), pad + 1);
    if (y.length() != x.length() + 1) throw Error("padding does not dominate the encoding");
    return y;
  };
}

Simulation simulate_via_language(const TuringMachine& m, const Ordinal& a,
                                 const Configuration& input, std::uint64_t fuel, char symbol) {
  const std::uint64_t n = std::max<std::uint64_t>(2, encode_with_pad(m, input, 0).length());
  Simulation sim;
  sim.initial_length = n;
  sim.program = synthesize(a, symbol);
  Interpretation interp(symbol);
  interp.bind(symbol, compile_step(m));
  RunOptions options;
  options.fuel = fuel;
  options.record_limit = 0;
  const Trace trace = run(sim.program, encode_config(m, input, 0, n), interp, options);
  auto [cfg, t] = decode_config(m, trace.final_datum, n);
  if (t != trace.applications) throw Error("step counter and padding disagree");
  sim.final = std::move(cfg);
  sim.steps = trace.applications;
  return sim;
}

TuringMachine unary_appender() {
  return TuringMachine(2, 1, 2,
                       {
                           Transition{2, {2}},  // state 1, S_1: write S_2
                           Transition{2, {2}},  // state 1, S_2: write S_2
                           Transition{1, {0}},  // state 2, S_1: move right
                           Transition{1, {0}},  // state 2, S_2: move right
                       });
}

}  // namespace ordlang
