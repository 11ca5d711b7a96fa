#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlang/ordinal.hpp"
#include "ordlang/rewriter.hpp"

namespace ordlang {

/// Symbols are numbered 1..k (S_1..S_k); S_1 is the blank.
using TapeSymbol = std::uint32_t;

struct Tape {
  std::vector<TapeSymbol> left;   // cells left of the head, leftmost first
  TapeSymbol scanned = 1;
  std::vector<TapeSymbol> right;  // cells right of the head, nearest first

  friend bool operator==(const Tape&, const Tape&) = default;
};

struct Configuration {
  std::uint32_t state = 1;
  std::vector<Tape> tapes;

  /// State 1 with every tape blank.
  static Configuration initial(std::uint32_t tapes);

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Action on one tape: -1 moves left, 0 moves right, v > 0 writes S_v.
struct Transition {
  std::uint32_t next = 1;
  std::vector<std::int32_t> actions;
};

/// A q-state, d-tape machine over {S_1..S_k} given by a total q x k^d table.
/// Tapes are infinite to the right only.
class TuringMachine {
 public:
  TuringMachine(std::uint32_t states, std::uint32_t tapes, std::uint32_t symbols,
                std::vector<Transition> table);

  /// {"q", "d", "k", "table": [{"state", "scan", "next", "actions"}]}.
  static TuringMachine from_json(std::string_view text);
  std::string to_json() const;

  std::uint32_t states() const { return states_; }
  std::uint32_t tapes() const { return tapes_; }
  std::uint32_t symbols() const { return symbols_; }

  const Transition& transition(std::uint32_t state, const std::vector<TapeSymbol>& scan) const;

 private:
  std::size_t index(std::uint32_t state, const std::vector<TapeSymbol>& scan) const;

  std::uint32_t states_;
  std::uint32_t tapes_;
  std::uint32_t symbols_;
  std::vector<Transition> table_;
};

/// One step. Throws Error("tape underflow") on a left move at the left edge.
Configuration tm_step(const TuringMachine& m, const Configuration& cfg);
Configuration tm_run(const TuringMachine& m, Configuration cfg, std::uint64_t steps);

/// (i, l1, o1, r1^R, ..., ld, od, rd^R, 1^(T+input_size)) over the alphabet
/// {1..q, S_1..S_k}: state i is code i, S_v is code q + v.
Datum encode_config(const TuringMachine& m, const Configuration& cfg, std::uint64_t steps,
                    std::uint64_t input_size);

/// Inverse of encode_config; returns the configuration and T. Throws Error on
/// a malformed datum.
std::pair<Configuration, std::uint64_t> decode_config(const TuringMachine& m, const Datum& x,
                                                      std::uint64_t input_size);

/// The initial program nxt^M: one machine step on an encoded configuration
/// plus one more padding cell, so its result is exactly one longer.
SymbolFunction compile_step(const TuringMachine& m);

struct Simulation {
  Configuration final;
  std::uint64_t steps = 0;           // machine steps = applications of nxt^M
  std::uint64_t initial_length = 0;  // n0
  Program program;
};

/// Runs the canonical program of `a` built from nxt^M alone on the encoding
/// of `input`. The padding is max(2, longest encoded component) cells.
Simulation simulate_via_language(const TuringMachine& m, const Ordinal& a,
                                 const Configuration& input, std::uint64_t fuel,
                                 char symbol = 'n');

/// Two states, one tape, two symbols: state 1 writes S_2, state 2 moves right.
TuringMachine unary_appender();

}  // namespace ordlang
