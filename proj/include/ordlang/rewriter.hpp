#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ordlang/error.hpp"
#include "ordlang/ordinal.hpp"
#include "ordlang/program.hpp"

namespace ordlang {

/// An element of the data domain: a nonempty tuple of strings. Its length
/// is the longest component.
struct Datum {
  std::vector<std::u32string> components;

  std::uint64_t length() const;
  /// One component made of n copies of '|'.
  static Datum unary(std::uint64_t n);
  /// Components rendered as UTF-8 and joined with ','.
  std::string to_string() const;

  friend bool operator==(const Datum&, const Datum&) = default;
};

using SymbolFunction = std::function<Datum(const Datum&)>;

/// Binds initial symbols to functions on data. Unbound symbols append one
/// character to the first component: '|' for the default symbol, the symbol
/// itself otherwise.
class Interpretation {
 public:
  explicit Interpretation(char default_symbol = 'a') : default_symbol_(default_symbol) {}

  Interpretation& bind(char symbol, SymbolFunction fn);

  /// Applies `symbol`; throws Error unless the result is exactly one longer.
  Datum apply(char symbol, const Datum& x) const;

 private:
  char default_symbol_;
  std::map<char, SymbolFunction> functions_;
};

enum class Rule { Reduction, OmegaElimination, Application, Postponement };

/// "R", "omega", "A", "P".
const char* rule_name(Rule rule);

struct StepRecord {
  Rule rule = Rule::Application;
  std::uint64_t l = 0;  // |x| + 1 when the step fired
  std::uint64_t cost = 0;
  char symbol = 0;  // the moved or applied symbol for A and P steps
  Ordinal before;
  Ordinal after;
};

struct Trace {
  std::vector<StepRecord> steps;
  bool steps_elided = false;
  std::uint64_t step_count = 0;
  Datum final_datum;
  std::uint64_t final_length = 0;
  std::uint64_t applications = 0;
  std::uint64_t total_cost = 0;
};

/// Thrown when a computation needs more steps than its fuel. `partial` holds
/// the state reached so far.
class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(Trace partial)
      : Error("fuel exhausted after " + std::to_string(partial.step_count) + " steps"),
        partial_(std::move(partial)) {}

  const Trace& partial() const { return partial_; }

 private:
  Trace partial_;
};

/// The deterministic rewriting engine. The current program is stored as a
/// run-length encoded deque of top-level atoms; repetition bodies are shared.
///
/// Step cost model: A and P steps cost 1; an R or omega step costs the length
/// of the text it produces, l * (|<AQ>| - 1).
class Rewriter {
 public:
  struct Event {
    Rule rule;
    std::uint64_t l;
    std::uint64_t cost;
    char symbol;
  };

  explicit Rewriter(const Program& program);

  bool done() const { return runs_.empty(); }

  /// Fires one rule given the current datum length. The caller applies the
  /// symbol of an Application event to its datum.
  Event step(std::uint64_t datum_length);

  Program program() const;
  Ordinal ordinal() const;
  std::size_t run_count() const { return runs_.size(); }

 private:
  struct Run {
    Atom atom;
    std::uint64_t count;
    Ordinal suffix;  // ordinal of this run and every run after it
  };

  void push_front(const Atom& atom, std::uint64_t count);
  void push_back(const Atom& atom);
  Atom pop_front();
  void refresh(std::size_t i);
  void count_depth(const Atom& atom, std::int64_t delta);
  std::uint64_t max_depth() const;

  std::deque<Run> runs_;
  std::vector<std::uint64_t> depth_counts_;
};

struct ID {
  Program program;
  Datum datum;
};

std::pair<ID, StepRecord> step_once(const ID& id, const Interpretation& interp = Interpretation{});

struct RunOptions {
  std::uint64_t fuel = 100'000'000;
  /// Step records kept in the trace; later steps only update the counters.
  std::uint64_t record_limit = 10'000;
};

/// Runs P on x to the absent program. Requires |x| >= 2.
Trace run(const Program& p, const Datum& x, const Interpretation& interp = Interpretation{},
          const RunOptions& options = {});

struct LengthSummary {
  std::uint64_t final_length = 0;
  std::uint64_t applications = 0;
  std::uint64_t total_cost = 0;
  std::uint64_t steps = 0;
};

/// The same computation with the datum abstracted to its length. Throws
/// FuelExhausted (counters only in the partial trace).
LengthSummary length_run(const Program& p, std::uint64_t n, std::uint64_t fuel);

/// {"steps":[{rule,l,cost,ordBefore,ordAfter}], finalLength, applications, totalCost}.
std::string trace_json(const Trace& trace, bool include_steps = true);

}  // namespace ordlang
