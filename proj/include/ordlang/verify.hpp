#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ordlang/machine.hpp"
#include "ordlang/ordinal.hpp"
#include "ordlang/program.hpp"

namespace ordlang {

// ---------------------------------------------------------------------------
// Random generators shared by the acceptance suite and the unit tests.

using Rng = std::mt19937_64;

/// CNF ordinal of nesting height <= height (height 0 gives a natural), with at
/// most max_terms terms and coefficients in [1, max_coeff].
Ordinal random_ordinal(Rng& rng, unsigned height, std::uint64_t max_coeff, unsigned max_terms);

/// A random limit ordinal: random_ordinal without its finite part.
Ordinal random_limit(Rng& rng, unsigned height, std::uint64_t max_coeff, unsigned max_terms);

/// A nonempty program of length <= max_length and depth <= max_depth over
/// `symbols`.
Program random_program(Rng& rng, std::uint64_t max_length, std::uint64_t max_depth,
                       std::string_view symbols = "a");

/// A machine with a random total table.
TuringMachine random_machine(Rng& rng, std::uint32_t max_states, std::uint32_t max_tapes,
                             std::uint32_t max_symbols);

Configuration random_configuration(Rng& rng, const TuringMachine& m, std::size_t max_cells);

// ---------------------------------------------------------------------------
// Acceptance criteria

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  CriterionResult (*run)();
};

/// The eleven acceptance criteria in order.
const std::vector<Criterion>& criteria();

/// Looks a criterion up by id ("4") or name ("descent"). Throws Error.
const Criterion& find_criterion(std::string_view key);

CriterionResult run_criterion(const Criterion& c);

}  // namespace ordlang
