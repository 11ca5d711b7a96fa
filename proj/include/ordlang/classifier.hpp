#pragma once

#include <cstdint>
#include <string>

#include "ordlang/analysis.hpp"
#include "ordlang/ordinal.hpp"
#include "ordlang/program.hpp"

namespace ordlang {

/// Where an ordinal (or a program of that ordinal) sits in the time
/// hierarchy, with the bounds sandwiching its class.
struct ClassReport {
  Ordinal ordinal;
  Milestone milestone;
  std::string label;  // "TIMEF(n^2)", "≈TIMEF(n_1)", "≈TIMEF(F_4)", ...
  /// Generic convention: between TIMEF(f(n-1)) and TIMEF(f(n+3)).
  std::string sandwich_lower;
  std::string sandwich_upper;
  /// Tighter offsets for the milestone family.
  Bounds tight_bounds;
  bool exact = false;  // class equality rather than a sandwich

  // Filled by classify_program only.
  bool from_program = false;
  std::uint64_t depth = 0;
  bool safe = true;
  bool absorption_free = true;

  std::string to_json() const;
  std::string to_text() const;
};

ClassReport classify(const Ordinal& a);
ClassReport classify_program(const Program& p);

}  // namespace ordlang
