#include "ordlang/classifier.hpp"

#include <json.hpp>

namespace ordlang {

namespace {

std::string f_name(const Ordinal& idx) {
  const std::string s = idx.to_string();
  return s.size() == 1 ? "F_" + s : "F_{" + s + "}";
}

// f(n + offset) rendered for the report's generic sandwich.
std::string shifted(const std::string& f, int offset) {
  return f + "(n" + (offset < 0 ? "-" : "+") + std::to_string(offset < 0 ? -offset : offset) + ")";
}

}  // namespace

ClassReport classify(const Ordinal& a) {
  ClassReport r;
  r.ordinal = a;
  r.milestone = least_milestone(a);
  r.tight_bounds = milestone_bounds(r.milestone);
  const auto& m = r.milestone;
  std::string f;
  switch (m.family) {
    case Family::Constant:
      r.label = "TIMEF(1)";
      r.exact = true;
      r.sandwich_lower = r.sandwich_upper = "1";
      return r;
    case Family::Polytime:
      r.label = "TIMEF(" + r.tight_bounds.lower.to_string() + ")";
      r.exact = true;
      r.sandwich_lower = r.sandwich_upper = r.tight_bounds.lower.to_string();
      return r;
    case Family::Superexponential:
      f = "n_" + std::to_string(m.c);
      r.label = "≈TIMEF(" + f + ")";
      r.sandwich_lower = "(n-1)_" + std::to_string(m.c);
      r.sandwich_upper = "(n+3)_" + std::to_string(m.c);
      return r;
    case Family::Grzegorczyk:
    case Family::TwoNested:
    case Family::Large:
      f = f_name(m.index);
      r.label = "≈TIMEF(" + f + ")";
      r.sandwich_lower = shifted(f, -1);
      r.sandwich_upper = shifted(f, 3);
      return r;
  }
  return r;
}

ClassReport classify_program(const Program& p) {
  ClassReport r = classify(p.ordinal());
  r.from_program = true;
  r.depth = p.depth();
  r.safe = is_safe(p);
  r.absorption_free = is_absorption_free(p);
  return r;
}

std::string ClassReport::to_json() const {
  nlohmann::json j{{"ordinal", ordinal.to_string()},
                   {"family", family_name(milestone.family)},
                   {"milestone", milestone.ordinal.to_string()},
                   {"label", label},
                   {"sandwichLower", sandwich_lower},
                   {"sandwichUpper", sandwich_upper},
                   {"tightLower", tight_bounds.lower.to_string()},
                   {"tightUpper", tight_bounds.upper.to_string()},
                   {"exact", exact}};
  switch (milestone.family) {
    case Family::Constant:
    case Family::Polytime:
    case Family::Superexponential:
      j["c"] = milestone.c;
      break;
    case Family::Grzegorczyk:
      j["c"] = milestone.c;
      j["index"] = milestone.index.to_string();
      break;
    case Family::TwoNested:
      j["c"] = milestone.c;
      j["d"] = milestone.d;
      j["index"] = milestone.index.to_string();
      break;
    case Family::Large:
      j["index"] = milestone.index.to_string();
      break;
  }
  if (from_program) {
    j["depth"] = depth;
    j["safe"] = safe;
    j["absorptionFree"] = absorption_free;
  }
  return j.dump();
}

std::string ClassReport::to_text() const {
  std::string out;
  out += "ordinal:   " + ordinal.to_string() + "\n";
  out += "family:    " + std::string(family_name(milestone.family)) + "\n";
  out += "milestone: " + milestone.ordinal.to_string() + "\n";
  out += "class:     " + label + "\n";
  if (!exact) {
    out += "sandwich:  TIMEF(" + sandwich_lower + ") .. TIMEF(" + sandwich_upper + ")\n";
    out += "tight:     " + tight_bounds.lower.to_string() + " .. " + tight_bounds.upper.to_string() + "\n";
  }
  if (from_program) {
    out += "depth:     " + std::to_string(depth) + (safe ? " (safe)" : "") + "\n";
    if (!absorption_free) out += "note:      program absorbs addends; its length exceeds the ordinal size\n";
  }
  return out;
}

}  // namespace ordlang
