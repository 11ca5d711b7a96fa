#include "ordlang/rewriter.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>

namespace ordlang {

std::uint64_t Datum::length() const {
  std::uint64_t n = 0;
  for (const auto& c : components) n = std::max<std::uint64_t>(n, c.size());
  return n;
}

Datum Datum::unary(std::uint64_t n) {
  return Datum{{std::u32string(n, U'|')}};
}

namespace {

void append_utf8(char32_t c, std::string& out) {
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
}

}  // namespace

std::string Datum::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i > 0) out += ',';
    for (char32_t c : components[i]) append_utf8(c, out);
  }
  return out;
}

Interpretation& Interpretation::bind(char symbol, SymbolFunction fn) {
  functions_[symbol] = std::move(fn);
  return *this;
}

Datum Interpretation::apply(char symbol, const Datum& x) const {
  Datum y;
  if (auto it = functions_.find(symbol); it != functions_.end()) {
    y = it->second(x);
  } else {
    y = x;
    if (y.components.empty()) y.components.emplace_back();
    y.components.front().push_back(symbol == default_symbol_ ? U'|' : static_cast<char32_t>(symbol));
  }
  if (y.length() != x.length() + 1) {
    throw Error(std::string("initial program '") + symbol + "' does not add exactly 1 to the length");
  }
  return y;
}

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::Reduction: return "R";
    case Rule::OmegaElimination: return "omega";
    case Rule::Application: return "A";
    case Rule::Postponement: return "P";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Rewriter

Rewriter::Rewriter(const Program& program) {
  depth_counts_.assign(program.depth() + 1, 0);
  for (auto it = program.atoms().rbegin(); it != program.atoms().rend(); ++it) push_front(*it, 1);
}

void Rewriter::count_depth(const Atom& atom, std::int64_t delta) {
  const auto d = atom.depth();
  if (d >= depth_counts_.size()) depth_counts_.resize(d + 1, 0);
  depth_counts_[d] = static_cast<std::uint64_t>(static_cast<std::int64_t>(depth_counts_[d]) + delta);
}

std::uint64_t Rewriter::max_depth() const {
  for (std::size_t d = depth_counts_.size(); d-- > 0;) {
    if (depth_counts_[d] != 0) return d;
  }
  return 0;
}

namespace {

bool same_atom(const Atom& a, const Atom& b) {
  if (a.is_initial() != b.is_initial()) return false;
  return a.is_initial() ? a.symbol() == b.symbol() : a.body_ptr() == b.body_ptr();
}

}  // namespace

void Rewriter::refresh(std::size_t i) {
  const Ordinal after = i + 1 < runs_.size() ? runs_[i + 1].suffix : Ordinal();
  runs_[i].suffix = add(after, Ordinal::monomial(runs_[i].atom.exponent(), runs_[i].count));
}

void Rewriter::push_front(const Atom& atom, std::uint64_t count) {
  if (count == 0) return;
  if (!runs_.empty() && same_atom(runs_.front().atom, atom)) {
    runs_.front().count += count;
  } else {
    runs_.push_front(Run{atom, count, {}});
  }
  refresh(0);
  count_depth(atom, static_cast<std::int64_t>(count));
}

void Rewriter::push_back(const Atom& atom) {
  if (!runs_.empty() && same_atom(runs_.back().atom, atom)) {
    ++runs_.back().count;
  } else {
    runs_.push_back(Run{atom, 1, {}});
  }
  // Only the trailing initial runs see the new addend; a repetition absorbs
  // the finite sum after it.
  std::size_t i = runs_.size() - 1;
  refresh(i);
  while (i > 0 && runs_[i - 1].atom.is_initial()) refresh(--i);
  count_depth(atom, 1);
}

Atom Rewriter::pop_front() {
  Atom atom = runs_.front().atom;
  if (--runs_.front().count == 0) {
    runs_.pop_front();
  } else {
    refresh(0);
  }
  count_depth(atom, -1);
  return atom;
}

Rewriter::Event Rewriter::step(std::uint64_t datum_length) {
  if (done()) throw Error("computation finished");
  const std::uint64_t l = datum_length + 1;
  const Atom front = pop_front();

  if (front.is_initial()) {
    if (!done() && max_depth() == 1) {
      push_back(front);
      return {Rule::Postponement, l, 1, front.symbol()};
    }
    return {Rule::Application, l, 1, front.symbol()};
  }

  // Leftmost spine: front = <^c <A Q> ...
  std::vector<const Program*> spine;
  const Program* inner = &front.body();
  while (!inner->atoms().front().is_initial()) {
    spine.push_back(inner);
    inner = &inner->atoms().front().body();
  }
  const char head = inner->atoms().front().symbol();
  const bool omega_rule = inner->atoms().size() == 1;
  const Atom copy =
      omega_rule ? Atom::initial(head)
                 : Atom::repetition(Program(std::vector<Atom>(inner->atoms().begin() + 1,
                                                              inner->atoms().end())));
  const std::uint64_t cost = l * inner->length();
  const Rule rule = omega_rule ? Rule::OmegaElimination : Rule::Reduction;

  if (spine.empty()) {
    push_front(copy, l);
    return {rule, l, cost, head};
  }

  std::optional<Program> rebuilt;
  for (std::size_t i = spine.size(); i-- > 0;) {
    const auto& enclosing = spine[i]->atoms();
    std::vector<Atom> atoms;
    if (rebuilt) {
      atoms.reserve(enclosing.size());
      atoms.push_back(Atom::repetition(std::move(*rebuilt)));
    } else {
      atoms.reserve(enclosing.size() - 1 + l);
      atoms.insert(atoms.end(), l, copy);
    }
    atoms.insert(atoms.end(), enclosing.begin() + 1, enclosing.end());
    rebuilt.emplace(std::move(atoms));
  }
  push_front(Atom::repetition(std::move(*rebuilt)), 1);
  return {rule, l, cost, head};
}

Program Rewriter::program() const {
  std::vector<Atom> atoms;
  for (const auto& r : runs_) atoms.insert(atoms.end(), r.count, r.atom);
  return Program(std::move(atoms));
}

Ordinal Rewriter::ordinal() const {
  return runs_.empty() ? Ordinal() : runs_.front().suffix;
}

// ---------------------------------------------------------------------------
// Computations

std::pair<ID, StepRecord> step_once(const ID& id, const Interpretation& interp) {
  if (id.program.empty()) throw Error("computation finished");
  Rewriter rw(id.program);
  const auto ev = rw.step(id.datum.length());
  ID next{rw.program(), id.datum};
  if (ev.rule == Rule::Application) next.datum = interp.apply(ev.symbol, id.datum);
  StepRecord rec{ev.rule, ev.l, ev.cost, ev.symbol, id.program.ordinal(), next.program.ordinal()};
  return {std::move(next), std::move(rec)};
}

Trace run(const Program& p, const Datum& x, const Interpretation& interp,
          const RunOptions& options) {
  if (x.length() < 2) throw Error("input length must be at least 2");
  Rewriter rw(p);
  Trace trace;
  trace.final_datum = x;
  auto finish = [&] { trace.final_length = trace.final_datum.length(); };
  while (!rw.done()) {
    if (trace.step_count >= options.fuel) {
      finish();
      throw FuelExhausted(std::move(trace));
    }
    const bool record = trace.steps.size() < options.record_limit;
    Ordinal before;
    if (record) before = rw.ordinal();
    const auto ev = rw.step(trace.final_datum.length());
    if (ev.rule == Rule::Application) {
      trace.final_datum = interp.apply(ev.symbol, trace.final_datum);
      ++trace.applications;
    }
    ++trace.step_count;
    trace.total_cost += ev.cost;
    if (record) {
      trace.steps.push_back({ev.rule, ev.l, ev.cost, ev.symbol, std::move(before), rw.ordinal()});
    } else {
      trace.steps_elided = true;
    }
  }
  finish();
  return trace;
}

LengthSummary length_run(const Program& p, std::uint64_t n, std::uint64_t fuel) {
  if (n < 2) throw Error("input length must be at least 2");
  Rewriter rw(p);
  LengthSummary out;
  out.final_length = n;
  while (!rw.done()) {
    if (out.steps >= fuel) {
      Trace partial;
      partial.step_count = out.steps;
      partial.final_length = out.final_length;
      partial.applications = out.applications;
      partial.total_cost = out.total_cost;
      throw FuelExhausted(std::move(partial));
    }
    const auto ev = rw.step(out.final_length);
    if (ev.rule == Rule::Application) {
      ++out.final_length;
      ++out.applications;
    }
    ++out.steps;
    out.total_cost += ev.cost;
  }
  return out;
}

std::string trace_json(const Trace& trace, bool include_steps) {
  nlohmann::json j;
  if (include_steps) {
    j["steps"] = nlohmann::json::array();
    for (const auto& s : trace.steps) {
      j["steps"].push_back({{"rule", rule_name(s.rule)},
                            {"l", s.l},
                            {"cost", s.cost},
                            {"ordBefore", s.before.to_string()},
                            {"ordAfter", s.after.to_string()}});
    }
    j["stepsElided"] = trace.steps_elided;
  }
  j["stepCount"] = trace.step_count;
  j["finalLength"] = trace.final_length;
  j["applications"] = trace.applications;
  j["totalCost"] = trace.total_cost;
  return j.dump();
}

}  // namespace ordlang
