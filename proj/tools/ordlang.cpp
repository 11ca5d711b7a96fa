// ordlang: command-line front end for the ordinal-indexed loop language.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordlang/analysis.hpp"
#include "ordlang/classifier.hpp"
#include "ordlang/error.hpp"
#include "ordlang/machine.hpp"
#include "ordlang/ordinal.hpp"
#include "ordlang/program.hpp"
#include "ordlang/rewriter.hpp"
#include "ordlang/verify.hpp"

using namespace ordlang;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// One component per line; each byte is one character.
Datum read_datum(const std::string& path) {
  Datum x;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    x.components.emplace_back(line.begin(), line.end());
  }
  if (x.components.empty()) x.components.emplace_back();
  return x;
}

BigNat big(const std::string& s) {
  BigNat v;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || v.set_str(s, 10) != 0) {
    throw Error("expected a natural number, got '" + s + "'");
  }
  return v;
}

json bounded_json(const BoundedValue& v) {
  if (v.is_exact()) return {{"exact", true}, {"value", v.value().get_str()}};
  return {{"exact", false}, {"lowerBoundBits", v.lower_bound_bits()}};
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

std::string config_text(const Configuration& cfg) {
  std::ostringstream out;
  out << "state " << cfg.state;
  for (std::size_t h = 0; h < cfg.tapes.size(); ++h) {
    const auto& t = cfg.tapes[h];
    out << " | tape " << h + 1 << ":";
    for (auto s : t.left) out << ' ' << s;
    out << " [" << t.scanned << ']';
    for (auto s : t.right) out << ' ' << s;
  }
  return out.str();
}

json config_json(const Configuration& cfg) {
  json tapes = json::array();
  for (const auto& t : cfg.tapes) {
    tapes.push_back({{"left", t.left}, {"scanned", t.scanned}, {"right", t.right}});
  }
  return {{"state", cfg.state}, {"tapes", tapes}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run, analyse and classify programs of the ordinal loop language"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::string program_text;
  std::string ordinal_text;
  std::string n_text;
  std::string symbol = "a";

  auto* parse_cmd = app.add_subcommand("parse", "Parse a program and show its structure");
  parse_cmd->add_option("program", program_text, "Program text, e.g. \"<1><2>\"")->required();
  parse_cmd->add_flag("--json", as_json);

  auto* ord_cmd = app.add_subcommand("ord", "Print the ordinal of a program");
  ord_cmd->add_option("program", program_text)->required();
  ord_cmd->add_flag("--json", as_json);

  auto* synth_cmd = app.add_subcommand("synth", "Canonical program of an ordinal");
  synth_cmd->add_option("--ordinal", ordinal_text, "Ordinal, e.g. \"w^2+w\"")->required();
  synth_cmd->add_option("--symbol", symbol, "Initial program symbol");
  synth_cmd->add_flag("--json", as_json);

  std::uint64_t run_n = 0;
  std::string input_path;
  std::uint64_t fuel = 100'000'000;
  bool show_trace = false;
  auto* run_cmd = app.add_subcommand("run", "Run a program on an input");
  run_cmd->add_option("program", program_text)->required();
  auto* n_opt = run_cmd->add_option("--n", run_n, "Unary input of this length (>= 2)");
  auto* input_opt = run_cmd->add_option("--input", input_path, "Input datum file, one component per line");
  n_opt->excludes(input_opt);
  run_cmd->add_option("--fuel", fuel, "Maximum number of steps");
  run_cmd->add_flag("--trace", show_trace, "Print every step");
  run_cmd->add_flag("--json", as_json);

  auto* size_cmd = app.add_subcommand("size", "Exact length added by the canonical program");
  size_cmd->add_option("--ordinal", ordinal_text)->required();
  size_cmd->add_option("--n", n_text)->required();
  size_cmd->add_flag("--json", as_json);

  std::uint64_t cap = 0;
  auto* wainer_cmd = app.add_subcommand("wainer", "Fast-growing function F_a(n)");
  wainer_cmd->add_option("--ordinal", ordinal_text)->required();
  wainer_cmd->add_option("--n", n_text)->required();
  wainer_cmd->add_option("--cap", cap, "Magnitude cap in bits");
  wainer_cmd->add_flag("--json", as_json);

  auto* bounds_cmd = app.add_subcommand("bounds", "Runtime bound and hierarchy bounds of an ordinal");
  bounds_cmd->add_option("--ordinal", ordinal_text)->required();
  bounds_cmd->add_option("--n", n_text, "Also evaluate the runtime bound at this length");
  bounds_cmd->add_flag("--json", as_json);

  auto* classify_cmd = app.add_subcommand("classify", "Place a program or ordinal in the hierarchy");
  auto* cls_prog = classify_cmd->add_option("program", program_text);
  auto* cls_ord = classify_cmd->add_option("--ordinal", ordinal_text);
  cls_prog->excludes(cls_ord);
  classify_cmd->add_flag("--json", as_json);

  std::string machine_path;
  std::uint64_t tm_steps = 0;
  auto* tm_cmd = app.add_subcommand("tm", "Turing machine tools");
  tm_cmd->require_subcommand(1);
  auto* tm_run_cmd = tm_cmd->add_subcommand("run", "Run the machine directly");
  tm_run_cmd->add_option("--machine", machine_path)->required()->check(CLI::ExistingFile);
  tm_run_cmd->add_option("--steps", tm_steps)->required();
  tm_run_cmd->add_flag("--json", as_json);
  auto* tm_compile_cmd = tm_cmd->add_subcommand("compile", "Encode the blank start configuration");
  tm_compile_cmd->add_option("--machine", machine_path)->required()->check(CLI::ExistingFile);
  tm_compile_cmd->add_flag("--json", as_json);
  auto* tm_sim_cmd = tm_cmd->add_subcommand("simulate", "Simulate through a canonical program");
  tm_sim_cmd->add_option("--machine", machine_path)->required()->check(CLI::ExistingFile);
  tm_sim_cmd->add_option("--ordinal", ordinal_text)->required();
  tm_sim_cmd->add_option("--fuel", fuel);
  tm_sim_cmd->add_flag("--json", as_json);

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suites");
  verify_cmd->add_option("--suite", suite, "Criterion id or name");
  verify_cmd->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse_cmd) {
      const Program p = parse_program(program_text);
      const auto np = normal_parse(p);
      json j{{"program", render(p)},
             {"length", p.length()},
             {"depth", p.depth()},
             {"ordinal", p.ordinal().to_string()},
             {"safe", is_safe(p)},
             {"absorptionFree", is_absorption_free(p)}};
      std::ostringstream t;
      t << "program:  " << render(p) << "\nlength:   " << p.length() << "\ndepth:    " << p.depth()
        << "\nordinal:  " << p.ordinal().to_string() << "\n";
      if (np.acyclic) {
        j["normal"] = {{"acyclic", true}, {"symbols", np.symbols}};
        t << "normal:   acyclic " << np.symbols << "\n";
      } else {
        j["normal"] = {{"acyclic", false},
                       {"leading", np.leading},
                       {"opens", np.opens},
                       {"head", std::string(1, np.head)},
                       {"bodyRest", render(np.body_rest)},
                       {"tail", np.tail}};
        t << "normal:   d=" << np.leading << " c=" << np.opens << " A=" << np.head
          << " Q=\"" << render(np.body_rest) << "\" U=\"" << np.tail << "\"\n";
      }
      if (!is_absorption_free(p)) t << "note:     some addends are absorbed\n";
      emit(as_json, j, t.str());
    } else if (*ord_cmd) {
      const Program p = parse_program(program_text);
      emit(as_json, {{"ordinal", p.ordinal().to_string()}, {"absorptionFree", is_absorption_free(p)}},
           p.ordinal().to_string());
    } else if (*synth_cmd) {
      if (symbol.size() != 1) throw Error("--symbol takes a single character");
      const Program p = synthesize(Ordinal::parse(ordinal_text), symbol[0]);
      const std::string text = render(p, symbol[0]);
      emit(as_json, {{"program", text}, {"length", p.length()}}, text);
    } else if (*run_cmd) {
      if (!*n_opt && !*input_opt) throw Error("run needs --n or --input");
      const Program p = parse_program(program_text);
      const Datum x = *n_opt ? Datum::unary(run_n) : read_datum(input_path);
      RunOptions opt;
      opt.fuel = fuel;
      opt.record_limit = show_trace ? 10'000 : 0;
      Trace trace;
      int code = 0;
      try {
        trace = run(p, x, Interpretation{}, opt);
      } catch (const FuelExhausted& e) {
        trace = e.partial();
        std::cerr << "ordlang: " << e.what() << '\n';
        code = 2;
      }
      json j = json::parse(trace_json(trace, show_trace));
      j["initialLength"] = x.length();
      if (*input_opt) j["finalDatum"] = trace.final_datum.to_string();
      std::ostringstream t;
      if (show_trace) {
        for (const auto& s : trace.steps) {
          t << rule_name(s.rule) << "\tl=" << s.l << "\tcost=" << s.cost << "\t" << s.before.to_string()
            << " -> " << s.after.to_string() << "\n";
        }
        if (trace.steps_elided) t << "... (further steps not recorded)\n";
      }
      t << "finalLength:  " << trace.final_length << "\napplications: " << trace.applications
        << "\nsteps:        " << trace.step_count << "\ntotalCost:    " << trace.total_cost << "\n";
      if (*input_opt) t << "finalDatum:   " << trace.final_datum.to_string() << "\n";
      emit(as_json, j, t.str());
      return code;
    } else if (*size_cmd) {
      const auto v = size_fn(Ordinal::parse(ordinal_text), big(n_text));
      emit(as_json, bounded_json(v), v.to_string());
    } else if (*wainer_cmd) {
      const auto v = wainer(Ordinal::parse(ordinal_text), big(n_text), cap ? cap : default_cap_bits());
      emit(as_json, bounded_json(v), v.to_string());
    } else if (*bounds_cmd) {
      const Ordinal a = Ordinal::parse(ordinal_text);
      const Milestone m = least_milestone(a);
      const Bounds b = milestone_bounds(m);
      json j{{"ordinal", a.to_string()},
             {"milestone", m.ordinal.to_string()},
             {"family", family_name(m.family)},
             {"lower", b.lower.to_string()},
             {"upper", b.upper.to_string()}};
      std::ostringstream t;
      t << "milestone: " << m.ordinal.to_string() << " (" << family_name(m.family) << ")\n"
        << "bounds:    " << b.lower.to_string() << " .. " << b.upper.to_string() << "\n";
      if (!n_text.empty()) {
        const auto r = runtime_bound(a, big(n_text));
        j["runtimeBound"] = bounded_json(r);
        t << "runtime:   " << r.to_string() << "\n";
      }
      emit(as_json, j, t.str());
    } else if (*classify_cmd) {
      ClassReport r;
      if (*cls_ord) {
        r = classify(Ordinal::parse(ordinal_text));
      } else if (*cls_prog) {
        r = classify_program(parse_program(program_text));
      } else {
        throw Error("classify needs a program or --ordinal");
      }
      emit(as_json, json::parse(r.to_json()), r.to_text());
    } else if (*tm_cmd) {
      const TuringMachine m = TuringMachine::from_json(read_file(machine_path));
      const Configuration start = Configuration::initial(m.tapes());
      if (*tm_run_cmd) {
        const Configuration end = tm_run(m, start, tm_steps);
        emit(as_json, {{"steps", tm_steps}, {"configuration", config_json(end)}}, config_text(end));
      } else if (*tm_compile_cmd) {
        const Datum x = encode_config(m, start, 0, 0);
        json comps = json::array();
        for (const auto& c : x.components) comps.push_back(std::vector<std::uint32_t>(c.begin(), c.end()));
        std::ostringstream t;
        t << "alphabet: states 1.." << m.states() << ", symbols " << m.states() + 1 << ".."
          << m.states() + m.symbols() << "\ncomponents: " << x.components.size() << "\nstart:";
        for (const auto& c : x.components) {
          t << " (";
          for (std::size_t i = 0; i < c.size(); ++i) t << (i ? " " : "") << static_cast<std::uint32_t>(c[i]);
          t << ")";
        }
        emit(as_json, {{"components", comps}}, t.str());
      } else {
        const Ordinal a = Ordinal::parse(ordinal_text);
        const Simulation sim = simulate_via_language(m, a, start, fuel);
        const bool agrees = sim.final == tm_run(m, start, sim.steps);
        emit(as_json,
             {{"program", render(sim.program, 'n')},
              {"initialLength", sim.initial_length},
              {"steps", sim.steps},
              {"configuration", config_json(sim.final)},
              {"matchesDirectRun", agrees}},
             "program: " + render(sim.program, 'n') + "\nsteps:   " + std::to_string(sim.steps) +
                 "\nfinal:   " + config_text(sim.final) + "\ndirect run agrees: " + (agrees ? "yes" : "no"));
        if (!agrees) return 1;
      }
    } else if (*verify_cmd) {
      std::vector<const Criterion*> selected;
      if (suite.empty()) {
        for (const auto& c : criteria()) selected.push_back(&c);
      } else {
        selected.push_back(&find_criterion(suite));
      }
      bool all = true;
      json out = json::array();
      for (const auto* c : selected) {
        const auto r = run_criterion(*c);
        all = all && r.passed;
        out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        if (!as_json) {
          std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ' ' << r.name << ": " << r.detail << std::endl;
        }
      }
      if (as_json) std::cout << out.dump() << '\n';
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "ordlang: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
