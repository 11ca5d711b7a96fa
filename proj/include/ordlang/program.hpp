#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ordlang/ordinal.hpp"

namespace ordlang {

class Program;

/// The initial-program symbols a program may use. Digits in program text are
/// shorthand for runs of `default_symbol`.
struct Alphabet {
  std::string symbols = "abcdefghijklmnopqrstuvwxyz";
  char default_symbol = 'a';

  bool contains(char c) const { return symbols.find(c) != std::string::npos; }
};

/// One element of a composition: an initial program or a repetition <Q>.
class Atom {
 public:
  static Atom initial(char symbol);
  static Atom repetition(Program body);

  bool is_initial() const { return !body_; }
  char symbol() const { return symbol_; }
  /// Precondition: !is_initial().
  const Program& body() const { return *body_; }
  const std::shared_ptr<const Program>& body_ptr() const { return body_; }

  std::uint64_t length() const;
  std::uint64_t depth() const;
  /// Exponent e with o(atom) = w^e: 0 for an initial, o(body) for <body>.
  const Ordinal& exponent() const;

  friend bool operator==(const Atom& a, const Atom& b);

 private:
  explicit Atom(char symbol) : symbol_(symbol) {}
  explicit Atom(std::shared_ptr<const Program> body) : body_(std::move(body)) {}

  char symbol_ = 0;
  std::shared_ptr<const Program> body_;
};

/// A program: a finite composition of atoms. The empty composition is the
/// absent program. Length, depth and ordinal are computed once at
/// construction.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  std::uint64_t length() const { return length_; }
  std::uint64_t depth() const { return depth_; }
  const Ordinal& ordinal() const { return ordinal_; }

  friend bool operator==(const Program& a, const Program& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::vector<Atom> atoms_;
  std::uint64_t length_ = 0;
  std::uint64_t depth_ = 0;
  Ordinal ordinal_;
};

/// Grammar: program := item*, item := digit | letter | '<' program '>'.
/// Whitespace is ignored. Throws ParseError on unbalanced brackets, unknown
/// symbols, '0' and empty repetition bodies.
Program parse_program(std::string_view text, const Alphabet& alphabet = {});

/// Inverse of parse_program; runs of the default symbol print as digits.
std::string render(const Program& p, char default_symbol = 'a');

std::uint64_t length(const Program& p);
std::uint64_t depth(const Program& p);
Ordinal ordinal_of(const Program& p);
bool is_safe(const Program& p);

/// True when no ordinal addend is absorbed anywhere in the program, so that
/// length(p) == ordinal_size(ordinal_of(p)).
bool is_absorption_free(const Program& p);

/// Leftmost-spine decomposition P = d <^c <A Q> U.
struct NormalParse {
  bool acyclic = false;
  /// Symbols of P when acyclic.
  std::string symbols;
  std::uint64_t leading = 0;  // d
  std::uint64_t opens = 0;    // c
  char head = 0;              // A
  Program body_rest;          // Q
  /// Token string after <AQ>; not necessarily a well-formed program.
  std::string tail;
};

/// Precondition: p nonempty.
NormalParse normal_parse(const Program& p, char default_symbol = 'a');

/// The canonical program of ordinal `a` using only `symbol`: Cantor terms are
/// emitted smallest first, so no addend is absorbed.
Program synthesize(const Ordinal& a, char symbol = 'a');

}  // namespace ordlang
