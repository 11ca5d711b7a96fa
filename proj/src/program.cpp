#include "ordlang/program.hpp"

#include <algorithm>
#include <cctype>

#include "ordlang/error.hpp"

namespace ordlang {

Atom Atom::initial(char symbol) {
  return Atom(symbol);
}

Atom Atom::repetition(Program body) {
  if (body.empty()) throw Error("repetition body must be nonempty");
  return Atom(std::make_shared<const Program>(std::move(body)));
}

std::uint64_t Atom::length() const {
  return body_ ? body_->length() + 1 : 1;
}

std::uint64_t Atom::depth() const {
  return body_ ? body_->depth() + 1 : 0;
}

const Ordinal& Atom::exponent() const {
  static const Ordinal zero;
  return body_ ? body_->ordinal() : zero;
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.body_ == b.body_) return a.symbol_ == b.symbol_;
  if (!a.body_ || !b.body_) return false;
  return *a.body_ == *b.body_;
}

Program::Program(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    length_ += a.length();
    depth_ = std::max(depth_, a.depth());
  }
  std::vector<const Ordinal*> exponents;
  exponents.reserve(atoms_.size());
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) exponents.push_back(&it->exponent());
  ordinal_ = sum_of_powers(exponents);
}

std::uint64_t length(const Program& p) { return p.length(); }
std::uint64_t depth(const Program& p) { return p.depth(); }
Ordinal ordinal_of(const Program& p) { return p.ordinal(); }
bool is_safe(const Program& p) { return p.depth() <= 1; }

bool is_absorption_free(const Program& p) {
  const auto& atoms = p.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i + 1 < atoms.size() && atoms[i].exponent() > atoms[i + 1].exponent()) return false;
    if (!atoms[i].is_initial() && !is_absorption_free(atoms[i].body())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

class ProgramReader {
 public:
  ProgramReader(std::string_view text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  Program read() {
    Program p = sequence();
    skip_space();
    if (pos_ < text_.size()) throw ParseError("unbalanced '>'", pos_);
    return p;
  }

 private:
  Program sequence() {
    std::vector<Atom> atoms;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == '>') break;
      const char c = text_[pos_];
      if (c == '<') {
        const std::size_t open = pos_++;
        Program body = sequence();
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unbalanced '<'", open);
        if (body.empty()) throw ParseError("empty repetition body", open);
        ++pos_;
        atoms.push_back(Atom::repetition(std::move(body)));
      } else if (c >= '1' && c <= '9') {
        atoms.insert(atoms.end(), static_cast<std::size_t>(c - '0'),
                     Atom::initial(alphabet_.default_symbol));
        ++pos_;
      } else if (alphabet_.contains(c)) {
        atoms.push_back(Atom::initial(c));
        ++pos_;
      } else {
        throw ParseError(std::string("unknown symbol '") + c + "'", pos_);
      }
    }
    return Program(std::move(atoms));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

void render_atoms(std::vector<Atom>::const_iterator first,
                  std::vector<Atom>::const_iterator last, char default_symbol,
                  std::string& out) {
  while (first != last) {
    if (first->is_initial() && first->symbol() == default_symbol) {
      int run = 0;
      while (first != last && first->is_initial() && first->symbol() == default_symbol) {
        ++run;
        ++first;
        if (run == 9) {
          out += '9';
          run = 0;
        }
      }
      if (run > 0) out += static_cast<char>('0' + run);
      continue;
    }
    if (first->is_initial()) {
      out += first->symbol();
    } else {
      out += '<';
      const auto& body = first->body().atoms();
      render_atoms(body.begin(), body.end(), default_symbol, out);
      out += '>';
    }
    ++first;
  }
}

}  // namespace

Program parse_program(std::string_view text, const Alphabet& alphabet) {
  return ProgramReader(text, alphabet).read();
}

std::string render(const Program& p, char default_symbol) {
  std::string out;
  render_atoms(p.atoms().begin(), p.atoms().end(), default_symbol, out);
  return out;
}

NormalParse normal_parse(const Program& p, char default_symbol) {
  if (p.empty()) throw Error("normal parsing of the absent program");
  NormalParse out;
  const auto& atoms = p.atoms();
  std::size_t d = 0;
  while (d < atoms.size() && atoms[d].is_initial()) ++d;
  if (d == atoms.size()) {
    out.acyclic = true;
    for (const auto& a : atoms) out.symbols += a.symbol();
    return out;
  }
  out.leading = d;

  // Walk the leftmost spine, remembering each enclosing body so the closing
  // part of the token string can be rebuilt from the inside out.
  std::vector<const Program*> spine;
  const Program* body = &atoms[d].body();
  while (!body->atoms().front().is_initial()) {
    spine.push_back(body);
    body = &body->atoms().front().body();
  }
  out.opens = spine.size();
  out.head = body->atoms().front().symbol();
  out.body_rest = Program(std::vector<Atom>(body->atoms().begin() + 1, body->atoms().end()));

  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    const auto& enclosing = (*it)->atoms();
    render_atoms(enclosing.begin() + 1, enclosing.end(), default_symbol, out.tail);
    out.tail += '>';
  }
  render_atoms(atoms.begin() + static_cast<std::ptrdiff_t>(d) + 1, atoms.end(), default_symbol,
               out.tail);
  return out;
}

Program synthesize(const Ordinal& a, char symbol) {
  std::vector<Atom> atoms;
  const auto& terms = a.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Atom atom = it->exponent.is_zero() ? Atom::initial(symbol)
                                             : Atom::repetition(synthesize(it->exponent, symbol));
    atoms.insert(atoms.end(), it->coefficient, atom);
  }
  return Program(std::move(atoms));
}

}  // namespace ordlang
