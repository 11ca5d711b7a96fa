#include "ordlang/ordinal.hpp"

#include <cctype>
#include <limits>
#include <utility>

#include "ordlang/error.hpp"

namespace ordlang {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error("ordinal coefficient overflow");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Error("ordinal coefficient overflow");
  }
  return a * b;
}

const std::vector<Ordinal::Term>& empty_terms() {
  static const std::vector<Ordinal::Term> empty;
  return empty;
}

}  // namespace

Ordinal::Ordinal(std::vector<Term> terms) {
  if (!terms.empty()) {
    terms_ = std::make_shared<const std::vector<Term>>(std::move(terms));
  }
}

Ordinal Ordinal::natural(std::uint64_t n) {
  return monomial(Ordinal(), n);
}

Ordinal Ordinal::omega() {
  return monomial(natural(1), 1);
}

Ordinal Ordinal::monomial(const Ordinal& exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return Ordinal();
  return Ordinal(std::vector<Term>{Term{exponent, coefficient}});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      throw Error("Cantor normal form requires positive coefficients");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw Error("Cantor normal form requires strictly decreasing exponents");
    }
  }
  return Ordinal(std::move(terms));
}

const std::vector<Ordinal::Term>& Ordinal::terms() const {
  return terms_ ? *terms_ : empty_terms();
}

bool Ordinal::is_finite() const {
  return is_zero() || (terms_->size() == 1 && terms_->front().exponent.is_zero());
}

bool Ordinal::is_successor() const {
  return !is_zero() && terms_->back().exponent.is_zero();
}

bool Ordinal::is_limit() const {
  return !is_zero() && !terms_->back().exponent.is_zero();
}

std::optional<std::uint64_t> Ordinal::as_natural() const {
  if (is_zero()) return 0;
  if (!is_finite()) return std::nullopt;
  return terms_->front().coefficient;
}

const Ordinal& Ordinal::leading_exponent() const {
  if (is_zero()) throw Error("zero has no leading exponent");
  return terms_->front().exponent;
}

const Ordinal& Ordinal::trailing_exponent() const {
  if (is_zero()) throw Error("zero has no trailing exponent");
  return terms_->back().exponent;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  if (a.terms_ == b.terms_) return std::strong_ordering::equal;
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  return (a <=> b) == 0;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  return a <=> b;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const auto& lead = b.terms().front();
  std::vector<Ordinal::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  for (const auto& t : a.terms()) {
    auto c = t.exponent <=> lead.exponent;
    if (c > 0) {
      out.push_back(t);
    } else {
      if (c == 0) {
        out.push_back({lead.exponent, checked_add(t.coefficient, lead.coefficient)});
      }
      break;
    }
  }
  std::size_t skip = 0;
  if (!out.empty() && out.back().exponent == lead.exponent) skip = 1;
  for (std::size_t i = skip; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
  // Already in normal form: a's prefix is above b's leading exponent.
  return Ordinal(std::move(out));
}

Ordinal sum_of_powers(const std::vector<const Ordinal*>& exponents) {
  std::vector<Ordinal::Term> out;
  for (const Ordinal* e : exponents) {
    while (!out.empty() && out.back().exponent < *e) out.pop_back();
    if (!out.empty() && out.back().exponent == *e) {
      out.back().coefficient = checked_add(out.back().coefficient, 1);
    } else {
      out.push_back({*e, 1});
    }
  }
  return Ordinal(std::move(out));
}

Ordinal omega_pow(const Ordinal& a) {
  return Ordinal::monomial(a, 1);
}

Ordinal mul_nat(const Ordinal& a, std::uint64_t m) {
  if (m == 0 || a.is_zero()) return Ordinal();
  // (w^e1*c1 + rest) * m = w^e1*(c1*m) + rest for infinite a; the lower terms
  // of all but the last copy are absorbed by the next leading term.
  std::vector<Ordinal::Term> out = a.terms();
  out.front().coefficient = checked_mul(out.front().coefficient, m);
  return Ordinal::from_terms(std::move(out));
}

Ordinal predecessor(const Ordinal& successor) {
  if (!successor.is_successor()) throw Error("not a successor");
  std::vector<Ordinal::Term> out = successor.terms();
  if (--out.back().coefficient == 0) out.pop_back();
  return Ordinal::from_terms(std::move(out));
}

Ordinal fundamental(const Ordinal& limit, std::uint64_t m) {
  if (!limit.is_limit()) throw Error("not a limit");
  if (m == 0) throw Error("fundamental sequence index must be positive");
  std::vector<Ordinal::Term> prefix = limit.terms();
  const Ordinal last = prefix.back().exponent;
  if (--prefix.back().coefficient == 0) prefix.pop_back();
  const Ordinal delta = Ordinal::from_terms(std::move(prefix));
  if (last.is_successor()) {
    return add(delta, Ordinal::monomial(predecessor(last), m));
  }
  return add(delta, omega_pow(fundamental(last, m)));
}

Ordinal tower_omega(std::uint64_t height, const Ordinal& base) {
  Ordinal out = base;
  for (std::uint64_t i = 0; i < height; ++i) out = omega_pow(out);
  return out;
}

std::uint64_t ordinal_size(const Ordinal& a) {
  std::uint64_t total = 0;
  for (const auto& t : a.terms()) {
    std::uint64_t atom = t.exponent.is_zero() ? 1 : checked_add(ordinal_size(t.exponent), 1);
    total = checked_add(total, checked_mul(atom, t.coefficient));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

void print_exponent_atom(const Ordinal& e, std::string& out);

void print(const Ordinal& a, std::string& out) {
  if (a.is_zero()) {
    out += '0';
    return;
  }
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out += '+';
    first = false;
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != Ordinal::natural(1)) {
      out += '^';
      print_exponent_atom(t.exponent, out);
    }
    if (t.coefficient > 1) {
      out += '*';
      out += std::to_string(t.coefficient);
    }
  }
}

void print_exponent_atom(const Ordinal& e, std::string& out) {
  if (e.is_finite() || e == Ordinal::omega()) {
    print(e, out);
  } else {
    out += '(';
    print(e, out);
    out += ')';
  }
}

class OrdinalReader {
 public:
  explicit OrdinalReader(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        offsets_.push_back(i);
      }
    }
    end_offset_ = text.size();
  }

  Ordinal read() {
    if (chars_.empty()) fail("empty ordinal");
    Ordinal out = sum();
    if (pos_ != chars_.size()) fail(std::string("unexpected '") + chars_[pos_] + "'");
    return out;
  }

 private:
  Ordinal sum() {
    Ordinal out = term();
    while (peek() == '+') {
      ++pos_;
      out = add(out, term());
    }
    return out;
  }

  Ordinal term() {
    Ordinal f = factor();
    if (peek() == '*') {
      ++pos_;
      const std::size_t at = pos_;
      const std::uint64_t m = nat();
      if (m == 0) {
        pos_ = at;
        fail("multiplier must be positive");
      }
      f = mul_nat(f, m);
    }
    return f;
  }

  Ordinal factor() {
    if (peek() == 'w') {
      ++pos_;
      if (peek() == '^') {
        ++pos_;
        return omega_pow(atom());
      }
      return Ordinal::omega();
    }
    return Ordinal::natural(nat());
  }

  Ordinal atom() {
    if (peek() == 'w') {
      ++pos_;
      return Ordinal::omega();
    }
    if (peek() == '(') {
      ++pos_;
      Ordinal inner = sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    return Ordinal::natural(nat());
  }

  std::uint64_t nat() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::uint64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(chars_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        fail("number too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  char peek() const { return pos_ < chars_.size() ? chars_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_ < offsets_.size() ? offsets_[pos_] : end_offset_);
  }

  std::vector<char> chars_;
  std::vector<std::size_t> offsets_;
  std::size_t end_offset_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Ordinal::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Ordinal Ordinal::parse(std::string_view text) {
  return OrdinalReader(text).read();
}

}  // namespace ordlang
