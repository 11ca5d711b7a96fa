#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ordlang {

/// A tree ordinal below epsilon-zero in Cantor normal form:
///
///   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,   e1 > e2 > ... > ek,  ci >= 1
///
/// The empty sum is 0. Values are immutable and cheap to copy (the term list
/// is shared), so they can be passed between threads freely.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  /// Single term w^exponent * coefficient; coefficient 0 yields 0.
  static Ordinal monomial(const Ordinal& exponent, std::uint64_t coefficient);
  /// Builds from terms that must already be in Cantor normal form.
  static Ordinal from_terms(std::vector<Term> terms);
  /// Reads the text grammar `w^(w*2+1)*3+5` (see README). Throws ParseError.
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const;

  bool is_zero() const { return !terms_; }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;
  std::optional<std::uint64_t> as_natural() const;

  /// Exponent of the largest term. Precondition: nonzero.
  const Ordinal& leading_exponent() const;
  /// Exponent of the smallest term. Precondition: nonzero.
  const Ordinal& trailing_exponent() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend Ordinal add(const Ordinal& a, const Ordinal& b);
  friend Ordinal sum_of_powers(const std::vector<const Ordinal*>& exponents);

 private:
  explicit Ordinal(std::vector<Term> terms);

  std::shared_ptr<const std::vector<Term>> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

/// Ordinal sum a + b. Terms of `a` below the leading exponent of `b` are
/// absorbed.
Ordinal add(const Ordinal& a, const Ordinal& b);

/// w^e_0 + w^e_1 + ... in one linear pass.
Ordinal sum_of_powers(const std::vector<const Ordinal*>& exponents);

/// w^a.
Ordinal omega_pow(const Ordinal& a);

/// a * m for a natural m; m = 0 gives 0.
Ordinal mul_nat(const Ordinal& a, std::uint64_t m);

/// The m-th element lambda[m] of the standard fundamental sequence of a limit.
/// Throws Error("not a limit") for 0 and successors, and for m = 0.
Ordinal fundamental(const Ordinal& limit, std::uint64_t m);

/// w_c[base]: w_0[b] = b, w_{c+1}[b] = w^(w_c[b]).
Ordinal tower_omega(std::uint64_t height, const Ordinal& base);

/// Predecessor of a successor ordinal.
Ordinal predecessor(const Ordinal& successor);

/// Length of the canonical program with this ordinal.
std::uint64_t ordinal_size(const Ordinal& a);

}  // namespace ordlang
