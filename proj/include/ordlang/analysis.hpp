#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "ordlang/ordinal.hpp"

namespace ordlang {

using BigNat = mpz_class;

/// An exact natural, or a certified lower bound on the bit length of a value
/// that exceeded the magnitude cap.
class BoundedValue {
 public:
  static BoundedValue exact(BigNat v) { return BoundedValue(std::move(v), 0); }
  static BoundedValue overflow(std::uint64_t lower_bound_bits) {
    return BoundedValue(std::nullopt, lower_bound_bits);
  }

  bool is_exact() const { return value_.has_value(); }
  /// Precondition: is_exact().
  const BigNat& value() const;
  /// Bit length of the exact value, or the certified lower bound.
  std::uint64_t lower_bound_bits() const;

  /// Decimal digits, or "overflow(>= b bits)".
  std::string to_string() const;

  /// True when the value is provably >= x.
  bool at_least(const BigNat& x) const;

 private:
  BoundedValue(std::optional<BigNat> v, std::uint64_t bits) : value_(std::move(v)), bits_(bits) {}

  std::optional<BigNat> value_;
  std::uint64_t bits_;
};

/// 1,000,000 unless ORDLANG_CAP_BITS is set.
std::uint64_t default_cap_bits();

std::uint64_t bit_length(const BigNat& x);

/// Evaluates the size, runtime and fast-growing functions with a shared memo
/// table. One instance per thread; results are plain values.
///
/// Sizes follow the rewriting rules exactly. An atom followed by a program of
/// depth >= 2 has its initial programs applied as soon as they surface, so
/// later unfoldings inside it see the grown length ("eager" evaluation). An
/// atom that ends the program, or is followed only by safe code, postpones
/// them ("standalone" evaluation).
class Analyzer {
 public:
  explicit Analyzer(std::uint64_t cap_bits = default_cap_bits()) : cap_(cap_bits) {}

  std::uint64_t cap_bits() const { return cap_; }

  /// Length added by the canonical program of `a` on input length n >= 2.
  BoundedValue size(const Ordinal& a, const BigNat& n);
  /// Length added by the atom w^e when followed by an unsafe program.
  BoundedValue eager_size(const Ordinal& e, const BigNat& n);
  /// Length added by the atom w^e run on its own.
  BoundedValue standalone_size(const Ordinal& e, const BigNat& n);

  /// Upper bound on the rewriter's totalCost for the canonical program of `a`.
  BoundedValue runtime_bound(const Ordinal& a, const BigNat& n);

  /// F_1(n) = 2n+1, F_{a+1}(n) = F_a^(n+1)(n), F_lambda(n) = F_lambda[n](n).
  BoundedValue wainer(const Ordinal& a, const BigNat& n);

 private:
  using Key = std::pair<Ordinal, BigNat>;

  template <typename F>
  BoundedValue guarded(F&& f);

  BigNat size_(const Ordinal& a, const BigNat& n);
  BigNat eager_(const Ordinal& e, const BigNat& n);
  BigNat standalone_(const Ordinal& e, const BigNat& n);
  BigNat cost_(const Ordinal& a, const BigNat& n);
  BigNat eager_cost_(const Ordinal& e, const BigNat& n);
  BigNat standalone_cost_(const Ordinal& e, const BigNat& n);
  BigNat wainer_(const Ordinal& a, const BigNat& n);

  BigNat polynomial_size(const Ordinal& a, const BigNat& n);
  BigNat polynomial_cost(const Ordinal& a, const BigNat& n);
  BigNat power(const BigNat& base, const BigNat& exponent);
  void check(const BigNat& v) const;
  std::uint64_t index_of(const BigNat& l) const;

  std::uint64_t cap_;
  std::map<Key, BigNat> eager_memo_;
  std::map<Key, BigNat> standalone_memo_;
  std::map<Key, BigNat> eager_cost_memo_;
  std::map<Key, BigNat> wainer_memo_;
};

BoundedValue size_fn(const Ordinal& a, const BigNat& n, std::uint64_t cap_bits = default_cap_bits());
BoundedValue runtime_bound(const Ordinal& a, const BigNat& n,
                           std::uint64_t cap_bits = default_cap_bits());
BoundedValue wainer(const Ordinal& a, const BigNat& n, std::uint64_t cap_bits = default_cap_bits());

/// base_c[top]: c = 0 gives top, otherwise base^(base_{c-1}[top]).
BoundedValue tower_num(const BigNat& base, std::uint64_t height, const BigNat& top,
                       std::uint64_t cap_bits = default_cap_bits());

/// H_c(l): H_0 = l, H_1 = l^(1+l), H_2 = l^(l^(2+l)), H_{c+3} = l_3[q_c] with
/// q_0 = l+2 and q_{j+1} = 1 + l^(q_j). Requires l >= 3.
BoundedValue elem_bound(std::uint64_t c, const BigNat& l,
                        std::uint64_t cap_bits = default_cap_bits());

// ---------------------------------------------------------------------------
// Hierarchy milestones and their bounding functions.

enum class Family { Constant, Polytime, Superexponential, Grzegorczyk, TwoNested, Large };

const char* family_name(Family f);

/// A symbolic bounding function of the input length n (l = n + 1).
struct BoundExpression {
  enum class Kind { Constant, Power, Tower, Wainer };
  Kind kind = Kind::Constant;
  std::uint64_t parameter = 0;  // constant value, power exponent, tower height
  Ordinal index;                // F index
  std::int64_t offset = 0;      // tower base l + offset, or F argument n + offset

  std::string to_string() const;
  friend bool operator==(const BoundExpression&, const BoundExpression&) = default;
};

/// The least ordinal of the hierarchy table that is >= a.
struct Milestone {
  Family family = Family::Constant;
  Ordinal ordinal;
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  Ordinal index;  // F index for the Grzegorczyk, 2-nested and large families
};

Milestone least_milestone(const Ordinal& a);

struct Bounds {
  BoundExpression lower;
  BoundExpression upper;
};

/// Tight bounds for a >= w^w, rounded up to its milestone. Throws
/// Error("use polynomial bound") below w^w.
Bounds grz_bounds(const Ordinal& a);

/// Bounds for any milestone, including the polynomial and constant ones.
Bounds milestone_bounds(const Milestone& m);

}  // namespace ordlang
