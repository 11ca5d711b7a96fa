#include "ordlang/analysis.hpp"

#include <cstdlib>
#include <limits>

#include "ordlang/error.hpp"

namespace ordlang {

namespace {

constexpr std::uint64_t kDefaultCap = 1'000'000;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Thrown inside the evaluator once a value passes the cap. `bits` is a
// certified lower bound on the bit length of the quantity being computed.
struct CapExceeded {
  std::uint64_t bits;
};

std::uint64_t saturate(const BigNat& v) {
  return v.fits_ulong_p() ? v.get_ui() : kSaturated;
}

bool below_omega_omega(const Ordinal& a) {
  return a.is_zero() || a.leading_exponent().is_finite();
}

const Ordinal& omega() {
  static const Ordinal w = Ordinal::omega();
  return w;
}

}  // namespace

std::uint64_t bit_length(const BigNat& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

const BigNat& BoundedValue::value() const {
  if (!value_) throw Error("value exceeded the magnitude cap");
  return *value_;
}

std::uint64_t BoundedValue::lower_bound_bits() const {
  return value_ ? bit_length(*value_) : bits_;
}

std::string BoundedValue::to_string() const {
  if (value_) return value_->get_str();
  return "overflow(>= " + std::to_string(bits_) + " bits)";
}

bool BoundedValue::at_least(const BigNat& x) const {
  if (value_) return *value_ >= x;
  // A value with b bits is >= 2^(b-1) > x whenever b - 1 >= bit_length(x).
  return bits_ > 0 && bits_ - 1 >= bit_length(x);
}

std::uint64_t default_cap_bits() {
  if (const char* env = std::getenv("ORDLANG_CAP_BITS")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw Error("ORDLANG_CAP_BITS must be a positive integer");
  }
  return kDefaultCap;
}

// ---------------------------------------------------------------------------
// Analyzer

template <typename F>
BoundedValue Analyzer::guarded(F&& f) {
  try {
    return BoundedValue::exact(f());
  } catch (const CapExceeded& e) {
    return BoundedValue::overflow(e.bits);
  }
}

void Analyzer::check(const BigNat& v) const {
  const auto bits = bit_length(v);
  if (bits > cap_) throw CapExceeded{bits};
}

std::uint64_t Analyzer::index_of(const BigNat& l) const {
  if (!l.fits_ulong_p()) throw CapExceeded{bit_length(l)};
  return l.get_ui();
}

BigNat Analyzer::power(const BigNat& base, const BigNat& exponent) {
  if (exponent == 0) return 1;
  if (base <= 1) return base;
  // base^e >= 2^((bits(base) - 1) * e).
  const BigNat estimate = BigNat(bit_length(base) - 1) * exponent + 1;
  if (estimate > cap_) throw CapExceeded{saturate(estimate)};
  BigNat out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  check(out);
  return out;
}

BigNat Analyzer::polynomial_size(const Ordinal& a, const BigNat& n) {
  const BigNat l = n + 1;
  BigNat total = 0;
  for (const auto& t : a.terms()) {
    total += power(l, *t.exponent.as_natural()) * BigNat(t.coefficient);
    check(total);
  }
  return total;
}

BigNat Analyzer::size_(const Ordinal& a, const BigNat& n) {
  if (below_omega_omega(a)) return polynomial_size(a, n);
  // Every atom but the last copy of the leading term is followed by an atom
  // of depth >= 2, so it runs eagerly.
  const auto& terms = a.terms();
  BigNat added = 0;
  for (std::size_t i = terms.size(); i-- > 0;) {
    const auto& t = terms[i];
    const std::uint64_t copies = i == 0 ? t.coefficient - 1 : t.coefficient;
    if (t.exponent.is_zero()) {
      added += copies;
      continue;
    }
    for (std::uint64_t k = 0; k < copies; ++k) {
      added += eager_(t.exponent, n + added);
      check(added);
    }
  }
  added += standalone_(terms.front().exponent, n + added);
  check(added);
  return added;
}

BigNat Analyzer::eager_(const Ordinal& e, const BigNat& n) {
  if (e.is_zero()) return 1;
  const Key key{e, n};
  if (auto it = eager_memo_.find(key); it != eager_memo_.end()) return it->second;

  const BigNat l = n + 1;
  BigNat out;
  if (e.is_limit()) {
    out = eager_(fundamental(e, index_of(l)), n);
  } else {
    const Ordinal pred = predecessor(e);
    if (pred.is_zero()) {
      out = l;
    } else if (pred == Ordinal::natural(1)) {
      // l doublings of m -> 2m + 1 starting from n.
      if (l > cap_) throw CapExceeded{saturate(l)};
      BigNat m = l;
      m <<= l.get_ui();
      out = m - 1 - n;
      check(out);
    } else {
      BigNat added = 0;
      for (BigNat k = 0; k < l; ++k) {
        added += eager_(pred, n + added);
        check(added);
      }
      out = added;
    }
  }
  eager_memo_.emplace(key, out);
  return out;
}

BigNat Analyzer::standalone_(const Ordinal& e, const BigNat& n) {
  if (e.is_finite()) return power(n + 1, *e.as_natural());
  const Key key{e, n};
  if (auto it = standalone_memo_.find(key); it != standalone_memo_.end()) return it->second;

  const BigNat l = n + 1;
  BigNat out;
  if (e.is_limit()) {
    out = standalone_(fundamental(e, index_of(l)), n);
  } else {
    // <AQ> -> <Q>^l: all copies but the last run eagerly.
    const Ordinal pred = predecessor(e);
    BigNat added = 0;
    for (BigNat k = 1; k < l; ++k) {
      added += eager_(pred, n + added);
      check(added);
    }
    added += standalone_(pred, n + added);
    check(added);
    out = added;
  }
  standalone_memo_.emplace(key, out);
  return out;
}

// Costs mirror the size recurrences. An R or omega step on an atom w^e costs
// at most l * ordinal_size(e); initial programs cost 1 when applied at once
// and 2 when postponed first.

BigNat Analyzer::polynomial_cost(const Ordinal& a, const BigNat& n) {
  if (a.is_finite()) return BigNat(*a.as_natural());
  const BigNat l = n + 1;
  BigNat total = 0;
  for (const auto& t : a.terms()) {
    const std::uint64_t k = *t.exponent.as_natural();
    if (k == 0) {
      total += BigNat(2) * t.coefficient;
      continue;
    }
    BigNat unfold = l;
    for (std::uint64_t j = 2; j <= k; ++j) {
      unfold = l * j + l * unfold;
      check(unfold);
    }
    total += BigNat(t.coefficient) * (unfold + 2 * power(l, k));
    check(total);
  }
  return total;
}

BigNat Analyzer::cost_(const Ordinal& a, const BigNat& n) {
  if (below_omega_omega(a)) return polynomial_cost(a, n);
  const auto& terms = a.terms();
  BigNat added = 0;
  BigNat cost = 0;
  for (std::size_t i = terms.size(); i-- > 0;) {
    const auto& t = terms[i];
    const std::uint64_t copies = i == 0 ? t.coefficient - 1 : t.coefficient;
    if (t.exponent.is_zero()) {
      added += copies;
      cost += copies;
      continue;
    }
    for (std::uint64_t k = 0; k < copies; ++k) {
      cost += eager_cost_(t.exponent, n + added);
      added += eager_(t.exponent, n + added);
      check(cost);
    }
  }
  cost += standalone_cost_(terms.front().exponent, n + added);
  check(cost);
  return cost;
}

BigNat Analyzer::eager_cost_(const Ordinal& e, const BigNat& n) {
  if (e.is_zero()) return 1;
  const Key key{e, n};
  if (auto it = eager_cost_memo_.find(key); it != eager_cost_memo_.end()) return it->second;

  const BigNat l = n + 1;
  BigNat out = l * ordinal_size(e);
  if (e.is_limit()) {
    out += eager_cost_(fundamental(e, index_of(l)), n);
  } else {
    const Ordinal pred = predecessor(e);
    BigNat added = 0;
    for (BigNat k = 0; k < l; ++k) {
      out += eager_cost_(pred, n + added);
      added += eager_(pred, n + added);
      check(out);
    }
  }
  check(out);
  eager_cost_memo_.emplace(key, out);
  return out;
}

BigNat Analyzer::standalone_cost_(const Ordinal& e, const BigNat& n) {
  if (e.is_finite()) return polynomial_cost(omega_pow(e), n);
  const BigNat l = n + 1;
  BigNat out = l * ordinal_size(e);
  if (e.is_limit()) {
    out += standalone_cost_(fundamental(e, index_of(l)), n);
  } else {
    const Ordinal pred = predecessor(e);
    if (pred.is_finite()) {
      out += polynomial_cost(Ordinal::monomial(pred, index_of(l)), n);
    } else {
      BigNat added = 0;
      for (BigNat k = 1; k < l; ++k) {
        out += eager_cost_(pred, n + added);
        added += eager_(pred, n + added);
        check(out);
      }
      out += standalone_cost_(pred, n + added);
    }
  }
  check(out);
  return out;
}

BigNat Analyzer::wainer_(const Ordinal& a, const BigNat& n) {
  if (a.is_zero()) throw Error("F_0 is undefined; the hierarchy starts at F_1");
  if (a == Ordinal::natural(1)) {
    BigNat out = 2 * n + 1;
    check(out);
    return out;
  }
  const Key key{a, n};
  if (auto it = wainer_memo_.find(key); it != wainer_memo_.end()) return it->second;

  BigNat out;
  if (a.is_limit()) {
    if (n == 0) throw Error("F_lambda(0) needs lambda[0], which is undefined");
    out = wainer_(fundamental(a, index_of(n)), n);
  } else if (a == Ordinal::natural(2)) {
    // F_1 iterated n+1 times: (n+1) * 2^(n+1) - 1.
    const BigNat l = n + 1;
    if (l > cap_) throw CapExceeded{saturate(l)};
    out = l;
    out <<= l.get_ui();
    out -= 1;
    check(out);
  } else {
    const Ordinal pred = predecessor(a);
    out = n;
    for (BigNat k = 0; k <= n; ++k) out = wainer_(pred, out);
  }
  wainer_memo_.emplace(key, out);
  return out;
}

BoundedValue Analyzer::size(const Ordinal& a, const BigNat& n) {
  if (n < 2) throw Error("input length must be at least 2");
  return guarded([&] { return size_(a, n); });
}

BoundedValue Analyzer::eager_size(const Ordinal& e, const BigNat& n) {
  if (n < 2) throw Error("input length must be at least 2");
  return guarded([&] { return eager_(e, n); });
}

BoundedValue Analyzer::standalone_size(const Ordinal& e, const BigNat& n) {
  if (n < 2) throw Error("input length must be at least 2");
  return guarded([&] { return standalone_(e, n); });
}

BoundedValue Analyzer::runtime_bound(const Ordinal& a, const BigNat& n) {
  if (n < 2) throw Error("input length must be at least 2");
  return guarded([&] { return cost_(a, n); });
}

BoundedValue Analyzer::wainer(const Ordinal& a, const BigNat& n) {
  if (n < 0) throw Error("argument must be a natural");
  return guarded([&] { return wainer_(a, n); });
}

BoundedValue size_fn(const Ordinal& a, const BigNat& n, std::uint64_t cap_bits) {
  return Analyzer(cap_bits).size(a, n);
}

BoundedValue runtime_bound(const Ordinal& a, const BigNat& n, std::uint64_t cap_bits) {
  return Analyzer(cap_bits).runtime_bound(a, n);
}

BoundedValue wainer(const Ordinal& a, const BigNat& n, std::uint64_t cap_bits) {
  return Analyzer(cap_bits).wainer(a, n);
}

namespace {

// base^exponent against the cap; returns nullopt with `bits` set on overflow.
std::optional<BigNat> capped_pow(const BigNat& base, const BigNat& exponent, std::uint64_t cap,
                                 std::uint64_t& bits) {
  if (exponent == 0) return BigNat(1);
  if (base <= 1) return base;
  const BigNat estimate = BigNat(bit_length(base) - 1) * exponent + 1;
  if (estimate > cap) {
    bits = saturate(estimate);
    return std::nullopt;
  }
  BigNat out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  if (bit_length(out) > cap) {
    bits = bit_length(out);
    return std::nullopt;
  }
  return out;
}

BoundedValue tower_from(const BigNat& base, std::uint64_t height, BigNat top, std::uint64_t cap) {
  for (std::uint64_t i = 0; i < height; ++i) {
    std::uint64_t bits = 0;
    auto next = capped_pow(base, top, cap, bits);
    if (!next) {
      // Further levels only grow when base >= 2.
      return BoundedValue::overflow(bits);
    }
    top = std::move(*next);
  }
  return BoundedValue::exact(std::move(top));
}

}  // namespace

BoundedValue tower_num(const BigNat& base, std::uint64_t height, const BigNat& top,
                       std::uint64_t cap_bits) {
  if (base < 0 || top < 0) throw Error("tower arguments must be naturals");
  return tower_from(base, height, top, cap_bits);
}

BoundedValue elem_bound(std::uint64_t c, const BigNat& l, std::uint64_t cap_bits) {
  if (l < 3) throw Error("elem_bound needs l >= 3");
  switch (c) {
    case 0:
      return BoundedValue::exact(l);
    case 1: {
      std::uint64_t bits = 0;
      auto v = capped_pow(l, l + 1, cap_bits, bits);
      return v ? BoundedValue::exact(*v) : BoundedValue::overflow(bits);
    }
    case 2: {
      auto inner = tower_from(l, 1, l + 2, cap_bits);
      if (!inner.is_exact()) return inner;
      return tower_from(l, 1, inner.value(), cap_bits);
    }
    default: {
      BigNat q = l + 2;
      for (std::uint64_t j = 3; j < c; ++j) {
        auto next = tower_from(l, 1, q, cap_bits);
        if (!next.is_exact()) return next;
        q = next.value() + 1;
      }
      return tower_from(l, 3, q, cap_bits);
    }
  }
}

// ---------------------------------------------------------------------------
// Milestones

const char* family_name(Family f) {
  switch (f) {
    case Family::Constant: return "constant";
    case Family::Polytime: return "polytime";
    case Family::Superexponential: return "superexponential";
    case Family::Grzegorczyk: return "grzegorczyk";
    case Family::TwoNested: return "two-nested";
    case Family::Large: return "large";
  }
  return "?";
}

std::string BoundExpression::to_string() const {
  auto shifted = [this](const std::string& var) {
    if (offset == 0) return var;
    return var + (offset > 0 ? "+" : "") + std::to_string(offset);
  };
  switch (kind) {
    case Kind::Constant:
      return std::to_string(parameter);
    case Kind::Power:
      return parameter == 1 ? "n" : "n^" + std::to_string(parameter);
    case Kind::Tower: {
      const std::string base = offset == 0 ? "l" : "(" + shifted("l") + ")";
      return base + "_" + std::to_string(parameter);
    }
    case Kind::Wainer: {
      const std::string idx = index.to_string();
      const std::string sub = idx.size() == 1 ? idx : "{" + idx + "}";
      return "F_" + sub + "(" + shifted("n") + ")";
    }
  }
  return "?";
}

namespace {

Ordinal omega_times_plus(std::uint64_t j, std::uint64_t d) {
  return add(Ordinal::monomial(Ordinal::natural(1), j), Ordinal::natural(d));
}

}  // namespace

Milestone least_milestone(const Ordinal& a) {
  Milestone m;
  if (a.is_zero() || a.is_finite()) {
    m.family = Family::Constant;
    m.ordinal = a;
    m.c = a.is_zero() ? 0 : *a.as_natural();
    return m;
  }
  const Ordinal& e = a.leading_exponent();
  if (e.is_finite()) {
    // w^c for the least c with w^c >= a.
    std::uint64_t c = *e.as_natural();
    if (a != omega_pow(e)) ++c;
    m.family = Family::Polytime;
    m.c = c;
    m.ordinal = omega_pow(Ordinal::natural(c));
    return m;
  }

  // Candidates from each remaining row; the smallest wins, earlier rows on ties.
  std::vector<Milestone> candidates;

  {
    Milestone t;
    t.family = Family::Superexponential;
    t.c = 1;
    t.ordinal = tower_omega(1, omega());
    while (t.ordinal < a) t.ordinal = tower_omega(++t.c, omega());
    candidates.push_back(t);
  }

  // Smallest w^beta >= a, used by the three exponent-indexed rows.
  const Ordinal beta = a == omega_pow(e) ? e : add(e, Ordinal::natural(1));
  const Ordinal omega2 = Ordinal::monomial(Ordinal::natural(1), 2);

  if (beta < omega2) {
    Milestone g;
    g.family = Family::Grzegorczyk;
    const Ordinal b = beta == omega() ? add(omega(), Ordinal::natural(1)) : beta;
    g.c = b.terms().back().coefficient;
    g.ordinal = omega_pow(b);
    g.index = Ordinal::natural(g.c + 2);
    candidates.push_back(g);
  }

  const Ordinal omega_sq = omega_pow(Ordinal::natural(2));
  if (beta < omega_sq) {
    Milestone t;
    t.family = Family::TwoNested;
    const Ordinal b = beta < omega2 ? omega2 : beta;
    const auto& terms = b.terms();
    const std::uint64_t j = terms.front().coefficient;
    const std::uint64_t d = terms.size() > 1 ? terms.back().coefficient : 0;
    t.c = j - 1;
    t.d = d;
    t.ordinal = omega_pow(omega_times_plus(j, d));
    t.index = omega_times_plus(t.c, d);
    candidates.push_back(t);
  }

  {
    Milestone g;
    g.family = Family::Large;
    g.index = beta < omega_sq ? omega_sq : beta;
    g.ordinal = omega_pow(g.index);
    candidates.push_back(g);
  }

  Milestone best = candidates.front();
  for (const auto& c : candidates) {
    if (c.ordinal < best.ordinal) best = c;
  }
  return best;
}

Bounds milestone_bounds(const Milestone& m) {
  using K = BoundExpression::Kind;
  auto wainer_at = [](const Ordinal& idx, std::int64_t off) {
    BoundExpression b;
    b.kind = K::Wainer;
    b.index = idx;
    b.offset = off;
    return b;
  };
  switch (m.family) {
    case Family::Constant: {
      BoundExpression b;
      b.kind = K::Constant;
      b.parameter = m.c;
      return {b, b};
    }
    case Family::Polytime: {
      BoundExpression b;
      b.kind = K::Power;
      b.parameter = m.c;
      return {b, b};
    }
    case Family::Superexponential: {
      BoundExpression lo;
      lo.kind = K::Tower;
      lo.parameter = m.c;
      BoundExpression hi = lo;
      hi.offset = 2;
      return {lo, hi};
    }
    case Family::Grzegorczyk:
      return {wainer_at(m.index, 0), wainer_at(m.index, 1)};
    case Family::TwoNested:
      return {wainer_at(m.index, 0), wainer_at(m.index, 2)};
    case Family::Large:
      return {wainer_at(m.index, -1), wainer_at(m.index, 1)};
  }
  throw Error("unknown family");
}

Bounds grz_bounds(const Ordinal& a) {
  if (below_omega_omega(a)) throw Error("use polynomial bound");
  return milestone_bounds(least_milestone(a));
}

}  // namespace ordlang
