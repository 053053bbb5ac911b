#pragma once

// Finite fields GF(p^m) with q = p^m <= 2^16.
//
// Elements are stored as their canonical integer encoding: the residue
// polynomial c_0 + c_1 x + ... + c_{m-1} x^{m-1} maps to sum c_i p^i. The
// modulus polynomial uses the same encoding including its leading term, so
// x^4 + x + 1 over GF(2) is 0b10011 = 19.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lrc/error.hpp"

namespace lrc {

using Value = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = 1u << 16;

namespace detail {

// Coefficients over GF(p), lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly poly_from_int(std::uint64_t v, std::uint32_t p) {
  Poly out;
  while (v > 0) {
    out.push_back(static_cast<std::uint32_t>(v % p));
    v /= p;
  }
  return out;
}

inline std::uint64_t poly_to_int(const Poly& a, std::uint32_t p) {
  std::uint64_t v = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * p + *it;
  return v;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  trim(out);
  return out;
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// Quotient and remainder of a / b; b must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t p) {
  const int db = degree(b);
  const std::uint32_t lead_inv = inv_mod_prime(b.back(), p);
  Poly quot;
  if (degree(a) >= db) quot.assign(static_cast<std::size_t>(degree(a) - db + 1), 0);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
    quot[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) {
      auto& slot = a[static_cast<std::size_t>(i + shift)];
      slot = static_cast<std::uint32_t>((slot + p - std::uint64_t{c} * b[static_cast<std::size_t>(i)] % p) % p);
    }
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

// Exhaustive factor search: f of degree m is irreducible iff no monic
// polynomial of degree 1..m/2 divides it.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int m = degree(f);
  if (m < 1) return false;
  for (int d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = poly_from_int(low, p);
      g.resize(static_cast<std::size_t>(d) + 1, 0);
      g[static_cast<std::size_t>(d)] = 1;
      if (poly_divmod(f, g, p).second.empty()) return false;
    }
  }
  return true;
}

struct FieldData {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::uint32_t q = 2;
  std::uint64_t modulus = 0;  // 0 when m == 1
  Poly modulus_poly;
  Value generator = 1;
  std::vector<Value> exp;          // length 2(q-1)
  std::vector<std::uint32_t> log;  // log[0] unused
  std::vector<Value> inv_table;    // filled when q <= 2^12

  Value add(Value a, Value b) const {
    if (p == 2) return a ^ b;
    if (m == 1) return (a + b) % p;
    Value out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      out += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }

  Value neg(Value a) const {
    if (p == 2) return a;
    if (m == 1) return (p - a) % p;
    Value out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      out += ((p - a % p) % p) * scale;
      a /= p;
      scale *= p;
    }
    return out;
  }

  // Schoolbook multiplication modulo the modulus; used to build the tables
  // and as the reference path in tests.
  Value mul_reference(Value a, Value b) const {
    if (m == 1) return static_cast<Value>(std::uint64_t{a} * b % p);
    Poly prod = poly_mul(poly_from_int(a, p), poly_from_int(b, p), p);
    return static_cast<Value>(poly_to_int(poly_divmod(std::move(prod), modulus_poly, p).second, p));
  }
};

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < e; ++i) out *= base;
  return out;
}

inline bool element_has_full_order(const FieldData& f, Value g) {
  const std::uint64_t order = f.q - 1;
  for (std::uint64_t factor : prime_factors(order)) {
    std::uint64_t e = order / factor;
    Value acc = 1, base = g;
    while (e > 0) {
      if (e & 1) acc = f.mul_reference(acc, base);
      base = f.mul_reference(base, base);
      e >>= 1;
    }
    if (acc == 1) return false;
  }
  return true;
}

// Smallest monic primitive polynomial of degree m in encoding order. The
// choice is deterministic so code files stay bit-exact.
inline std::uint64_t default_modulus(std::uint32_t p, std::uint32_t m) {
  const std::uint64_t lead = ipow(p, m);
  for (std::uint64_t low = 1; low < lead; ++low) {
    const std::uint64_t enc = lead + low;
    Poly f = poly_from_int(enc, p);
    if (!is_irreducible(f, p)) continue;
    FieldData probe;
    probe.p = p;
    probe.m = m;
    probe.q = static_cast<std::uint32_t>(lead);
    probe.modulus = enc;
    probe.modulus_poly = f;
    if (element_has_full_order(probe, p)) return enc;  // p encodes x
  }
  fail(ErrorCode::kReducible, "no primitive polynomial found");
}

inline std::shared_ptr<const FieldData> build_field(std::uint32_t p, std::uint32_t m, std::uint64_t modulus) {
  auto f = std::make_shared<FieldData>();
  f->p = p;
  f->m = m;
  f->q = static_cast<std::uint32_t>(ipow(p, m));
  f->modulus = modulus;
  if (m > 1) f->modulus_poly = poly_from_int(modulus, p);

  Value g = 1;
  if (f->q > 2) {
    for (g = (m > 1 ? p : 2); g < f->q; ++g)
      if (element_has_full_order(*f, g)) break;
  }
  f->generator = g;

  const std::uint32_t order = f->q - 1;
  f->exp.assign(2 * static_cast<std::size_t>(order), 0);
  f->log.assign(f->q, 0);
  Value acc = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    f->exp[i] = acc;
    f->log[acc] = i;
    acc = f->mul_reference(acc, g);
  }
  for (std::uint32_t i = order; i < 2 * order; ++i) f->exp[i] = f->exp[i - order];

  if (f->q <= (1u << 12)) {
    f->inv_table.assign(f->q, 0);
    for (Value a = 1; a < f->q; ++a) f->inv_table[a] = f->exp[(order - f->log[a]) % order];
  }
  return f;
}

}  // namespace detail

class Element;

/// Handle to an immutable finite field. Copies share the same tables;
/// fields are cached per (p, m, modulus) so repeated construction is cheap.
class Field {
 public:
  /// Validates p prime, m >= 1, p^m <= 2^16 and (for m > 1) an irreducible
  /// monic modulus. Without a modulus the smallest primitive one is used.
  static Field make(std::uint32_t p, std::uint32_t m = 1, std::optional<std::uint64_t> modulus = std::nullopt) {
    if (!detail::is_prime(p)) fail(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
    if (m < 1) fail(ErrorCode::kBadParams, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      q *= p;
      if (q > kMaxFieldOrder) fail(ErrorCode::kTooLarge, "field order exceeds 2^16");
    }
    std::uint64_t mod = 0;
    if (m == 1) {
      if (modulus && *modulus != 0) fail(ErrorCode::kBadModulus, "prime fields take no modulus");
    } else if (modulus) {
      detail::Poly f = detail::poly_from_int(*modulus, p);
      if (detail::degree(f) != static_cast<int>(m))
        fail(ErrorCode::kBadModulus, "modulus " + std::to_string(*modulus) + " does not have degree " + std::to_string(m));
      if (f.back() != 1) fail(ErrorCode::kBadModulus, "modulus must be monic");
      if (!detail::is_irreducible(f, p))
        fail(ErrorCode::kReducible, "modulus " + std::to_string(*modulus) + " is reducible over GF(" + std::to_string(p) + ")");
      mod = *modulus;
    }

    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>, std::shared_ptr<const detail::FieldData>> cache;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> default_moduli;
    std::lock_guard<std::mutex> lock(mu);
    if (m > 1 && mod == 0) {
      auto key = std::make_pair(p, m);
      auto it = default_moduli.find(key);
      if (it == default_moduli.end()) it = default_moduli.emplace(key, detail::default_modulus(p, m)).first;
      mod = it->second;
    }
    auto key = std::make_tuple(p, m, mod);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, detail::build_field(p, m, mod)).first;
    return Field(it->second);
  }

  /// Builds GF(q) from its order; q must be a prime power.
  static Field from_order(std::uint64_t q, std::optional<std::uint64_t> modulus = std::nullopt) {
    if (q > kMaxFieldOrder) fail(ErrorCode::kTooLarge, "field order exceeds 2^16");
    auto factors = detail::prime_factors(q);
    if (q < 2 || factors.size() != 1) fail(ErrorCode::kNotPrime, std::to_string(q) + " is not a prime power");
    const auto p = static_cast<std::uint32_t>(factors.front());
    std::uint32_t m = 0;
    for (std::uint64_t v = q; v > 1; v /= p) ++m;
    return make(p, m, modulus);
  }

  std::uint32_t characteristic() const { return d_->p; }
  std::uint32_t degree() const { return d_->m; }
  std::uint32_t order() const { return d_->q; }
  std::optional<std::uint64_t> modulus() const {
    if (d_->m == 1) return std::nullopt;
    return d_->modulus;
  }
  Value generator() const { return d_->generator; }

  bool contains(Value a) const { return a < d_->q; }

  Value add(Value a, Value b) const { return d_->add(a, b); }
  Value neg(Value a) const { return d_->neg(a); }
  Value sub(Value a, Value b) const { return d_->add(a, d_->neg(b)); }

  Value mul(Value a, Value b) const {
    if (a == 0 || b == 0) return 0;
    return d_->exp[d_->log[a] + d_->log[b]];
  }

  Value inv(Value a) const {
    if (a == 0) fail(ErrorCode::kDivideByZero, "inverse of zero");
    if (!d_->inv_table.empty()) return d_->inv_table[a];
    const std::uint32_t order = d_->q - 1;
    return d_->exp[(order - d_->log[a]) % order];
  }

  Value div(Value a, Value b) const {
    if (b == 0) fail(ErrorCode::kDivideByZero, "division by zero");
    if (a == 0) return 0;
    const std::uint32_t order = d_->q - 1;
    return d_->exp[d_->log[a] + (order - d_->log[b]) % order];
  }

  Value pow(Value a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t order = d_->q - 1;
    return d_->exp[static_cast<std::size_t>(d_->log[a] * (e % order) % order)];
  }

  /// Reference multiplication without tables.
  Value mul_reference(Value a, Value b) const { return d_->mul_reference(a, b); }

  /// Inverse by the extended Euclidean algorithm on polynomials over GF(p).
  Value inv_euclid(Value a) const {
    if (a == 0) fail(ErrorCode::kDivideByZero, "inverse of zero");
    const std::uint32_t p = d_->p;
    if (d_->m == 1) return detail::inv_mod_prime(a, p);
    using detail::Poly;
    Poly r0 = d_->modulus_poly, r1 = detail::poly_from_int(a, p);
    Poly s0, s1{1};
    while (!r1.empty()) {
      auto [quot, rem] = detail::poly_divmod(r0, r1, p);
      Poly s2 = detail::poly_sub(s0, detail::poly_mul(quot, s1, p), p);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant; scale s0 by its inverse.
    const std::uint32_t c = detail::inv_mod_prime(r0.front(), p);
    for (auto& coeff : s0) coeff = static_cast<std::uint32_t>(std::uint64_t{coeff} * c % p);
    return static_cast<Value>(detail::poly_to_int(s0, p));
  }

  /// Inverse by a^(q-2) using reference multiplication.
  Value inv_fermat(Value a) const {
    if (a == 0) fail(ErrorCode::kDivideByZero, "inverse of zero");
    Value acc = 1, base = a;
    std::uint64_t e = d_->q - 2;
    while (e > 0) {
      if (e & 1) acc = mul_reference(acc, base);
      base = mul_reference(base, base);
      e >>= 1;
    }
    return acc;
  }

  /// All q elements: zero first, then nonzero ones in increasing encoding.
  std::vector<Value> elements() const {
    std::vector<Value> out(d_->q);
    for (Value i = 0; i < d_->q; ++i) out[i] = i;
    return out;
  }

  Element element(Value v) const;

  /// `q=<int>` plus ` poly=<int>` for extension fields.
  std::string describe() const {
    std::ostringstream os;
    os << "q=" << d_->q;
    if (d_->m > 1) os << " poly=" << d_->modulus;
    return os.str();
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->m == b.d_->m && a.d_->modulus == b.d_->modulus);
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

/// A field value bound to its field. Mixed-field arithmetic throws.
class Element {
 public:
  Element(Field field, Value v) : field_(std::move(field)), v_(v) {
    if (!field_.contains(v_)) fail(ErrorCode::kBadParams, std::to_string(v) + " is not an element of GF(" + std::to_string(field_.order()) + ")");
  }

  Value value() const { return v_; }
  const Field& field() const { return field_; }

  friend Element operator+(const Element& a, const Element& b) { return {a.field_, a.checked(b).add(a.v_, b.v_)}; }
  friend Element operator-(const Element& a, const Element& b) { return {a.field_, a.checked(b).sub(a.v_, b.v_)}; }
  friend Element operator*(const Element& a, const Element& b) { return {a.field_, a.checked(b).mul(a.v_, b.v_)}; }
  friend Element operator/(const Element& a, const Element& b) { return {a.field_, a.checked(b).div(a.v_, b.v_)}; }
  Element operator-() const { return {field_, field_.neg(v_)}; }
  Element inv() const { return {field_, field_.inv(v_)}; }
  Element pow(std::uint64_t e) const { return {field_, field_.pow(v_, e)}; }

  friend bool operator==(const Element& a, const Element& b) { return a.field_ == b.field_ && a.v_ == b.v_; }

 private:
  const Field& checked(const Element& other) const {
    if (!(field_ == other.field_)) fail(ErrorCode::kFieldMismatch, field_.describe() + " vs " + other.field_.describe());
    return field_;
  }

  Field field_;
  Value v_;
};

inline Element Field::element(Value v) const { return Element(*this, v); }

}  // namespace lrc
