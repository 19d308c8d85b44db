#pragma once

// Arithmetic in GF(p^2) = F_p(theta), theta a root of a monic irreducible
// quadratic x^2 + b x + c over F_p, p an odd prime.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qss {

/// Element of the prime field F_p. Always reduced.
struct FpElement {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(const FpElement&, const FpElement&) = default;
};

/// k1 + k2*theta. Both coordinates reduced mod p.
struct Fp2Element {
  FpElement k1;
  FpElement k2;

  friend constexpr auto operator<=>(const Fp2Element&, const Fp2Element&) = default;
};

/// Coefficients of x^2 + b x + c.
struct Poly {
  std::uint32_t b = 0;
  std::uint32_t c = 0;

  friend constexpr bool operator==(const Poly&, const Poly&) = default;
};

struct FieldOptions {
  /// Lifts the default p <= kDefaultMaxPrime bound.
  bool allow_large_p = false;
};

bool is_prime(std::int64_t n);

/// True iff x^2 + b x + c has no root in F_p. Coefficients must already be
/// reduced mod p.
bool is_irreducible(Poly poly, std::uint32_t p);

/// Immutable description of GF(p^2). Cheap to copy; two fields compare equal
/// when they share (p, b, c).
class Field {
 public:
  static constexpr std::uint32_t kDefaultMaxPrime = 31;
  /// Hard ceiling even with allow_large_p, so that p^2 fits comfortably in
  /// 32 bits and products in 64.
  static constexpr std::uint32_t kAbsoluteMaxPrime = 46337;

  /// Builds the field. Without `poly`, picks the lexicographically smallest
  /// irreducible (b outer, c inner).
  static Field make(std::int64_t p, std::optional<Poly> poly = std::nullopt,
                    FieldOptions options = {});

  std::uint32_t p() const { return p_; }
  Poly poly() const { return poly_; }
  /// Dimension d = p^2.
  std::size_t d() const { return std::size_t{p_} * p_; }
  /// theta^2 = -b*theta - c.
  Fp2Element theta_sq() const { return theta_sq_; }

  FpElement fp(std::int64_t v) const;
  Fp2Element element(std::int64_t k1, std::int64_t k2) const;
  Fp2Element zero() const { return {}; }
  Fp2Element one() const { return element(1, 0); }
  Fp2Element theta() const { return element(0, 1); }

  /// Throws ContextError if `a` carries coordinates not reduced mod p.
  void check(const Fp2Element& a) const;

  Fp2Element add(const Fp2Element& a, const Fp2Element& b) const;
  Fp2Element sub(const Fp2Element& a, const Fp2Element& b) const;
  Fp2Element neg(const Fp2Element& a) const;
  Fp2Element mul(const Fp2Element& a, const Fp2Element& b) const;
  Fp2Element scale(FpElement s, const Fp2Element& a) const;
  Fp2Element pow(const Fp2Element& a, std::uint64_t e) const;
  /// a^(p^2 - 2); throws RangeError for zero.
  Fp2Element inverse(const Fp2Element& a) const;
  Fp2Element frobenius(const Fp2Element& a) const;
  /// Tr(a) = a + a^p, which lies in F_p.
  FpElement trace(const Fp2Element& a) const;
  Fp2Element sum(std::span<const Fp2Element> xs) const;

  FpElement fp_add(FpElement a, FpElement b) const;
  FpElement fp_sub(FpElement a, FpElement b) const;
  FpElement fp_mul(FpElement a, FpElement b) const;
  FpElement fp_inverse(FpElement a) const;

  /// g(k1 + k2*theta) = k1 + k2*p.
  std::size_t index(const Fp2Element& a) const;
  /// g^{-1}; throws RangeError outside [0, p^2).
  Fp2Element from_index(std::int64_t i) const;
  /// g^{-1}(g(a) + 1 mod p^2): the next label in index order.
  Fp2Element index_successor(const Fp2Element& a) const;
  /// All elements in index order: 0, 1, ..., p-1, theta, theta+1, ...
  std::vector<Fp2Element> elements() const;

  /// Renders a as "k1+k2*t" (zero coordinates elided, "0" for zero).
  std::string format(const Fp2Element& a) const;

  friend bool operator==(const Field& x, const Field& y) {
    return x.p_ == y.p_ && x.poly_ == y.poly_;
  }

 private:
  Field(std::uint32_t p, Poly poly);

  std::uint32_t p_;
  Poly poly_;
  Fp2Element theta_sq_;
};

std::ostream& operator<<(std::ostream& os, const Fp2Element& a);

}  // namespace qss
