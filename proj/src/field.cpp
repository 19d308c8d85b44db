#include "qss/field.hpp"

#include <sstream>

#include "qss/error.hpp"

namespace qss {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

bool is_irreducible(Poly poly, std::uint32_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    if ((x * x + poly.b * x + poly.c) % p == 0) return false;
  }
  return true;
}

Field Field::make(std::int64_t p, std::optional<Poly> poly, FieldOptions options) {
  if (p < 3 || !is_prime(p)) {
    throw PrimeError("modulus " + std::to_string(p) + " is not an odd prime");
  }
  const auto bound = options.allow_large_p ? kAbsoluteMaxPrime : kDefaultMaxPrime;
  if (p > bound) {
    throw PrimeError("modulus " + std::to_string(p) + " exceeds the bound p <= " +
                     std::to_string(bound));
  }
  const auto up = static_cast<std::uint32_t>(p);
  if (poly) {
    if (poly->b >= up || poly->c >= up) {
      throw ReducibleError("polynomial coefficients must be reduced mod p");
    }
    if (!is_irreducible(*poly, up)) {
      throw ReducibleError("x^2 + " + std::to_string(poly->b) + "x + " +
                           std::to_string(poly->c) + " has a root mod " + std::to_string(p));
    }
    return Field(up, *poly);
  }
  for (std::uint32_t b = 0; b < up; ++b) {
    for (std::uint32_t c = 0; c < up; ++c) {
      if (is_irreducible({b, c}, up)) return Field(up, {b, c});
    }
  }
  // Every finite field has an irreducible quadratic.
  throw ReducibleError("no irreducible quadratic found");
}

Field::Field(std::uint32_t p, Poly poly) : p_(p), poly_(poly) {
  theta_sq_ = element(-static_cast<std::int64_t>(poly.c), -static_cast<std::int64_t>(poly.b));
}

FpElement Field::fp(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(p_);
  auto r = v % m;
  if (r < 0) r += m;
  return {static_cast<std::uint32_t>(r)};
}

Fp2Element Field::element(std::int64_t k1, std::int64_t k2) const { return {fp(k1), fp(k2)}; }

void Field::check(const Fp2Element& a) const {
  if (a.k1.value >= p_ || a.k2.value >= p_) {
    throw ContextError("element [" + std::to_string(a.k1.value) + "," +
                       std::to_string(a.k2.value) + "] is not reduced mod " + std::to_string(p_));
  }
}

FpElement Field::fp_add(FpElement a, FpElement b) const {
  return {static_cast<std::uint32_t>((std::uint64_t{a.value} + b.value) % p_)};
}

FpElement Field::fp_sub(FpElement a, FpElement b) const {
  return {static_cast<std::uint32_t>((std::uint64_t{a.value} + p_ - b.value) % p_)};
}

FpElement Field::fp_mul(FpElement a, FpElement b) const {
  return {static_cast<std::uint32_t>((std::uint64_t{a.value} * b.value) % p_)};
}

FpElement Field::fp_inverse(FpElement a) const {
  if (a.value == 0) throw RangeError("zero has no inverse in F_p");
  // Fermat: a^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = a.value;
  for (std::uint64_t e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1U) result = result * base % p_;
    base = base * base % p_;
  }
  return {static_cast<std::uint32_t>(result)};
}

Fp2Element Field::add(const Fp2Element& a, const Fp2Element& b) const {
  check(a);
  check(b);
  return {fp_add(a.k1, b.k1), fp_add(a.k2, b.k2)};
}

Fp2Element Field::sub(const Fp2Element& a, const Fp2Element& b) const {
  check(a);
  check(b);
  return {fp_sub(a.k1, b.k1), fp_sub(a.k2, b.k2)};
}

Fp2Element Field::neg(const Fp2Element& a) const { return sub(zero(), a); }

Fp2Element Field::mul(const Fp2Element& a, const Fp2Element& b) const {
  check(a);
  check(b);
  // (a1 + a2 t)(b1 + b2 t) = a1 b1 + (a1 b2 + a2 b1) t + a2 b2 t^2
  const FpElement lo = fp_mul(a.k1, b.k1);
  const FpElement mid = fp_add(fp_mul(a.k1, b.k2), fp_mul(a.k2, b.k1));
  const FpElement hi = fp_mul(a.k2, b.k2);
  return {fp_add(lo, fp_mul(hi, theta_sq_.k1)), fp_add(mid, fp_mul(hi, theta_sq_.k2))};
}

Fp2Element Field::scale(FpElement s, const Fp2Element& a) const {
  check(a);
  return {fp_mul(s, a.k1), fp_mul(s, a.k2)};
}

Fp2Element Field::pow(const Fp2Element& a, std::uint64_t e) const {
  Fp2Element result = one();
  Fp2Element base = a;
  for (; e > 0; e >>= 1) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

Fp2Element Field::inverse(const Fp2Element& a) const {
  if (a == zero()) throw RangeError("zero has no inverse in GF(p^2)");
  return pow(a, d() - 2);
}

Fp2Element Field::frobenius(const Fp2Element& a) const { return pow(a, p_); }

FpElement Field::trace(const Fp2Element& a) const {
  const Fp2Element s = add(a, frobenius(a));
  if (s.k2.value != 0) {
    throw TraceNotInBaseField("a + a^p has nonzero theta coordinate for " + format(a));
  }
  return s.k1;
}

Fp2Element Field::sum(std::span<const Fp2Element> xs) const {
  Fp2Element acc = zero();
  for (const auto& x : xs) acc = add(acc, x);
  return acc;
}

std::size_t Field::index(const Fp2Element& a) const {
  check(a);
  return std::size_t{a.k1.value} + std::size_t{a.k2.value} * p_;
}

Fp2Element Field::from_index(std::int64_t i) const {
  if (i < 0 || static_cast<std::uint64_t>(i) >= d()) {
    throw RangeError("index " + std::to_string(i) + " outside [0, " + std::to_string(d()) + ")");
  }
  return element(i % p_, i / p_);
}

Fp2Element Field::index_successor(const Fp2Element& a) const {
  return from_index(static_cast<std::int64_t>((index(a) + 1) % d()));
}

std::vector<Fp2Element> Field::elements() const {
  std::vector<Fp2Element> out;
  out.reserve(d());
  for (std::size_t i = 0; i < d(); ++i) out.push_back(from_index(static_cast<std::int64_t>(i)));
  return out;
}

std::string Field::format(const Fp2Element& a) const {
  const auto k1 = a.k1.value;
  const auto k2 = a.k2.value;
  if (k2 == 0) return std::to_string(k1);
  std::string t = k2 == 1 ? "t" : std::to_string(k2) + "*t";
  if (k1 == 0) return t;
  return std::to_string(k1) + "+" + t;
}

std::ostream& operator<<(std::ostream& os, const Fp2Element& a) {
  return os << '[' << a.k1.value << ',' << a.k2.value << ']';
}

}  // namespace qss
