#pragma once

// Diagonal phase operators diag(w^{e_k}) and the cycling unitary
//   U_{alpha,beta} = A2^{y1} A1^{(p-1)y1 + x1} B2^{y2} B1^{(p-1)y2 + x2}
// for alpha = x1 + y1*theta, beta = x2 + y2*theta. Applying U_{alpha,beta}
// maps |v_l^(j)> to |v_{l+alpha}^(j+beta)>.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qss/field.hpp"
#include "qss/mub.hpp"

namespace qss {

class DiagonalPhaseOp {
 public:
  /// Throws RangeError on wrong length or unreduced exponents.
  DiagonalPhaseOp(Field field, std::vector<std::uint32_t> exponents);

  static DiagonalPhaseOp identity(const Field& field);

  const Field& field() const { return field_; }
  std::span<const std::uint32_t> exponents() const { return exponents_; }
  bool is_identity() const;

  /// Diagonal rendered as "diag(1, w^2, w, ...)".
  std::string symbolic() const;

  friend bool operator==(const DiagonalPhaseOp&, const DiagonalPhaseOp&) = default;

 private:
  Field field_;
  std::vector<std::uint32_t> exponents_;
};

/// x * y. Diagonal operators commute, so the order is immaterial.
DiagonalPhaseOp compose(const DiagonalPhaseOp& x, const DiagonalPhaseOp& y);
/// x^n for any integer n (negative powers invert).
DiagonalPhaseOp op_pow(const DiagonalPhaseOp& x, std::int64_t n);

PhaseState apply(const DiagonalPhaseOp& op, const PhaseState& s);
/// Acts on the system factor of a (possibly joint) dense state.
DenseState apply_dense(const DiagonalPhaseOp& op, const DenseState& s);
QuditState apply(const DiagonalPhaseOp& op, const QuditState& s);

struct GeneratorSet {
  DiagonalPhaseOp a1;  // shifts subscript by 1
  DiagonalPhaseOp a2;  // shifts subscript by c
  DiagonalPhaseOp b1;  // shifts superscript by 1
  DiagonalPhaseOp b2;  // shifts superscript by c
  Fp2Element c;        // theta - (p - 1)
  FpElement a;         // Tr(theta) - Tr(p - 1)
  FpElement b;         // Tr(theta^2) - Tr((p - 1) theta)
};

/// A1 = diag(w^{Tr(k)}), A2 = diag(w^{Tr(ck)}), B1 = diag(w^{Tr(k^2)}),
/// B2 = diag(w^{Tr(ck^2)}).
GeneratorSet build_generators(const Field& field);

/// Generator powers making up U_{alpha,beta}, in composition order.
struct UnitaryFactors {
  std::uint32_t a2 = 0;
  std::uint32_t a1 = 0;
  std::uint32_t b2 = 0;
  std::uint32_t b1 = 0;

  friend bool operator==(const UnitaryFactors&, const UnitaryFactors&) = default;
};

/// Exponents reduced mod p, e.g. A2 B2 B1^2 for alpha = 1+t, beta = t at p = 3.
UnitaryFactors unitary_factors(const Field& field, const Fp2Element& alpha, const Fp2Element& beta);
/// Renders the factors as "A2 A1^2 B1"; the identity renders as "I".
std::string format_factors(const UnitaryFactors& f);

DiagonalPhaseOp build_u(const GeneratorSet& gens, const Fp2Element& alpha, const Fp2Element& beta);

struct CyclicityReport {
  bool pass = true;
  std::size_t labels_checked = 0;
  std::size_t restricted_checks = 0;
  std::size_t group_law_checks = 0;
  std::optional<std::string> counterexample;
};

/// Exhaustively checks the four shift laws over every (l, j), the restricted
/// index-successor statements, and the U group law on `group_law_samples`
/// random pairs drawn from `rng`.
CyclicityReport verify_cyclicity(const Field& field, const GeneratorSet& gens, Rng& rng,
                                 std::size_t group_law_samples = 100);

}  // namespace qss
