#pragma once

// Mutually unbiased bases in dimension d = p^2:
//   |v_l^(j)> = (1/p) sum_k w^{Tr(j k^2 + l k)} |k>,  j, l in GF(p^2)
// plus the computational basis. Basis positions follow Field::index order.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qss/field.hpp"
#include "qss/rng.hpp"

namespace qss {

using Complex = std::complex<double>;

/// w^e with w = exp(2*pi*i/p).
Complex omega_power(std::uint32_t p, std::int64_t e);

class DenseState;

/// State (1/p) sum_k w^{e_k} |k>, stored as the exponent vector e over Z_p.
class PhaseState {
 public:
  /// Throws RangeError on wrong length or unreduced exponents.
  PhaseState(Field field, std::vector<std::uint32_t> exponents);

  const Field& field() const { return field_; }
  std::span<const std::uint32_t> exponents() const { return exponents_; }
  std::size_t size() const { return exponents_.size(); }
  Complex amplitude(std::size_t k) const;
  DenseState dense() const;

  friend bool operator==(const PhaseState&, const PhaseState&) = default;

 private:
  Field field_;
  std::vector<std::uint32_t> exponents_;
};

/// Complex amplitude vector. For a joint system/ancilla state the layout is
/// system-major: amplitude index = k * ancilla_dim + e.
class DenseState {
 public:
  static constexpr double kNormTolerance = 1e-9;

  /// Throws NormalizationError if the squared norm is off by more than
  /// kNormTolerance, RangeError if the size is not a multiple of ancilla_dim.
  explicit DenseState(std::vector<Complex> amplitudes, std::size_t ancilla_dim = 1);

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::size_t ancilla_dim() const { return ancilla_dim_; }
  std::size_t system_dim() const { return amplitudes_.size() / ancilla_dim_; }
  double norm_sq() const;

  friend bool operator==(const DenseState&, const DenseState&) = default;

 private:
  std::vector<Complex> amplitudes_;
  std::size_t ancilla_dim_;
};

/// What travels on the quantum channel. Honest runs stay PhaseState; a
/// computational-basis measurement or an entangling attack produces a
/// DenseState.
using QuditState = std::variant<PhaseState, DenseState>;

/// Names a basis: one of the d quadratic bases V_j, or the computational
/// basis V_d.
class BasisId {
 public:
  static BasisId quadratic(const Fp2Element& j) { return BasisId(j); }
  static BasisId computational() { return BasisId(std::nullopt); }

  bool is_computational() const { return !j_.has_value(); }
  /// Throws RangeError for the computational basis.
  const Fp2Element& j() const;

  friend bool operator==(const BasisId&, const BasisId&) = default;

 private:
  explicit BasisId(std::optional<Fp2Element> j) : j_(j) {}
  std::optional<Fp2Element> j_;
};

struct MubLabel {
  BasisId basis;
  Fp2Element l;

  friend bool operator==(const MubLabel&, const MubLabel&) = default;
};

PhaseState mub_vector(const Field& field, const Fp2Element& j, const Fp2Element& l);
DenseState computational_vector(const Field& field, const Fp2Element& l);
DenseState basis_vector(const Field& field, const BasisId& basis, const Fp2Element& l);
/// All d vectors of a basis, subscripts in index order.
std::vector<DenseState> basis_vectors(const Field& field, const BasisId& basis);
/// V_0, ..., V_{d-1} in index order of j, then the computational basis.
std::vector<std::vector<DenseState>> all_bases(const Field& field);

/// Exact <x|y> for two phase states: (1/p^2) sum_r n_r w^r where n_r counts
/// positions whose exponent difference (y - x) is r.
class Overlap {
 public:
  Overlap(std::uint32_t p, std::vector<std::uint64_t> counts);

  std::span<const std::uint64_t> counts() const { return counts_; }
  /// Every difference is zero: the states coincide.
  bool is_one() const;
  /// All counts equal. Since 1 + w + ... + w^{p-1} spans the only linear
  /// relation among the p-th roots of unity, this is an exact zero test.
  bool is_zero() const;
  Complex value() const;
  double magnitude_sq() const { return std::norm(value()); }

 private:
  std::uint32_t p_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_;
};

/// Throws ContextError when the states live over different fields.
Overlap overlap(const PhaseState& x, const PhaseState& y);

/// <x|y> on dense vectors of equal length.
Complex inner(const DenseState& x, const DenseState& y);

/// The unique quadratic-basis label whose vector equals x, if any.
std::optional<MubLabel> identify(const PhaseState& x);

struct UnbiasedReport {
  bool pass = true;
  std::size_t bases = 0;
  std::size_t vectors_per_basis = 0;
  std::size_t cross_pairs = 0;
  std::size_t within_pairs = 0;
  /// max | |<u|v>|^2 - 1/d | over vectors from different bases.
  double worst_cross_deviation = 0.0;
  /// max of |<v|v> - 1| and |<u|v>|^2 over vectors within a basis.
  double worst_within_deviation = 0.0;
  std::optional<std::string> failure;
};

inline constexpr double kUnbiasedTolerance = 1e-9;

/// Exhaustive check of the d + 1 bases of `field`.
UnbiasedReport verify_unbiased(const Field& field);
/// Exhaustive check of an arbitrary family of bases in a common dimension.
UnbiasedReport verify_bases(std::span<const std::vector<DenseState>> bases);

/// Born distribution of measuring `state` in `basis`, indexed by outcome
/// index. For joint states the ancilla is traced out.
std::vector<double> born_probabilities(const Field& field, const QuditState& state,
                                       const BasisId& basis);

struct Measurement {
  Fp2Element outcome;
  QuditState post;
  /// The state was an eigenvector of the basis; no randomness was consumed.
  bool deterministic = false;
};

/// Projective measurement. Throws NormalizationError when the Born
/// probabilities do not sum to 1 within 1e-9.
Measurement measure(const Field& field, const QuditState& state, const BasisId& basis, Rng& rng);

}  // namespace qss
