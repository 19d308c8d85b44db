#pragma once

// Attack models run as hooks inside a protocol round, plus the analytic
// rates they are compared against.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qss/field.hpp"
#include "qss/mub.hpp"
#include "qss/operators.hpp"
#include "qss/rng.hpp"

namespace qss {

using Rational = boost::multiprecision::cpp_rational;

/// "num/den" (a plain integer when den == 1).
std::string to_string(const Rational& r);

enum class BasisPool {
  QuadraticOnly,  // the d bases V_0 .. V_{d-1}
  AllBases,       // plus the computational basis
};

enum class CoalitionMode {
  AnnounceWrong,            // publish a falsified alpha sum
  AnnounceCorrectAndGuess,  // publish truthfully, guess the honest remainder
};

struct NoAttack {};

struct InterceptResend {
  /// Link i carries psi_i from party i to party i+1 (link N returns to
  /// Alice). Unset: uniform over the N + 1 links each round.
  std::optional<std::size_t> position;
  BasisPool pool = BasisPool::QuadraticOnly;
};

struct DishonestCoalition {
  std::vector<std::size_t> members;  // participant indices in 1..N
  CoalitionMode mode = CoalitionMode::AnnounceCorrectAndGuess;
};

/// Diagonal entangling attack U_E |k>|E> = |k> ⊗ phi[k].
struct EntangleMeasure {
  std::size_t ancilla_dim = 0;
  std::vector<std::vector<Complex>> phi;  // p^2 unit vectors of length ancilla_dim
  std::optional<std::size_t> position;
};

using AttackModel = std::variant<NoAttack, InterceptResend, DishonestCoalition, EntangleMeasure>;

/// Throws RangeError or NormalizationError when the model is inconsistent
/// with the field or the number of participants.
void validate_attack(const AttackModel& model, const Field& field, std::size_t n_parties);

std::string attack_name(const AttackModel& model);

struct InterceptRecord {
  std::size_t link = 0;
  BasisId eve_basis = BasisId::computational();
  Fp2Element eve_outcome;
  /// Label of the intercepted state (honest transit states always have one).
  std::optional<MubLabel> true_label;
  bool basis_correct = false;
};

struct DishonestRecord {
  std::vector<std::size_t> members;
  CoalitionMode mode = CoalitionMode::AnnounceCorrectAndGuess;
  Fp2Element true_block_sum;
  Fp2Element announced_block_sum;
  std::optional<Fp2Element> guess;
  bool guess_correct = false;
};

struct EntangleRecord {
  std::size_t link = 0;
  std::size_t ancilla_dim = 0;
};

using AttackEvent = std::variant<InterceptRecord, DishonestRecord, EntangleRecord>;

struct AttackReport {
  bool detected = false;
  std::optional<BasisId> eve_basis_guess;
  bool eve_key_correct = false;
  std::vector<AttackEvent> notes;
};

struct InterceptOutcome {
  QuditState resent;
  InterceptRecord record;
};

/// Eve measures `state` in a basis drawn uniformly from `pool` and resends
/// the collapsed basis vector.
InterceptOutcome intercept_resend(const Field& field, const QuditState& state, BasisPool pool,
                                  Rng& rng, std::size_t link = 0);

/// Classical data visible to a coalition after the quantum phase.
struct TranscriptView {
  Fp2Element alpha0;
  std::span<const Fp2Element> participant_alpha;  // alpha_1 .. alpha_N
  Fp2Element h;
};

/// Runs the coalition's announcement strategy. `announced` holds alpha_1..N
/// as they will be published and is modified in place for AnnounceWrong.
AttackReport dishonest_attack(const Field& field, const TranscriptView& view,
                              const DishonestCoalition& coalition,
                              std::vector<Fp2Element>& announced, Rng& rng);

/// Joint state (1/p) sum_k w^{e_k} |k> ⊗ phi[k].
DenseState entangle(const PhaseState& state, std::span<const std::vector<Complex>> phi);

struct EntangleReport {
  /// 1 - P(Alice's measurement returns the honest outcome).
  double detection_probability = 0.0;
  double honest_probability = 0.0;
  /// ||(1/d) sum_k w^{Tr((l-m)k)} phi_k|| for each m in index order (zero at m = l).
  std::vector<double> residual_norms;
  double max_residual = 0.0;
  /// All residuals for m != l vanish: the attack is undetectable.
  bool criterion_holds = false;
  bool all_equal = false;
  /// Joint state factorizes as system ⊗ ancilla.
  bool product_state = false;
  /// Eve's conditional ancilla states differ, so her ancilla correlates with
  /// the qudit.
  bool eve_information = false;
  /// Where the honest state ends up after `remaining`.
  MubLabel final_label{BasisId::computational(), {}};
};

inline constexpr double kEntangleTolerance = 1e-9;

/// Entangles v_l^(j) with the ancilla, propagates the remaining honest
/// operators on the system factor and evaluates Alice's final measurement.
EntangleReport entangle_attack(const Field& field, std::span<const std::vector<Complex>> phi,
                               const MubLabel& channel_label,
                               std::span<const DiagonalPhaseOp> remaining = {});

/// phi_k all equal to one random unit vector.
std::vector<std::vector<Complex>> identical_ancillas(const Field& field, std::size_t ancilla_dim,
                                                    Rng& rng);
/// phi_k = |k> in an ancilla of dimension p^2.
std::vector<std::vector<Complex>> orthogonal_ancillas(const Field& field);
/// Independent Gaussian unit vectors.
std::vector<std::vector<Complex>> random_ancillas(const Field& field, std::size_t ancilla_dim,
                                                 Rng& rng);

struct TheoreticalRates {
  std::uint64_t d = 0;
  std::uint64_t n_rounds = 1;
  Rational guess_success;          // 1/d
  Rational guess_failure;          // (d-1)/d
  Rational n_round_success;        // (1/d)^n
  /// Intercept-resend, QuadraticOnly pool: 1/d + (d-1)/d * 1/d.
  Rational intercept_undetected_quadratic;
  /// Intercept-resend, AllBases pool: 1/(d+1) + d/(d+1) * 1/d.
  Rational intercept_undetected_all;
  /// Detection given a wrong basis guess: (d-1)/d.
  Rational intercept_detect_given_wrong;
};

TheoreticalRates theoretical_rates(std::int64_t p, std::uint64_t n_rounds);

/// (successes - n*prob) / sqrt(n*prob*(1-prob)); 0 when the variance is 0
/// and the count matches exactly.
double binomial_z(std::uint64_t successes, std::uint64_t trials, double prob);
/// Pooled two-proportion z statistic.
double two_proportion_z(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2, std::uint64_t n2);

}  // namespace qss
