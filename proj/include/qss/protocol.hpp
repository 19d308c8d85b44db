#pragma once

// The (N, N) threshold round: Alice prepares v_0^(0), applies U_{a0,b0} and
// hands the qudit down the chain Bob_1 .. Bob_N, each applying U_{ak,bk};
// Alice measures in basis J = sum(beta) and tests sum(alpha) == h.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/field.hpp"
#include "qss/mub.hpp"
#include "qss/operators.hpp"

namespace qss {

enum class RoundKind {
  Test,  // alphas announced publicly; key discarded
  Key,   // alphas kept among the participants; key retained
};

std::string to_string(RoundKind kind);

struct RoundConfig {
  Field field;
  std::size_t n_parties = 3;
  std::uint64_t master_seed = 0;
  AttackModel adversary = NoAttack{};
  /// Probability that a round is scheduled as a test round.
  double test_fraction = 0.5;
  std::uint64_t round_index = 0;
};

/// Throws RangeError on N < 1, a test fraction outside [0, 1], or an
/// inconsistent attack model.
void validate(const RoundConfig& config);

/// Pre-chosen alpha_0..alpha_N and beta_0..beta_N, replacing the random draws.
struct RoundDraws {
  std::vector<Fp2Element> alpha;
  std::vector<Fp2Element> beta;
};

struct RoundTranscript {
  Field field;
  std::size_t n_parties = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t round_index = 0;
  RoundKind kind = RoundKind::Test;
  std::vector<Fp2Element> alpha;  // alpha_0 .. alpha_N
  std::vector<Fp2Element> beta;   // beta_0 .. beta_N
  std::vector<UnitaryFactors> unitaries;
  /// psi_0 .. psi_N as emitted by their sender.
  std::vector<QuditState> transit_states;
  Fp2Element J;
  Fp2Element h;
  /// alpha_1 .. alpha_N as published in the testing phase.
  std::vector<Fp2Element> announced_alpha;
  bool eq5_pass = false;
  std::optional<Fp2Element> key;
  std::vector<AttackEvent> adversary_events;

  /// Sum of all alphas.
  Fp2Element delta() const;
  /// Sum of all betas.
  Fp2Element gamma() const;
};

Fp2Element field_sum(const Field& field, std::span<const Fp2Element> xs);

RoundTranscript run_round(const RoundConfig& config);
RoundTranscript run_round_with_draws(const RoundConfig& config, const RoundDraws& draws);

/// s = alpha_1 + ... + alpha_N. Throws DiscardedRunError on a failed round.
Fp2Element recover_key(const RoundTranscript& t);

AttackReport attack_report(const RoundTranscript& t);

struct AggregateStats {
  std::uint64_t rounds = 0;
  std::uint64_t detected = 0;
  std::uint64_t adversary_success = 0;
  std::uint64_t test_rounds = 0;
  std::uint64_t key_rounds = 0;
  /// Retained keys (passing key rounds) by Field::index.
  std::map<std::size_t, std::uint64_t> key_histogram;
  /// Intercept-resend only.
  std::uint64_t eve_basis_correct = 0;
  std::uint64_t eve_basis_wrong = 0;
  std::uint64_t detected_given_wrong_basis = 0;
  std::uint64_t detected_given_correct_basis = 0;

  std::uint64_t undetected() const { return rounds - detected; }
};

using TranscriptSink = std::function<void(const RoundTranscript&)>;

/// Runs rounds 0..rounds-1 with round_index set per round.
AggregateStats run_many(const RoundConfig& config, std::uint64_t rounds,
                        const TranscriptSink& sink = {});

/// Reference values of the worked (3,3) example over p = 3, f = x^2 + x + 2.
namespace example2 {

inline constexpr Poly kPoly{1, 2};
inline constexpr std::size_t kParties = 3;

struct Reference {
  std::vector<std::uint32_t> a1, a2, b1, b2;
  std::uint32_t a = 0, b = 0;
  Fp2Element c;
  std::vector<Fp2Element> alpha, beta;
  std::vector<std::string> unitaries;
  /// psi_0 .. psi_3 as w-exponents. psi_0 is the 9-entry value implied by
  /// psi_1; the printed listing drops one entry.
  std::vector<std::vector<std::uint32_t>> psi;
  Fp2Element J, h, key;
};

const Reference& reference();

}  // namespace example2

/// Replays the worked example with its fixed draws and checks every
/// reference quantity. Throws GoldenFixtureError naming the first mismatch.
RoundTranscript replay_example2(const Field& field);

}  // namespace qss
