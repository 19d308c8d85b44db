#include "qss/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qss/error.hpp"

namespace qss {

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

void validate_attack(const AttackModel& model, const Field& field, std::size_t n_parties) {
  if (const auto* ir = std::get_if<InterceptResend>(&model)) {
    if (ir->position && *ir->position > n_parties) {
      throw RangeError("intercept link " + std::to_string(*ir->position) + " outside 0.." +
                       std::to_string(n_parties));
    }
  } else if (const auto* dc = std::get_if<DishonestCoalition>(&model)) {
    if (dc->members.empty()) throw RangeError("dishonest coalition is empty");
    std::set<std::size_t> seen;
    for (auto m : dc->members) {
      if (m < 1 || m > n_parties) {
        throw RangeError("coalition member " + std::to_string(m) + " outside 1.." +
                         std::to_string(n_parties));
      }
      if (!seen.insert(m).second) throw RangeError("duplicate coalition member");
    }
  } else if (const auto* em = std::get_if<EntangleMeasure>(&model)) {
    if (em->position && *em->position > n_parties) {
      throw RangeError("entangle link outside 0.." + std::to_string(n_parties));
    }
    if (em->ancilla_dim == 0) throw RangeError("ancilla dimension must be positive");
    if (em->phi.size() != field.d()) {
      throw RangeError("need " + std::to_string(field.d()) + " ancilla vectors, got " +
                       std::to_string(em->phi.size()));
    }
    for (const auto& v : em->phi) {
      if (v.size() != em->ancilla_dim) throw RangeError("ancilla vector has wrong dimension");
      double n = 0.0;
      for (const auto& a : v) n += std::norm(a);
      if (std::abs(n - 1.0) > kEntangleTolerance) {
        throw NormalizationError("ancilla vector has squared norm " + std::to_string(n));
      }
    }
  }
}

std::string attack_name(const AttackModel& model) {
  struct {
    std::string operator()(const NoAttack&) const { return "none"; }
    std::string operator()(const InterceptResend&) const { return "intercept"; }
    std::string operator()(const DishonestCoalition&) const { return "dishonest"; }
    std::string operator()(const EntangleMeasure&) const { return "entangle"; }
  } visitor;
  return std::visit(visitor, model);
}

InterceptOutcome intercept_resend(const Field& field, const QuditState& state, BasisPool pool,
                                  Rng& rng, std::size_t link) {
  const std::uint64_t choices = field.d() + (pool == BasisPool::AllBases ? 1 : 0);
  const std::uint64_t pick = rng.below(choices);
  const BasisId basis = pick == field.d()
                            ? BasisId::computational()
                            : BasisId::quadratic(field.from_index(static_cast<std::int64_t>(pick)));

  InterceptRecord record;
  record.link = link;
  record.eve_basis = basis;
  if (const auto* phase = std::get_if<PhaseState>(&state)) record.true_label = identify(*phase);
  record.basis_correct = record.true_label && record.true_label->basis == basis;

  Measurement m = measure(field, state, basis, rng);
  record.eve_outcome = m.outcome;
  return {std::move(m.post), record};
}

AttackReport dishonest_attack(const Field& field, const TranscriptView& view,
                              const DishonestCoalition& coalition,
                              std::vector<Fp2Element>& announced, Rng& rng) {
  const std::size_t n = view.participant_alpha.size();
  if (announced.size() != n) throw RangeError("announcement list does not match participants");

  DishonestRecord record;
  record.members = coalition.members;
  record.mode = coalition.mode;

  std::vector<bool> in_block(n + 1, false);
  for (auto m : coalition.members) {
    if (m < 1 || m > n) throw RangeError("coalition member outside 1..N");
    in_block[m] = true;
  }
  Fp2Element block = field.zero();
  Fp2Element remainder = field.zero();
  bool remainder_empty = true;
  for (std::size_t k = 1; k <= n; ++k) {
    if (in_block[k]) {
      block = field.add(block, view.participant_alpha[k - 1]);
    } else {
      remainder = field.add(remainder, view.participant_alpha[k - 1]);
      remainder_empty = false;
    }
  }
  record.true_block_sum = block;
  record.announced_block_sum = block;

  if (coalition.mode == CoalitionMode::AnnounceWrong) {
    // Shift the block's published sum by a uniformly drawn nonzero offset.
    const auto offset = field.from_index(static_cast<std::int64_t>(1 + rng.below(field.d() - 1)));
    const std::size_t first = coalition.members.front();
    announced[first - 1] = field.add(announced[first - 1], offset);
    record.announced_block_sum = field.add(block, offset);
  } else {
    // The block knows its own share; the honest remainder is a uniform
    // unknown unless every participant is in the block.
    const Fp2Element guess = remainder_empty ? field.zero() : rng.element(field);
    record.guess = guess;
    record.guess_correct = guess == remainder;
  }

  Fp2Element total = view.alpha0;
  for (const auto& a : announced) total = field.add(total, a);

  AttackReport report;
  report.detected = total != view.h;
  report.eve_key_correct = record.guess_correct;
  report.notes.emplace_back(record);
  return report;
}

DenseState entangle(const PhaseState& state, std::span<const std::vector<Complex>> phi) {
  const std::size_t d = state.size();
  if (phi.size() != d) throw RangeError("need one ancilla vector per basis index");
  const std::size_t anc = phi.front().size();
  std::vector<Complex> joint(d * anc);
  for (std::size_t k = 0; k < d; ++k) {
    if (phi[k].size() != anc) throw RangeError("ancilla vectors differ in dimension");
    double n = 0.0;
    for (const auto& a : phi[k]) n += std::norm(a);
    if (std::abs(n - 1.0) > kEntangleTolerance) {
      throw NormalizationError("ancilla vector " + std::to_string(k) + " has squared norm " +
                               std::to_string(n));
    }
    const Complex amp = state.amplitude(k);
    for (std::size_t e = 0; e < anc; ++e) joint[k * anc + e] = amp * phi[k][e];
  }
  return DenseState(std::move(joint), anc);
}

namespace {

bool rows_proportional(std::span<const Complex> amps, std::size_t rows, std::size_t cols) {
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < rows; ++r) {
    double n = 0.0;
    for (std::size_t c = 0; c < cols; ++c) n += std::norm(amps[r * cols + c]);
    if (n > best) {
      best = n;
      pivot = r;
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    Complex coef{0.0, 0.0};
    for (std::size_t c = 0; c < cols; ++c) {
      coef += std::conj(amps[pivot * cols + c]) * amps[r * cols + c];
    }
    coef /= best;
    double resid = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      resid += std::norm(amps[r * cols + c] - coef * amps[pivot * cols + c]);
    }
    if (std::sqrt(resid) > kEntangleTolerance) return false;
  }
  return true;
}

}  // namespace

EntangleReport entangle_attack(const Field& field, std::span<const std::vector<Complex>> phi,
                               const MubLabel& channel_label,
                               std::span<const DiagonalPhaseOp> remaining) {
  if (channel_label.basis.is_computational()) {
    throw RangeError("entangle attack expects a quadratic-basis channel state");
  }
  const std::size_t d = field.d();
  const PhaseState channel = mub_vector(field, channel_label.basis.j(), channel_label.l);
  DenseState joint = entangle(channel, phi);

  PhaseState honest = channel;
  for (const auto& op : remaining) {
    joint = apply_dense(op, joint);
    honest = qss::apply(op, honest);
  }

  EntangleReport report;
  const auto final_label = identify(honest);
  if (!final_label) throw RangeError("remaining operators left the MUB family");
  report.final_label = *final_label;

  const auto probs = born_probabilities(field, joint, final_label->basis);
  report.honest_probability = probs[field.index(final_label->l)];
  report.detection_probability = std::max(0.0, 1.0 - report.honest_probability);

  const std::size_t anc = phi.front().size();
  report.residual_norms.assign(d, 0.0);
  std::vector<Complex> acc(anc);
  for (std::size_t mi = 0; mi < d; ++mi) {
    const Fp2Element m = field.from_index(static_cast<std::int64_t>(mi));
    if (m == channel_label.l) continue;
    const Fp2Element diff = field.sub(channel_label.l, m);
    std::fill(acc.begin(), acc.end(), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
      const Fp2Element kk = field.from_index(static_cast<std::int64_t>(k));
      const Complex w = omega_power(field.p(), field.trace(field.mul(diff, kk)).value);
      for (std::size_t e = 0; e < anc; ++e) acc[e] += w * phi[k][e];
    }
    double n = 0.0;
    for (const auto& a : acc) n += std::norm(a);
    report.residual_norms[mi] = std::sqrt(n) / static_cast<double>(d);
    report.max_residual = std::max(report.max_residual, report.residual_norms[mi]);
  }
  report.criterion_holds = report.max_residual <= kEntangleTolerance;

  report.all_equal = true;
  for (std::size_t k = 1; k < d && report.all_equal; ++k) {
    for (std::size_t e = 0; e < anc; ++e) {
      if (std::abs(phi[k][e] - phi[0][e]) > kEntangleTolerance) {
        report.all_equal = false;
        break;
      }
    }
  }
  report.product_state = rows_proportional(joint.amplitudes(), d, anc);
  report.eve_information = !report.all_equal;
  return report;
}

namespace {

std::vector<Complex> random_unit(std::size_t dim, Rng& rng) {
  std::vector<Complex> v(dim);
  double n = 0.0;
  for (auto& a : v) {
    a = Complex{rng.normal(), rng.normal()};
    n += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n);
  for (auto& a : v) a *= inv;
  return v;
}

}  // namespace

std::vector<std::vector<Complex>> identical_ancillas(const Field& field, std::size_t ancilla_dim,
                                                    Rng& rng) {
  return std::vector<std::vector<Complex>>(field.d(), random_unit(ancilla_dim, rng));
}

std::vector<std::vector<Complex>> orthogonal_ancillas(const Field& field) {
  const std::size_t d = field.d();
  std::vector<std::vector<Complex>> out(d, std::vector<Complex>(d, Complex{0.0, 0.0}));
  for (std::size_t k = 0; k < d; ++k) out[k][k] = 1.0;
  return out;
}

std::vector<std::vector<Complex>> random_ancillas(const Field& field, std::size_t ancilla_dim,
                                                 Rng& rng) {
  std::vector<std::vector<Complex>> out;
  out.reserve(field.d());
  for (std::size_t k = 0; k < field.d(); ++k) out.push_back(random_unit(ancilla_dim, rng));
  return out;
}

TheoreticalRates theoretical_rates(std::int64_t p, std::uint64_t n_rounds) {
  if (p < 3 || !is_prime(p)) throw PrimeError("modulus " + std::to_string(p) + " is not an odd prime");
  if (n_rounds < 1) throw RangeError("need at least one round");
  TheoreticalRates r;
  r.d = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
  r.n_rounds = n_rounds;
  const Rational d{r.d};
  const Rational one{1};
  r.guess_success = one / d;
  r.guess_failure = (d - 1) / d;
  r.n_round_success = one;
  for (std::uint64_t i = 0; i < n_rounds; ++i) r.n_round_success *= r.guess_success;
  r.intercept_undetected_quadratic = one / d + (d - 1) / d * (one / d);
  r.intercept_undetected_all = one / (d + 1) + d / (d + 1) * (one / d);
  r.intercept_detect_given_wrong = (d - 1) / d;
  return r;
}

double binomial_z(std::uint64_t successes, std::uint64_t trials, double prob) {
  const double n = static_cast<double>(trials);
  const double mean = n * prob;
  const double var = n * prob * (1.0 - prob);
  const double diff = static_cast<double>(successes) - mean;
  if (var <= 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / std::sqrt(var);
}

double two_proportion_z(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2, std::uint64_t n2) {
  const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se <= 0.0) return p1 == p2 ? 0.0 : std::copysign(INFINITY, p1 - p2);
  return (p1 - p2) / se;
}

}  // namespace qss
