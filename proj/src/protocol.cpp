#include "qss/protocol.hpp"

#include <algorithm>

#include "qss/error.hpp"
#include "qss/rng.hpp"

namespace qss {

std::string to_string(RoundKind kind) { return kind == RoundKind::Test ? "test" : "key"; }

void validate(const RoundConfig& config) {
  if (config.n_parties < 1) throw RangeError("need at least one participant (N >= 1)");
  if (!(config.test_fraction >= 0.0 && config.test_fraction <= 1.0)) {
    throw RangeError("test fraction must lie in [0, 1]");
  }
  validate_attack(config.adversary, config.field, config.n_parties);
}

Fp2Element RoundTranscript::delta() const { return field.sum(alpha); }
Fp2Element RoundTranscript::gamma() const { return field.sum(beta); }

Fp2Element field_sum(const Field& field, std::span<const Fp2Element> xs) { return field.sum(xs); }

namespace {

std::size_t attack_link(const AttackModel& model, std::size_t n_parties, Rng& rng) {
  std::optional<std::size_t> pos;
  if (const auto* ir = std::get_if<InterceptResend>(&model)) pos = ir->position;
  if (const auto* em = std::get_if<EntangleMeasure>(&model)) pos = em->position;
  return pos ? *pos : static_cast<std::size_t>(rng.below(n_parties + 1));
}

RoundTranscript execute(const RoundConfig& config, const GeneratorSet& gens,
                        const RoundDraws* draws) {
  const Field& f = config.field;
  const std::size_t n = config.n_parties;
  if (draws && (draws->alpha.size() != n + 1 || draws->beta.size() != n + 1)) {
    throw RangeError("injected draws need N + 1 alphas and betas");
  }

  // Stream 0 is Alice, 1..N the participants, N + 1 the adversary.
  auto stream = [&](std::size_t party) {
    return Rng(derive_seed(config.master_seed, config.round_index, party));
  };
  Rng alice = stream(0);
  Rng adversary = stream(n + 1);

  RoundTranscript t{f};
  t.n_parties = n;
  t.master_seed = config.master_seed;
  t.round_index = config.round_index;
  t.kind = alice.uniform() < config.test_fraction ? RoundKind::Test : RoundKind::Key;

  t.alpha.resize(n + 1);
  t.beta.resize(n + 1);
  // Preparation: alpha_0, beta_0, then the betas handed to each participant.
  t.alpha[0] = draws ? draws->alpha[0] : alice.element(f);
  for (std::size_t k = 0; k <= n; ++k) t.beta[k] = draws ? draws->beta[k] : alice.element(f);
  // Distribution: each participant picks its own alpha.
  for (std::size_t k = 1; k <= n; ++k) {
    Rng bob = stream(k);
    t.alpha[k] = draws ? draws->alpha[k] : bob.element(f);
  }

  const bool channel_attack = std::holds_alternative<InterceptResend>(config.adversary) ||
                              std::holds_alternative<EntangleMeasure>(config.adversary);
  const std::size_t link = channel_attack ? attack_link(config.adversary, n, adversary) : n + 1;

  QuditState state = mub_vector(f, f.zero(), f.zero());
  for (std::size_t k = 0; k <= n; ++k) {
    t.unitaries.push_back(unitary_factors(f, t.alpha[k], t.beta[k]));
    state = qss::apply(build_u(gens, t.alpha[k], t.beta[k]), state);
    t.transit_states.push_back(state);
    if (k != link) continue;
    if (const auto* ir = std::get_if<InterceptResend>(&config.adversary)) {
      auto out = intercept_resend(f, state, ir->pool, adversary, link);
      state = std::move(out.resent);
      t.adversary_events.emplace_back(out.record);
    } else if (const auto* em = std::get_if<EntangleMeasure>(&config.adversary)) {
      if (const auto* phase = std::get_if<PhaseState>(&state)) {
        state = entangle(*phase, em->phi);
      } else {
        throw RangeError("entangling a non-phase transit state is not modelled");
      }
      t.adversary_events.emplace_back(EntangleRecord{link, em->ancilla_dim});
    }
  }

  // Measurement.
  t.J = f.sum(t.beta);
  t.h = measure(f, state, BasisId::quadratic(t.J), alice).outcome;

  // Testing.
  t.announced_alpha.assign(t.alpha.begin() + 1, t.alpha.end());
  if (const auto* dc = std::get_if<DishonestCoalition>(&config.adversary)) {
    const TranscriptView view{t.alpha[0], std::span(t.alpha).subspan(1), t.h};
    auto report = dishonest_attack(f, view, *dc, t.announced_alpha, adversary);
    for (auto& ev : report.notes) t.adversary_events.push_back(std::move(ev));
  }
  t.eq5_pass = f.add(t.alpha[0], f.sum(t.announced_alpha)) == t.h;

  // Recovery.
  if (t.eq5_pass) t.key = f.sum(std::span(t.alpha).subspan(1));
  return t;
}

}  // namespace

RoundTranscript run_round(const RoundConfig& config) {
  validate(config);
  return execute(config, build_generators(config.field), nullptr);
}

RoundTranscript run_round_with_draws(const RoundConfig& config, const RoundDraws& draws) {
  validate(config);
  for (const auto& a : draws.alpha) config.field.check(a);
  for (const auto& b : draws.beta) config.field.check(b);
  return execute(config, build_generators(config.field), &draws);
}

Fp2Element recover_key(const RoundTranscript& t) {
  if (!t.eq5_pass) throw DiscardedRunError("round failed the consistency test and was discarded");
  return t.field.sum(std::span(t.alpha).subspan(1));
}

AttackReport attack_report(const RoundTranscript& t) {
  AttackReport report;
  report.detected = !t.eq5_pass;
  report.notes = t.adversary_events;
  for (const auto& ev : t.adversary_events) {
    if (const auto* ir = std::get_if<InterceptRecord>(&ev)) report.eve_basis_guess = ir->eve_basis;
    if (const auto* dr = std::get_if<DishonestRecord>(&ev)) report.eve_key_correct = dr->guess_correct;
  }
  return report;
}

AggregateStats run_many(const RoundConfig& config, std::uint64_t rounds,
                        const TranscriptSink& sink) {
  validate(config);
  if (rounds < 1) throw RangeError("need at least one round");
  const GeneratorSet gens = build_generators(config.field);

  bool ancilla_informative = false;
  if (const auto* em = std::get_if<EntangleMeasure>(&config.adversary)) {
    ancilla_informative = std::any_of(em->phi.begin(), em->phi.end(),
                                      [&](const auto& v) { return v != em->phi.front(); });
  }

  AggregateStats stats;
  RoundConfig cfg = config;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    cfg.round_index = r;
    const RoundTranscript t = execute(cfg, gens, nullptr);
    if (sink) sink(t);

    ++stats.rounds;
    const bool detected = !t.eq5_pass;
    if (detected) ++stats.detected;
    if (t.kind == RoundKind::Test) {
      ++stats.test_rounds;
    } else {
      ++stats.key_rounds;
      if (t.key) ++stats.key_histogram[config.field.index(*t.key)];
    }

    bool success = false;
    for (const auto& ev : t.adversary_events) {
      if (const auto* ir = std::get_if<InterceptRecord>(&ev)) {
        if (ir->basis_correct) {
          ++stats.eve_basis_correct;
          if (detected) ++stats.detected_given_correct_basis;
        } else {
          ++stats.eve_basis_wrong;
          if (detected) ++stats.detected_given_wrong_basis;
        }
        success = ir->basis_correct && !detected;
      } else if (const auto* dr = std::get_if<DishonestRecord>(&ev)) {
        success = dr->guess_correct && !detected;
      } else if (std::holds_alternative<EntangleRecord>(ev)) {
        success = ancilla_informative && !detected;
      }
    }
    if (success) ++stats.adversary_success;
  }
  return stats;
}

namespace example2 {

const Reference& reference() {
  static const Reference ref = [] {
    auto e = [](std::uint32_t k1, std::uint32_t k2) { return Fp2Element{{k1}, {k2}}; };
    Reference r;
    r.a1 = {0, 2, 1, 2, 1, 0, 1, 0, 2};
    r.a2 = {0, 1, 2, 2, 0, 1, 1, 2, 0};
    r.b1 = {0, 2, 2, 0, 0, 1, 0, 1, 0};
    r.b2 = {0, 1, 1, 2, 1, 2, 2, 2, 1};
    r.a = 1;
    r.b = 2;
    r.c = e(1, 1);  // theta - 2 = theta + 1
    r.alpha = {e(1, 1), e(0, 1), e(0, 1), e(2, 1)};
    r.beta = {e(0, 1), e(1, 0), e(0, 1), e(1, 1)};
    r.unitaries = {"A2 B2 B1^2", "A2 A1^2 B1", "A2 A1^2 B2 B1^2", "A2 A1 B2"};
    r.psi = {
        {0, 0, 1, 1, 1, 2, 0, 0, 1},
        {0, 1, 1, 1, 0, 1, 0, 0, 2},
        {0, 2, 1, 0, 0, 0, 2, 0, 1},
        {0, 0, 2, 0, 2, 0, 0, 1, 1},
    };
    r.J = e(2, 0);
    r.h = e(0, 1);
    r.key = e(2, 0);
    return r;
  }();
  return ref;
}

}  // namespace example2

RoundTranscript replay_example2(const Field& field) {
  const auto& ref = example2::reference();
  if (field.p() != 3 || !(field.poly() == example2::kPoly)) {
    throw GoldenFixtureError("field: the worked example needs p = 3, f = x^2 + x + 2");
  }
  auto mismatch = [](const std::string& what) { throw GoldenFixtureError(what + " differs"); };
  auto same = [](std::span<const std::uint32_t> got, const std::vector<std::uint32_t>& want) {
    return std::equal(got.begin(), got.end(), want.begin(), want.end());
  };

  const GeneratorSet gens = build_generators(field);
  if (!same(gens.a1.exponents(), ref.a1)) mismatch("A1");
  if (!same(gens.a2.exponents(), ref.a2)) mismatch("A2");
  if (!same(gens.b1.exponents(), ref.b1)) mismatch("B1");
  if (!same(gens.b2.exponents(), ref.b2)) mismatch("B2");
  if (gens.a.value != ref.a) mismatch("a");
  if (gens.b.value != ref.b) mismatch("b");
  if (gens.c != ref.c) mismatch("c");

  RoundConfig config{field};
  config.n_parties = example2::kParties;
  const RoundTranscript t = run_round_with_draws(config, {ref.alpha, ref.beta});

  for (std::size_t k = 0; k < ref.unitaries.size(); ++k) {
    if (format_factors(t.unitaries[k]) != ref.unitaries[k]) mismatch("U_" + std::to_string(k));
  }
  for (std::size_t k = 0; k < ref.psi.size(); ++k) {
    const auto* phase = std::get_if<PhaseState>(&t.transit_states[k]);
    if (!phase || !same(phase->exponents(), ref.psi[k])) mismatch("psi_" + std::to_string(k));
  }
  if (t.J != ref.J) mismatch("J");
  if (t.h != ref.h) mismatch("h");
  if (!t.eq5_pass) mismatch("consistency test");
  if (!t.key || *t.key != ref.key) mismatch("key");
  return t;
}

}  // namespace qss
