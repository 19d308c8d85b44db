#include "qss/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "qss/adversary.hpp"
#include "qss/error.hpp"
#include "qss/mub.hpp"
#include "qss/operators.hpp"
#include "qss/protocol.hpp"
#include "qss/serialize.hpp"

namespace qss::cli {
namespace {

/// Invalid flag values detected after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::int64_t p = 3;
  std::string poly;
  bool allow_large_p = false;
  std::int64_t parties = 3;
  std::int64_t rounds = 1000;
  std::uint64_t seed = 0;
  std::string attack = "none";
  std::string basis_pool = "quadratic";
  std::string dishonest_mode = "guess";
  std::string ancilla = "random";
  std::int64_t ancilla_dim = 0;
  std::int64_t link = -1;
  double test_fraction = 0.5;
  std::int64_t samples = 100;
  std::string output;
  std::string format;
  std::string transcripts;
  bool verbose = false;
  std::string alpha;
  std::string beta;
};

std::optional<Poly> parse_poly(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--poly expects b,c");
  try {
    std::size_t used = 0;
    const long b = std::stol(text.substr(0, comma), &used);
    if (used != comma) throw UsageError("--poly expects b,c");
    const std::string rest = text.substr(comma + 1);
    const long c = std::stol(rest, &used);
    if (used != rest.size() || b < 0 || c < 0) throw UsageError("--poly expects b,c");
    return Poly{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)};
  } catch (const std::logic_error&) {
    throw UsageError("--poly expects two non-negative integers b,c");
  }
}

Field make_field(const Options& o, std::optional<Poly> fallback = std::nullopt) {
  auto poly = parse_poly(o.poly);
  if (!poly) poly = fallback;
  return Field::make(o.p, poly, FieldOptions{o.allow_large_p});
}

Fp2Element parse_element(const std::string& text, const Field& field, const char* flag) {
  if (text.empty()) return field.zero();
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return field.element(std::stol(text), 0);
    return field.element(std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + " expects k1,k2");
  }
}

RoundConfig round_config(const Options& o, const Field& field) {
  if (o.parties < 1) throw UsageError("--parties must be at least 1");
  if (o.rounds < 1) throw UsageError("--rounds must be at least 1");
  if (!(o.test_fraction >= 0.0 && o.test_fraction <= 1.0)) {
    throw UsageError("--test-fraction must lie in [0, 1]");
  }
  RoundConfig config{field};
  config.n_parties = static_cast<std::size_t>(o.parties);
  config.master_seed = o.seed;
  config.test_fraction = o.test_fraction;
  return config;
}

enum class Format { Human, Json, Csv };

Format machine_format(const Options& o) {
  if (o.format.empty()) return o.output.empty() ? Format::Human : Format::Json;
  if (o.format == "json") return Format::Json;
  if (o.format == "csv") return Format::Csv;
  throw UsageError("--format must be json or csv");
}

/// Human text goes to `out` unless a machine format is requested for stdout.
void emit(const Options& o, std::ostream& out, const std::string& human, const Json& json,
          const CsvTable& csv) {
  const Format fmt = machine_format(o);
  std::string machine;
  if (fmt == Format::Json) machine = json.dump(2) + "\n";
  if (fmt == Format::Csv) machine = csv.str();
  if (!o.output.empty()) {
    write_text(o.output, machine);
    out << human;
  } else if (fmt == Format::Human) {
    out << human;
  } else {
    out << machine;
  }
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string poly_text(const Field& f) {
  return "x^2+" + std::to_string(f.poly().b) + "x+" + std::to_string(f.poly().c);
}

// --- verify ---------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const Field field = make_field(o);
  const auto unbiased = verify_unbiased(field);
  Rng rng(derive_seed(o.seed, 0, 0));
  const auto gens = build_generators(field);
  const auto cyc = verify_cyclicity(field, gens, rng, static_cast<std::size_t>(o.samples));
  const bool pass = unbiased.pass && cyc.pass;

  std::ostringstream h;
  h << "field: p=" << field.p() << " f=" << poly_text(field) << " d=" << field.d() << "\n";
  if (unbiased.pass) {
    h << unbiased.bases << " bases mutually unbiased (" << unbiased.cross_pairs
      << " cross pairs, worst deviation " << std::scientific << std::setprecision(2)
      << unbiased.worst_cross_deviation << ", worst orthonormality deviation "
      << unbiased.worst_within_deviation << ")\n"
      << std::defaultfloat;
  } else {
    h << "unbiasedness FAILED: " << unbiased.failure.value_or("?") << "\n";
  }
  if (cyc.pass) {
    h << "cyclicity holds on " << cyc.labels_checked << " labels; group law on "
      << cyc.group_law_checks << " samples\n";
  } else {
    h << "cyclicity FAILED: " << cyc.counterexample.value_or("?") << "\n";
  }
  h << (pass ? "PASS" : "FAIL") << "\n";

  Json j{{"command", "verify"},
         {"field", to_json(field)},
         {"unbiased", to_json(unbiased)},
         {"cyclicity", to_json(cyc)},
         {"pass", pass}};
  CsvTable csv{{"check", "pass", "detail"}, {}};
  csv.rows.push_back({"unbiased", unbiased.pass ? "true" : "false",
                      std::to_string(unbiased.bases) + " bases"});
  csv.rows.push_back({"cyclicity", cyc.pass ? "true" : "false",
                      std::to_string(cyc.labels_checked) + " labels"});
  emit(o, out, h.str(), j, csv);
  return pass ? kExitOk : kExitFailure;
}

// --- run ------------------------------------------------------------------

std::unique_ptr<std::ofstream> open_transcripts(const Options& o) {
  if (o.transcripts.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(o.transcripts, std::ios::binary | std::ios::trunc);
  if (!*f) throw IoError("cannot open " + o.transcripts + " for writing");
  return f;
}

AggregateStats run_with_transcripts(const Options& o, const RoundConfig& config) {
  auto sink_file = open_transcripts(o);
  TranscriptSink sink;
  if (sink_file) {
    *sink_file << Json{{"header", transcript_header(config.field, config.n_parties,
                                                    config.master_seed)}}
                      .dump()
               << '\n';
    sink = [&](const RoundTranscript& t) { *sink_file << transcript_record(t).dump() << '\n'; };
  }
  auto stats = run_many(config, static_cast<std::uint64_t>(o.rounds), sink);
  if (sink_file && !*sink_file) throw IoError("failed writing " + o.transcripts);
  return stats;
}

int cmd_run(const Options& o, std::ostream& out) {
  const Field field = make_field(o);
  const RoundConfig config = round_config(o, field);
  const auto stats = run_with_transcripts(o, config);

  std::ostringstream h;
  h << "p=" << field.p() << " f=" << poly_text(field) << " N=" << config.n_parties
    << " rounds=" << stats.rounds << " seed=" << o.seed << "\n"
    << "passed consistency test: " << stats.undetected() << "/" << stats.rounds << "\n"
    << "test rounds: " << stats.test_rounds << ", key rounds: " << stats.key_rounds << "\n"
    << "key histogram:";
  for (const auto& [idx, count] : stats.key_histogram) {
    h << ' ' << field.format(field.from_index(static_cast<std::int64_t>(idx))) << '=' << count;
  }
  h << "\n";

  Json j{{"command", "run"},
         {"header", transcript_header(field, config.n_parties, o.seed)},
         {"config", {{"rounds", o.rounds}, {"test_fraction", o.test_fraction}}},
         {"stats", to_json(stats, field)}};
  CsvTable csv{{"p", "b", "c", "N", "seed", "rounds", "detected", "undetected", "test_rounds",
                "key_rounds"},
               {}};
  csv.rows.push_back({std::to_string(field.p()), std::to_string(field.poly().b),
                      std::to_string(field.poly().c), std::to_string(config.n_parties),
                      std::to_string(o.seed), std::to_string(stats.rounds),
                      std::to_string(stats.detected), std::to_string(stats.undetected()),
                      std::to_string(stats.test_rounds), std::to_string(stats.key_rounds)});
  emit(o, out, h.str(), j, csv);
  return kExitOk;
}

// --- attack ---------------------------------------------------------------

struct Comparison {
  std::string metric;
  Rational analytic;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

AttackModel parse_attack(const Options& o, const Field& field, Rng& rng) {
  std::optional<std::size_t> link;
  if (o.link >= 0) {
    if (o.link > o.parties) throw UsageError("--link must lie in 0..N");
    link = static_cast<std::size_t>(o.link);
  }
  if (o.attack == "none") return NoAttack{};
  if (o.attack == "intercept") {
    InterceptResend ir;
    ir.position = link;
    if (o.basis_pool == "quadratic") {
      ir.pool = BasisPool::QuadraticOnly;
    } else if (o.basis_pool == "all") {
      ir.pool = BasisPool::AllBases;
    } else {
      throw UsageError("--basis-pool must be quadratic or all");
    }
    return ir;
  }
  if (o.attack.rfind("dishonest", 0) == 0) {
    std::int64_t k = 1;
    if (o.attack.size() > 9) {
      if (o.attack[9] != ':') throw UsageError("--attack dishonest:k expects an integer k");
      try {
        std::size_t used = 0;
        const std::string num = o.attack.substr(10);
        k = std::stoll(num, &used);
        if (used != num.size()) throw UsageError("--attack dishonest:k expects an integer k");
      } catch (const std::logic_error&) {
        throw UsageError("--attack dishonest:k expects an integer k");
      }
    }
    if (k < 1 || k > o.parties) throw UsageError("coalition size must lie in 1..N");
    DishonestCoalition dc;
    for (std::int64_t m = 1; m <= k; ++m) dc.members.push_back(static_cast<std::size_t>(m));
    if (o.dishonest_mode == "guess") {
      dc.mode = CoalitionMode::AnnounceCorrectAndGuess;
    } else if (o.dishonest_mode == "wrong") {
      dc.mode = CoalitionMode::AnnounceWrong;
    } else {
      throw UsageError("--dishonest-mode must be guess or wrong");
    }
    return dc;
  }
  if (o.attack == "entangle") {
    EntangleMeasure em;
    em.position = link;
    em.ancilla_dim = o.ancilla_dim > 0 ? static_cast<std::size_t>(o.ancilla_dim) : field.d();
    if (o.ancilla == "random") {
      em.phi = random_ancillas(field, em.ancilla_dim, rng);
    } else if (o.ancilla == "identical") {
      em.phi = identical_ancillas(field, em.ancilla_dim, rng);
    } else if (o.ancilla == "orthogonal") {
      if (em.ancilla_dim != field.d()) throw UsageError("orthogonal ancillas need --ancilla-dim p^2");
      em.phi = orthogonal_ancillas(field);
    } else {
      throw UsageError("--ancilla must be random, identical or orthogonal");
    }
    return em;
  }
  throw UsageError("--attack must be none, intercept, dishonest[:k] or entangle");
}

/// Converts a probability computed in floating point to a rational with a
/// fixed 1e-12 grid, so it renders deterministically.
Rational approx_rational(double v) {
  const auto scaled = static_cast<long long>(std::llround(v * 1e12));
  return Rational(scaled) / Rational(1000000000000LL);
}

int cmd_attack(const Options& o, std::ostream& out) {
  const Field field = make_field(o);
  RoundConfig config = round_config(o, field);
  Rng setup(derive_seed(o.seed, UINT64_MAX, 0));
  config.adversary = parse_attack(o, field, setup);
  const auto stats = run_with_transcripts(o, config);
  const auto rates = theoretical_rates(field.p(), 1);
  const Rational one{1};

  std::vector<Comparison> comps;
  std::string detail;
  if (std::holds_alternative<NoAttack>(config.adversary)) {
    comps.push_back({"detection_rate", Rational(0), stats.detected, stats.rounds});
  } else if (const auto* ir = std::get_if<InterceptResend>(&config.adversary)) {
    const bool all = ir->pool == BasisPool::AllBases;
    const Rational pool_size{field.d() + (all ? 1 : 0)};
    detail = all ? "pool=all" : "pool=quadratic";
    comps.push_back({"undetected_rate",
                     all ? rates.intercept_undetected_all : rates.intercept_undetected_quadratic,
                     stats.undetected(), stats.rounds});
    comps.push_back({"basis_correct_rate", one / pool_size, stats.eve_basis_correct, stats.rounds});
    comps.push_back({"detected_given_wrong_basis", rates.intercept_detect_given_wrong,
                     stats.detected_given_wrong_basis, stats.eve_basis_wrong});
    comps.push_back({"detected_given_correct_basis", Rational(0),
                     stats.detected_given_correct_basis, stats.eve_basis_correct});
  } else if (const auto* dc = std::get_if<DishonestCoalition>(&config.adversary)) {
    detail = "k=" + std::to_string(dc->members.size());
    if (dc->mode == CoalitionMode::AnnounceWrong) {
      detail += " mode=wrong";
      comps.push_back({"detection_rate", one, stats.detected, stats.rounds});
    } else {
      detail += " mode=guess";
      const bool whole = dc->members.size() == config.n_parties;
      comps.push_back({"guess_success", whole ? one : rates.guess_success, stats.adversary_success,
                       stats.rounds});
      comps.push_back({"detection_rate", Rational(0), stats.detected, stats.rounds});
    }
  } else if (const auto* em = std::get_if<EntangleMeasure>(&config.adversary)) {
    detail = "ancilla=" + o.ancilla + " dim=" + std::to_string(em->ancilla_dim);
    Rational analytic;
    if (o.ancilla == "identical") {
      analytic = 0;
    } else if (o.ancilla == "orthogonal") {
      analytic = Rational(field.d() - 1, field.d());
    } else {
      const auto rep =
          entangle_attack(field, em->phi, {BasisId::quadratic(field.zero()), field.zero()});
      analytic = approx_rational(rep.detection_probability);
    }
    comps.push_back({"detection_rate", analytic, stats.detected, stats.rounds});
  }

  std::ostringstream h;
  h << "attack=" << attack_name(config.adversary) << (detail.empty() ? "" : " " + detail)
    << " p=" << field.p() << " N=" << config.n_parties << " rounds=" << stats.rounds
    << " seed=" << o.seed << "\n";
  Json jcomps = Json::array();
  CsvTable csv{{"attack", "detail", "p", "N", "rounds", "metric", "analytic_exact", "analytic",
                "empirical", "trials", "z"},
               {}};
  for (const auto& c : comps) {
    const double analytic = static_cast<double>(c.analytic);
    const double empirical =
        c.trials ? static_cast<double>(c.hits) / static_cast<double>(c.trials) : 0.0;
    const double z = c.trials ? binomial_z(c.hits, c.trials, analytic) : 0.0;
    h << "  " << std::left << std::setw(30) << c.metric << " analytic " << to_string(c.analytic)
      << " (" << fixed(analytic) << ")  empirical " << fixed(empirical) << " over " << c.trials
      << "  z=" << fixed(z, 3) << "\n";
    jcomps.push_back(Json{{"metric", c.metric},
                          {"analytic_exact", to_string(c.analytic)},
                          {"analytic", analytic},
                          {"empirical", empirical},
                          {"hits", c.hits},
                          {"trials", c.trials},
                          {"z", z}});
    csv.rows.push_back({attack_name(config.adversary), detail, std::to_string(field.p()),
                        std::to_string(config.n_parties), std::to_string(stats.rounds), c.metric,
                        to_string(c.analytic), fixed(analytic, 12), fixed(empirical, 12),
                        std::to_string(c.trials), fixed(z, 6)});
  }
  if (std::holds_alternative<DishonestCoalition>(config.adversary)) {
    h << "  n-round success (1/d)^n with n=" << o.rounds << ": "
      << (o.rounds <= 8 ? to_string(theoretical_rates(field.p(), static_cast<std::uint64_t>(o.rounds)).n_round_success)
                        : "1/" + std::to_string(rates.d) + "^" + std::to_string(o.rounds))
      << "\n";
  }

  Json j{{"command", "attack"},
         {"header", transcript_header(field, config.n_parties, o.seed)},
         {"config",
          {{"attack", attack_name(config.adversary)},
           {"detail", detail},
           {"rounds", o.rounds},
           {"test_fraction", o.test_fraction}}},
         {"analytic", to_json(rates)},
         {"empirical", to_json(stats, field)},
         {"comparisons", std::move(jcomps)}};
  emit(o, out, h.str(), j, csv);
  return kExitOk;
}

// --- example --------------------------------------------------------------

int cmd_example(const Options& o, std::ostream& out, std::ostream& err) {
  const Field field = make_field(o, example2::kPoly);
  RoundTranscript t{field};
  try {
    t = replay_example2(field);
  } catch (const GoldenFixtureError& e) {
    err << "fixture mismatch: " << e.what() << "\n";
    return kExitFailure;
  }
  const auto& ref = example2::reference();
  const auto gens = build_generators(field);

  std::ostringstream h;
  Json checks = Json::array();
  CsvTable csv{{"quantity", "computed", "reference", "match"}, {}};
  auto row = [&](const std::string& name, const std::string& got, const std::string& want) {
    h << "  " << std::left << std::setw(5) << name << " = " << got;
    if (got != want) h << "   (reference " << want << ")";
    h << "\n";
    checks.push_back(Json{{"quantity", name}, {"computed", got}, {"reference", want},
                          {"match", got == want}});
    csv.rows.push_back({name, got, want, got == want ? "true" : "false"});
  };
  auto diag = [&](const std::vector<std::uint32_t>& e) {
    return DiagonalPhaseOp(field, e).symbolic();
  };

  h << "(3,3) threshold round over p=3, f=" << poly_text(field) << "\n";
  h << "generators:\n";
  row("A1", gens.a1.symbolic(), diag(ref.a1));
  row("A2", gens.a2.symbolic(), diag(ref.a2));
  row("B1", gens.b1.symbolic(), diag(ref.b1));
  row("B2", gens.b2.symbolic(), diag(ref.b2));
  row("a", std::to_string(gens.a.value), std::to_string(ref.a));
  row("b", std::to_string(gens.b.value), std::to_string(ref.b));
  row("c", field.format(gens.c), field.format(ref.c));
  h << "rounds:\n";
  for (std::size_t k = 0; k <= t.n_parties; ++k) {
    const std::string who = k == 0 ? "Alice" : "Bob" + std::to_string(k);
    h << "  " << who << ": alpha=" << field.format(t.alpha[k])
      << " beta=" << field.format(t.beta[k]) << "\n";
    row("U" + std::to_string(k), format_factors(t.unitaries[k]), ref.unitaries[k]);
    const auto& psi = std::get<PhaseState>(t.transit_states[k]);
    row("psi" + std::to_string(k), format_phase_state(psi),
        format_phase_state(PhaseState(field, ref.psi[k])));
  }
  h << "measurement, testing, recovery:\n";
  row("J", field.format(t.J), field.format(ref.J));
  row("h", field.format(t.h), field.format(ref.h));
  row("eq5", t.eq5_pass ? "holds" : "fails", "holds");
  row("key", field.format(*t.key), field.format(ref.key));
  h << "key = " << field.format(*t.key) << "\n";

  Json j{{"command", "example"},
         {"transcript", to_json(t)},
         {"checks", std::move(checks)},
         {"pass", true}};
  emit(o, out, h.str(), j, csv);
  return kExitOk;
}

// --- ops ------------------------------------------------------------------

int cmd_ops(const Options& o, std::ostream& out) {
  const Field field = make_field(o);
  const auto gens = build_generators(field);
  const Fp2Element alpha = parse_element(o.alpha, field, "--alpha");
  const Fp2Element beta = parse_element(o.beta, field, "--beta");
  const auto u = build_u(gens, alpha, beta);
  const auto factors = unitary_factors(field, alpha, beta);

  std::ostringstream h;
  h << "p=" << field.p() << " f=" << poly_text(field) << " a=" << gens.a.value
    << " b=" << gens.b.value << " c=" << field.format(gens.c) << "\n"
    << "A1 = " << gens.a1.symbolic() << "\n"
    << "A2 = " << gens.a2.symbolic() << "\n"
    << "B1 = " << gens.b1.symbolic() << "\n"
    << "B2 = " << gens.b2.symbolic() << "\n"
    << "U(" << field.format(alpha) << ", " << field.format(beta) << ") = " << format_factors(factors)
    << " = " << u.symbolic() << "\n";

  Json j{{"command", "ops"},
         {"field", to_json(field)},
         {"a", gens.a.value},
         {"b", gens.b.value},
         {"c", to_json(gens.c)},
         {"A1", to_json(gens.a1)},
         {"A2", to_json(gens.a2)},
         {"B1", to_json(gens.b1)},
         {"B2", to_json(gens.b2)},
         {"U", {{"alpha", to_json(alpha)},
                {"beta", to_json(beta)},
                {"factors", format_factors(factors)},
                {"operator", to_json(u)}}}};
  CsvTable csv{{"operator", "exponents"}, {}};
  auto exps = [](const DiagonalPhaseOp& op) {
    std::string s;
    for (auto e : op.exponents()) s += (s.empty() ? "" : " ") + std::to_string(e);
    return s;
  };
  csv.rows = {{"A1", exps(gens.a1)}, {"A2", exps(gens.a2)}, {"B1", exps(gens.b1)},
              {"B2", exps(gens.b2)}, {"U", exps(u)}};
  emit(o, out, h.str(), j, csv);
  return kExitOk;
}

void add_field_options(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "Odd prime p (dimension d = p^2)")->capture_default_str();
  sub->add_option("--poly", o.poly, "Irreducible x^2 + b x + c given as b,c");
  sub->add_flag("--allow-large-p", o.allow_large_p, "Lift the p <= 31 bound");
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--output", o.output, "Write the machine-readable report to this path");
  sub->add_option("--format", o.format, "Report format: json or csv");
  sub->add_flag("-v,--verbose", o.verbose, "More output");
}

void add_round_options(CLI::App* sub, Options& o) {
  sub->add_option("--parties", o.parties, "Number of participants N")->capture_default_str();
  sub->add_option("--rounds", o.rounds, "Number of rounds")->capture_default_str();
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub->add_option("--test-fraction", o.test_fraction, "Fraction of rounds used for testing")
      ->capture_default_str();
  sub->add_option("--transcripts", o.transcripts, "Write line-delimited round transcripts here");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Threshold secret sharing over p^2-dimensional qudits"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Check unbiasedness and the cycling operators");
  add_field_options(verify, o);
  add_output_options(verify, o);
  verify->add_option("--seed", o.seed, "Seed for group-law sampling")->capture_default_str();
  verify->add_option("--samples", o.samples, "Group-law samples")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run honest protocol rounds");
  add_field_options(run, o);
  add_round_options(run, o);
  add_output_options(run, o);

  auto* attack = app.add_subcommand("attack", "Run attacked rounds against the analytic rates");
  add_field_options(attack, o);
  add_round_options(attack, o);
  add_output_options(attack, o);
  attack->add_option("--attack", o.attack, "none | intercept | dishonest[:k] | entangle")
      ->capture_default_str();
  attack->add_option("--basis-pool", o.basis_pool, "Eve's bases: quadratic or all")
      ->capture_default_str();
  attack->add_option("--link", o.link, "Attacked link 0..N (default: uniform per round)");
  attack->add_option("--dishonest-mode", o.dishonest_mode, "guess or wrong")->capture_default_str();
  attack->add_option("--ancilla", o.ancilla, "random | identical | orthogonal")
      ->capture_default_str();
  attack->add_option("--ancilla-dim", o.ancilla_dim, "Ancilla dimension (default p^2)");

  auto* example = app.add_subcommand("example", "Replay the worked (3,3) example");
  add_field_options(example, o);
  add_output_options(example, o);

  auto* ops = app.add_subcommand("ops", "Print the generators and a cycling unitary");
  add_field_options(ops, o);
  add_output_options(ops, o);
  ops->add_option("--alpha", o.alpha, "alpha as k1,k2");
  ops->add_option("--beta", o.beta, "beta as k1,k2");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (o.samples < 0) {
    err << "usage error: --samples must be non-negative\n";
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*run) {
      if (o.parties < 1) throw UsageError("--parties must be at least 1");
      return cmd_run(o, out);
    }
    if (*attack) return cmd_attack(o, out);
    if (*example) return cmd_example(o, out, err);
    if (*ops) return cmd_ops(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PrimeError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ReducibleError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qss::cli
