// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/cli.hpp"
#include "qss/error.hpp"
#include "qss/protocol.hpp"

using namespace qss;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

Field example_field() { return Field::make(3, example2::kPoly); }

// --- 1 ----------------------------------------------------------------------

Outcome golden_fixture() {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    const Field f = example_field();
    const auto& ref = example2::reference();
    const auto g = build_generators(f);
    auto same = [](const DiagonalPhaseOp& op, const std::vector<std::uint32_t>& want) {
      return std::equal(op.exponents().begin(), op.exponents().end(), want.begin(), want.end());
    };
    // A1 = diag(1, w^2, w, w^2, w, 1, w, 1, w^2) written out independently.
    const std::vector<std::uint32_t> a1{0, 2, 1, 2, 1, 0, 1, 0, 2};
    if (!same(g.a1, a1) || !same(g.a1, ref.a1) || !same(g.a2, ref.a2) || !same(g.b1, ref.b1) ||
        !same(g.b2, ref.b2)) {
      return {false, "generator diagonals differ"};
    }
    const auto t = replay_example2(f);
    if (t.J != f.element(2, 0) || t.h != f.theta() || recover_key(t) != f.element(2, 0)) {
      return {false, "J, h or key differ"};
    }
  } catch (const GoldenFixtureError& e) {
    return {false, e.what()};
  }
  const double secs = seconds_since(t0);
  o.pass = secs < 1.0;
  o.detail = "generators, psi_0..psi_3, J=2, h=t, key=2 in " + fmt(secs) + " s (limit 1 s)";
  return o;
}

// --- 2 ----------------------------------------------------------------------

Outcome mub_completeness() {
  Outcome o;
  std::ostringstream d;
  for (std::int64_t p : {3, 5, 7}) {
    const auto t0 = Clock::now();
    const auto r = verify_unbiased(Field::make(p));
    const double secs = seconds_since(t0);
    const bool ok = r.pass && r.bases == static_cast<std::size_t>(p * p + 1) &&
                    r.worst_cross_deviation <= 1e-9 && r.worst_within_deviation <= 1e-9 &&
                    (p != 7 || secs < 30.0);
    o.pass &= ok;
    d << "p=" << p << ": " << r.bases << " bases, cross dev " << r.worst_cross_deviation
      << ", orth dev " << r.worst_within_deviation << ", " << fmt(secs, 2) << " s; ";
  }
  o.detail = d.str();
  o.detail.resize(o.detail.size() - 2);
  return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome cyclicity() {
  Outcome o;
  std::size_t checks = 0;
  for (const Field& f : {example_field(), Field::make(3)}) {
    const auto g = build_generators(f);
    for (const auto& alpha : f.elements()) {
      for (const auto& beta : f.elements()) {
        const auto u = build_u(g, alpha, beta);
        for (const auto& j : f.elements()) {
          for (const auto& l : f.elements()) {
            const auto label = identify(qss::apply(u, mub_vector(f, j, l)));
            ++checks;
            if (!label || label->basis != BasisId::quadratic(f.add(j, beta)) ||
                label->l != f.add(l, alpha)) {
              return {false, "label action fails at alpha=" + f.format(alpha) +
                                 " beta=" + f.format(beta)};
            }
          }
        }
      }
    }
  }
  std::size_t group = 0;
  for (std::int64_t p : {5, 7}) {
    const Field f = Field::make(p);
    const auto g = build_generators(f);
    Rng rng(derive_seed(3, 0, static_cast<std::uint64_t>(p)));
    for (int i = 0; i < 1000; ++i) {
      const auto a = rng.element(f), b = rng.element(f), a2 = rng.element(f), b2 = rng.element(f);
      ++group;
      if (compose(build_u(g, a, b), build_u(g, a2, b2)) != build_u(g, f.add(a, a2), f.add(b, b2))) {
        return {false, "group law fails at p=" + std::to_string(p)};
      }
    }
  }
  o.detail = std::to_string(checks) + " label actions at p=3 (two moduli), " +
             std::to_string(group) + " group-law pairs at p=5,7";
  return o;
}

// --- 4 ----------------------------------------------------------------------

Outcome honest_protocol() {
  const Field f = Field::make(3);
  RoundConfig cfg{f};
  cfg.n_parties = 5;
  cfg.master_seed = 4;
  constexpr std::uint64_t kRounds = 10000;
  std::uint64_t key_ok = 0;
  std::vector<std::uint64_t> hist(f.d(), 0);
  const auto stats = run_many(cfg, kRounds, [&](const RoundTranscript& t) {
    if (!t.eq5_pass) return;
    const auto key = recover_key(t);
    if (key == f.sum(std::span(t.alpha).subspan(1))) ++key_ok;
    ++hist[f.index(key)];
  });
  const double mean = kRounds / 9.0;
  const double sigma = std::sqrt(kRounds * (1.0 / 9.0) * (8.0 / 9.0));
  double worst = 0.0;
  for (auto c : hist) worst = std::max(worst, std::abs(static_cast<double>(c) - mean) / sigma);
  Outcome o;
  o.pass = stats.detected == 0 && key_ok == kRounds && worst < 4.0;
  o.detail = "consistency " + std::to_string(stats.rounds - stats.detected) + "/" +
             std::to_string(kRounds) + ", key correct " + std::to_string(key_ok) + "/" +
             std::to_string(kRounds) + ", worst histogram deviation " + fmt(worst, 2) +
             " sigma (limit 4)";
  return o;
}

// --- 5 ----------------------------------------------------------------------

Outcome intercept_resend_stats() {
  const Field f = Field::make(3);
  RoundConfig cfg{f};
  cfg.n_parties = 3;
  cfg.master_seed = 5;
  cfg.adversary = InterceptResend{std::nullopt, BasisPool::QuadraticOnly};
  constexpr std::uint64_t kRounds = 100000;
  const auto stats = run_many(cfg, kRounds);
  const auto rates = theoretical_rates(3, 1);
  const double undetected = rates.intercept_undetected_quadratic.convert_to<double>();
  const double given_wrong = rates.intercept_detect_given_wrong.convert_to<double>();
  const double z1 = binomial_z(stats.undetected(), kRounds, undetected);
  const double z2 = binomial_z(stats.detected_given_wrong_basis, stats.eve_basis_wrong, given_wrong);
  Outcome o;
  o.pass = std::abs(z1) < 3.0 && std::abs(z2) < 3.0;
  o.detail = "undetected " + fmt(static_cast<double>(stats.undetected()) / kRounds) + " vs " +
             to_string(rates.intercept_undetected_quadratic) + " (z=" + fmt(z1, 2) +
             "), detected|wrong basis " +
             fmt(static_cast<double>(stats.detected_given_wrong_basis) / stats.eve_basis_wrong) +
             " vs " + to_string(rates.intercept_detect_given_wrong) + " (z=" + fmt(z2, 2) + ")";
  return o;
}

// --- 6 ----------------------------------------------------------------------

Outcome dishonest_participant() {
  const Field f = Field::make(3);
  constexpr std::uint64_t kTrials = 100000;
  auto run = [&](std::vector<std::size_t> members, CoalitionMode mode) {
    RoundConfig cfg{f};
    cfg.n_parties = 4;
    cfg.master_seed = 6 + members.size();
    cfg.adversary = DishonestCoalition{std::move(members), mode};
    return run_many(cfg, kTrials);
  };
  const auto single = run({2}, CoalitionMode::AnnounceCorrectAndGuess);
  const auto block = run({1, 2, 3}, CoalitionMode::AnnounceCorrectAndGuess);
  const auto wrong = run({1, 4}, CoalitionMode::AnnounceWrong);

  const double z_single = binomial_z(single.adversary_success, kTrials, 1.0 / 9.0);
  const double z_block = binomial_z(block.adversary_success, kTrials, 1.0 / 9.0);
  const double z_two = two_proportion_z(block.adversary_success, kTrials, single.adversary_success,
                                        kTrials);

  bool exact = true;
  Rational expected(1);
  for (std::uint64_t n = 1; n <= 20; ++n) {
    expected /= 9;
    exact &= theoretical_rates(3, n).n_round_success == expected;
  }
  exact &= theoretical_rates(3, 5).n_round_success == Rational(1, 59049);

  Outcome o;
  o.pass = std::abs(z_single) < 3.0 && std::abs(z_block) < 3.0 && std::abs(z_two) < 3.0 &&
           single.detected == 0 && block.detected == 0 && wrong.detected == kTrials && exact;
  o.detail = "guess " + fmt(static_cast<double>(single.adversary_success) / kTrials) +
             " vs 1/9 (z=" + fmt(z_single, 2) + "), 3-block " +
             fmt(static_cast<double>(block.adversary_success) / kTrials) + " (z=" +
             fmt(z_block, 2) + ", vs single z=" + fmt(z_two, 2) + "), announce-wrong detected " +
             std::to_string(wrong.detected) + "/" + std::to_string(kTrials) +
             ", (1/9)^n exact for n<=20: " + (exact ? "yes" : "no");
  return o;
}

// --- 7 ----------------------------------------------------------------------

Outcome entangle_measure() {
  const Field f = Field::make(3);
  const std::size_t d = f.d();
  constexpr std::size_t kAncilla = 9;
  Rng rng(derive_seed(7, 0, 0));
  Outcome o;
  std::ostringstream detail;

  // Identical ancillas: no disturbance, product joint state.
  double worst_identical = 0.0;
  bool product = true;
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = identical_ancillas(f, kAncilla, rng);
    const MubLabel label{BasisId::quadratic(rng.element(f)), rng.element(f)};
    const auto r = entangle_attack(f, phi, label);
    worst_identical = std::max(worst_identical, r.detection_probability);
    product &= r.product_state && r.criterion_holds;
  }
  o.pass &= worst_identical <= 1e-9 && product;
  detail << "identical: max detection " << worst_identical << ", product " << (product ? "yes" : "no");

  // Random non-identical ancillas are always detectable.
  double min_random = 1.0;
  const auto g = build_generators(f);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto phi = random_ancillas(f, kAncilla, rng);
    const MubLabel label{BasisId::quadratic(rng.element(f)), rng.element(f)};
    const std::vector<DiagonalPhaseOp> remaining{build_u(g, rng.element(f), rng.element(f))};
    min_random = std::min(min_random, entangle_attack(f, phi, label, remaining).detection_probability);
  }
  o.pass &= min_random > 0.0;
  detail << "; 1000 random: min detection " << fmt(min_random, 4);

  // The residual conditions for every m != l pin each ancilla coordinate,
  // viewed as a function of k, to the kernel of the character matrix. That
  // kernel is the constant vectors, so all phi_k coincide.
  bool kernel_ok = true;
  for (const auto& l : f.elements()) {
    Eigen::MatrixXcd m(d - 1, d);
    std::size_t row = 0;
    for (const auto& mm : f.elements()) {
      if (mm == l) continue;
      const auto diff = f.sub(l, mm);
      for (std::size_t k = 0; k < d; ++k) {
        const auto kk = f.from_index(static_cast<std::int64_t>(k));
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k)) =
            omega_power(f.p(), f.trace(f.mul(diff, kk)).value);
      }
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    lu.setThreshold(1e-9);
    const Eigen::MatrixXcd ker = lu.kernel();
    if (ker.cols() != 1) {
      kernel_ok = false;
      break;
    }
    const auto c0 = ker(0, 0);
    for (Eigen::Index k = 1; k < ker.rows(); ++k) kernel_ok &= std::abs(ker(k, 0) - c0) <= 1e-9;
  }
  // And an ancilla family in that kernel passes the criterion.
  const auto same = identical_ancillas(f, kAncilla, rng);
  kernel_ok &= entangle_attack(f, same, {BasisId::quadratic(f.one()), f.theta()}).all_equal;
  o.pass &= kernel_ok;
  detail << "; residual criterion forces equal phi_k: " << (kernel_ok ? "yes" : "no");
  o.detail = detail.str();
  return o;
}

// --- 8 ----------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--p", "3"},
      {"run", "--p", "5", "--parties", "4", "--rounds", "300", "--seed", "8"},
      {"attack", "--attack", "intercept", "--rounds", "300", "--seed", "8"},
      {"attack", "--attack", "dishonest:2", "--rounds", "300", "--seed", "8"},
      {"attack", "--attack", "entangle", "--ancilla", "random", "--rounds", "300", "--seed", "8"},
      {"example", "--p", "3", "--poly", "1,2"},
  };
  const auto dir = std::filesystem::temp_directory_path() / "qss_acceptance";
  std::filesystem::create_directories(dir);
  std::size_t identical = 0;
  Outcome o;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string reports[2], transcripts[2], texts[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto report = dir / ("report" + std::to_string(rep) + ".json");
      const auto tr = dir / ("transcripts" + std::to_string(rep) + ".ndjson");
      std::vector<std::string> args{"qss"};
      args.insert(args.end(), commands[c].begin(), commands[c].end());
      args.insert(args.end(), {"--output", report.string()});
      const bool has_rounds = commands[c][0] == "run" || commands[c][0] == "attack";
      if (has_rounds) args.insert(args.end(), {"--transcripts", tr.string()});
      std::ostringstream out, err;
      if (cli::dispatch(args, out, err) != cli::kExitOk) {
        return {false, commands[c][0] + " failed: " + err.str()};
      }
      reports[rep] = slurp(report);
      transcripts[rep] = has_rounds ? slurp(tr) : "";
      texts[rep] = out.str();
    }
    if (!reports[0].empty() && reports[0] == reports[1] && transcripts[0] == transcripts[1] &&
        texts[0] == texts[1]) {
      ++identical;
    } else {
      o.pass = false;
    }
  }
  std::filesystem::remove_all(dir);
  o.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) +
             " commands byte-identical on repeat";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 golden fixture", golden_fixture},
      {"AC2 MUB completeness", mub_completeness},
      {"AC3 cyclicity", cyclicity},
      {"AC4 honest protocol", honest_protocol},
      {"AC5 intercept-resend", intercept_resend_stats},
      {"AC6 dishonest participant", dishonest_participant},
      {"AC7 entangle-and-measure", entangle_measure},
      {"AC8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed;
}
