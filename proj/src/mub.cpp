#include "qss/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qss/error.hpp"

namespace qss {

Complex omega_power(std::uint32_t p, std::int64_t e) {
  const auto m = static_cast<std::int64_t>(p);
  std::int64_t r = e % m;
  if (r < 0) r += m;
  if (r == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
  return std::polar(1.0, angle);
}

PhaseState::PhaseState(Field field, std::vector<std::uint32_t> exponents)
    : field_(field), exponents_(std::move(exponents)) {
  if (exponents_.size() != field_.d()) {
    throw RangeError("phase state needs " + std::to_string(field_.d()) + " exponents, got " +
                     std::to_string(exponents_.size()));
  }
  for (auto e : exponents_) {
    if (e >= field_.p()) throw RangeError("phase exponent " + std::to_string(e) + " not reduced");
  }
}

Complex PhaseState::amplitude(std::size_t k) const {
  return omega_power(field_.p(), exponents_.at(k)) / static_cast<double>(field_.p());
}

DenseState PhaseState::dense() const {
  std::vector<Complex> amps(exponents_.size());
  for (std::size_t k = 0; k < amps.size(); ++k) amps[k] = amplitude(k);
  return DenseState(std::move(amps));
}

DenseState::DenseState(std::vector<Complex> amplitudes, std::size_t ancilla_dim)
    : amplitudes_(std::move(amplitudes)), ancilla_dim_(ancilla_dim) {
  if (ancilla_dim_ == 0 || amplitudes_.empty() || amplitudes_.size() % ancilla_dim_ != 0) {
    throw RangeError("dense state size " + std::to_string(amplitudes_.size()) +
                     " incompatible with ancilla dimension " + std::to_string(ancilla_dim_));
  }
  const double n = norm_sq();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw NormalizationError("dense state has squared norm " + std::to_string(n));
  }
}

double DenseState::norm_sq() const {
  double n = 0.0;
  for (const auto& a : amplitudes_) n += std::norm(a);
  return n;
}

const Fp2Element& BasisId::j() const {
  if (!j_) throw RangeError("the computational basis has no quadratic label");
  return *j_;
}

PhaseState mub_vector(const Field& field, const Fp2Element& j, const Fp2Element& l) {
  field.check(j);
  field.check(l);
  std::vector<std::uint32_t> exps(field.d());
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const Fp2Element k = field.from_index(static_cast<std::int64_t>(i));
    const Fp2Element arg = field.add(field.mul(j, field.mul(k, k)), field.mul(l, k));
    exps[i] = field.trace(arg).value;
  }
  return PhaseState(field, std::move(exps));
}

DenseState computational_vector(const Field& field, const Fp2Element& l) {
  std::vector<Complex> amps(field.d(), Complex{0.0, 0.0});
  amps[field.index(l)] = 1.0;
  return DenseState(std::move(amps));
}

DenseState basis_vector(const Field& field, const BasisId& basis, const Fp2Element& l) {
  if (basis.is_computational()) return computational_vector(field, l);
  return mub_vector(field, basis.j(), l).dense();
}

std::vector<DenseState> basis_vectors(const Field& field, const BasisId& basis) {
  std::vector<DenseState> out;
  out.reserve(field.d());
  for (const auto& l : field.elements()) out.push_back(basis_vector(field, basis, l));
  return out;
}

std::vector<std::vector<DenseState>> all_bases(const Field& field) {
  std::vector<std::vector<DenseState>> out;
  out.reserve(field.d() + 1);
  for (const auto& j : field.elements()) out.push_back(basis_vectors(field, BasisId::quadratic(j)));
  out.push_back(basis_vectors(field, BasisId::computational()));
  return out;
}

Overlap::Overlap(std::uint32_t p, std::vector<std::uint64_t> counts)
    : p_(p), counts_(std::move(counts)), total_(0) {
  if (counts_.size() != p_) throw RangeError("overlap needs one count per residue");
  for (auto c : counts_) total_ += c;
}

bool Overlap::is_one() const { return total_ > 0 && counts_[0] == total_; }

bool Overlap::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(), [&](auto c) { return c == counts_[0]; });
}

Complex Overlap::value() const {
  if (is_zero()) return {0.0, 0.0};
  Complex acc{0.0, 0.0};
  for (std::uint32_t r = 0; r < p_; ++r) {
    acc += static_cast<double>(counts_[r]) * omega_power(p_, r);
  }
  return acc / static_cast<double>(total_);
}

Overlap overlap(const PhaseState& x, const PhaseState& y) {
  if (!(x.field() == y.field())) throw ContextError("overlap of states over different fields");
  const auto p = x.field().p();
  std::vector<std::uint64_t> counts(p, 0);
  const auto ex = x.exponents();
  const auto ey = y.exponents();
  for (std::size_t k = 0; k < ex.size(); ++k) ++counts[(ey[k] + p - ex[k]) % p];
  return Overlap(p, std::move(counts));
}

Complex inner(const DenseState& x, const DenseState& y) {
  if (x.size() != y.size()) throw RangeError("inner product of states with different lengths");
  Complex acc{0.0, 0.0};
  const auto ax = x.amplitudes();
  const auto ay = y.amplitudes();
  for (std::size_t k = 0; k < ax.size(); ++k) acc += std::conj(ax[k]) * ay[k];
  return acc;
}

namespace {

// Solves Tr(x*u1) = t1, Tr(x*u2) = t2 for x = x1 + x2*theta.
std::optional<Fp2Element> solve_trace_system(const Field& f, const Fp2Element& u1,
                                             const Fp2Element& u2, FpElement t1, FpElement t2) {
  const Fp2Element th = f.theta();
  const FpElement m11 = f.trace(u1);
  const FpElement m12 = f.trace(f.mul(th, u1));
  const FpElement m21 = f.trace(u2);
  const FpElement m22 = f.trace(f.mul(th, u2));
  const FpElement det = f.fp_sub(f.fp_mul(m11, m22), f.fp_mul(m12, m21));
  if (det.value == 0) return std::nullopt;
  const FpElement inv = f.fp_inverse(det);
  const FpElement x1 = f.fp_mul(inv, f.fp_sub(f.fp_mul(t1, m22), f.fp_mul(m12, t2)));
  const FpElement x2 = f.fp_mul(inv, f.fp_sub(f.fp_mul(m11, t2), f.fp_mul(t1, m21)));
  return Fp2Element{x1, x2};
}

}  // namespace

std::optional<MubLabel> identify(const PhaseState& x) {
  const Field& f = x.field();
  const auto e = x.exponents();
  if (e[0] != 0) return std::nullopt;

  // With q(k) = Tr(j k^2) + Tr(l k): the even part of q gives Tr(j k^2), the
  // odd part gives Tr(l k).
  const FpElement half = f.fp_inverse(f.fp(2));
  auto q = [&](const Fp2Element& k) { return FpElement{e[f.index(k)]}; };
  auto even = [&](const Fp2Element& k) { return f.fp_mul(half, f.fp_add(q(k), q(f.neg(k)))); };
  auto odd = [&](const Fp2Element& k) { return f.fp_mul(half, f.fp_sub(q(k), q(f.neg(k)))); };

  const Fp2Element one = f.one();
  const Fp2Element th = f.theta();
  const auto l = solve_trace_system(f, one, th, odd(one), odd(th));
  if (!l) return std::nullopt;

  auto j = solve_trace_system(f, one, f.mul(th, th), even(one), even(th));
  if (!j) {
    const Fp2Element k = f.add(one, th);
    j = solve_trace_system(f, one, f.mul(k, k), even(one), even(k));
  }
  if (!j) return std::nullopt;

  if (mub_vector(f, *j, *l) != x) return std::nullopt;
  return MubLabel{BasisId::quadratic(*j), *l};
}

UnbiasedReport verify_bases(std::span<const std::vector<DenseState>> bases) {
  UnbiasedReport report;
  report.bases = bases.size();
  if (bases.empty()) return report;
  const std::size_t dim = bases.front().size();
  report.vectors_per_basis = dim;
  const double target = 1.0 / static_cast<double>(dim);

  auto fail = [&](std::string what) {
    if (report.pass) report.failure = std::move(what);
    report.pass = false;
  };

  for (std::size_t a = 0; a < bases.size(); ++a) {
    if (bases[a].size() != dim) {
      fail("basis " + std::to_string(a) + " has " + std::to_string(bases[a].size()) + " vectors");
      return report;
    }
    for (std::size_t u = 0; u < dim; ++u) {
      for (std::size_t v = u; v < dim; ++v) {
        const Complex ip = inner(bases[a][u], bases[a][v]);
        const double dev = u == v ? std::abs(ip - 1.0) : std::norm(ip);
        report.worst_within_deviation = std::max(report.worst_within_deviation, dev);
        if (u != v) ++report.within_pairs;
        if (dev > kUnbiasedTolerance) {
          fail("basis " + std::to_string(a) + " vectors " + std::to_string(u) + "," +
               std::to_string(v) + " not orthonormal");
        }
      }
    }
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      for (std::size_t u = 0; u < dim; ++u) {
        for (std::size_t v = 0; v < dim; ++v) {
          const double dev = std::abs(std::norm(inner(bases[a][u], bases[b][v])) - target);
          report.worst_cross_deviation = std::max(report.worst_cross_deviation, dev);
          ++report.cross_pairs;
          if (dev > kUnbiasedTolerance) {
            fail("bases " + std::to_string(a) + "," + std::to_string(b) + " vectors " +
                 std::to_string(u) + "," + std::to_string(v) + " biased");
          }
        }
      }
    }
  }
  return report;
}

UnbiasedReport verify_unbiased(const Field& field) {
  const auto bases = all_bases(field);
  return verify_bases(bases);
}

std::vector<double> born_probabilities(const Field& field, const QuditState& state,
                                       const BasisId& basis) {
  const std::size_t d = field.d();
  std::vector<double> probs(d, 0.0);

  if (const auto* phase = std::get_if<PhaseState>(&state)) {
    if (!(phase->field() == field)) throw ContextError("state and basis over different fields");
    if (basis.is_computational()) {
      std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(d));
      return probs;
    }
    for (std::size_t m = 0; m < d; ++m) {
      const auto v = mub_vector(field, basis.j(), field.from_index(static_cast<std::int64_t>(m)));
      probs[m] = overlap(v, *phase).magnitude_sq();
    }
    return probs;
  }

  const auto& dense = std::get<DenseState>(state);
  if (dense.system_dim() != d) throw ContextError("dense state dimension does not match field");
  const std::size_t anc = dense.ancilla_dim();
  const auto amps = dense.amplitudes();
  if (basis.is_computational()) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t e = 0; e < anc; ++e) probs[k] += std::norm(amps[k * anc + e]);
    }
    return probs;
  }
  std::vector<Complex> projected(anc);
  for (std::size_t m = 0; m < d; ++m) {
    const auto v = mub_vector(field, basis.j(), field.from_index(static_cast<std::int64_t>(m)));
    std::fill(projected.begin(), projected.end(), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
      const Complex c = std::conj(v.amplitude(k));
      for (std::size_t e = 0; e < anc; ++e) projected[e] += c * amps[k * anc + e];
    }
    for (const auto& a : projected) probs[m] += std::norm(a);
  }
  return probs;
}

Measurement measure(const Field& field, const QuditState& state, const BasisId& basis, Rng& rng) {
  if (const auto* phase = std::get_if<PhaseState>(&state); phase && !basis.is_computational()) {
    if (const auto label = identify(*phase); label && label->basis == basis) {
      return {label->l, *phase, true};
    }
  }
  const auto probs = born_probabilities(field, state, basis);
  double total = 0.0;
  for (double pr : probs) total += pr;
  if (std::abs(total - 1.0) > 1e-9) {
    throw NormalizationError("Born probabilities sum to " + std::to_string(total));
  }
  const auto idx = rng.pick(probs);
  const Fp2Element outcome = field.from_index(static_cast<std::int64_t>(idx));
  if (basis.is_computational()) {
    return {outcome, computational_vector(field, outcome), false};
  }
  return {outcome, mub_vector(field, basis.j(), outcome), false};
}

}  // namespace qss
