#include "qss/operators.hpp"

#include <algorithm>
#include <sstream>

#include "qss/error.hpp"

namespace qss {

DiagonalPhaseOp::DiagonalPhaseOp(Field field, std::vector<std::uint32_t> exponents)
    : field_(field), exponents_(std::move(exponents)) {
  if (exponents_.size() != field_.d()) {
    throw RangeError("diagonal operator needs " + std::to_string(field_.d()) + " exponents");
  }
  for (auto e : exponents_) {
    if (e >= field_.p()) throw RangeError("operator exponent " + std::to_string(e) + " not reduced");
  }
}

DiagonalPhaseOp DiagonalPhaseOp::identity(const Field& field) {
  return DiagonalPhaseOp(field, std::vector<std::uint32_t>(field.d(), 0));
}

bool DiagonalPhaseOp::is_identity() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

std::string DiagonalPhaseOp::symbolic() const {
  std::ostringstream os;
  os << "diag(";
  for (std::size_t k = 0; k < exponents_.size(); ++k) {
    if (k) os << ", ";
    const auto e = exponents_[k];
    if (e == 0) {
      os << '1';
    } else if (e == 1) {
      os << 'w';
    } else {
      os << "w^" << e;
    }
  }
  os << ')';
  return os.str();
}

DiagonalPhaseOp compose(const DiagonalPhaseOp& x, const DiagonalPhaseOp& y) {
  if (!(x.field() == y.field())) throw ContextError("composing operators over different fields");
  const auto p = x.field().p();
  std::vector<std::uint32_t> out(x.exponents().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (x.exponents()[k] + y.exponents()[k]) % p;
  return DiagonalPhaseOp(x.field(), std::move(out));
}

DiagonalPhaseOp op_pow(const DiagonalPhaseOp& x, std::int64_t n) {
  // Exponents live in Z_p, so x^n = diag(w^{n e_k}).
  const FpElement m = x.field().fp(n);
  std::vector<std::uint32_t> out(x.exponents().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = x.field().fp_mul(m, FpElement{x.exponents()[k]}).value;
  }
  return DiagonalPhaseOp(x.field(), std::move(out));
}

PhaseState apply(const DiagonalPhaseOp& op, const PhaseState& s) {
  if (!(op.field() == s.field())) throw ContextError("operator and state over different fields");
  const auto p = s.field().p();
  std::vector<std::uint32_t> out(s.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (op.exponents()[k] + s.exponents()[k]) % p;
  return PhaseState(s.field(), std::move(out));
}

DenseState apply_dense(const DiagonalPhaseOp& op, const DenseState& s) {
  if (s.system_dim() != op.field().d()) {
    throw ContextError("dense state dimension does not match operator");
  }
  const auto p = op.field().p();
  const std::size_t anc = s.ancilla_dim();
  std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
  for (std::size_t k = 0; k < s.system_dim(); ++k) {
    const Complex phase = omega_power(p, op.exponents()[k]);
    for (std::size_t e = 0; e < anc; ++e) out[k * anc + e] *= phase;
  }
  return DenseState(std::move(out), anc);
}

QuditState apply(const DiagonalPhaseOp& op, const QuditState& s) {
  if (const auto* phase = std::get_if<PhaseState>(&s)) return qss::apply(op, *phase);
  return apply_dense(op, std::get<DenseState>(s));
}

GeneratorSet build_generators(const Field& field) {
  const std::int64_t pm1 = static_cast<std::int64_t>(field.p()) - 1;
  const Fp2Element c = field.sub(field.theta(), field.element(pm1, 0));
  const std::size_t d = field.d();
  std::vector<std::uint32_t> a1(d), a2(d), b1(d), b2(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Fp2Element k = field.from_index(static_cast<std::int64_t>(i));
    const Fp2Element k_sq = field.mul(k, k);
    a1[i] = field.trace(k).value;
    a2[i] = field.trace(field.mul(c, k)).value;
    b1[i] = field.trace(k_sq).value;
    b2[i] = field.trace(field.mul(c, k_sq)).value;
  }
  const FpElement a =
      field.fp_sub(field.trace(field.theta()), field.trace(field.element(pm1, 0)));
  const FpElement b = field.fp_sub(field.trace(field.theta_sq()),
                                   field.trace(field.element(0, pm1)));
  return GeneratorSet{DiagonalPhaseOp(field, std::move(a1)), DiagonalPhaseOp(field, std::move(a2)),
                      DiagonalPhaseOp(field, std::move(b1)), DiagonalPhaseOp(field, std::move(b2)),
                      c, a, b};
}

UnitaryFactors unitary_factors(const Field& field, const Fp2Element& alpha,
                               const Fp2Element& beta) {
  field.check(alpha);
  field.check(beta);
  const std::int64_t pm1 = static_cast<std::int64_t>(field.p()) - 1;
  const std::int64_t x1 = alpha.k1.value, y1 = alpha.k2.value;
  const std::int64_t x2 = beta.k1.value, y2 = beta.k2.value;
  return UnitaryFactors{field.fp(y1).value, field.fp(pm1 * y1 + x1).value, field.fp(y2).value,
                        field.fp(pm1 * y2 + x2).value};
}

std::string format_factors(const UnitaryFactors& f) {
  std::ostringstream os;
  auto term = [&](const char* name, std::uint32_t power) {
    if (power == 0) return;
    if (os.tellp() > 0) os << ' ';
    os << name;
    if (power > 1) os << '^' << power;
  };
  term("A2", f.a2);
  term("A1", f.a1);
  term("B2", f.b2);
  term("B1", f.b1);
  const auto s = os.str();
  return s.empty() ? "I" : s;
}

DiagonalPhaseOp build_u(const GeneratorSet& gens, const Fp2Element& alpha,
                        const Fp2Element& beta) {
  const Field& field = gens.a1.field();
  const UnitaryFactors f = unitary_factors(field, alpha, beta);
  DiagonalPhaseOp u = op_pow(gens.a2, f.a2);
  u = compose(u, op_pow(gens.a1, f.a1));
  u = compose(u, op_pow(gens.b2, f.b2));
  return compose(u, op_pow(gens.b1, f.b1));
}

CyclicityReport verify_cyclicity(const Field& field, const GeneratorSet& gens, Rng& rng,
                                 std::size_t group_law_samples) {
  CyclicityReport report;
  const auto elems = field.elements();
  const Fp2Element one = field.one();
  const auto pm1 = field.p() - 1;

  auto fail = [&](const std::string& what) {
    if (report.pass) report.counterexample = what;
    report.pass = false;
  };
  auto where = [&](const Fp2Element& l, const Fp2Element& j) {
    return " at l=" + field.format(l) + ", j=" + field.format(j);
  };

  for (const auto& j : elems) {
    for (const auto& l : elems) {
      const PhaseState v = mub_vector(field, j, l);
      if (apply(gens.a1, v) != mub_vector(field, j, field.add(l, one))) fail("A1 shift" + where(l, j));
      if (apply(gens.a2, v) != mub_vector(field, j, field.add(l, gens.c))) fail("A2 shift" + where(l, j));
      if (apply(gens.b1, v) != mub_vector(field, field.add(j, one), l)) fail("B1 shift" + where(l, j));
      if (apply(gens.b2, v) != mub_vector(field, field.add(j, gens.c), l)) fail("B2 shift" + where(l, j));
      ++report.labels_checked;

      // Successor in index order: A1 / B1 off the last column, A2 / B2 on it.
      const auto& l_step = l.k1.value == pm1 ? gens.a2 : gens.a1;
      if (apply(l_step, v) != mub_vector(field, j, field.index_successor(l))) {
        fail("restricted subscript step" + where(l, j));
      }
      const auto& j_step = j.k1.value == pm1 ? gens.b2 : gens.b1;
      if (apply(j_step, v) != mub_vector(field, field.index_successor(j), l)) {
        fail("restricted superscript step" + where(l, j));
      }
      report.restricted_checks += 2;
    }
  }

  for (std::size_t s = 0; s < group_law_samples; ++s) {
    const Fp2Element a = rng.element(field), b = rng.element(field);
    const Fp2Element a2 = rng.element(field), b2 = rng.element(field);
    const auto lhs = compose(build_u(gens, a, b), build_u(gens, a2, b2));
    const auto rhs = build_u(gens, field.add(a, a2), field.add(b, b2));
    if (lhs != rhs) {
      fail("group law at alpha=" + field.format(a) + ", beta=" + field.format(b) +
           ", alpha'=" + field.format(a2) + ", beta'=" + field.format(b2));
    }
    ++report.group_law_checks;
  }
  return report;
}

}  // namespace qss
