#include "qss/serialize.hpp"

#include <fstream>
#include <sstream>

#include "qss/error.hpp"

namespace qss {

Json to_json(const Fp2Element& a) { return Json::array({a.k1.value, a.k2.value}); }

Json to_json(const Field& field) {
  return Json{{"p", field.p()}, {"b", field.poly().b}, {"c", field.poly().c}};
}

Json to_json(const PhaseState& s) {
  Json exps = Json::array();
  for (auto e : s.exponents()) exps.push_back(e);
  return Json{{"scale", "1/p"}, {"exponents", std::move(exps)}};
}

Json to_json(const DenseState& s) {
  Json amps = Json::array();
  for (const auto& a : s.amplitudes()) amps.push_back(Json::array({a.real(), a.imag()}));
  return Json{{"ancilla_dim", s.ancilla_dim()}, {"amplitudes", std::move(amps)}};
}

Json to_json(const QuditState& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

Json to_json(const DiagonalPhaseOp& op) {
  Json exps = Json::array();
  for (auto e : op.exponents()) exps.push_back(e);
  return Json{{"exponents", std::move(exps)}};
}

Json to_json(const BasisId& basis) {
  if (basis.is_computational()) return "computational";
  return Json{{"quadratic", to_json(basis.j())}};
}

Json to_json(const AttackEvent& event) {
  if (const auto* ir = std::get_if<InterceptRecord>(&event)) {
    Json j{{"type", "intercept"},
           {"link", ir->link},
           {"eve_basis", to_json(ir->eve_basis)},
           {"eve_outcome", to_json(ir->eve_outcome)}};
    if (ir->true_label) {
      j["true_basis"] = to_json(ir->true_label->basis);
      j["true_l"] = to_json(ir->true_label->l);
    }
    j["basis_correct"] = ir->basis_correct;
    return j;
  }
  if (const auto* dr = std::get_if<DishonestRecord>(&event)) {
    Json j{{"type", "dishonest"},
           {"members", dr->members},
           {"mode", dr->mode == CoalitionMode::AnnounceWrong ? "announce_wrong" : "guess"},
           {"true_block_sum", to_json(dr->true_block_sum)},
           {"announced_block_sum", to_json(dr->announced_block_sum)}};
    if (dr->guess) j["guess"] = to_json(*dr->guess);
    j["guess_correct"] = dr->guess_correct;
    return j;
  }
  const auto& er = std::get<EntangleRecord>(event);
  return Json{{"type", "entangle"}, {"link", er.link}, {"ancilla_dim", er.ancilla_dim}};
}

Json to_json(const UnbiasedReport& r) {
  Json j{{"pass", r.pass},
         {"bases", r.bases},
         {"vectors_per_basis", r.vectors_per_basis},
         {"cross_pairs", r.cross_pairs},
         {"within_pairs", r.within_pairs},
         {"worst_cross_deviation", r.worst_cross_deviation},
         {"worst_within_deviation", r.worst_within_deviation}};
  j["failure"] = r.failure ? Json(*r.failure) : Json(nullptr);
  return j;
}

Json to_json(const CyclicityReport& r) {
  Json j{{"pass", r.pass},
         {"labels_checked", r.labels_checked},
         {"restricted_checks", r.restricted_checks},
         {"group_law_checks", r.group_law_checks}};
  j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
  return j;
}

namespace {

Json rational(const Rational& r) {
  return Json{{"exact", to_string(r)}, {"value", static_cast<double>(r)}};
}

}  // namespace

Json to_json(const TheoreticalRates& r) {
  return Json{{"d", r.d},
              {"n_rounds", r.n_rounds},
              {"guess_success", rational(r.guess_success)},
              {"guess_failure", rational(r.guess_failure)},
              {"n_round_success", rational(r.n_round_success)},
              {"intercept_undetected_quadratic", rational(r.intercept_undetected_quadratic)},
              {"intercept_undetected_all", rational(r.intercept_undetected_all)},
              {"intercept_detect_given_wrong", rational(r.intercept_detect_given_wrong)}};
}

Json to_json(const EntangleReport& r) {
  return Json{{"detection_probability", r.detection_probability},
              {"honest_probability", r.honest_probability},
              {"max_residual", r.max_residual},
              {"criterion_holds", r.criterion_holds},
              {"all_equal", r.all_equal},
              {"product_state", r.product_state},
              {"eve_information", r.eve_information}};
}

Json to_json(const AggregateStats& s, const Field& field) {
  Json hist = Json::object();
  for (const auto& [idx, count] : s.key_histogram) {
    hist[field.format(field.from_index(static_cast<std::int64_t>(idx)))] = count;
  }
  return Json{{"rounds", s.rounds},
              {"detected", s.detected},
              {"undetected", s.undetected()},
              {"adversary_success", s.adversary_success},
              {"test_rounds", s.test_rounds},
              {"key_rounds", s.key_rounds},
              {"eve_basis_correct", s.eve_basis_correct},
              {"eve_basis_wrong", s.eve_basis_wrong},
              {"detected_given_wrong_basis", s.detected_given_wrong_basis},
              {"detected_given_correct_basis", s.detected_given_correct_basis},
              {"key_histogram", std::move(hist)}};
}

Json transcript_header(const Field& field, std::size_t n_parties, std::uint64_t seed) {
  return Json{{"p", field.p()},
              {"b", field.poly().b},
              {"c", field.poly().c},
              {"N", n_parties},
              {"seed", seed}};
}

Json transcript_record(const RoundTranscript& t) {
  auto elements = [](const std::vector<Fp2Element>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs) arr.push_back(to_json(x));
    return arr;
  };
  Json states = Json::array();
  for (const auto& s : t.transit_states) states.push_back(to_json(s));
  Json unitaries = Json::array();
  for (const auto& u : t.unitaries) unitaries.push_back(format_factors(u));
  Json events = Json::array();
  for (const auto& e : t.adversary_events) events.push_back(to_json(e));

  Json j{{"round", t.round_index},
         {"kind", to_string(t.kind)},
         {"alpha", elements(t.alpha)},
         {"beta", elements(t.beta)},
         {"unitaries", std::move(unitaries)},
         {"transit_states", std::move(states)},
         {"J", to_json(t.J)},
         {"h", to_json(t.h)},
         {"announced_alpha", elements(t.announced_alpha)},
         {"eq5_pass", t.eq5_pass}};
  j["key"] = t.key ? to_json(*t.key) : Json(nullptr);
  j["adversary_events"] = std::move(events);
  return j;
}

Json to_json(const RoundTranscript& t) {
  return Json{{"header", transcript_header(t.field, t.n_parties, t.master_seed)},
              {"round", transcript_record(t)}};
}

Fp2Element element_from_json(const Json& j, const Field& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
    throw RangeError("field element must be a pair [k1, k2] of non-negative integers");
  }
  const Fp2Element a{{j[0].get<std::uint32_t>()}, {j[1].get<std::uint32_t>()}};
  field.check(a);
  return a;
}

Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("b") || !j.contains("c")) {
    throw RangeError("field must be an object {p, b, c}");
  }
  return Field::make(j.at("p").get<std::int64_t>(),
                     Poly{j.at("b").get<std::uint32_t>(), j.at("c").get<std::uint32_t>()});
}

PhaseState phase_state_from_json(const Json& j, const Field& field) {
  if (!j.is_object() || j.value("scale", "") != "1/p" || !j.contains("exponents")) {
    throw RangeError("phase state must be {scale: \"1/p\", exponents: [...]}");
  }
  return PhaseState(field, j.at("exponents").get<std::vector<std::uint32_t>>());
}

std::string omega_symbol(std::uint32_t e) {
  if (e == 0) return "1";
  if (e == 1) return "w";
  return "w^" + std::to_string(e);
}

std::string format_phase_state(const PhaseState& s) {
  std::ostringstream os;
  os << "(1/" << s.field().p() << ")(";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) os << ", ";
    os << omega_symbol(s.exponents()[k]);
  }
  os << ')';
  return os.str();
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << csv_cell(cells[i]);
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace qss
