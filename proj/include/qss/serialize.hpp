#pragma once

// Machine-readable forms of the library's values. Key order is fixed
// (ordered_json), so identical inputs produce byte-identical output.
//
//   Fp2Element       [k1, k2]
//   Field            {"p", "b", "c"}
//   PhaseState       {"scale": "1/p", "exponents": [...]}
//   DenseState       {"ancilla_dim", "amplitudes": [[re, im], ...]}
//   DiagonalPhaseOp  {"exponents": [...]}
//   transcript       {"header": {p, b, c, N, seed}, "round": {...}}

#include <json.hpp>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/field.hpp"
#include "qss/mub.hpp"
#include "qss/operators.hpp"
#include "qss/protocol.hpp"

namespace qss {

using Json = nlohmann::ordered_json;

Json to_json(const Fp2Element& a);
Json to_json(const Field& field);
Json to_json(const PhaseState& s);
Json to_json(const DenseState& s);
Json to_json(const QuditState& s);
Json to_json(const DiagonalPhaseOp& op);
Json to_json(const BasisId& basis);
Json to_json(const AttackEvent& event);
Json to_json(const UnbiasedReport& r);
Json to_json(const CyclicityReport& r);
Json to_json(const TheoreticalRates& r);
Json to_json(const EntangleReport& r);
Json to_json(const AggregateStats& s, const Field& field);

/// {"p", "b", "c", "N", "seed"}.
Json transcript_header(const Field& field, std::size_t n_parties, std::uint64_t seed);
/// One round record, without the header.
Json transcript_record(const RoundTranscript& t);
/// Header and record in a single object.
Json to_json(const RoundTranscript& t);

/// Throws RangeError / ContextError on malformed input.
Fp2Element element_from_json(const Json& j, const Field& field);
Field field_from_json(const Json& j);
PhaseState phase_state_from_json(const Json& j, const Field& field);

/// "w^e" (with "1" and "w" for e = 0, 1).
std::string omega_symbol(std::uint32_t e);
/// "(1/p)(1, w, w^2, ...)".
std::string format_phase_state(const PhaseState& s);

/// Minimal CSV table; cells containing separators or quotes get quoted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

/// Writes `content` to `path`. Throws IoError when the file cannot be written.
void write_text(const std::string& path, const std::string& content);

}  // namespace qss
