#pragma once

#include "qcoh/quadruple.hpp"
#include "qcoh/sequences.hpp"
#include "qcoh/sixterm.hpp"

#include <json.hpp>

#include <stdexcept>

namespace qcoh {

using Json = nlohmann::ordered_json;

/// Document violates the schema (exit 2 at the CLI).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Document parses but breaks a structural invariant (exit 4 at the CLI).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json finab_to_json(const FinAb& g);
Json finab_map_to_json(const FinAbMap& m);

/// The quadruple document:
/// {"group": {"order", "table"}, "modules": [{"name","rank","ring","action"}],
///  "maps": [{"from","to","matrix"}], "homotopy": {"scalar","maps"} | null}
Json quadruple_to_json(const ExactQuadruple& q);

/// Parses and re-validates every invariant: group axioms, action
/// multiplicativity, equivariance, d o d = 0, and the homotopy identity
/// when one is stored.  SchemaError for malformed documents,
/// InvariantError for well-formed ones that break the invariants.
ExactQuadruple quadruple_from_json(const Json& j);

Json quadruple_report_to_json(const ExactQuadruple& q, const QuadrupleReport& r);
Json six_term_report_to_json(const SixTermReport& r);
Json sequence_report_to_json(const SequenceReport& r);

} // namespace qcoh
