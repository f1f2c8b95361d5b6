// JSON / CSV serialization for fields, series, algebras, operads and every
// report type, plus the inverse readers used by the CLI input flags. All
// writers emit keys through nlohmann's sorted-map representation and all
// container orders are fixed, so repeated runs produce byte-identical output.
#pragma once

#include <string>

#include "json.hpp"
#include "opal/algebra.hpp"
#include "opal/families.hpp"
#include "opal/field.hpp"
#include "opal/functors.hpp"
#include "opal/operad.hpp"
#include "opal/series.hpp"
#include "opal/worked_examples.hpp"

namespace opal {

using Json = nlohmann::json;

// Bumped whenever a serialized layout changes shape.
inline constexpr int kSchemaVersion = 1;

// Canonical dump: two-space indent, sorted keys, trailing newline.
std::string dump_json(const Json& j);

// Three-valued verdict rendering: "certified" / "failed" / "unknown".
std::string cert_str(Cert c);

// --------------------------------------------------------------- fields

// {"char": p, "tower": [[codes...], ...]} with coefficient lists exactly as
// supplied at construction (characteristic 0 uses rational strings).
Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);

// Accepts "Q", "F<p>" for prime p, a path to a descriptor file, or inline
// descriptor JSON. Throws OpalError with a usage message otherwise.
FieldPtr field_from_spec(const std::string& spec);

// Coordinate vector in the flat power basis: rational strings for
// characteristic 0, reduced integers for characteristic p.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const FieldPtr& f);

// --------------------------------------------------------------- series

// Dense: {"coeffs": ["...", ...], "index": name}. Sparse profiles keep
// arbitrary-precision degrees: {"entries": [["degree","coeff"], ...]}.
Json series_to_json(const HilbertSeries& h, const std::string& index_name);
HilbertSeries series_from_json(const Json& j);

// Header row "<index>,dim" then one row per degree; index_name is "degree"
// for algebras and "arity" for operads.
std::string series_to_csv(const HilbertSeries& h, const std::string& index_name);
HilbertSeries series_from_csv(const std::string& text);

Json rational_form_to_json(const RationalForm& r);

// -------------------------------------------------------------- reports

Json gk_to_json(const GkReport& r);
Json growth_to_json(const GrowthReport& r);
Json multiplicity_to_json(const MultiplicityReport& r);
Json axioms_to_json(const AxiomReport& r);
Json prime_to_json(const PrimeReport& r);
Json central_to_json(const CentralReport& r);
Json torsion_to_json(const TorsionReport& r);
Json saturation_to_json(const SaturationReport& r);
Json cancellation_to_json(const CancellationReport& r);
Json roundtrip_to_json(const RoundtripReport& r);
Json family_identities_to_json(const FamilyIdentityReport& r);

// ------------------------------------------------------------- operads

// Full structural dump to the operad's own horizon: per-arity components
// (dim, labels, action), identity coordinates, and the sparse list of all
// nonzero composition constants in (m, b, i, n, c) order.
Json operad_to_json(const Operad& P);
OperadPtr operad_from_json(const Json& j);

// ------------------------------------------------------------ algebras

// Dense structural dump to the given horizon: dims, labels, type labels when
// present, and all nonzero products (unit rows included).
Json algebra_to_json(const GradedAlgebra& A, long horizon);

// Accepts either a dense dump ("kind": "dense") or a monomial presentation
// ("kind": "presentation" with generators and rule kinds
// "commute" / "square" / "pattern_e621").
AlgebraPtr algebra_from_json(const Json& j);

// ------------------------------------------------------ worked examples

Json ex61_to_json(const Ex61Report& r);
Json ex62_custom_to_json(const Ex62CustomReport& r);
Json ex62_symbolic_to_json(const Ex62SymbolicReport& r);
Json ex63_to_json(const Ex63Report& r);

}  // namespace opal
