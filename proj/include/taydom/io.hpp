#pragma once

#include <json.hpp>

#include "taydom/abel.hpp"
#include "taydom/bautin.hpp"
#include "taydom/dfinite.hpp"
#include "taydom/zeros.hpp"

namespace taydom::io {

using json = nlohmann::ordered_json;

/// Schema violations raised while parsing input documents (CLI exit code 2).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// scalars ------------------------------------------------------------------
json to_json(const Rat& r);             // "p/q" string
Rat rat_from(const json& j);
json to_json(const Param& p);           // {"exact": "p/q"} or {"float": {...}}
Param param_from(const json& j);
json complex_json(const CF& z);         // {"re": "...", "im": "..."} decimal strings

// polynomials and rules ------------------------------------------------------
json to_json(const PolyQ& p);           // ascending coefficient list
PolyQ poly_from(const json& j);
json to_json(const SeqRule& r);
SeqRule seqrule_from(const json& j);

// recurrence ----------------------------------------------------------------
json to_json(const RecurrenceSpec& s);
RecurrenceSpec recurrence_from(const json& j);
json to_json(const CoefficientSequence& s);
CoefficientSequence sequence_from(const json& j);

// domination ------------------------------------------------------------------
json to_json(const SRule& s);
SRule srule_from(const json& j);
json to_json(const DominationCertificate& c);
DominationCertificate certificate_from(const json& j);
json to_json(const VerificationReport& r);

// zeros -----------------------------------------------------------------------
json to_json(const ZeroCount& z);
json to_json(const ZeroBoundCertificate& z);
json to_json(const ValencyProbe& v);

// dfinite ----------------------------------------------------------------------
json to_json(const DifferentialOperator& op);
DifferentialOperator operator_from(const json& j);
json to_json(const PieceFun& g);
PieceFun piecefun_from(const json& j);
json to_json(const MomentRecurrence& mr);
json to_json(const EpsilonRule& er);
json to_json(const VanishingBound& vb);
json to_json(const StieltjesParams& sp);

// bautin -------------------------------------------------------------------------
json to_json(const MultiPoly& p);       // explicit monomial list
MultiPoly multipoly_from(const json& j, int nvars);
json to_json(const ParametricRecurrence& r);
ParametricRecurrence parametric_from(const json& j);
json to_json(const UniformCReport& r);
json to_json(const A0Profile& p);

// abel ------------------------------------------------------------------------------
json to_json(const AbelEquation& e);
AbelEquation abel_from(const json& j);
json to_json(const PoincareExpansion& e);
json to_json(const FixedPointCount& f);

// CSV -------------------------------------------------------------------------------
/// Exact: header "k,num,den". Float rendering: header "k,re,im".
std::string sequence_csv(const CoefficientSequence& s, bool exact_mode);

// report rendering ---------------------------------------------------------------------
/// Human-readable table of a machine document; the machine document is the
/// source of truth and both contain identical numeric payloads.
std::string render_table(const json& machine);

}  // namespace taydom::io
