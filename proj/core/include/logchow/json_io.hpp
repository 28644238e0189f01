#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "logchow/cone_complex.hpp"
#include "logchow/piecewise.hpp"
#include "logchow/subdivision.hpp"
#include "logchow/toric.hpp"
#include "logchow/tropical.hpp"
#include "logchow/twist.hpp"

namespace logchow {

using json = nlohmann::json;

// Canonical form: sorted keys (nlohmann objects), two-space indent, trailing
// newline. Byte-exact round trips for inputs already in canonical form.
std::string canonical_dump(const json& j);

json int_to_json(const Int& x);       // number when it fits, else decimal string
Int int_from_json(const json& j);
json rational_to_json(const Rational& x);  // "p" or "p/q"
Rational rational_from_json(const json& j);

json to_json(const ConeComplex& c);
ConeComplex complex_from_json(const json& j);

json to_json(const ConeComplex& c, const PPSection& s);
PPSection section_from_json(const ConeComplex& c, const json& j);

json to_json(const Subdivision& s);
Subdivision subdivision_from_json(const json& j);

json to_json(const CompleteFan& f);
CompleteFan fan_from_json(const json& j);

json to_json(const ChowClass& c);
ChowClass chow_class_from_json(const json& j);

json to_json(const TropicalCurve& g);
TropicalCurve curve_from_json(const json& j);

json to_json(const Divisor& d);
Divisor divisor_from_json(const json& j);
// positional form, entries in sorted vertex order
Divisor divisor_from_array(const TropicalCurve& g, const json& arr);

json to_json(const TropicalCurve& g, const PLFunction& a);

json to_json(const ExtFan& f);
json to_json(const GlobalGenReport& r);
json to_json(const EtaCorrection& e);
json to_json(const SimplicityReport& r);
json to_json(const StratumReport& r);

}  // namespace logchow
