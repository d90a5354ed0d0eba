#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "spheroidal/engine.hpp"
#include "spheroidal/identities.hpp"
#include "spheroidal/validation.hpp"

namespace spheroidal::io {

using json = nlohmann::ordered_json;

/// 17 significant digits, round-half-even, computed exactly:
/// "-3.3333333333333333e-01". Zero is "0.0000000000000000e+00".
std::string decimal17(const Rational& r);

/// Shortest-round-trip style rendering for floating results ("%.17Lg").
std::string real_str(long double x);

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const UPoly& p);
UPoly upoly_from_json(const json& j);

/// {"m", "terms": [{"n", "P", "twoE0n"}...]}.
json to_json(const PerturbationSeries& s);
/// Inverse of to_json; throws std::invalid_argument on schema violations.
PerturbationSeries series_from_json(const json& j);

/// Series document for the CLI: the schema above plus "twoE0n" (all orders
/// from 0, exact) and "twoE0n_decimal".
json series_document(const PerturbationSeries& s);

/// Writes rows with '\n' endings; the caller owns the stream mode.
void write_identity_csv(std::ostream& os, const std::vector<identities::ReportRow>& rows);
void write_validation_csv(std::ostream& os, const validation::ValidationReport& rep);

}  // namespace spheroidal::io
