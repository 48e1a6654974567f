#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrenyi/gaussian_forms.hpp"
#include "wrenyi/inequalities.hpp"
#include "wrenyi/measures.hpp"
#include "wrenyi/oracle.hpp"

namespace wrenyi::app {

using Json = nlohmann::ordered_json;

// Non-finite reals become the strings "inf", "-inf", "nan".
Json real(double v);

Json to_json(const Flag& f);
Json to_json(const MeasureValue& m);
Json to_json(const InequalityVerdict& v);
Json to_json(const IdentityResidual& r);
Json to_json(const GaussianMeasureSet& g);
Json to_json(const oracle::CrossCheck& c);

// Text of a JSON document; stable byte-for-byte for equal input.
std::string dump(const Json& j);

// RFC 4180 style: fields with comma, quote, CR or LF are quoted, quotes doubled.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& out, const std::vector<std::string>& row);
// Parses a whole CSV document (header included) back into rows.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace wrenyi::app
