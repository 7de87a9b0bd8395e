#pragma once

#include <complex>
#include <istream>
#include <string>

#include <json.hpp>

#include "stabil/classify.hpp"
#include "stabil/hardy.hpp"
#include "stabil/operator.hpp"
#include "stabil/region.hpp"
#include "stabil/stability.hpp"

namespace stabil {

using Json = nlohmann::json;

/// Complex numbers are [re, im]; a bare number is read as real.
Json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const Json& j);

/// Every from_json below throws Error(ParseError) on malformed input.
void to_json(Json& j, const ComplexPoly& p);
void from_json(const Json& j, ComplexPoly& p);

void to_json(Json& j, const Region& omega);
void from_json(const Json& j, Region& omega);

void to_json(Json& j, const OperatorTruncation& a);
void from_json(const Json& j, OperatorTruncation& a);

void to_json(Json& j, const Signal& s);
void from_json(const Json& j, Signal& s);

/// One real sample per line; blank lines and lines starting with '#' are skipped.
Signal parse_signal_text(std::istream& in);

void to_json(Json& j, const StabilityResult& r);
void to_json(Json& j, const Witness& w);
void to_json(Json& j, const Classification& c);
void to_json(Json& j, const JensenReport& r);
void to_json(Json& j, const RootOuterReport& r);
void to_json(Json& j, const MinPhaseReport& r);
void to_json(Json& j, const H2Classification& c);

/// Parses a document, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);

}  // namespace stabil
