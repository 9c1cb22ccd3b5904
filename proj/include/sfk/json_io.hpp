#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "sfk/census.hpp"
#include "sfk/charvar.hpp"
#include "sfk/normalform.hpp"

namespace sfk {

using Json = nlohmann::ordered_json;

/// Exact values become "p/q" strings, float values plain numbers.
Json to_json(const Scalar& s);
Json to_json(const GrassmannElement& x);
Json to_json(const SuperMatrix& m);
Json to_json(const OSpElement& g);
Json to_json(const NormalFormRecord& r);
Json to_json(const CensusResult& r);
Json to_json(const GeneratorReport& r);

/// True when some coefficient in the document is a non-integral number;
/// such documents are read in float mode.
bool contains_float(const Json& j);

Scalar scalar_from_json(const Json& j, Mode mode);
/// Accepts the term encoding or a bare scalar (a constant). Elements with
/// fewer generators than n are widened; more throws ShapeError.
GrassmannElement element_from_json(const Json& j, int n, Mode mode);
SuperMatrix matrix_from_json(const Json& j, int n, Mode mode);
/// Either a matrix object (validated by check_membership) or a provenance
/// object {"sl2": [a, b, c, d], "odd": [gamma, delta]} built by compose_general.
OSpElement osp_from_json(const Json& j, int n, Mode mode);
/// {"n": N, "A": ..., "B": ...}; N defaults to 8. The mode is float when the
/// document contains non-integral numbers or when force_float is set.
RepresentationPair pair_from_json(const Json& j, bool force_float = false);

/// Reads and parses a file. Throws DomainError when it cannot be opened
/// or is not valid JSON.
Json read_json_file(const std::string& path);

}  // namespace sfk
