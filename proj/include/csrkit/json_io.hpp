#ifndef CSRKIT_JSON_IO_HPP
#define CSRKIT_JSON_IO_HPP

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>

#include "csrkit/applications.hpp"
#include "csrkit/decision.hpp"
#include "csrkit/generators.hpp"
#include "csrkit/matrix.hpp"
#include "csrkit/radii.hpp"
#include "csrkit/subspace.hpp"

namespace csrkit {

using ordered_json = nlohmann::ordered_json;

struct MalformedInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fixed float formatting: 12 significant digits, reparsed so dumps are
/// byte-stable for identical inputs.
ordered_json json_double(double v);

ordered_json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const ordered_json& j);

/// Canonical on-disk family format:
/// {"schema": 1, "dim": d, "matrices": [[["p/q", ...], ...], ...]}.
MatrixFamily family_from_json_text(const std::string& text);
ordered_json family_to_json(const MatrixFamily& family);

/// Affine pair format for the fractal command:
/// {"schema": 1, "dim": d,
///  "operators": [{"linear": [[...]], "translation": [...]}, x2]}.
std::pair<AffineOperator, AffineOperator> fractal_from_json_text(const std::string& text);

SubspaceBasis subspace_from_json(const ordered_json& j);
ordered_json subspace_to_json(const SubspaceBasis& s);
ordered_json family_spec_to_json(const FamilySpec& spec);
ordered_json verdict_to_json(const CsrVerdict& v);
ordered_json radii_report_to_json(const RadiiReport& r);
ordered_json finiteness_to_json(const FinitenessReport& r);
ordered_json partition_report_to_json(const PartitionReport& r, std::size_t b_value_limit);
ordered_json lss_report_to_json(const LssReport& r);
ordered_json fractal_report_to_json(const FractalReport& r);
ordered_json block_factorization_to_json(const BlockFactorization& f);

const char* answer_name(Answer a);
const char* method_name(Method m);

}  // namespace csrkit

#endif  // CSRKIT_JSON_IO_HPP
