#pragma once

#include <string>

#include <json.hpp>

#include "tetra/decomposition.hpp"
#include "tetra/fundamental.hpp"
#include "tetra/geometry.hpp"
#include "tetra/harness.hpp"
#include "tetra/models.hpp"
#include "tetra/triples.hpp"

namespace tetra::io {

using json = nlohmann::json;

// Matrices travel as {"rows": r, "cols": c, "data": [[re, im], ...]} with
// data in row-major order; complex numbers are [re, im] pairs throughout.

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json tol_to_json(const ToleranceProfile& t);
ToleranceProfile tol_from_json(const json& j);

json point_to_json(const geometry::TetraPoint& p);
geometry::TetraPoint point_from_json(const json& j);

/// Triple file: {"dim": n, "A": matrix, "B": matrix, "P": matrix,
/// "tol": optional profile}. Loading validates commutativity.
json triple_to_json(const triples::OperatorTriple& t);
triples::OperatorTriple triple_from_json(const json& j);

/// Wraps the JSON parser so malformed input surfaces as ParseError with the
/// byte position, and schema violations as ParseError/ValidationError.
triples::OperatorTriple parse_triple_text(const std::string& text);
triples::OperatorTriple parse_triple_file(const std::string& path);

/// Canonical serialization (shortest round-trip decimals, sorted keys).
std::string emit(const json& j, bool pretty = false);

json classification_to_json(const triples::ClassificationReport& r);
json fundamental_to_json(const fundamental::FundamentalPair& fp,
                         const fundamental::CommutatorReport& cr);
json decomposition_to_json(const decomp::DecompositionResult& d);
json graded_to_json(const GradedTriple& g);
json dilation_verification_to_json(const models::DilationVerification& v);
json wold_to_json(const decomp::WoldResult& w);
json assembly_to_json(const models::ModelAssembly& m);

json suite_report_to_json(const harness::SuiteReport& r);
std::string suite_report_to_junit(const harness::SuiteReport& r);
harness::SuiteConfig suite_config_from_json(const json& j);

std::string gen_kind_to_string(harness::GenKind k);
harness::GenKind gen_kind_from_string(const std::string& s);

}  // namespace tetra::io
