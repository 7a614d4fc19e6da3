#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "homlie/oracle.hpp"

namespace homlie {

/// File formats (JSON, 0-based indices, scalars as canonical strings):
///
/// algebra:  {"field": "Q" | {"gf": p}, "dim": n, "name": str?,
///            "brackets": [[i, j, [c_0 ... c_{n-1}]], ...],   // pairs i < j
///            "alpha": [[row strings] ...]}                   // twist matrix
/// fuzzy set: {"chain": [{"level": "a/b", "basis": [[...] ...]}, ...],
///            "baseline": "a/b"}                              // levels decrease
/// morphism: {"source": "algebra path", "target": "algebra path",
///            "matrix": [[...] ...]}                          // target.dim rows
/// subspace: [[...] ...]                                      // generator rows

std::string read_text_file(const std::filesystem::path& path);

/// FNV-1a 64-bit content fingerprint, "fnv1a64:" + 16 hex digits.
std::string content_hash(const std::string& bytes);

nlohmann::json algebra_to_json(const HomLieAlgebra& algebra);
HomLieAlgebra algebra_from_json(const nlohmann::json& doc);
HomLieAlgebra parse_algebra(const std::string& text);
std::string serialize_algebra(const HomLieAlgebra& algebra);

nlohmann::json flag_to_json(const FuzzyFlag& set);
FuzzyFlag flag_from_json(const nlohmann::json& doc, const FieldSpec& field, std::size_t dim);
FuzzyFlag parse_flag(const std::string& text, const FieldSpec& field, std::size_t dim);
/// Infers dimension from the first basis row when not given; field defaults
/// to Q. Fails when the file has no basis rows and no dimension is supplied.
FuzzyFlag parse_flag_auto(const std::string& text, std::optional<FieldSpec> field,
                          std::optional<std::size_t> dim);
std::string serialize_flag(const FuzzyFlag& set);

/// Raw morphism document: algebra paths stay unresolved strings.
struct MorphismFile {
    std::string source_path;
    std::string target_path;
    std::vector<std::vector<std::string>> matrix; // row-major scalar text

    bool operator==(const MorphismFile&) const = default;
};

MorphismFile parse_morphism_file(const std::string& text);
std::string serialize_morphism_file(const MorphismFile& file);
/// Loads both algebras (paths relative to base_dir), parses the matrix in
/// their field and certifies the morphism; throws InvariantViolation when
/// the matrix fails the morphism conditions.
Morphism resolve_morphism(const MorphismFile& file, const std::filesystem::path& base_dir);

nlohmann::json subspace_to_json(const Subspace& space);
Subspace subspace_from_json(const nlohmann::json& doc, const FieldSpec& field,
                            std::size_t dim);
Subspace parse_subspace(const std::string& text, const FieldSpec& field, std::size_t dim);
std::string serialize_subspace(const Subspace& space);

nlohmann::json vector_to_json(const Vector& v);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json axiom_failure_to_json(const AxiomFailure& failure);
nlohmann::json defect_to_json(const SubspaceDefect& defect);
nlohmann::json fuzzy_report_to_json(const FuzzyCheckReport& report);
nlohmann::json pointwise_witness_to_json(const PointwiseWitness& witness);
nlohmann::json finding_to_json(const Finding& finding);
nlohmann::json suite_report_to_json(const SuiteReport& report);

/// Self-contained two-instance payload used by counterexample findings.
struct InstancePair {
    HomLieAlgebra first_algebra;
    FuzzyFlag first_flag;
    HomLieAlgebra second_algebra;
    FuzzyFlag second_flag;
};

std::string serialize_instance_pair(const InstancePair& pair);
InstancePair parse_instance_pair(const std::string& text);

} // namespace homlie
