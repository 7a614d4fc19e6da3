#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homlie/linalg.hpp"

namespace homlie {

/// Whether a check treats a subspace as a subalgebra (closed under internal
/// brackets) or an ideal (closed under brackets with the whole algebra).
enum class StructureMode { Subalgebra, Ideal };

std::string mode_str(StructureMode mode);

/// Finite-dimensional algebra with a skew-symmetric bracket given by
/// structure constants and a linear twist map. Only pairs i < j are stored;
/// [e_j, e_i] = -[e_i, e_j] and [e_i, e_i] = 0 are implied, which bakes in
/// skew-symmetry for every characteristic. Zero structure vectors are
/// dropped, so equal algebras have identical tables.
class HomLieAlgebra {
public:
    using StructureTable = std::map<std::pair<std::size_t, std::size_t>, Vector>;

    HomLieAlgebra(FieldSpec field, std::size_t dim, StructureTable table, Matrix twist,
                  std::string name = "");

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const Matrix& twist() const { return twist_; }
    const StructureTable& structure() const { return table_; }

    /// [e_i, e_j] for any index pair, including i >= j.
    Vector basis_bracket(std::size_t i, std::size_t j) const;

    bool operator==(const HomLieAlgebra& rhs) const;
    bool operator!=(const HomLieAlgebra& rhs) const { return !(*this == rhs); }
    /// Equality ignoring the name label.
    bool same_structure(const HomLieAlgebra& rhs) const;

private:
    FieldSpec field_;
    std::size_t dim_;
    StructureTable table_;
    Matrix twist_;
    std::string name_;
};

/// Bilinear extension of the structure table.
Vector bracket(const HomLieAlgebra& algebra, const Vector& x, const Vector& y);

struct AxiomFailure {
    enum class Kind { TwistedJacobi };
    Kind kind = Kind::TwistedJacobi;
    std::array<std::size_t, 3> triple{}; // basis indices i < j < k
    Vector defect;                       // the nonzero Jacobi sum
};

struct AxiomReport {
    bool valid = true;
    std::vector<AxiomFailure> failures;
};

/// Verifies the twisted Jacobi identity on all basis triples i < j < k.
/// Trilinearity plus the alternating property make that exhaustive.
/// Skew-symmetry holds by construction and needs no check.
AxiomReport check_axioms(const HomLieAlgebra& algebra);

struct SubspaceDefect {
    enum class Kind { TwistEscape, BracketEscape };
    Kind kind;
    std::size_t i = 0;               // basis index within the subspace
    std::optional<std::size_t> j;    // second index (subspace or ambient basis)
    Vector escaped;                  // witness vector outside the subspace
};

std::string defect_kind_str(SubspaceDefect::Kind kind);

/// First defect in a fixed scan order, or nullopt when the subspace is a
/// subalgebra: stable under the twist and closed under internal brackets.
std::optional<SubspaceDefect> subalgebra_defect(const HomLieAlgebra& algebra,
                                                const Subspace& candidate);
/// Ideal variant: brackets with every ambient basis vector must land inside.
std::optional<SubspaceDefect> ideal_defect(const HomLieAlgebra& algebra,
                                           const Subspace& candidate);

bool is_subalgebra(const HomLieAlgebra& algebra, const Subspace& candidate);
bool is_ideal(const HomLieAlgebra& algebra, const Subspace& candidate);

/// Smallest subalgebra (or ideal) containing the seed vectors. Terminates
/// because the rank strictly grows until the fixpoint.
Subspace closure(const HomLieAlgebra& algebra, const std::vector<Vector>& seeds,
                 StructureMode mode);

/// External direct sum: concatenated coordinates, componentwise brackets,
/// block-diagonal twist. Name is "+"-joined from the parts.
HomLieAlgebra direct_sum_algebras(const std::vector<HomLieAlgebra>& parts);

/// Linear map between algebras together with its compatibility certificate.
/// Only maps with certified=true may transport fuzzy structures.
struct Morphism {
    HomLieAlgebra source;
    HomLieAlgebra target;
    Matrix map; // target.dim() x source.dim(), acting on column vectors
    bool certified = false;

    bool is_onto() const;
};

/// True when map intertwines the twists and preserves brackets on basis
/// pairs i < j (bilinearity extends that to all pairs).
bool is_morphism(const Matrix& map, const HomLieAlgebra& source, const HomLieAlgebra& target);

/// Checks the conditions and returns a certified morphism; throws
/// NotCertified on failure.
Morphism certify_morphism(const HomLieAlgebra& source, const HomLieAlgebra& target, Matrix map);

/// Every morphism between two prime-field algebras, enumerated by matrix
/// entries in row-major odometer order. Throws UnsupportedField over Q and
/// CapExceeded when p^(source.dim * target.dim) exceeds the cap.
std::vector<Morphism> enumerate_morphisms(const HomLieAlgebra& source,
                                          const HomLieAlgebra& target,
                                          std::uint64_t cap = kDefaultEnumerationCap);

Morphism identity_morphism(const HomLieAlgebra& algebra);
Morphism zero_morphism(const HomLieAlgebra& source, const HomLieAlgebra& target);
/// Canonical inclusion of parts[index] into the direct sum of parts.
Morphism inclusion_into_sum(const std::vector<HomLieAlgebra>& parts, std::size_t index);
/// Canonical projection of the direct sum of parts onto parts[index].
Morphism projection_from_sum(const std::vector<HomLieAlgebra>& parts, std::size_t index);

} // namespace homlie
