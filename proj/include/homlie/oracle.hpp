#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homlie/fuzzy.hpp"

namespace homlie {

/// Seeded construction families for random instances.
///  - ZeroTwist: twist = 0, random skew bracket (always satisfies the axioms)
///  - ZeroBracket: bracket = 0, random twist (always satisfies the axioms)
///  - Nilpotent3d: the fixed three-dimensional witness algebra with
///    [e1,e3] = e1 and twist e1 -> e2, e2,e3 -> 0
///  - RejectionSampled: random tables retried until the axioms hold
enum class Family { ZeroTwist, ZeroBracket, Nilpotent3d, RejectionSampled };

std::string family_str(Family family);

struct InstanceParams {
    std::uint32_t p = 2;        // 2, 3 or 5
    std::size_t dim = 1;        // 1..3
    std::size_t flag_depth = 1; // requested chain length, 1..dim+1
    std::uint64_t seed = 0;
    Family family = Family::ZeroTwist;

    /// Throws InvalidParams on out-of-range values (Nilpotent3d needs dim 3).
    void validate() const;
};

struct Instance {
    HomLieAlgebra algebra;
    FuzzyFlag flag;
};

/// Deterministic instance: the algebra from the family recipe, the fuzzy set
/// from a chain of subalgebra closures (ideal closures in Ideal mode) of
/// random vectors, with random strictly decreasing levels. The result always
/// passes the flag-level structure check for the chosen mode.
Instance random_instance(const InstanceParams& params,
                         StructureMode mode = StructureMode::Subalgebra);

/// Exhaustive membership table of the fuzzy set over its GF(p) space.
FuzzyTable table_from_flag(const FuzzyFlag& set,
                           std::uint64_t cap = kDefaultEnumerationCap);

enum class PointwiseCondition { Additivity, Scaling, Bracket, Twist };

std::string condition_str(PointwiseCondition condition, StructureMode mode);

struct PointwiseWitness {
    PointwiseCondition condition;
    StructureMode mode;
    Vector x;
    std::optional<Vector> y;      // second vector for additivity/bracket
    std::optional<Scalar> scalar; // scaling factor
    Level lhs;                    // attained degree
    Level rhs;                    // required bound
};

struct PointwiseReport {
    bool ok = true;
    std::uint64_t checked = 0; // inequality instances inspected
    std::optional<PointwiseWitness> witness;
};

/// Definition-level check of the membership inequalities on every point
/// (pair, scalar multiple, bracket, twist image) of the table. Scans in rank
/// order and reports the first violation. Independent of the flag data
/// structure: this is the oracle the flag algorithms are verified against.
PointwiseReport pointwise_check(const FuzzyTable& table, const HomLieAlgebra& algebra,
                                StructureMode mode);

struct Finding {
    enum class Kind { Counterexample, Exhausted };
    Kind kind = Kind::Exhausted;
    std::uint64_t checked_count = 0;
    /// Counterexample payload: self-contained JSON with both algebras and
    /// fuzzy sets, re-checkable from a fresh parse.
    std::string instance_json;
    std::optional<PointwiseWitness> witness;
};

/// Searches seeded random pairs of fuzzy ideals (subalgebras in Subalgebra
/// mode) for a direct sum whose min-combination fails the pointwise check of
/// the same mode. Budget is the number of pairs; must be positive.
Finding search_sum_counterexample(const InstanceParams& params, std::uint64_t budget,
                                  StructureMode mode = StructureMode::Ideal);

/// Re-runs the pointwise check on a counterexample payload parsed from
/// scratch; true means the violation is still there.
bool reverify_sum_counterexample(const std::string& instance_json, StructureMode mode);

struct SuiteRow {
    std::string id;
    std::uint64_t instances = 0;
    std::uint64_t agreements = 0;
    std::uint64_t disagreements = 0;
    std::string first_witness; // empty until the first disagreement
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    /// True when no asserted row disagrees; rows tagged "info:" are
    /// observational tallies and do not gate this.
    bool all_agree() const;
};

/// Cross-verifies the flag algorithms against the pointwise oracle on every
/// instance: cut equivalences, table round-trips, direct sums, and morphism
/// transports (enumerated maps on small GF(2) pairs, canonical
/// identity/zero/inclusion/projection maps everywhere).
SuiteReport theorem_suite(const std::vector<InstanceParams>& batch,
                          std::uint64_t cap = kDefaultEnumerationCap);

/// Seed-rotated batch over one (p, dim) cell: families cycle per seed with
/// Nilpotent3d replaced at dim != 3, flag depth cycles through 1..dim+1.
std::vector<InstanceParams> make_batch(std::uint64_t base_seed, std::uint64_t count,
                                       std::uint32_t p, std::size_t dim);

} // namespace homlie
