#pragma once

#include <optional>
#include <vector>

#include "homlie/algebra.hpp"

namespace homlie {

/// Membership degree: an exact rational in [0, 1].
class Level {
public:
    Level() : value_(0) {}
    explicit Level(Rational value);

    static Level parse(std::string_view text);

    const Rational& value() const { return value_; }
    std::string str() const { return rational_str(value_); }

    bool operator==(const Level& rhs) const { return value_ == rhs.value_; }
    bool operator!=(const Level& rhs) const { return value_ != rhs.value_; }
    bool operator<(const Level& rhs) const { return value_ < rhs.value_; }
    bool operator<=(const Level& rhs) const { return value_ <= rhs.value_; }
    bool operator>(const Level& rhs) const { return value_ > rhs.value_; }
    bool operator>=(const Level& rhs) const { return value_ >= rhs.value_; }

private:
    Rational value_;
};

Level meet(const Level& a, const Level& b); // min
Level join(const Level& a, const Level& b); // max

/// Fuzzy set on a finite-dimensional space whose level cuts are subspaces:
/// a strictly increasing chain of subspaces with strictly decreasing levels,
/// plus a baseline level for points outside the last chain member.
///
/// Canonical form, enforced on construction:
///  - the chain is nonempty and strictly nested, levels strictly decrease;
///  - the last chain member is the full space only for a constant set, in
///    which case the chain has one entry and the baseline is (a dead) 0;
///  - otherwise the last member is proper and baseline < last level.
/// A chain handed in with a full-space tail is folded into the baseline, so
/// equal set functions get identical representations and operator== decides
/// extensional equality.
class FuzzyFlag {
public:
    struct Entry {
        Subspace cut;
        Level level;
        bool operator==(const Entry& rhs) const {
            return cut == rhs.cut && level == rhs.level;
        }
    };

    FuzzyFlag(FieldSpec field, std::size_t dim, std::vector<Entry> chain, Level baseline);

    static FuzzyFlag constant(const FieldSpec& field, std::size_t dim, Level level);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Entry>& chain() const { return chain_; }
    const Level& baseline() const { return baseline_; }
    bool is_constant() const { return chain_.size() == 1 && chain_.front().cut.is_full(); }

    /// Distinct attained values, descending: chain levels, then the baseline
    /// when the last chain member is proper.
    std::vector<Level> image_levels() const;

    bool operator==(const FuzzyFlag& rhs) const;
    bool operator!=(const FuzzyFlag& rhs) const { return !(*this == rhs); }

private:
    FieldSpec field_;
    std::size_t dim_;
    std::vector<Entry> chain_;
    Level baseline_;
};

/// Membership degree of a vector: the level of the smallest chain member
/// containing it, the baseline if none does.
Level evaluate(const FuzzyFlag& set, const Vector& x);

/// {x : set(x) >= t}; nullopt encodes the empty set (t above every value).
std::optional<Subspace> upper_level(const FuzzyFlag& set, const Level& t);
/// {x : set(x) > t}.
std::optional<Subspace> strong_upper_level(const FuzzyFlag& set, const Level& t);

struct FuzzyCheckReport {
    bool ok = true;
    /// Level of the first failing cut, scanning from the top of the chain.
    std::optional<Level> level;
    std::optional<SubspaceDefect> defect;
};

/// The set is a fuzzy subalgebra iff every chain cut is a subalgebra;
/// membership degrees then behave under +, scaling, brackets and the twist.
FuzzyCheckReport is_fuzzy_subalgebra(const FuzzyFlag& set, const HomLieAlgebra& algebra);
/// Ideal variant: every chain cut must be an ideal.
FuzzyCheckReport is_fuzzy_ideal(const FuzzyFlag& set, const HomLieAlgebra& algebra);

/// Fuzzy set on the direct sum space with degree min over the components;
/// cuts are the direct sums of the componentwise cuts.
FuzzyFlag fuzzy_direct_sum(const std::vector<FuzzyFlag>& parts);

/// Composition with a certified morphism: x in source maps to
/// target_set(f(x)). Cuts are preimages of the target cuts.
FuzzyFlag pullback(const Morphism& f, const FuzzyFlag& target_set);

/// Sup over the fiber: y in target gets max{source_set(x) : f(x) = y}, 0 for
/// y outside the image. Exact for linear maps: the fiber of y meets a cut V
/// exactly when y lies in f(V).
FuzzyFlag pushforward(const Morphism& f, const FuzzyFlag& source_set);

/// Exhaustive value table of a fuzzy set on GF(p)^dim, indexed by
/// vector_rank. The reference representation the flag form is checked
/// against.
class FuzzyTable {
public:
    FuzzyTable(FieldSpec field, std::size_t dim, std::vector<Level> values);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::uint64_t size() const { return values_.size(); }
    const Level& at_rank(std::uint64_t rank) const;
    const Level& at(const Vector& x) const;
    const std::vector<Level>& values() const { return values_; }

    bool operator==(const FuzzyTable& rhs) const;
    bool operator!=(const FuzzyTable& rhs) const { return !(*this == rhs); }

private:
    FieldSpec field_;
    std::size_t dim_;
    std::vector<Level> values_;
};

/// Recovers the flag form of a table whose level cuts are all subspaces;
/// throws NotSubspaceLeveled otherwise. Inverse of tabulating the flag.
FuzzyFlag flag_from_table(const FuzzyTable& table);

} // namespace homlie
