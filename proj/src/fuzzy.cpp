#include "homlie/fuzzy.hpp"

#include <algorithm>

namespace homlie {

namespace {

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* what) {
    if (a != b) {
        throw FieldMismatch(std::string(what) + ": " + a.str() + " vs " + b.str());
    }
}

} // namespace

Level::Level(Rational value) : value_(std::move(value)) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1) {
        throw InvariantViolation("membership degree " + rational_str(value_) +
                                 " outside [0, 1]");
    }
}

Level Level::parse(std::string_view text) {
    return Level(parse_rational(text));
}

Level meet(const Level& a, const Level& b) { return a < b ? a : b; }
Level join(const Level& a, const Level& b) { return a > b ? a : b; }

FuzzyFlag::FuzzyFlag(FieldSpec field, std::size_t dim, std::vector<Entry> chain,
                     Level baseline)
    : field_(field), dim_(dim), chain_(std::move(chain)), baseline_(std::move(baseline)) {
    if (chain_.empty()) {
        throw InvariantViolation("fuzzy flag chain must be nonempty");
    }
    for (const Entry& e : chain_) {
        require_same_field(field_, e.cut.field(), "fuzzy flag cut");
        if (e.cut.ambient_dim() != dim_) {
            throw DimensionMismatch("fuzzy flag cut lives in dimension " +
                                    std::to_string(e.cut.ambient_dim()) + ", expected " +
                                    std::to_string(dim_));
        }
    }
    for (std::size_t i = 1; i < chain_.size(); ++i) {
        if (!(chain_[i - 1].level > chain_[i].level)) {
            throw InvariantViolation("fuzzy flag levels must strictly decrease");
        }
        if (!subspace_leq(chain_[i - 1].cut, chain_[i].cut) ||
            chain_[i - 1].cut == chain_[i].cut) {
            throw InvariantViolation("fuzzy flag cuts must be strictly nested");
        }
    }
    // fold a full-space tail into the baseline so equal functions coincide
    if (chain_.back().cut.is_full()) {
        if (chain_.size() == 1) {
            baseline_ = Level(); // constant set, baseline unreachable
        } else {
            baseline_ = chain_.back().level;
            chain_.pop_back();
        }
    } else if (!(baseline_ < chain_.back().level)) {
        throw InvariantViolation("baseline must lie below the last chain level");
    }
}

FuzzyFlag FuzzyFlag::constant(const FieldSpec& field, std::size_t dim, Level level) {
    return FuzzyFlag(field, dim, {{Subspace::full(field, dim), level}}, Level());
}

std::vector<Level> FuzzyFlag::image_levels() const {
    std::vector<Level> out;
    out.reserve(chain_.size() + 1);
    for (const Entry& e : chain_) {
        out.push_back(e.level);
    }
    if (!chain_.back().cut.is_full()) {
        out.push_back(baseline_);
    }
    return out;
}

bool FuzzyFlag::operator==(const FuzzyFlag& rhs) const {
    return field_ == rhs.field_ && dim_ == rhs.dim_ && chain_ == rhs.chain_ &&
           baseline_ == rhs.baseline_;
}

Level evaluate(const FuzzyFlag& set, const Vector& x) {
    require_same_field(set.field(), x.field(), "fuzzy evaluation");
    if (x.dim() != set.dim()) {
        throw DimensionMismatch("fuzzy evaluation: dimensions differ");
    }
    for (const FuzzyFlag::Entry& e : set.chain()) {
        if (contains(e.cut, x)) return e.level;
    }
    return set.baseline();
}

std::optional<Subspace> upper_level(const FuzzyFlag& set, const Level& t) {
    const auto& chain = set.chain();
    if (t > chain.front().level) return std::nullopt;
    if (!chain.back().cut.is_full() && t <= set.baseline()) {
        return Subspace::full(set.field(), set.dim());
    }
    std::size_t idx = 0;
    while (idx + 1 < chain.size() && chain[idx + 1].level >= t) ++idx;
    return chain[idx].cut;
}

std::optional<Subspace> strong_upper_level(const FuzzyFlag& set, const Level& t) {
    const auto& chain = set.chain();
    if (t >= chain.front().level) return std::nullopt;
    if (!chain.back().cut.is_full() && t < set.baseline()) {
        return Subspace::full(set.field(), set.dim());
    }
    std::size_t idx = 0;
    while (idx + 1 < chain.size() && chain[idx + 1].level > t) ++idx;
    return chain[idx].cut;
}

namespace {

FuzzyCheckReport fuzzy_check(const FuzzyFlag& set, const HomLieAlgebra& algebra,
                             StructureMode mode) {
    require_same_field(set.field(), algebra.field(), "fuzzy structure check");
    if (set.dim() != algebra.dim()) {
        throw DimensionMismatch("fuzzy structure check: dimensions differ");
    }
    for (const FuzzyFlag::Entry& e : set.chain()) {
        std::optional<SubspaceDefect> defect =
            mode == StructureMode::Subalgebra ? subalgebra_defect(algebra, e.cut)
                                              : ideal_defect(algebra, e.cut);
        if (defect) {
            return FuzzyCheckReport{false, e.level, std::move(defect)};
        }
    }
    return FuzzyCheckReport{};
}

/// Builds the canonical flag from (subspace, level) candidates with strictly
/// decreasing levels and non-decreasing cuts: consecutive duplicate cuts keep
/// the higher level, a proper tail at the baseline level merges into it.
FuzzyFlag from_cuts(const FieldSpec& field, std::size_t dim,
                    std::vector<FuzzyFlag::Entry> candidates, Level baseline) {
    std::vector<FuzzyFlag::Entry> chain;
    for (FuzzyFlag::Entry& c : candidates) {
        if (!chain.empty() && chain.back().cut == c.cut) continue;
        chain.push_back(std::move(c));
    }
    if (!chain.empty() && !chain.back().cut.is_full() && chain.back().level == baseline) {
        chain.pop_back();
    }
    if (chain.empty()) {
        return FuzzyFlag::constant(field, dim, baseline);
    }
    return FuzzyFlag(field, dim, std::move(chain), baseline);
}

} // namespace

FuzzyCheckReport is_fuzzy_subalgebra(const FuzzyFlag& set, const HomLieAlgebra& algebra) {
    return fuzzy_check(set, algebra, StructureMode::Subalgebra);
}

FuzzyCheckReport is_fuzzy_ideal(const FuzzyFlag& set, const HomLieAlgebra& algebra) {
    return fuzzy_check(set, algebra, StructureMode::Ideal);
}

FuzzyFlag fuzzy_direct_sum(const std::vector<FuzzyFlag>& parts) {
    if (parts.empty()) {
        throw EmptyList("fuzzy direct sum of no sets");
    }
    const FieldSpec field = parts.front().field();
    std::size_t total = 0;
    for (const FuzzyFlag& f : parts) {
        require_same_field(field, f.field(), "fuzzy direct sum");
        total += f.dim();
    }
    // Attained values of the min: cuts of the sum at level t are the direct
    // sums of the componentwise cuts at t.
    std::vector<Level> levels;
    for (const FuzzyFlag& f : parts) {
        for (const Level& t : f.image_levels()) {
            levels.push_back(t);
        }
    }
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return b < a; });
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<FuzzyFlag::Entry> candidates;
    Level bottom = levels.back();
    for (const Level& t : levels) {
        std::vector<Subspace> cuts;
        cuts.reserve(parts.size());
        bool empty = false;
        for (const FuzzyFlag& f : parts) {
            std::optional<Subspace> cut = upper_level(f, t);
            if (!cut) {
                empty = true;
                break;
            }
            cuts.push_back(std::move(*cut));
        }
        if (empty) continue;
        candidates.push_back({direct_sum_subspaces(cuts), t});
    }
    // at the global minimum every componentwise cut is full, so the last
    // candidate is the full sum space and the constructor folds it away
    return from_cuts(field, total, std::move(candidates), bottom);
}

FuzzyFlag pullback(const Morphism& f, const FuzzyFlag& target_set) {
    if (!f.certified) {
        throw NotCertified("pullback requires a certified morphism");
    }
    require_same_field(f.target.field(), target_set.field(), "pullback");
    if (target_set.dim() != f.target.dim()) {
        throw DimensionMismatch("pullback: fuzzy set does not live on the target");
    }
    std::vector<FuzzyFlag::Entry> candidates;
    candidates.reserve(target_set.chain().size());
    for (const FuzzyFlag::Entry& e : target_set.chain()) {
        candidates.push_back({preimage(f.map, e.cut), e.level});
    }
    // if the image lies inside some cut, the preimages go full early and the
    // unreachable target values drop out; otherwise the baseline carries over
    return from_cuts(f.source.field(), f.source.dim(), std::move(candidates),
                     target_set.baseline());
}

FuzzyFlag pushforward(const Morphism& f, const FuzzyFlag& source_set) {
    if (!f.certified) {
        throw NotCertified("pushforward requires a certified morphism");
    }
    require_same_field(f.source.field(), source_set.field(), "pushforward");
    if (source_set.dim() != f.source.dim()) {
        throw DimensionMismatch("pushforward: fuzzy set does not live on the source");
    }
    std::vector<FuzzyFlag::Entry> candidates;
    for (const FuzzyFlag::Entry& e : source_set.chain()) {
        candidates.push_back({image(f.map, e.cut), e.level});
    }
    if (!source_set.chain().back().cut.is_full()) {
        // the whole image attains at least the source baseline
        candidates.push_back({image(f.map, Subspace::full(f.source.field(), f.source.dim())),
                              source_set.baseline()});
    }
    // off the image the sup over an empty fiber is 0
    return from_cuts(f.target.field(), f.target.dim(), std::move(candidates), Level());
}

FuzzyTable::FuzzyTable(FieldSpec field, std::size_t dim, std::vector<Level> values)
    : field_(field), dim_(dim), values_(std::move(values)) {
    if (!field_.is_prime_field()) {
        throw UnsupportedField("fuzzy tables require a prime field");
    }
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < dim_; ++i) {
        expected *= field_.p;
    }
    if (values_.size() != expected) {
        throw DimensionMismatch("fuzzy table has " + std::to_string(values_.size()) +
                                " entries, expected " + std::to_string(expected));
    }
}

const Level& FuzzyTable::at_rank(std::uint64_t rank) const {
    if (rank >= values_.size()) {
        throw DimensionMismatch("fuzzy table rank out of range");
    }
    return values_[rank];
}

const Level& FuzzyTable::at(const Vector& x) const {
    require_same_field(field_, x.field(), "fuzzy table lookup");
    if (x.dim() != dim_) {
        throw DimensionMismatch("fuzzy table lookup: dimensions differ");
    }
    return at_rank(vector_rank(x));
}

bool FuzzyTable::operator==(const FuzzyTable& rhs) const {
    return field_ == rhs.field_ && dim_ == rhs.dim_ && values_ == rhs.values_;
}

FuzzyFlag flag_from_table(const FuzzyTable& table) {
    std::vector<Level> levels = table.values();
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return b < a; });
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const FieldSpec field = table.field();
    std::vector<FuzzyFlag::Entry> candidates;
    for (const Level& t : levels) {
        std::vector<Vector> members;
        for (std::uint64_t rank = 0; rank < table.size(); ++rank) {
            if (table.at_rank(rank) >= t) {
                members.push_back(vector_unrank(field, table.dim(), rank));
            }
        }
        Subspace cut = span(members, field, table.dim());
        if (point_count(cut) != members.size()) {
            throw NotSubspaceLeveled("level cut at " + t.str() +
                                     " is not closed under addition and scaling");
        }
        candidates.push_back({std::move(cut), t});
    }
    // the cut at the minimum value is everything, so the tail always folds
    return from_cuts(field, table.dim(), std::move(candidates), levels.back());
}

} // namespace homlie
