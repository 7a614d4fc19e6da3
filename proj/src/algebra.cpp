#include "homlie/algebra.hpp"

#include <algorithm>

namespace homlie {

namespace {

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* what) {
    if (a != b) {
        throw FieldMismatch(std::string(what) + ": " + a.str() + " vs " + b.str());
    }
}

void require_member(const HomLieAlgebra& algebra, const Vector& v, const char* what) {
    require_same_field(algebra.field(), v.field(), what);
    if (v.dim() != algebra.dim()) {
        throw DimensionMismatch(std::string(what) + ": expected dimension " +
                                std::to_string(algebra.dim()) + ", got " +
                                std::to_string(v.dim()));
    }
}

void require_space(const HomLieAlgebra& algebra, const Subspace& s, const char* what) {
    require_same_field(algebra.field(), s.field(), what);
    if (s.ambient_dim() != algebra.dim()) {
        throw DimensionMismatch(std::string(what) + ": subspace lives in dimension " +
                                std::to_string(s.ambient_dim()) + ", algebra has " +
                                std::to_string(algebra.dim()));
    }
}

} // namespace

std::string mode_str(StructureMode mode) {
    return mode == StructureMode::Subalgebra ? "subalgebra" : "ideal";
}

std::string defect_kind_str(SubspaceDefect::Kind kind) {
    return kind == SubspaceDefect::Kind::TwistEscape ? "twist-escape" : "bracket-escape";
}

HomLieAlgebra::HomLieAlgebra(FieldSpec field, std::size_t dim, StructureTable table,
                             Matrix twist, std::string name)
    : field_(field), dim_(dim), table_(std::move(table)), twist_(std::move(twist)),
      name_(std::move(name)) {
    if (twist_.field() != field_) {
        throw FieldMismatch("twist matrix field differs from the algebra field");
    }
    if (twist_.rows() != dim_ || twist_.cols() != dim_) {
        throw DimensionMismatch("twist matrix must be " + std::to_string(dim_) + "x" +
                                std::to_string(dim_));
    }
    for (auto it = table_.begin(); it != table_.end();) {
        const auto& [pair, value] = *it;
        if (pair.first >= pair.second) {
            throw InvariantViolation("structure table stores only pairs i < j, got (" +
                                     std::to_string(pair.first) + ", " +
                                     std::to_string(pair.second) + ")");
        }
        if (pair.second >= dim_) {
            throw DimensionMismatch("structure table index out of range: " +
                                    std::to_string(pair.second));
        }
        require_member(*this, value, "structure constant");
        if (value.is_zero()) {
            it = table_.erase(it);
        } else {
            ++it;
        }
    }
}

Vector HomLieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) {
        throw DimensionMismatch("basis index out of range");
    }
    if (i == j) return Vector(field_, dim_);
    const bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = table_.find({i, j});
    if (it == table_.end()) return Vector(field_, dim_);
    return flip ? it->second.scaled(-Scalar::one(field_)) : it->second;
}

bool HomLieAlgebra::operator==(const HomLieAlgebra& rhs) const {
    return same_structure(rhs) && name_ == rhs.name_;
}

bool HomLieAlgebra::same_structure(const HomLieAlgebra& rhs) const {
    return field_ == rhs.field_ && dim_ == rhs.dim_ && table_ == rhs.table_ &&
           twist_ == rhs.twist_;
}

Vector bracket(const HomLieAlgebra& algebra, const Vector& x, const Vector& y) {
    require_member(algebra, x, "bracket argument");
    require_member(algebra, y, "bracket argument");
    Vector out(algebra.field(), algebra.dim());
    for (const auto& [pair, value] : algebra.structure()) {
        const auto [i, j] = pair;
        // coefficient of [e_i, e_j] in the bilinear expansion
        Scalar c = x.at(i) * y.at(j) - x.at(j) * y.at(i);
        if (!c.is_zero()) {
            out = out + value.scaled(c);
        }
    }
    return out;
}

AxiomReport check_axioms(const HomLieAlgebra& algebra) {
    AxiomReport report;
    const std::size_t n = algebra.dim();
    const Matrix& alpha = algebra.twist();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector ei = Vector::unit(algebra.field(), n, i);
                Vector ej = Vector::unit(algebra.field(), n, j);
                Vector ek = Vector::unit(algebra.field(), n, k);
                Vector sum = bracket(algebra, alpha.apply(ei), algebra.basis_bracket(j, k)) +
                             bracket(algebra, alpha.apply(ej), algebra.basis_bracket(k, i)) +
                             bracket(algebra, alpha.apply(ek), algebra.basis_bracket(i, j));
                if (!sum.is_zero()) {
                    report.valid = false;
                    report.failures.push_back(
                        {AxiomFailure::Kind::TwistedJacobi, {i, j, k}, sum});
                }
            }
        }
    }
    return report;
}

namespace {

std::optional<SubspaceDefect> stability_defect(const HomLieAlgebra& algebra,
                                               const Subspace& candidate,
                                               StructureMode mode) {
    require_space(algebra, candidate, "stability check");
    const auto& basis = candidate.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Vector mapped = algebra.twist().apply(basis[i]);
        if (!contains(candidate, mapped)) {
            return SubspaceDefect{SubspaceDefect::Kind::TwistEscape, i, std::nullopt,
                                  std::move(mapped)};
        }
    }
    if (mode == StructureMode::Subalgebra) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                Vector b = bracket(algebra, basis[i], basis[j]);
                if (!contains(candidate, b)) {
                    return SubspaceDefect{SubspaceDefect::Kind::BracketEscape, i, j,
                                          std::move(b)};
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < algebra.dim(); ++j) {
                Vector b = bracket(algebra, basis[i],
                                   Vector::unit(algebra.field(), algebra.dim(), j));
                if (!contains(candidate, b)) {
                    return SubspaceDefect{SubspaceDefect::Kind::BracketEscape, i, j,
                                          std::move(b)};
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<SubspaceDefect> subalgebra_defect(const HomLieAlgebra& algebra,
                                                const Subspace& candidate) {
    return stability_defect(algebra, candidate, StructureMode::Subalgebra);
}

std::optional<SubspaceDefect> ideal_defect(const HomLieAlgebra& algebra,
                                           const Subspace& candidate) {
    return stability_defect(algebra, candidate, StructureMode::Ideal);
}

bool is_subalgebra(const HomLieAlgebra& algebra, const Subspace& candidate) {
    return !subalgebra_defect(algebra, candidate).has_value();
}

bool is_ideal(const HomLieAlgebra& algebra, const Subspace& candidate) {
    return !ideal_defect(algebra, candidate).has_value();
}

Subspace closure(const HomLieAlgebra& algebra, const std::vector<Vector>& seeds,
                 StructureMode mode) {
    for (const Vector& s : seeds) {
        require_member(algebra, s, "closure seed");
    }
    Subspace current = span(seeds, algebra.field(), algebra.dim());
    for (;;) {
        Subspace next = sum_subspaces(current, image(algebra.twist(), current));
        const auto& basis = current.basis();
        if (mode == StructureMode::Subalgebra) {
            for (std::size_t i = 0; i < basis.size(); ++i) {
                for (std::size_t j = i + 1; j < basis.size(); ++j) {
                    next = sum_subspaces(
                        next, span({bracket(algebra, basis[i], basis[j])}, algebra.field(),
                                   algebra.dim()));
                }
            }
        } else {
            for (std::size_t i = 0; i < basis.size(); ++i) {
                for (std::size_t j = 0; j < algebra.dim(); ++j) {
                    Vector b = bracket(algebra, basis[i],
                                       Vector::unit(algebra.field(), algebra.dim(), j));
                    next = sum_subspaces(next, span({b}, algebra.field(), algebra.dim()));
                }
            }
        }
        if (next == current) return current;
        current = next;
    }
}

HomLieAlgebra direct_sum_algebras(const std::vector<HomLieAlgebra>& parts) {
    if (parts.empty()) {
        throw EmptyList("direct sum of no algebras");
    }
    const FieldSpec field = parts.front().field();
    std::size_t total = 0;
    std::vector<Matrix> twists;
    twists.reserve(parts.size());
    std::string name;
    for (const HomLieAlgebra& a : parts) {
        require_same_field(field, a.field(), "algebra direct sum");
        total += a.dim();
        twists.push_back(a.twist());
        if (!name.empty()) name += "+";
        name += a.name().empty() ? "?" : a.name();
    }
    HomLieAlgebra::StructureTable table;
    std::size_t off = 0;
    for (const HomLieAlgebra& a : parts) {
        for (const auto& [pair, value] : a.structure()) {
            Vector lifted(field, total);
            for (std::size_t i = 0; i < value.dim(); ++i) {
                lifted.set(off + i, value.at(i));
            }
            table.emplace(std::make_pair(off + pair.first, off + pair.second),
                          std::move(lifted));
        }
        off += a.dim();
    }
    return HomLieAlgebra(field, total, std::move(table), Matrix::block_diagonal(twists),
                         std::move(name));
}

bool Morphism::is_onto() const {
    return image(map, Subspace::full(source.field(), source.dim())).rank() == target.dim();
}

bool is_morphism(const Matrix& map, const HomLieAlgebra& source, const HomLieAlgebra& target) {
    require_same_field(source.field(), target.field(), "morphism check");
    if (map.field() != source.field()) {
        throw FieldMismatch("morphism matrix field differs from the algebras");
    }
    if (map.rows() != target.dim() || map.cols() != source.dim()) {
        throw DimensionMismatch("morphism matrix must be " + std::to_string(target.dim()) +
                                "x" + std::to_string(source.dim()));
    }
    if (map * source.twist() != target.twist() * map) {
        return false;
    }
    for (std::size_t i = 0; i < source.dim(); ++i) {
        for (std::size_t j = i + 1; j < source.dim(); ++j) {
            Vector lhs = map.apply(source.basis_bracket(i, j));
            Vector rhs = bracket(target, map.column(i), map.column(j));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

Morphism certify_morphism(const HomLieAlgebra& source, const HomLieAlgebra& target,
                          Matrix map) {
    if (!is_morphism(map, source, target)) {
        throw NotCertified("matrix does not intertwine the twists or preserve brackets");
    }
    return Morphism{source, target, std::move(map), true};
}

std::vector<Morphism> enumerate_morphisms(const HomLieAlgebra& source,
                                          const HomLieAlgebra& target, std::uint64_t cap) {
    require_same_field(source.field(), target.field(), "morphism enumeration");
    if (!source.field().is_prime_field()) {
        throw UnsupportedField("morphism enumeration requires a prime field");
    }
    const std::uint64_t p = source.field().p;
    const std::size_t entries = source.dim() * target.dim();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < entries; ++i) {
        if (total > cap / p) {
            throw CapExceeded("morphism space has more than " + std::to_string(cap) +
                              " candidates");
        }
        total *= p;
    }
    if (total > cap) {
        throw CapExceeded("morphism space has more than " + std::to_string(cap) +
                          " candidates");
    }
    std::vector<Morphism> out;
    std::vector<std::uint32_t> digits(entries, 0);
    for (std::uint64_t step = 0; step < total; ++step) {
        Matrix map(source.field(), target.dim(), source.dim());
        for (std::size_t e = 0; e < entries; ++e) {
            map.set(e / source.dim(), e % source.dim(),
                    Scalar::of_integer(source.field(), digits[e]));
        }
        if (is_morphism(map, source, target)) {
            out.push_back(Morphism{source, target, std::move(map), true});
        }
        for (std::size_t e = entries; e-- > 0;) {
            if (++digits[e] < p) break;
            digits[e] = 0;
        }
    }
    return out;
}

Morphism identity_morphism(const HomLieAlgebra& algebra) {
    return certify_morphism(algebra, algebra, Matrix::identity(algebra.field(), algebra.dim()));
}

Morphism zero_morphism(const HomLieAlgebra& source, const HomLieAlgebra& target) {
    return certify_morphism(source, target, Matrix(source.field(), target.dim(), source.dim()));
}

Morphism inclusion_into_sum(const std::vector<HomLieAlgebra>& parts, std::size_t index) {
    if (index >= parts.size()) {
        throw DimensionMismatch("inclusion index out of range");
    }
    HomLieAlgebra sum = direct_sum_algebras(parts);
    const HomLieAlgebra& part = parts[index];
    std::size_t off = 0;
    for (std::size_t i = 0; i < index; ++i) off += parts[i].dim();
    Matrix map(part.field(), sum.dim(), part.dim());
    for (std::size_t i = 0; i < part.dim(); ++i) {
        map.set(off + i, i, Scalar::one(part.field()));
    }
    return certify_morphism(part, sum, std::move(map));
}

Morphism projection_from_sum(const std::vector<HomLieAlgebra>& parts, std::size_t index) {
    if (index >= parts.size()) {
        throw DimensionMismatch("projection index out of range");
    }
    HomLieAlgebra sum = direct_sum_algebras(parts);
    const HomLieAlgebra& part = parts[index];
    std::size_t off = 0;
    for (std::size_t i = 0; i < index; ++i) off += parts[i].dim();
    Matrix map(part.field(), part.dim(), sum.dim());
    for (std::size_t i = 0; i < part.dim(); ++i) {
        map.set(i, off + i, Scalar::one(part.field()));
    }
    return certify_morphism(sum, part, std::move(map));
}

} // namespace homlie
