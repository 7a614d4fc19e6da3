#include "homlie/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "homlie/io.hpp"

namespace homlie {

namespace {

constexpr std::uint64_t kRejectionBudget = 10000;
// transported fuzzy sets get the quadratic pointwise check only on spaces
// this small; the linear transport laws run everywhere
constexpr std::uint64_t kTransportPointwiseGuard = 64;
// sum-space instances feed the per-set rows only below this size
constexpr std::uint64_t kSumRowGuard = 256;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic generator; modulo bias is irrelevant for test-case
/// diversity and keeping the stream platform-stable matters more.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t below(std::uint64_t n) { return eng() % n; }
    std::mt19937_64 eng;
};

std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t range, std::size_t count) {
    std::vector<std::size_t> all(range);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t t = 0; t < count; ++t) {
        std::swap(all[t], all[t + rng.below(range - t)]);
    }
    all.resize(count);
    return all;
}

Vector random_vector(Rng& rng, const FieldSpec& field, std::size_t dim) {
    Vector v(field, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v.set(i, Scalar::of_integer(field, static_cast<long long>(rng.below(field.p))));
    }
    return v;
}

Vector random_nonzero_vector(Rng& rng, const FieldSpec& field, std::size_t dim) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Vector v = random_vector(rng, field, dim);
        if (!v.is_zero()) return v;
    }
    return Vector::unit(field, dim, 0);
}

HomLieAlgebra::StructureTable random_sparse_brackets(Rng& rng, const FieldSpec& field,
                                                     std::size_t dim) {
    HomLieAlgebra::StructureTable table;
    const std::size_t npairs = dim * (dim - 1) / 2;
    if (npairs == 0) return table;
    const std::size_t max_entries = std::min(npairs, (dim + 1) / 2);
    const std::size_t count = rng.below(max_entries + 1);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    for (std::size_t idx : sample_distinct(rng, npairs, count)) {
        table.emplace(pairs[idx], random_nonzero_vector(rng, field, dim));
    }
    return table;
}

Matrix random_matrix(Rng& rng, const FieldSpec& field, std::size_t rows, std::size_t cols) {
    Matrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, Scalar::of_integer(field, static_cast<long long>(rng.below(field.p))));
        }
    }
    return m;
}

HomLieAlgebra nilpotent3d_algebra(const FieldSpec& field, std::string name) {
    HomLieAlgebra::StructureTable table;
    table.emplace(std::make_pair<std::size_t, std::size_t>(0, 2),
                  Vector::unit(field, 3, 0));
    Matrix twist(field, 3, 3);
    twist.set(1, 0, Scalar::one(field));
    return HomLieAlgebra(field, 3, std::move(table), std::move(twist), std::move(name));
}

HomLieAlgebra build_family_algebra(const InstanceParams& params) {
    const FieldSpec field = FieldSpec::gf(params.p);
    std::string name = "gf" + std::to_string(params.p) + "-d" + std::to_string(params.dim) +
                       "-" + family_str(params.family) + "-s" + std::to_string(params.seed);
    Rng rng(splitmix64(params.seed ^ 0xA15EB75ULL));
    switch (params.family) {
    case Family::ZeroTwist:
        return HomLieAlgebra(field, params.dim, random_sparse_brackets(rng, field, params.dim),
                             Matrix(field, params.dim, params.dim), std::move(name));
    case Family::ZeroBracket:
        return HomLieAlgebra(field, params.dim, {},
                             random_matrix(rng, field, params.dim, params.dim),
                             std::move(name));
    case Family::Nilpotent3d:
        return nilpotent3d_algebra(field, std::move(name));
    case Family::RejectionSampled:
        for (std::uint64_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
            HomLieAlgebra candidate(field, params.dim,
                                    random_sparse_brackets(rng, field, params.dim),
                                    random_matrix(rng, field, params.dim, params.dim), name);
            if (check_axioms(candidate).valid) return candidate;
        }
        throw RetriesExhausted("no valid random table after " +
                               std::to_string(kRejectionBudget) + " attempts");
    }
    throw InvalidParams("unknown family");
}

/// Chain of closures of random vectors: strictly nested subspaces that pass
/// the mode's structure check by construction, with random exact levels.
FuzzyFlag random_flag_on(const HomLieAlgebra& algebra, std::uint64_t seed,
                         std::size_t flag_depth, StructureMode mode) {
    const FieldSpec field = algebra.field();
    const std::size_t dim = algebra.dim();
    Rng rng(splitmix64(seed ^ 0xF1A6ULL));

    std::vector<Subspace> pool;
    pool.push_back(Subspace::zero(field, dim));
    while (!pool.back().is_full()) {
        const Subspace& current = pool.back();
        Vector v = random_nonzero_vector(rng, field, dim);
        for (int attempt = 0; attempt < 64 && contains(current, v); ++attempt) {
            v = random_nonzero_vector(rng, field, dim);
        }
        if (contains(current, v)) {
            for (std::size_t i = 0; i < dim; ++i) {
                Vector e = Vector::unit(field, dim, i);
                if (!contains(current, e)) {
                    v = std::move(e);
                    break;
                }
            }
        }
        std::vector<Vector> seeds = current.basis();
        seeds.push_back(std::move(v));
        pool.push_back(closure(algebra, seeds, mode));
    }

    const std::size_t k = std::min(flag_depth, pool.size());
    std::vector<std::size_t> chosen = sample_distinct(rng, pool.size(), k);
    std::sort(chosen.begin(), chosen.end());

    // distinct numerators over a fixed denominator keep the levels exact and
    // strictly decreasing; the extra draw feeds the baseline
    std::vector<std::size_t> numerators = sample_distinct(rng, 61, k + 1);
    std::sort(numerators.begin(), numerators.end(), std::greater<>());

    std::vector<FuzzyFlag::Entry> entries;
    entries.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        entries.push_back({pool[chosen[t]],
                           Level(Rational(static_cast<long>(numerators[t]), 60))});
    }
    Level baseline(Rational(static_cast<long>(numerators[k]), 60));
    return FuzzyFlag(field, dim, std::move(entries), baseline);
}

// --- dense GF(p) engine -----------------------------------------------------
// Flat residue tables; no exact scalars in the quadratic loops.

struct DenseSpace {
    std::uint32_t p = 2;
    std::size_t n = 0;
    std::uint64_t count = 1;
    std::vector<std::uint64_t> pw; // pw[i] = p^(n-1-i)

    DenseSpace() = default;
    DenseSpace(std::uint32_t p, std::size_t n) : p(p), n(n), pw(n) {
        for (std::size_t i = n; i-- > 0;) {
            pw[i] = count;
            count *= p;
        }
    }

    void unrank(std::uint64_t r, std::uint32_t* out) const {
        for (std::size_t i = n; i-- > 0;) {
            out[i] = static_cast<std::uint32_t>(r % p);
            r /= p;
        }
    }

    std::uint64_t rank(const std::uint32_t* d) const {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < n; ++i) {
            r += d[i] * pw[i];
        }
        return r;
    }
};

struct DenseAlgebra {
    DenseSpace space;
    std::vector<std::uint32_t> c; // c[(i*n+j)*n + k], full antisymmetric table
    std::vector<std::uint32_t> a; // a[i*n + j], twist rows

    explicit DenseAlgebra(const HomLieAlgebra& algebra)
        : space(algebra.field().p, algebra.dim()) {
        const std::size_t n = space.n;
        c.assign(n * n * n, 0);
        a.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Vector v = algebra.basis_bracket(i, j);
                for (std::size_t k = 0; k < n; ++k) {
                    c[(i * n + j) * n + k] = static_cast<std::uint32_t>(v.at(k).residue());
                }
                a[i * n + j] = static_cast<std::uint32_t>(algebra.twist().at(i, j).residue());
            }
        }
    }

    void bracket(const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out) const {
        const std::size_t n = space.n;
        std::uint64_t acc[8] = {};
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                const std::uint64_t m = std::uint64_t(x[i]) * y[j];
                const std::uint32_t* row = &c[(i * n + j) * n];
                for (std::size_t k = 0; k < n; ++k) {
                    acc[k] += m * row[k];
                }
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = static_cast<std::uint32_t>(acc[k] % space.p);
        }
    }

    void twist(const std::uint32_t* x, std::uint32_t* out) const {
        const std::size_t n = space.n;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += std::uint64_t(a[i * n + j]) * x[j];
            }
            out[i] = static_cast<std::uint32_t>(acc % space.p);
        }
    }
};

struct DenseMap {
    DenseSpace source;
    DenseSpace target;
    std::vector<std::uint32_t> m; // m[r*cols + c]

    explicit DenseMap(const Morphism& f)
        : source(f.source.field().p, f.source.dim()),
          target(f.target.field().p, f.target.dim()), m(target.n * source.n) {
        for (std::size_t r = 0; r < target.n; ++r) {
            for (std::size_t c = 0; c < source.n; ++c) {
                m[r * source.n + c] =
                    static_cast<std::uint32_t>(f.map.at(r, c).residue());
            }
        }
    }

    void apply(const std::uint32_t* x, std::uint32_t* out) const {
        for (std::size_t r = 0; r < target.n; ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < source.n; ++c) {
                acc += std::uint64_t(m[r * source.n + c]) * x[c];
            }
            out[r] = static_cast<std::uint32_t>(acc % target.p);
        }
    }
};

/// Table values replaced by indices into the descending distinct-level list:
/// value(x) >= value(y) iff idx(x) <= idx(y).
struct DenseTable {
    std::vector<Level> levels;
    std::vector<std::uint32_t> idx;

    explicit DenseTable(const FuzzyTable& table) {
        levels = table.values();
        std::sort(levels.begin(), levels.end(),
                  [](const Level& a, const Level& b) { return b < a; });
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        idx.resize(table.size());
        for (std::uint64_t r = 0; r < table.size(); ++r) {
            const Level& v = table.at_rank(r);
            std::uint32_t i = 0;
            while (levels[i] != v) ++i;
            idx[r] = i;
        }
    }
};

/// All digit tuples of the space, rank-major, flattened.
std::vector<std::uint32_t> all_digits(const DenseSpace& space) {
    std::vector<std::uint32_t> out(space.count * space.n);
    for (std::uint64_t r = 0; r < space.count; ++r) {
        space.unrank(r, &out[r * space.n]);
    }
    return out;
}

} // namespace

std::string family_str(Family family) {
    switch (family) {
    case Family::ZeroTwist: return "zero-twist";
    case Family::ZeroBracket: return "zero-bracket";
    case Family::Nilpotent3d: return "nilpotent-3d";
    case Family::RejectionSampled: return "rejection-sampled";
    }
    return "?";
}

std::string condition_str(PointwiseCondition condition, StructureMode mode) {
    switch (condition) {
    case PointwiseCondition::Additivity: return "additivity";
    case PointwiseCondition::Scaling: return "scaling";
    case PointwiseCondition::Bracket:
        return mode == StructureMode::Subalgebra ? "bracket-meet" : "bracket-join";
    case PointwiseCondition::Twist: return "twist";
    }
    return "?";
}

void InstanceParams::validate() const {
    if (p != 2 && p != 3 && p != 5) {
        throw InvalidParams("p must be 2, 3 or 5, got " + std::to_string(p));
    }
    if (dim < 1 || dim > 3) {
        throw InvalidParams("dim must be 1..3, got " + std::to_string(dim));
    }
    if (flag_depth < 1 || flag_depth > dim + 1) {
        throw InvalidParams("flag_depth must be 1..dim+1, got " + std::to_string(flag_depth));
    }
    if (family == Family::Nilpotent3d && dim != 3) {
        throw InvalidParams("the nilpotent-3d family is three-dimensional");
    }
}

Instance random_instance(const InstanceParams& params, StructureMode mode) {
    params.validate();
    HomLieAlgebra algebra = build_family_algebra(params);
    FuzzyFlag flag = random_flag_on(algebra, splitmix64(params.seed ^ 0xF1A65EEDULL),
                                    params.flag_depth, mode);
    return Instance{std::move(algebra), std::move(flag)};
}

FuzzyTable table_from_flag(const FuzzyFlag& set, std::uint64_t cap) {
    if (!set.field().is_prime_field()) {
        throw UnsupportedField("tabulation requires a prime field");
    }
    const std::uint64_t p = set.field().p;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < set.dim(); ++i) {
        if (count > cap / p) {
            throw CapExceeded("space has more than " + std::to_string(cap) + " points");
        }
        count *= p;
    }
    // paint cuts from the largest down so smaller cuts overwrite with their
    // higher level; untouched ranks sit at the baseline
    std::vector<Level> values(count, set.baseline());
    const auto& chain = set.chain();
    for (std::size_t e = chain.size(); e-- > 0;) {
        VectorEnumerator it(chain[e].cut, cap);
        while (!it.done()) {
            values[vector_rank(it.next())] = chain[e].level;
        }
    }
    return FuzzyTable(set.field(), set.dim(), std::move(values));
}

PointwiseReport pointwise_check(const FuzzyTable& table, const HomLieAlgebra& algebra,
                                StructureMode mode) {
    if (table.field() != algebra.field()) {
        throw FieldMismatch("table and algebra fields differ");
    }
    if (table.dim() != algebra.dim()) {
        throw DimensionMismatch("table and algebra dimensions differ");
    }
    if (algebra.dim() > 8) {
        throw CapExceeded("pointwise check supports dimension <= 8");
    }
    const DenseAlgebra dense(algebra);
    const DenseSpace& space = dense.space;
    const DenseTable dt(table);
    const std::vector<std::uint32_t> digits = all_digits(space);
    const std::size_t n = space.n;
    const std::uint64_t N = space.count;
    const FieldSpec field = table.field();

    PointwiseReport report;
    std::uint32_t buf[8];

    auto fail = [&](PointwiseCondition cond, std::uint64_t xr,
                    std::optional<std::uint64_t> yr, std::optional<std::uint32_t> c,
                    std::uint32_t lhs_idx, std::uint32_t rhs_idx) {
        PointwiseWitness w{cond,
                           mode,
                           vector_unrank(field, n, xr),
                           std::nullopt,
                           std::nullopt,
                           dt.levels[lhs_idx],
                           dt.levels[rhs_idx]};
        if (yr) w.y = vector_unrank(field, n, *yr);
        if (c) w.scalar = Scalar::of_integer(field, *c);
        report.ok = false;
        report.witness = std::move(w);
    };

    // membership of a sum: value(x+y) >= min(value x, value y)
    for (std::uint64_t xr = 0; xr < N; ++xr) {
        const std::uint32_t* dx = &digits[xr * n];
        for (std::uint64_t yr = 0; yr < N; ++yr) {
            const std::uint32_t* dy = &digits[yr * n];
            std::uint64_t sr = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint32_t s = dx[i] + dy[i];
                if (s >= space.p) s -= space.p;
                sr += s * space.pw[i];
            }
            ++report.checked;
            const std::uint32_t bound = std::max(dt.idx[xr], dt.idx[yr]);
            if (dt.idx[sr] > bound) {
                fail(PointwiseCondition::Additivity, xr, yr, std::nullopt, dt.idx[sr], bound);
                return report;
            }
        }
    }
    // scalar multiples, including c = 0: value(cx) >= value(x)
    for (std::uint64_t xr = 0; xr < N; ++xr) {
        const std::uint32_t* dx = &digits[xr * n];
        for (std::uint32_t c = 0; c < space.p; ++c) {
            std::uint64_t sr = 0;
            for (std::size_t i = 0; i < n; ++i) {
                sr += (dx[i] * c % space.p) * space.pw[i];
            }
            ++report.checked;
            if (dt.idx[sr] > dt.idx[xr]) {
                fail(PointwiseCondition::Scaling, xr, std::nullopt, c, dt.idx[sr],
                     dt.idx[xr]);
                return report;
            }
        }
    }
    // brackets: subalgebras bound by the meet, ideals by the join
    for (std::uint64_t xr = 0; xr < N; ++xr) {
        const std::uint32_t* dx = &digits[xr * n];
        for (std::uint64_t yr = 0; yr < N; ++yr) {
            dense.bracket(dx, &digits[yr * n], buf);
            const std::uint64_t br = space.rank(buf);
            ++report.checked;
            const std::uint32_t bound = mode == StructureMode::Subalgebra
                                            ? std::max(dt.idx[xr], dt.idx[yr])
                                            : std::min(dt.idx[xr], dt.idx[yr]);
            if (dt.idx[br] > bound) {
                fail(PointwiseCondition::Bracket, xr, yr, std::nullopt, dt.idx[br], bound);
                return report;
            }
        }
    }
    // twist images: value(alpha x) >= value(x)
    for (std::uint64_t xr = 0; xr < N; ++xr) {
        dense.twist(&digits[xr * n], buf);
        const std::uint64_t tr = space.rank(buf);
        ++report.checked;
        if (dt.idx[tr] > dt.idx[xr]) {
            fail(PointwiseCondition::Twist, xr, std::nullopt, std::nullopt, dt.idx[tr],
                 dt.idx[xr]);
            return report;
        }
    }
    return report;
}

Finding search_sum_counterexample(const InstanceParams& params, std::uint64_t budget,
                                  StructureMode mode) {
    params.validate();
    if (budget == 0) {
        throw InvalidParams("search budget must be positive");
    }
    for (std::uint64_t it = 0; it < budget; ++it) {
        InstanceParams pa = params;
        pa.seed = splitmix64(params.seed ^ (2 * it + 1));
        InstanceParams pb = params;
        pb.seed = splitmix64(params.seed ^ (2 * it + 2));
        Instance first = random_instance(pa, mode);
        Instance second = random_instance(pb, mode);

        HomLieAlgebra sum = direct_sum_algebras({first.algebra, second.algebra});
        FuzzyFlag sum_flag = fuzzy_direct_sum({first.flag, second.flag});
        FuzzyTable table = table_from_flag(sum_flag);
        PointwiseReport report = pointwise_check(table, sum, mode);
        if (!report.ok) {
            InstancePair pair{first.algebra, first.flag, second.algebra, second.flag};
            return Finding{Finding::Kind::Counterexample, it + 1,
                           serialize_instance_pair(pair), std::move(report.witness)};
        }
    }
    return Finding{Finding::Kind::Exhausted, budget, "", std::nullopt};
}

bool reverify_sum_counterexample(const std::string& instance_json, StructureMode mode) {
    InstancePair pair = parse_instance_pair(instance_json);
    auto check = [&](const FuzzyFlag& flag, const HomLieAlgebra& algebra) {
        FuzzyCheckReport r = mode == StructureMode::Subalgebra
                                 ? is_fuzzy_subalgebra(flag, algebra)
                                 : is_fuzzy_ideal(flag, algebra);
        return r.ok;
    };
    if (!check(pair.first_flag, pair.first_algebra) ||
        !check(pair.second_flag, pair.second_algebra)) {
        return false; // antecedent broken: not a counterexample to the sum law
    }
    HomLieAlgebra sum = direct_sum_algebras({pair.first_algebra, pair.second_algebra});
    FuzzyFlag sum_flag = fuzzy_direct_sum({pair.first_flag, pair.second_flag});
    FuzzyTable table = table_from_flag(sum_flag);
    return !pointwise_check(table, sum, mode).ok;
}

bool SuiteReport::all_agree() const {
    for (const SuiteRow& r : rows) {
        if (r.id.rfind("info:", 0) == 0) continue;
        if (r.disagreements != 0) return false;
    }
    return true;
}

namespace {

struct RowAccum {
    std::vector<SuiteRow> rows;

    SuiteRow& row(const std::string& id) {
        for (SuiteRow& r : rows) {
            if (r.id == id) return r;
        }
        rows.push_back(SuiteRow{id, 0, 0, 0, ""});
        return rows.back();
    }

    void tally(const std::string& id, bool agree, const std::string& witness) {
        SuiteRow& r = row(id);
        ++r.instances;
        if (agree) {
            ++r.agreements;
        } else {
            ++r.disagreements;
            if (r.first_witness.empty()) {
                r.first_witness = witness;
            }
        }
    }
};

std::string describe(const InstanceParams& params) {
    return "p=" + std::to_string(params.p) + " dim=" + std::to_string(params.dim) +
           " depth=" + std::to_string(params.flag_depth) + " seed=" +
           std::to_string(params.seed) + " family=" + family_str(params.family);
}

std::string describe_witness(const PointwiseWitness& w) {
    std::string out = condition_str(w.condition, w.mode) + " at x=" + w.x.str();
    if (w.y) out += " y=" + w.y->str();
    if (w.scalar) out += " c=" + w.scalar->str();
    out += ": " + w.lhs.str() + " vs bound " + w.rhs.str();
    return out;
}

Family rotate_family(Family f, std::size_t steps, std::size_t dim) {
    auto idx = static_cast<std::size_t>(f);
    for (std::size_t s = 0; s < steps; ++s) {
        idx = (idx + 1) % 4;
        if (static_cast<Family>(idx) == Family::Nilpotent3d && dim != 3) {
            idx = (idx + 1) % 4;
        }
    }
    return static_cast<Family>(idx);
}

InstanceParams derive_params(const InstanceParams& base, std::size_t dim,
                             std::uint64_t salt, std::size_t family_steps) {
    InstanceParams out = base;
    out.dim = dim;
    out.flag_depth = std::min(base.flag_depth, dim + 1);
    out.seed = splitmix64(base.seed ^ salt);
    out.family = rotate_family(base.family, family_steps, dim);
    return out;
}

/// Set-based crisp stability of one level cut, straight from the table: no
/// subspace machinery, the independent reading of "every cut is a
/// subalgebra/ideal".
bool crisp_cut_ok(const DenseAlgebra& dense, const std::vector<std::uint32_t>& digits,
                  const std::vector<char>& member, StructureMode mode) {
    const DenseSpace& space = dense.space;
    const std::size_t n = space.n;
    std::uint32_t buf[8];
    for (std::uint64_t xr = 0; xr < space.count; ++xr) {
        if (!member[xr]) continue;
        const std::uint32_t* dx = &digits[xr * n];
        dense.twist(dx, buf);
        if (!member[space.rank(buf)]) return false;
        for (std::uint64_t yr = 0; yr < space.count; ++yr) {
            const bool other_in = member[yr] != 0;
            if (mode == StructureMode::Subalgebra && !other_in) continue;
            dense.bracket(dx, &digits[yr * n], buf);
            if (!member[space.rank(buf)]) return false;
            // closure under addition makes the cut a candidate subspace; the
            // per-set rows already police that, here stability is the point
        }
    }
    return true;
}

struct SetUnderTest {
    const HomLieAlgebra* algebra;
    const FuzzyFlag* flag;
    const FuzzyTable* table;
    std::string label;
};

void per_set_rows(RowAccum& acc, const SetUnderTest& s) {
    const DenseAlgebra dense(*s.algebra);
    const DenseTable dt(*s.table);
    const std::vector<std::uint32_t> digits = all_digits(dense.space);
    const std::uint64_t N = dense.space.count;

    const bool flag_sub = is_fuzzy_subalgebra(*s.flag, *s.algebra).ok;
    const bool flag_ideal = is_fuzzy_ideal(*s.flag, *s.algebra).ok;
    PointwiseReport pw_sub = pointwise_check(*s.table, *s.algebra, StructureMode::Subalgebra);
    PointwiseReport pw_ideal = pointwise_check(*s.table, *s.algebra, StructureMode::Ideal);

    acc.tally("flag-pointwise-subalgebra", flag_sub == pw_sub.ok,
              s.label + (pw_sub.witness ? ": " + describe_witness(*pw_sub.witness) : ""));
    acc.tally("flag-pointwise-ideal", flag_ideal == pw_ideal.ok,
              s.label + (pw_ideal.witness ? ": " + describe_witness(*pw_ideal.witness) : ""));

    // crisp cut routes: every weak (strong) cut at an attained level stable
    bool weak_sub = true, weak_ideal = true, strong_sub = true, strong_ideal = true;
    std::vector<char> member(N);
    for (const Level& t : s.flag->image_levels()) {
        for (std::uint64_t r = 0; r < N; ++r) {
            member[r] = s.table->at_rank(r) >= t ? 1 : 0;
        }
        weak_sub = weak_sub && crisp_cut_ok(dense, digits, member, StructureMode::Subalgebra);
        weak_ideal = weak_ideal && crisp_cut_ok(dense, digits, member, StructureMode::Ideal);
        for (std::uint64_t r = 0; r < N; ++r) {
            member[r] = s.table->at_rank(r) > t ? 1 : 0;
        }
        strong_sub =
            strong_sub && crisp_cut_ok(dense, digits, member, StructureMode::Subalgebra);
        strong_ideal = strong_ideal && crisp_cut_ok(dense, digits, member, StructureMode::Ideal);
    }
    acc.tally("upper-cut-subalgebra-equivalence", flag_sub == weak_sub, s.label);
    acc.tally("upper-cut-ideal-equivalence", flag_ideal == weak_ideal, s.label);
    acc.tally("strong-cut-subalgebra-equivalence", flag_sub == strong_sub, s.label);
    acc.tally("strong-cut-ideal-equivalence", flag_ideal == strong_ideal, s.label);

    // flag cuts realize exactly the table cuts
    bool coherent = true;
    for (const Level& t : s.flag->image_levels()) {
        std::optional<Subspace> weak = upper_level(*s.flag, t);
        std::optional<Subspace> strong = strong_upper_level(*s.flag, t);
        for (std::uint64_t r = 0; r < N && coherent; ++r) {
            Vector x = vector_unrank(s.table->field(), s.table->dim(), r);
            const bool in_weak = weak && contains(*weak, x);
            const bool in_strong = strong && contains(*strong, x);
            coherent = in_weak == (s.table->at_rank(r) >= t) &&
                       in_strong == (s.table->at_rank(r) > t);
        }
    }
    acc.tally("cut-membership-coherence", coherent, s.label);

    acc.tally("flag-table-roundtrip", flag_from_table(*s.table) == *s.flag, s.label);
}

} // namespace

SuiteReport theorem_suite(const std::vector<InstanceParams>& batch, std::uint64_t cap) {
    RowAccum acc;
    // fix the display order
    for (const char* id :
         {"flag-pointwise-subalgebra", "flag-pointwise-ideal",
          "upper-cut-subalgebra-equivalence", "upper-cut-ideal-equivalence",
          "strong-cut-subalgebra-equivalence", "strong-cut-ideal-equivalence",
          "cut-membership-coherence", "flag-table-roundtrip", "sum-min-law",
          "sum-min-law-triple", "sum-preserves-subalgebra", "sum-preserves-ideal",
          "pullback-composition-law", "pullback-preserves-subalgebra",
          "pullback-preserves-ideal", "pushforward-fiber-law",
          "pushforward-preserves-subalgebra-onto", "pushforward-preserves-subalgebra-general",
          "pushforward-preserves-ideal-onto", "info:pushforward-ideal-non-onto"}) {
        acc.row(id);
    }

    for (const InstanceParams& params : batch) {
        params.validate();
        const std::string label = describe(params);

        // two algebras with a subalgebra-mode and an ideal-mode set on each
        HomLieAlgebra a1 = build_family_algebra(params);
        FuzzyFlag mu1 = random_flag_on(a1, splitmix64(params.seed ^ 0xF1A65EEDULL),
                                       params.flag_depth, StructureMode::Subalgebra);
        FuzzyFlag nu1 = random_flag_on(a1, splitmix64(params.seed ^ 0x1DEA15ULL),
                                       params.flag_depth, StructureMode::Ideal);

        const std::size_t dim2 = params.p == 2 ? params.dim : (params.dim <= 2 ? params.dim : 1);
        InstanceParams p2 = derive_params(params, dim2, 0xA11CEULL, 1);
        HomLieAlgebra a2 = build_family_algebra(p2);
        FuzzyFlag mu2 = random_flag_on(a2, splitmix64(p2.seed ^ 0xF1A65EEDULL), p2.flag_depth,
                                       StructureMode::Subalgebra);
        FuzzyFlag nu2 = random_flag_on(a2, splitmix64(p2.seed ^ 0x1DEA15ULL), p2.flag_depth,
                                       StructureMode::Ideal);

        FuzzyTable t1 = table_from_flag(mu1, cap);
        FuzzyTable tn1 = table_from_flag(nu1, cap);
        FuzzyTable t2 = table_from_flag(mu2, cap);
        FuzzyTable tn2 = table_from_flag(nu2, cap);

        per_set_rows(acc, {&a1, &mu1, &t1, label + " mu1"});
        per_set_rows(acc, {&a1, &nu1, &tn1, label + " nu1"});
        per_set_rows(acc, {&a2, &mu2, &t2, label + " mu2"});
        per_set_rows(acc, {&a2, &nu2, &tn2, label + " nu2"});

        // direct sums
        HomLieAlgebra sum = direct_sum_algebras({a1, a2});
        FuzzyFlag mu_sum = fuzzy_direct_sum({mu1, mu2});
        FuzzyFlag nu_sum = fuzzy_direct_sum({nu1, nu2});
        FuzzyTable ts = table_from_flag(mu_sum, cap);
        FuzzyTable tns = table_from_flag(nu_sum, cap);

        auto check_min_law = [&](const FuzzyTable& sum_table, const FuzzyTable& left,
                                 const FuzzyTable& right) {
            for (std::uint64_t xr = 0; xr < left.size(); ++xr) {
                for (std::uint64_t yr = 0; yr < right.size(); ++yr) {
                    const Level& got = sum_table.at_rank(xr * right.size() + yr);
                    const Level want = meet(left.at_rank(xr), right.at_rank(yr));
                    if (got != want) return false;
                }
            }
            return true;
        };
        acc.tally("sum-min-law",
                  check_min_law(ts, t1, t2) && check_min_law(tns, tn1, tn2), label);

        acc.tally("sum-preserves-subalgebra",
                  is_fuzzy_subalgebra(mu_sum, sum).ok &&
                      pointwise_check(ts, sum, StructureMode::Subalgebra).ok,
                  label);
        acc.tally("sum-preserves-ideal",
                  is_fuzzy_ideal(nu_sum, sum).ok &&
                      pointwise_check(tns, sum, StructureMode::Ideal).ok,
                  label);

        if (ts.size() <= kSumRowGuard) {
            per_set_rows(acc, {&sum, &mu_sum, &ts, label + " sum"});
            per_set_rows(acc, {&sum, &nu_sum, &tns, label + " nu-sum"});
        }

        if (params.seed % 3 == 0) {
            InstanceParams p3 = derive_params(params, 1, 0xB0BULL, 2);
            HomLieAlgebra a3 = build_family_algebra(p3);
            FuzzyFlag mu3 = random_flag_on(a3, splitmix64(p3.seed ^ 0xF1A65EEDULL),
                                           p3.flag_depth, StructureMode::Subalgebra);
            FuzzyTable t3 = table_from_flag(mu3, cap);
            FuzzyTable t123 = table_from_flag(fuzzy_direct_sum({mu1, mu2, mu3}), cap);
            bool ok = true;
            for (std::uint64_t xr = 0; xr < t1.size() && ok; ++xr) {
                for (std::uint64_t yr = 0; yr < t2.size() && ok; ++yr) {
                    for (std::uint64_t zr = 0; zr < t3.size() && ok; ++zr) {
                        const Level& got =
                            t123.at_rank((xr * t2.size() + yr) * t3.size() + zr);
                        ok = got == meet(t1.at_rank(xr),
                                         meet(t2.at_rank(yr), t3.at_rank(zr)));
                    }
                }
            }
            acc.tally("sum-min-law-triple", ok, label);
        }

        // morphism transports
        std::vector<Morphism> morphisms;
        if (params.p == 2 && params.dim <= 2 && dim2 <= 2) {
            morphisms = enumerate_morphisms(a1, a2, cap);
        }
        morphisms.push_back(identity_morphism(a1));
        morphisms.push_back(zero_morphism(a1, a2));
        morphisms.push_back(inclusion_into_sum({a1, a2}, 0));
        morphisms.push_back(projection_from_sum({a1, a2}, 0));

        for (const Morphism& f : morphisms) {
            const DenseMap dm(f);
            const std::vector<std::uint32_t> src_digits = all_digits(dm.source);
            const bool onto = f.is_onto();
            std::uint32_t buf[8];

            // pick the sets living on f's endpoints
            const bool src_is_sum = f.source.dim() == sum.dim();
            const bool tgt_is_sum = f.target.dim() == sum.dim();
            const bool tgt_is_a1 = !tgt_is_sum && f.target.same_structure(a1);
            const FuzzyFlag& src_mu = src_is_sum ? mu_sum : mu1;
            const FuzzyFlag& src_nu = src_is_sum ? nu_sum : nu1;
            const FuzzyTable& src_t = src_is_sum ? ts : t1;
            const FuzzyTable& src_tn = src_is_sum ? tns : tn1;
            const FuzzyFlag& tgt_mu = tgt_is_sum ? mu_sum : (tgt_is_a1 ? mu1 : mu2);
            const FuzzyFlag& tgt_nu = tgt_is_sum ? nu_sum : (tgt_is_a1 ? nu1 : nu2);
            const FuzzyTable& tgt_t = tgt_is_sum ? ts : (tgt_is_a1 ? t1 : t2);
            const FuzzyTable& tgt_tn = tgt_is_sum ? tns : (tgt_is_a1 ? tn1 : tn2);

            auto pull_law = [&](const FuzzyFlag& target_set, const FuzzyTable& target_table) {
                FuzzyTable pulled = table_from_flag(pullback(f, target_set), cap);
                for (std::uint64_t xr = 0; xr < dm.source.count; ++xr) {
                    dm.apply(&src_digits[xr * dm.source.n], buf);
                    if (pulled.at_rank(xr) != target_table.at_rank(dm.target.rank(buf))) {
                        return false;
                    }
                }
                return true;
            };
            acc.tally("pullback-composition-law",
                      pull_law(tgt_mu, tgt_t) && pull_law(tgt_nu, tgt_tn), label);

            auto transported_ok = [&](const FuzzyFlag& set, const HomLieAlgebra& algebra,
                                      StructureMode mode) {
                FuzzyCheckReport flag_report = mode == StructureMode::Subalgebra
                                                   ? is_fuzzy_subalgebra(set, algebra)
                                                   : is_fuzzy_ideal(set, algebra);
                if (!flag_report.ok) return false;
                std::uint64_t pts = 1;
                for (std::size_t i = 0; i < set.dim(); ++i) pts *= set.field().p;
                if (pts <= kTransportPointwiseGuard) {
                    return pointwise_check(table_from_flag(set, cap), algebra, mode).ok;
                }
                return true;
            };

            if (is_fuzzy_subalgebra(tgt_mu, f.target).ok) {
                acc.tally("pullback-preserves-subalgebra",
                          transported_ok(pullback(f, tgt_mu), f.source,
                                         StructureMode::Subalgebra),
                          label);
            }
            if (is_fuzzy_ideal(tgt_nu, f.target).ok) {
                acc.tally("pullback-preserves-ideal",
                          transported_ok(pullback(f, tgt_nu), f.source, StructureMode::Ideal),
                          label);
            }

            auto push_law = [&](const FuzzyFlag& source_set, const FuzzyTable& source_table) {
                FuzzyTable pushed = table_from_flag(pushforward(f, source_set), cap);
                const DenseTable src_levels(source_table);
                constexpr std::uint32_t kEmpty = 0xFFFFFFFF;
                std::vector<std::uint32_t> best(dm.target.count, kEmpty);
                for (std::uint64_t xr = 0; xr < dm.source.count; ++xr) {
                    dm.apply(&src_digits[xr * dm.source.n], buf);
                    const std::uint64_t yr = dm.target.rank(buf);
                    best[yr] = std::min(best[yr], src_levels.idx[xr]);
                }
                for (std::uint64_t yr = 0; yr < dm.target.count; ++yr) {
                    const Level want =
                        best[yr] == kEmpty ? Level() : src_levels.levels[best[yr]];
                    if (pushed.at_rank(yr) != want) return false;
                }
                return true;
            };
            acc.tally("pushforward-fiber-law",
                      push_law(src_mu, src_t) && push_law(src_nu, src_tn), label);

            if (is_fuzzy_subalgebra(src_mu, f.source).ok) {
                acc.tally(onto ? "pushforward-preserves-subalgebra-onto"
                               : "pushforward-preserves-subalgebra-general",
                          transported_ok(pushforward(f, src_mu), f.target,
                                         StructureMode::Subalgebra),
                          label);
            }
            if (is_fuzzy_ideal(src_nu, f.source).ok) {
                if (onto) {
                    acc.tally("pushforward-preserves-ideal-onto",
                              transported_ok(pushforward(f, src_nu), f.target,
                                             StructureMode::Ideal),
                              label);
                } else {
                    acc.tally("info:pushforward-ideal-non-onto",
                              is_fuzzy_ideal(pushforward(f, src_nu), f.target).ok, label);
                }
            }
        }
    }

    SuiteReport report;
    report.rows = std::move(acc.rows);
    return report;
}

std::vector<InstanceParams> make_batch(std::uint64_t base_seed, std::uint64_t count,
                                       std::uint32_t p, std::size_t dim) {
    std::vector<InstanceParams> out;
    out.reserve(count);
    for (std::uint64_t s = 0; s < count; ++s) {
        InstanceParams params;
        params.p = p;
        params.dim = dim;
        params.flag_depth = 1 + static_cast<std::size_t>(s % (dim + 1));
        params.seed = base_seed + s;
        params.family = static_cast<Family>(s % 4);
        if (params.family == Family::Nilpotent3d && dim != 3) {
            params.family = Family::RejectionSampled;
        }
        params.validate();
        out.push_back(params);
    }
    return out;
}

} // namespace homlie
