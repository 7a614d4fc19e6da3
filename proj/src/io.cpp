#include "homlie/io.hpp"

#include <fstream>
#include <sstream>

namespace homlie {

using nlohmann::json;

namespace {

/// 1-based line/column of a byte offset, for parse diagnostics.
std::pair<std::size_t, std::size_t> position_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports e.byte as the 1-based offset just past the error
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, col] = position_of(text, byte);
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
    }
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* what) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ParseError("unknown key '" + item.key() + "' in " + what);
        }
    }
}

const json& require_field(const json& obj, const char* key, const char* what) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing key '" + std::string(key) + "' in " + what);
    }
    return *it;
}

std::string require_string(const json& v, const char* what) {
    if (!v.is_string()) {
        throw ParseError(std::string(what) + " must be a string");
    }
    return v.get<std::string>();
}

std::uint64_t require_uint(const json& v, const char* what) {
    if (!v.is_number_unsigned()) {
        throw ParseError(std::string(what) + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

FieldSpec field_from_json(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "Q") return FieldSpec::rationals();
        throw ParseError("field must be \"Q\" or {\"gf\": p}");
    }
    if (v.is_object()) {
        require_keys(v, {"gf"}, "field");
        return FieldSpec::gf(require_uint(require_field(v, "gf", "field"), "gf modulus"));
    }
    throw ParseError("field must be \"Q\" or {\"gf\": p}");
}

json field_to_json(const FieldSpec& field) {
    if (field.is_prime_field()) return json{{"gf", field.p}};
    return json("Q");
}

Vector vector_from_json(const json& v, const FieldSpec& field, std::size_t dim,
                        const char* what) {
    if (!v.is_array() || v.size() != dim) {
        throw ParseError(std::string(what) + " must be an array of " + std::to_string(dim) +
                         " scalar strings");
    }
    std::vector<Scalar> coords;
    coords.reserve(dim);
    for (const json& c : v) {
        coords.push_back(Scalar::parse(field, require_string(c, what)));
    }
    return Vector(field, std::move(coords));
}

Matrix matrix_from_json(const json& v, const FieldSpec& field, std::size_t rows,
                        std::size_t cols, const char* what) {
    if (!v.is_array() || v.size() != rows) {
        throw ParseError(std::string(what) + " must have " + std::to_string(rows) + " rows");
    }
    Matrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError(std::string(what) + " row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, Scalar::parse(field, require_string(row[c], what)));
        }
    }
    return m;
}

} // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read file '" + path.string() + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

nlohmann::json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        arr.push_back(v.at(i).str());
    }
    return arr;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(m.at(r, c).str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json algebra_to_json(const HomLieAlgebra& algebra) {
    json doc;
    doc["field"] = field_to_json(algebra.field());
    doc["dim"] = algebra.dim();
    if (!algebra.name().empty()) {
        doc["name"] = algebra.name();
    }
    json brackets = json::array();
    for (const auto& [pair, value] : algebra.structure()) {
        brackets.push_back(json::array({pair.first, pair.second, vector_to_json(value)}));
    }
    doc["brackets"] = std::move(brackets);
    doc["alpha"] = matrix_to_json(algebra.twist());
    return doc;
}

HomLieAlgebra algebra_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ParseError("algebra document must be a JSON object");
    }
    require_keys(doc, {"field", "dim", "name", "brackets", "alpha"}, "algebra document");
    FieldSpec field = field_from_json(require_field(doc, "field", "algebra document"));
    std::uint64_t dim = require_uint(require_field(doc, "dim", "algebra document"), "dim");
    if (dim > 1024) {
        throw InvariantViolation("dimension " + std::to_string(dim) + " is unreasonably large");
    }
    std::string name;
    if (auto it = doc.find("name"); it != doc.end()) {
        name = require_string(*it, "name");
    }

    HomLieAlgebra::StructureTable table;
    const json& brackets = require_field(doc, "brackets", "algebra document");
    if (!brackets.is_array()) {
        throw ParseError("brackets must be an array");
    }
    for (const json& entry : brackets) {
        if (!entry.is_array() || entry.size() != 3) {
            throw ParseError("bracket entry must be [i, j, coefficients]");
        }
        std::uint64_t i = require_uint(entry[0], "bracket index");
        std::uint64_t j = require_uint(entry[1], "bracket index");
        if (i >= dim || j >= dim) {
            throw DimensionMismatch("bracket index out of range: [" + std::to_string(i) +
                                    ", " + std::to_string(j) + "]");
        }
        if (i >= j) {
            throw InvariantViolation("bracket entries must have i < j, got [" +
                                     std::to_string(i) + ", " + std::to_string(j) + "]");
        }
        auto key = std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (table.count(key)) {
            throw InvariantViolation("duplicate bracket entry [" + std::to_string(i) + ", " +
                                     std::to_string(j) + "]");
        }
        table.emplace(key, vector_from_json(entry[2], field, dim, "bracket coefficients"));
    }
    Matrix alpha = matrix_from_json(require_field(doc, "alpha", "algebra document"), field,
                                    dim, dim, "alpha");
    return HomLieAlgebra(field, dim, std::move(table), std::move(alpha), std::move(name));
}

HomLieAlgebra parse_algebra(const std::string& text) {
    return algebra_from_json(parse_document(text));
}

std::string serialize_algebra(const HomLieAlgebra& algebra) {
    return algebra_to_json(algebra).dump(2) + "\n";
}

nlohmann::json flag_to_json(const FuzzyFlag& set) {
    json chain = json::array();
    for (const FuzzyFlag::Entry& e : set.chain()) {
        json basis = json::array();
        for (const Vector& b : e.cut.basis()) {
            basis.push_back(vector_to_json(b));
        }
        chain.push_back(json{{"level", e.level.str()}, {"basis", std::move(basis)}});
    }
    return json{{"chain", std::move(chain)}, {"baseline", set.baseline().str()}};
}

FuzzyFlag flag_from_json(const nlohmann::json& doc, const FieldSpec& field, std::size_t dim) {
    if (!doc.is_object()) {
        throw ParseError("fuzzy set document must be a JSON object");
    }
    require_keys(doc, {"chain", "baseline"}, "fuzzy set document");
    const json& chain = require_field(doc, "chain", "fuzzy set document");
    if (!chain.is_array() || chain.empty()) {
        throw ParseError("chain must be a nonempty array");
    }
    std::vector<FuzzyFlag::Entry> entries;
    entries.reserve(chain.size());
    for (const json& e : chain) {
        if (!e.is_object()) {
            throw ParseError("chain entry must be an object");
        }
        require_keys(e, {"level", "basis"}, "chain entry");
        Level level = Level::parse(require_string(require_field(e, "level", "chain entry"),
                                                  "level"));
        const json& basis = require_field(e, "basis", "chain entry");
        if (!basis.is_array()) {
            throw ParseError("basis must be an array of vectors");
        }
        std::vector<Vector> gens;
        gens.reserve(basis.size());
        for (const json& row : basis) {
            gens.push_back(vector_from_json(row, field, dim, "basis row"));
        }
        entries.push_back({span(gens, field, dim), level});
    }
    Level baseline = Level::parse(
        require_string(require_field(doc, "baseline", "fuzzy set document"), "baseline"));
    return FuzzyFlag(field, dim, std::move(entries), baseline);
}

FuzzyFlag parse_flag(const std::string& text, const FieldSpec& field, std::size_t dim) {
    return flag_from_json(parse_document(text), field, dim);
}

FuzzyFlag parse_flag_auto(const std::string& text, std::optional<FieldSpec> field,
                          std::optional<std::size_t> dim) {
    json doc = parse_document(text);
    if (!dim) {
        if (doc.is_object() && doc.contains("chain") && doc["chain"].is_array()) {
            for (const json& e : doc["chain"]) {
                if (e.is_object() && e.contains("basis") && e["basis"].is_array()) {
                    for (const json& row : e["basis"]) {
                        if (row.is_array()) {
                            dim = row.size();
                            break;
                        }
                    }
                }
                if (dim) break;
            }
        }
        if (!dim) {
            throw ParseError(
                "cannot infer the dimension: no basis rows; pass it explicitly");
        }
    }
    return flag_from_json(doc, field.value_or(FieldSpec::rationals()), *dim);
}

std::string serialize_flag(const FuzzyFlag& set) {
    return flag_to_json(set).dump(2) + "\n";
}

MorphismFile parse_morphism_file(const std::string& text) {
    json doc = parse_document(text);
    if (!doc.is_object()) {
        throw ParseError("morphism document must be a JSON object");
    }
    require_keys(doc, {"source", "target", "matrix"}, "morphism document");
    MorphismFile out;
    out.source_path = require_string(require_field(doc, "source", "morphism document"),
                                     "source");
    out.target_path = require_string(require_field(doc, "target", "morphism document"),
                                     "target");
    const json& matrix = require_field(doc, "matrix", "morphism document");
    if (!matrix.is_array()) {
        throw ParseError("matrix must be an array of rows");
    }
    for (const json& row : matrix) {
        if (!row.is_array()) {
            throw ParseError("matrix row must be an array of scalar strings");
        }
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (const json& c : row) {
            cells.push_back(require_string(c, "matrix entry"));
        }
        out.matrix.push_back(std::move(cells));
    }
    return out;
}

std::string serialize_morphism_file(const MorphismFile& file) {
    json rows = json::array();
    for (const auto& row : file.matrix) {
        rows.push_back(row);
    }
    json doc{{"source", file.source_path}, {"target", file.target_path},
             {"matrix", std::move(rows)}};
    return doc.dump(2) + "\n";
}

Morphism resolve_morphism(const MorphismFile& file, const std::filesystem::path& base_dir) {
    HomLieAlgebra source = parse_algebra(read_text_file(base_dir / file.source_path));
    HomLieAlgebra target = parse_algebra(read_text_file(base_dir / file.target_path));
    if (source.field() != target.field()) {
        throw FieldMismatch("morphism endpoints live over different fields");
    }
    if (file.matrix.size() != target.dim()) {
        throw DimensionMismatch("morphism matrix must have " + std::to_string(target.dim()) +
                                " rows, got " + std::to_string(file.matrix.size()));
    }
    Matrix map(source.field(), target.dim(), source.dim());
    for (std::size_t r = 0; r < target.dim(); ++r) {
        if (file.matrix[r].size() != source.dim()) {
            throw DimensionMismatch("morphism matrix row " + std::to_string(r) +
                                    " must have " + std::to_string(source.dim()) + " entries");
        }
        for (std::size_t c = 0; c < source.dim(); ++c) {
            map.set(r, c, Scalar::parse(source.field(), file.matrix[r][c]));
        }
    }
    try {
        return certify_morphism(source, target, std::move(map));
    } catch (const NotCertified& e) {
        throw InvariantViolation(std::string("morphism certification failed: ") + e.what());
    }
}

nlohmann::json subspace_to_json(const Subspace& space) {
    json rows = json::array();
    for (const Vector& b : space.basis()) {
        rows.push_back(vector_to_json(b));
    }
    return rows;
}

Subspace subspace_from_json(const nlohmann::json& doc, const FieldSpec& field,
                            std::size_t dim) {
    if (!doc.is_array()) {
        throw ParseError("subspace document must be an array of generator rows");
    }
    std::vector<Vector> gens;
    gens.reserve(doc.size());
    for (const json& row : doc) {
        gens.push_back(vector_from_json(row, field, dim, "generator row"));
    }
    return span(gens, field, dim);
}

Subspace parse_subspace(const std::string& text, const FieldSpec& field, std::size_t dim) {
    return subspace_from_json(parse_document(text), field, dim);
}

std::string serialize_subspace(const Subspace& space) {
    return subspace_to_json(space).dump(2) + "\n";
}

nlohmann::json axiom_failure_to_json(const AxiomFailure& failure) {
    return json{{"kind", "twisted-jacobi"},
                {"triple", json::array({failure.triple[0], failure.triple[1],
                                        failure.triple[2]})},
                {"defect", vector_to_json(failure.defect)}};
}

nlohmann::json defect_to_json(const SubspaceDefect& defect) {
    json doc;
    doc["kind"] = defect_kind_str(defect.kind);
    doc["i"] = defect.i;
    if (defect.j) {
        doc["j"] = *defect.j;
    }
    doc["escaped"] = vector_to_json(defect.escaped);
    return doc;
}

nlohmann::json fuzzy_report_to_json(const FuzzyCheckReport& report) {
    json doc;
    doc["ok"] = report.ok;
    if (report.level) {
        doc["level"] = report.level->str();
    }
    if (report.defect) {
        doc["defect"] = defect_to_json(*report.defect);
    }
    return doc;
}

nlohmann::json pointwise_witness_to_json(const PointwiseWitness& witness) {
    json doc;
    doc["condition"] = condition_str(witness.condition, witness.mode);
    doc["x"] = vector_to_json(witness.x);
    if (witness.y) {
        doc["y"] = vector_to_json(*witness.y);
    }
    if (witness.scalar) {
        doc["scalar"] = witness.scalar->str();
    }
    doc["lhs"] = witness.lhs.str();
    doc["rhs"] = witness.rhs.str();
    return doc;
}

nlohmann::json finding_to_json(const Finding& finding) {
    json doc;
    doc["kind"] = finding.kind == Finding::Kind::Counterexample ? "counterexample"
                                                                : "exhausted";
    doc["checked"] = finding.checked_count;
    if (finding.witness) {
        doc["witness"] = pointwise_witness_to_json(*finding.witness);
    }
    if (!finding.instance_json.empty()) {
        doc["instance"] = json::parse(finding.instance_json);
    }
    return doc;
}

nlohmann::json suite_report_to_json(const SuiteReport& report) {
    json rows = json::array();
    for (const SuiteRow& r : report.rows) {
        json row{{"id", r.id},
                 {"instances", r.instances},
                 {"agreements", r.agreements},
                 {"disagreements", r.disagreements}};
        if (!r.first_witness.empty()) {
            row["witness"] = r.first_witness;
        }
        rows.push_back(std::move(row));
    }
    return json{{"rows", std::move(rows)}, {"all_agree", report.all_agree()}};
}

std::string serialize_instance_pair(const InstancePair& pair) {
    json doc{{"first", json{{"algebra", algebra_to_json(pair.first_algebra)},
                            {"flag", flag_to_json(pair.first_flag)}}},
             {"second", json{{"algebra", algebra_to_json(pair.second_algebra)},
                             {"flag", flag_to_json(pair.second_flag)}}}};
    return doc.dump(2) + "\n";
}

InstancePair parse_instance_pair(const std::string& text) {
    json doc = parse_document(text);
    if (!doc.is_object()) {
        throw ParseError("instance pair must be a JSON object");
    }
    require_keys(doc, {"first", "second"}, "instance pair");
    auto read_side = [&](const char* key) {
        const json& side = require_field(doc, key, "instance pair");
        if (!side.is_object()) {
            throw ParseError("instance pair side must be an object");
        }
        require_keys(side, {"algebra", "flag"}, "instance pair side");
        HomLieAlgebra algebra =
            algebra_from_json(require_field(side, "algebra", "instance pair side"));
        FuzzyFlag flag = flag_from_json(require_field(side, "flag", "instance pair side"),
                                        algebra.field(), algebra.dim());
        return std::make_pair(std::move(algebra), std::move(flag));
    };
    auto [a1, f1] = read_side("first");
    auto [a2, f2] = read_side("second");
    return InstancePair{std::move(a1), std::move(f1), std::move(a2), std::move(f2)};
}

} // namespace homlie
