#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "homlie/io.hpp"
#include "support.hpp"

using namespace homlie;
using homlie::testing::example_algebra;
using homlie::testing::example_flag;

namespace fs = std::filesystem;

namespace {

Level lv(long num, long den) { return Level(Rational(num, den)); }

std::string algebra_text(const std::string& brackets, const std::string& extra = "") {
    return std::string("{\"field\": \"Q\", \"dim\": 3, \"brackets\": ") + brackets +
           ", \"alpha\": [[\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\"]]" +
           extra + "}";
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("homlie-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter;
};

int TempDir::counter = 0;

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("content hash is FNV-1a 64") {
    CHECK(content_hash("") == "fnv1a64:cbf29ce484222325");
    CHECK(content_hash("abc") == "fnv1a64:e71fa2190541574b");
    CHECK(content_hash("abc\n") != content_hash("abc"));
}

TEST_CASE("algebra serialization round-trips") {
    for (FieldSpec field : {FieldSpec::rationals(), FieldSpec::gf(5)}) {
        HomLieAlgebra a = example_algebra(field);
        HomLieAlgebra back = parse_algebra(serialize_algebra(a));
        CHECK(back == a);
        CHECK(back.name() == "nil-twist-3d");
        CHECK(back.field() == field);
    }
}

TEST_CASE("syntactically broken JSON reports a position") {
    try {
        parse_algebra("{\n  \"dim\": oops\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 0);
    }
    CHECK_THROWS_AS(parse_algebra(""), ParseError);
}

TEST_CASE("algebra document validation") {
    // unknown key
    CHECK_THROWS_WITH_AS(parse_algebra(algebra_text("[]", ", \"extra\": 1")),
                         doctest::Contains("unknown key 'extra'"), ParseError);
    // bracket pairs must be ordered i < j
    CHECK_THROWS_AS(parse_algebra(algebra_text("[[1, 0, [\"1\",\"0\",\"0\"]]]")),
                    InvariantViolation);
    CHECK_THROWS_AS(parse_algebra(algebra_text("[[1, 1, [\"1\",\"0\",\"0\"]]]")),
                    InvariantViolation);
    // indices inside the dimension
    CHECK_THROWS_AS(parse_algebra(algebra_text("[[0, 5, [\"1\",\"0\",\"0\"]]]")),
                    DimensionMismatch);
    // one value per basis pair
    CHECK_THROWS_AS(parse_algebra(algebra_text(
                        "[[0, 1, [\"1\",\"0\",\"0\"]], [0, 1, [\"0\",\"1\",\"0\"]]]")),
                    InvariantViolation);
    // coefficient rows sized to the dimension
    CHECK_THROWS_AS(parse_algebra(algebra_text("[[0, 1, [\"1\",\"0\"]]]")), ParseError);
    // oversized spaces are refused outright
    CHECK_THROWS_AS(
        parse_algebra("{\"field\": \"Q\", \"dim\": 1025, \"brackets\": [], \"alpha\": []}"),
        InvariantViolation);
    // field spellings
    CHECK_THROWS_AS(parse_algebra("{\"field\": \"R\", \"dim\": 1, \"brackets\": [], "
                                  "\"alpha\": [[\"0\"]]}"),
                    ParseError);
    CHECK_THROWS_AS(parse_algebra("{\"field\": {\"gf\": 6}, \"dim\": 1, \"brackets\": [], "
                                  "\"alpha\": [[\"0\"]]}"),
                    InvariantViolation);
}

TEST_CASE("fuzzy set serialization round-trips") {
    for (FieldSpec field : {FieldSpec::rationals(), FieldSpec::gf(5)}) {
        FuzzyFlag mu = example_flag(field);
        FuzzyFlag back = parse_flag(serialize_flag(mu), field, 3);
        CHECK(back == mu);
    }
    FuzzyFlag constant = FuzzyFlag::constant(FieldSpec::gf(2), 2, lv(1, 3));
    CHECK(parse_flag(serialize_flag(constant), FieldSpec::gf(2), 2) == constant);
}

TEST_CASE("fuzzy set parser infers field and dimension") {
    FuzzyFlag mu = example_flag(FieldSpec::rationals());
    std::string text = serialize_flag(mu);
    CHECK(parse_flag_auto(text, std::nullopt, std::nullopt) == mu);
    CHECK(parse_flag_auto(text, FieldSpec::rationals(), 3) == mu);
    FuzzyFlag over5 = parse_flag_auto(serialize_flag(example_flag(FieldSpec::gf(5))),
                                      FieldSpec::gf(5), std::nullopt);
    CHECK(over5 == example_flag(FieldSpec::gf(5)));

    // a chain holding only the zero cut has no basis rows to infer from
    FieldSpec q = FieldSpec::rationals();
    std::vector<FuzzyFlag::Entry> zc{{span(std::vector<Vector>{}, q, 2), lv(1, 2)}};
    FuzzyFlag zflag(q, 2, zc, lv(0, 1));
    std::string flat = serialize_flag(zflag);
    CHECK_THROWS_AS(parse_flag_auto(flat, std::nullopt, std::nullopt), ParseError);
    CHECK(parse_flag_auto(flat, std::nullopt, 2) == zflag);
}

TEST_CASE("fuzzy set document validation") {
    FieldSpec q = FieldSpec::rationals();
    CHECK_THROWS_AS(parse_flag("[]", q, 2), ParseError);
    CHECK_THROWS_AS(parse_flag("{\"chain\": [], \"baseline\": \"0\"}", q, 2), ParseError);
    CHECK_THROWS_AS(
        parse_flag("{\"chain\": [{\"level\": \"1/2\", \"basis\": []}], \"baseline\": \"0\", "
                   "\"extra\": 1}",
                   q, 2),
        ParseError);
    // structurally fine JSON whose levels do not decrease
    CHECK_THROWS_AS(
        parse_flag("{\"chain\": [{\"level\": \"1/2\", \"basis\": []}, "
                   "{\"level\": \"1/2\", \"basis\": [[\"1\",\"0\"]]}], \"baseline\": \"0\"}",
                   q, 2),
        InvariantViolation);
}

TEST_CASE("subspace serialization canonicalizes") {
    FieldSpec q = FieldSpec::rationals();
    Subspace s = parse_subspace("[[\"2\",\"2\",\"2\"],[\"0\",\"3\",\"3\"]]", q, 3);
    CHECK(s.rank() == 2);
    nlohmann::json doc = nlohmann::json::parse(serialize_subspace(s));
    CHECK(doc == nlohmann::json::parse("[[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"1\"]]"));
    CHECK(parse_subspace(serialize_subspace(s), q, 3) == s);

    Subspace zero = parse_subspace("[]", q, 3);
    CHECK(zero.rank() == 0);
    CHECK(parse_subspace(serialize_subspace(zero), q, 3) == zero);
}

TEST_CASE("morphism files resolve against their directory") {
    TempDir dir;
    HomLieAlgebra a = example_algebra(FieldSpec::rationals());
    write_file(dir.path / "alg.json", serialize_algebra(a));

    MorphismFile good;
    good.source_path = "alg.json";
    good.target_path = "alg.json";
    good.matrix = {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}};
    CHECK(parse_morphism_file(serialize_morphism_file(good)) == good);

    Morphism m = resolve_morphism(good, dir.path);
    CHECK(m.certified);
    CHECK(m.is_onto());
    CHECK(m.source == a);
    CHECK(m.map == Matrix::identity(FieldSpec::rationals(), 3));

    // the twist matrix is not a morphism of this algebra
    MorphismFile bad = good;
    bad.matrix = {{"0", "0", "0"}, {"1", "0", "0"}, {"0", "0", "0"}};
    CHECK_THROWS_AS(resolve_morphism(bad, dir.path), InvariantViolation);

    MorphismFile missing = good;
    missing.source_path = "nope.json";
    CHECK_THROWS_AS(resolve_morphism(missing, dir.path), ParseError);

    CHECK_THROWS_AS(
        parse_morphism_file("{\"source\": \"a\", \"target\": \"b\", \"matrix\": [], "
                            "\"onto\": true}"),
        ParseError);
}

TEST_CASE("instance pairs survive a round trip") {
    FieldSpec g2 = FieldSpec::gf(2);
    InstancePair pair{example_algebra(g2), example_flag(g2),
                      direct_sum_algebras({example_algebra(g2)}),
                      FuzzyFlag::constant(g2, 3, lv(2, 3))};
    InstancePair back = parse_instance_pair(serialize_instance_pair(pair));
    CHECK(back.first_algebra == pair.first_algebra);
    CHECK(back.first_flag == pair.first_flag);
    CHECK(back.second_algebra == pair.second_algebra);
    CHECK(back.second_flag == pair.second_flag);
}

TEST_CASE("report serializers expose stable shapes") {
    FieldSpec q = FieldSpec::rationals();
    HomLieAlgebra a = example_algebra(q);

    FuzzyCheckReport ok = is_fuzzy_ideal(example_flag(q), a);
    nlohmann::json okj = fuzzy_report_to_json(ok);
    CHECK(okj["ok"] == true);
    CHECK_FALSE(okj.contains("defect"));

    std::vector<FuzzyFlag::Entry> chain{{span({Vector::unit(q, 3, 2)}, q, 3), lv(1, 2)}};
    FuzzyCheckReport fail = is_fuzzy_ideal(FuzzyFlag(q, 3, chain, lv(1, 5)), a);
    nlohmann::json failj = fuzzy_report_to_json(fail);
    CHECK(failj["ok"] == false);
    CHECK(failj["level"] == "1/2");
    CHECK(failj["defect"]["kind"] == "bracket-escape");
    CHECK(failj["defect"]["escaped"] == nlohmann::json::parse("[\"-1\",\"0\",\"0\"]"));

    Finding exhausted;
    exhausted.checked_count = 9;
    nlohmann::json fj = finding_to_json(exhausted);
    CHECK(fj["kind"] == "exhausted");
    CHECK(fj["checked"] == 9);
    CHECK_FALSE(fj.contains("witness"));

    SuiteReport rep;
    rep.rows.push_back(SuiteRow{"sum-min-law", 4, 4, 0, ""});
    nlohmann::json sj = suite_report_to_json(rep);
    CHECK(sj["all_agree"] == true);
    CHECK(sj["rows"].size() == 1);
    CHECK(sj["rows"][0]["id"] == "sum-min-law");
    CHECK_FALSE(sj["rows"][0].contains("witness"));

    AxiomReport broken = check_axioms(homlie::testing::broken_jacobi_algebra(q));
    REQUIRE_FALSE(broken.valid);
    nlohmann::json aj = axiom_failure_to_json(broken.failures.front());
    CHECK(aj["kind"] == "twisted-jacobi");
    CHECK(aj["triple"] == nlohmann::json::parse("[0,1,2]"));
}

TEST_CASE("reading a missing file raises a parse error") {
    CHECK_THROWS_AS(read_text_file("/nonexistent/really/not-here.json"), ParseError);
}
