#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "homlie/io.hpp"

using namespace homlie;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// One report per invocation: command echo, content hashes of every file
// read, a boolean verdict, and whatever the subcommand produced. Exit code
// 0 mirrors verdict=true, 1 verdict=false, 2 any usage or input error.
struct Run {
    json doc = json::object();
    json inputs = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Run(const std::string& command) { doc["command"] = command; }

    std::string slurp(const fs::path& path) {
        std::string text = read_text_file(path);
        inputs[path.string()] = content_hash(text);
        return text;
    }

    int finish(bool verdict) {
        doc["inputs"] = inputs;
        doc["verdict"] = verdict;
        doc["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        std::cout << doc.dump(2) << "\n";
        return verdict ? 0 : 1;
    }
};

FieldSpec field_from_flagtext(const std::string& text) {
    if (text == "Q") {
        return FieldSpec::rationals();
    }
    try {
        std::size_t pos = 0;
        unsigned long p = std::stoul(text, &pos);
        if (pos == text.size()) {
            return FieldSpec::gf(p);
        }
    } catch (const std::exception&) {
    }
    throw InvalidParams("--field must be Q or a prime modulus, got '" + text + "'");
}

StructureMode mode_from_text(const std::string& text) {
    if (text == "sub") {
        return StructureMode::Subalgebra;
    }
    if (text == "ideal") {
        return StructureMode::Ideal;
    }
    throw InvalidParams("--mode must be sub or ideal, got '" + text + "'");
}

Family family_from_text(const std::string& text) {
    for (Family f : {Family::ZeroTwist, Family::ZeroBracket, Family::Nilpotent3d,
                     Family::RejectionSampled}) {
        if (family_str(f) == text) {
            return f;
        }
    }
    throw InvalidParams("unknown --family '" + text + "'");
}

/// Loads and certifies a morphism file, recording every file it touches.
Morphism load_morphism(Run& run, const std::string& path) {
    MorphismFile file = parse_morphism_file(run.slurp(path));
    fs::path base = fs::path(path).parent_path();
    run.slurp(base / file.source_path);
    run.slurp(base / file.target_path);
    return resolve_morphism(file, base);
}

int run_validate(const std::string& algebra_path) {
    Run run("validate");
    HomLieAlgebra a = parse_algebra(run.slurp(algebra_path));
    AxiomReport report = check_axioms(a);
    run.doc["result"] = {{"name", a.name()},
                         {"dim", a.dim()},
                         {"failures", report.failures.size()}};
    if (!report.valid) {
        run.doc["witness"] = axiom_failure_to_json(report.failures.front());
    }
    return run.finish(report.valid);
}

int run_check_space(const std::string& command, const std::string& algebra_path,
                    const std::string& subspace_path) {
    Run run(command);
    HomLieAlgebra a = parse_algebra(run.slurp(algebra_path));
    Subspace s = parse_subspace(run.slurp(subspace_path), a.field(), a.dim());
    std::optional<SubspaceDefect> defect = command == "check-sub"
                                               ? subalgebra_defect(a, s)
                                               : ideal_defect(a, s);
    run.doc["result"] = {{"rank", s.rank()}};
    if (defect) {
        run.doc["witness"] = defect_to_json(*defect);
    }
    return run.finish(!defect);
}

int run_fuzzy_check(const std::string& algebra_path, const std::string& flag_path,
                    const std::string& mode_text) {
    Run run("fuzzy-check");
    StructureMode mode = mode_from_text(mode_text);
    HomLieAlgebra a = parse_algebra(run.slurp(algebra_path));
    FuzzyFlag mu = parse_flag(run.slurp(flag_path), a.field(), a.dim());
    FuzzyCheckReport report = mode == StructureMode::Subalgebra
                                  ? is_fuzzy_subalgebra(mu, a)
                                  : is_fuzzy_ideal(mu, a);
    run.doc["result"] = fuzzy_report_to_json(report);
    run.doc["result"]["mode"] = mode_str(mode);
    return run.finish(report.ok);
}

int run_levels(const std::string& flag_path, const std::string& level_text, bool strict,
               const std::string& field_text, std::optional<std::uint64_t> dim) {
    Run run("levels");
    std::optional<FieldSpec> field;
    if (!field_text.empty()) {
        field = field_from_flagtext(field_text);
    }
    std::optional<std::size_t> dim_opt;
    if (dim) {
        dim_opt = static_cast<std::size_t>(*dim);
    }
    FuzzyFlag mu = parse_flag_auto(run.slurp(flag_path), field, dim_opt);
    Level t = Level::parse(level_text);
    std::optional<Subspace> cut = strict ? strong_upper_level(mu, t) : upper_level(mu, t);
    run.doc["result"] = {{"level", t.str()}, {"strict", strict}};
    if (cut) {
        run.doc["result"]["basis"] = subspace_to_json(*cut);
        run.doc["result"]["rank"] = cut->rank();
    } else {
        run.doc["result"]["basis"] = nullptr;
    }
    return run.finish(cut.has_value());
}

int run_direct_sum(const std::vector<std::string>& algebra_paths,
                   const std::vector<std::string>& flag_paths) {
    Run run("direct-sum");
    if (!flag_paths.empty() && flag_paths.size() != algebra_paths.size()) {
        throw InvalidParams("--flags needs exactly one file per algebra");
    }
    std::vector<HomLieAlgebra> parts;
    for (const std::string& path : algebra_paths) {
        parts.push_back(parse_algebra(run.slurp(path)));
    }
    HomLieAlgebra sum = direct_sum_algebras(parts);
    run.doc["result"] = {{"algebra", algebra_to_json(sum)}};
    if (!flag_paths.empty()) {
        std::vector<FuzzyFlag> flags;
        for (std::size_t i = 0; i < flag_paths.size(); ++i) {
            flags.push_back(
                parse_flag(run.slurp(flag_paths[i]), parts[i].field(), parts[i].dim()));
        }
        run.doc["result"]["flag"] = flag_to_json(fuzzy_direct_sum(flags));
    }
    return run.finish(true);
}

int run_transport(const std::string& command, const std::string& morphism_path,
                  const std::string& flag_path) {
    Run run(command);
    Morphism m = load_morphism(run, morphism_path);
    const HomLieAlgebra& domain = command == "push" ? m.source : m.target;
    FuzzyFlag mu = parse_flag(run.slurp(flag_path), domain.field(), domain.dim());
    FuzzyFlag out = command == "push" ? pushforward(m, mu) : pullback(m, mu);
    run.doc["result"] = {{"flag", flag_to_json(out)}, {"onto", m.is_onto()}};
    return run.finish(true);
}

int run_suite(std::uint64_t seeds, std::uint32_t p, std::uint64_t dim, std::uint64_t seed,
              std::uint64_t cap) {
    Run run("suite");
    SuiteReport report = theorem_suite(make_batch(seed, seeds, p, dim), cap);
    run.doc["result"] = suite_report_to_json(report);
    return run.finish(report.all_agree());
}

int run_search(const std::string& mode_text, std::uint64_t budget, std::uint64_t seed,
               std::uint32_t p, std::uint64_t dim, std::uint64_t depth,
               const std::string& family_text) {
    Run run("search");
    StructureMode mode;
    if (mode_text == "ideal-sum") {
        mode = StructureMode::Ideal;
    } else if (mode_text == "sub-sum") {
        mode = StructureMode::Subalgebra;
    } else {
        throw InvalidParams("--mode must be ideal-sum or sub-sum, got '" + mode_text + "'");
    }
    InstanceParams params;
    params.p = p;
    params.dim = static_cast<std::size_t>(dim);
    params.flag_depth = depth == 0 ? params.dim + 1 : static_cast<std::size_t>(depth);
    params.seed = seed;
    params.family = family_from_text(family_text);
    Finding finding = search_sum_counterexample(params, budget, mode);
    if (finding.kind == Finding::Kind::Counterexample) {
        // counterexamples only count when they survive a fresh parse
        if (!reverify_sum_counterexample(finding.instance_json, mode)) {
            throw InvariantViolation("counterexample failed re-verification");
        }
    }
    run.doc["result"] = finding_to_json(finding);
    run.doc["result"]["mode"] = mode_str(mode);
    return run.finish(finding.kind == Finding::Kind::Exhausted);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checker for fuzzy structures on Hom-Lie algebras"};
    app.require_subcommand(1);

    std::string algebra_path, subspace_path, flag_path, morphism_path;
    std::string mode_text, level_text, field_text, family_text = "zero-twist";
    std::vector<std::string> algebra_paths, flag_paths;
    bool strict = false;
    std::optional<std::uint64_t> dim_opt;
    std::uint64_t seeds = 0, budget = 0, seed = 0, dim = 2, depth = 0;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint32_t p = 2;

    CLI::App* validate = app.add_subcommand("validate", "check the twisted Jacobi identity");
    validate->add_option("algebra", algebra_path, "algebra file")->required();

    CLI::App* check_sub =
        app.add_subcommand("check-sub", "is the subspace a Hom-Lie subalgebra");
    check_sub->add_option("algebra", algebra_path, "algebra file")->required();
    check_sub->add_option("subspace", subspace_path, "subspace file")->required();

    CLI::App* check_ideal = app.add_subcommand("check-ideal", "is the subspace a Hom-Lie ideal");
    check_ideal->add_option("algebra", algebra_path, "algebra file")->required();
    check_ideal->add_option("subspace", subspace_path, "subspace file")->required();

    CLI::App* fuzzy_check =
        app.add_subcommand("fuzzy-check", "check the fuzzy subalgebra or ideal conditions");
    fuzzy_check->add_option("algebra", algebra_path, "algebra file")->required();
    fuzzy_check->add_option("flag", flag_path, "fuzzy set file")->required();
    fuzzy_check->add_option("--mode", mode_text, "sub or ideal")->required();

    CLI::App* levels = app.add_subcommand("levels", "upper level cut of a fuzzy set");
    levels->add_option("flag", flag_path, "fuzzy set file")->required();
    levels->add_option("--t", level_text, "threshold in [0,1] as a fraction")->required();
    levels->add_flag("--strict", strict, "strict cut {x : mu(x) > t}");
    levels->add_option("--field", field_text, "Q or a prime modulus (default from file)");
    levels->add_option("--dim", dim_opt, "ambient dimension (default from file)");

    CLI::App* direct_sum = app.add_subcommand("direct-sum", "external direct sum");
    direct_sum->add_option("algebras", algebra_paths, "algebra files")->required();
    direct_sum->add_option("--flags", flag_paths, "one fuzzy set per algebra");

    CLI::App* push = app.add_subcommand("push", "image of a fuzzy set along a morphism");
    push->add_option("morphism", morphism_path, "morphism file")->required();
    push->add_option("flag", flag_path, "fuzzy set on the source")->required();

    CLI::App* pull = app.add_subcommand("pull", "preimage of a fuzzy set along a morphism");
    pull->add_option("morphism", morphism_path, "morphism file")->required();
    pull->add_option("flag", flag_path, "fuzzy set on the target")->required();

    CLI::App* suite =
        app.add_subcommand("suite", "cross-verify flag algorithms against the dense oracle");
    suite->add_option("--seeds", seeds, "number of seeded instances")->required();
    suite->add_option("--p", p, "prime modulus")->required();
    suite->add_option("--dim", dim, "algebra dimension")->required();
    suite->add_option("--seed", seed, "base seed");
    suite->add_option("--cap", cap, "enumeration cap");

    CLI::App* search =
        app.add_subcommand("search", "hunt for a direct-sum counterexample");
    search->add_option("--mode", mode_text, "ideal-sum or sub-sum")->required();
    search->add_option("--budget", budget, "number of pairs to try")->required();
    search->add_option("--seed", seed, "base seed");
    search->add_option("--p", p, "prime modulus");
    search->add_option("--dim", dim, "algebra dimension");
    search->add_option("--depth", depth, "flag chain depth (default dim+1)");
    search->add_option("--family", family_text, "instance family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) {
            return run_validate(algebra_path);
        }
        if (app.got_subcommand(check_sub)) {
            return run_check_space("check-sub", algebra_path, subspace_path);
        }
        if (app.got_subcommand(check_ideal)) {
            return run_check_space("check-ideal", algebra_path, subspace_path);
        }
        if (app.got_subcommand(fuzzy_check)) {
            return run_fuzzy_check(algebra_path, flag_path, mode_text);
        }
        if (app.got_subcommand(levels)) {
            return run_levels(flag_path, level_text, strict, field_text, dim_opt);
        }
        if (app.got_subcommand(direct_sum)) {
            return run_direct_sum(algebra_paths, flag_paths);
        }
        if (app.got_subcommand(push)) {
            return run_transport("push", morphism_path, flag_path);
        }
        if (app.got_subcommand(pull)) {
            return run_transport("pull", morphism_path, flag_path);
        }
        if (app.got_subcommand(suite)) {
            return run_suite(seeds, p, dim, seed, cap);
        }
        if (app.got_subcommand(search)) {
            return run_search(mode_text, budget, seed, p, dim, depth, family_text);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what();
        if (e.line > 0) {
            std::cerr << " (line " << e.line << ", column " << e.column << ")";
        }
        std::cerr << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
