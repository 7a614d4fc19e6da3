// Acceptance gate: eight end-to-end criteria with explicit time budgets.
// Usage: acceptance <cli-binary> <data-dir>
// Prints one [PASS]/[FAIL] line per criterion; exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "homlie/io.hpp"

using namespace homlie;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
std::string g_data;

long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
        .count();
}

struct CliResult {
    int exit_code;
    std::string output;
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

CliResult run_cli(const std::vector<std::string>& argv) {
    std::string cmd = "cd " + shell_quote(g_data) + " && " + shell_quote(g_cli);
    for (const std::string& a : argv) {
        cmd += " " + shell_quote(a);
    }
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        throw Error("popen failed for: " + cmd);
    }
    std::string output;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        output.append(buf, got);
    }
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

std::string normalize_timing(const std::string& report) {
    static const std::regex timing("\"timing_ms\": \\d+");
    return std::regex_replace(report, timing, "\"timing_ms\": 0");
}

const SuiteRow& find_row(const SuiteReport& report, const std::string& id) {
    for (const SuiteRow& row : report.rows) {
        if (row.id == id) {
            return row;
        }
    }
    throw Error("suite report has no row '" + id + "'");
}

struct Check {
    std::ostringstream why;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) {
                why << "; ";
            }
            why << what;
            ok = false;
        }
    }
};

// Shared across criteria 2, 3, 4, 6 and 7: one seeded batch covering GF(2)
// and GF(3) at dimensions 1..3 with all four generator families.
SuiteReport* g_batch_report = nullptr;
long g_batch_ms = 0;

const SuiteReport& batch_report() {
    if (!g_batch_report) {
        auto start = Clock::now();
        std::vector<InstanceParams> batch;
        for (std::uint32_t p : {2u, 3u}) {
            for (std::size_t dim : {1u, 2u, 3u}) {
                auto cell = make_batch(1000 * p + dim, 84, p, dim);
                batch.insert(batch.end(), cell.begin(), cell.end());
            }
        }
        static SuiteReport report = theorem_suite(batch);
        g_batch_ms = ms_since(start);
        g_batch_report = &report;
    }
    return *g_batch_report;
}

void gate_row(Check& c, const SuiteReport& rep, const std::string& id,
              std::uint64_t min_instances) {
    const SuiteRow& row = find_row(rep, id);
    c.require(row.instances >= min_instances,
              id + ": only " + std::to_string(row.instances) + " instances");
    c.require(row.disagreements == 0,
              id + ": " + std::to_string(row.disagreements) + " disagreements (first: " +
                  row.first_witness + ")");
}

bool worked_example(std::string& detail) {
    Check c;
    for (const char* file : {"example_algebra.json", "example_algebra_gf5.json"}) {
        HomLieAlgebra a = parse_algebra(read_text_file(g_data + "/" + file));
        AxiomReport axioms = check_axioms(a);
        c.require(axioms.valid, std::string(file) + ": axioms fail");
        FuzzyFlag mu =
            parse_flag(read_text_file(g_data + "/example_flag.json"), a.field(), a.dim());
        c.require(is_fuzzy_subalgebra(mu, a).ok, std::string(file) + ": not a subalgebra");
        c.require(is_fuzzy_ideal(mu, a).ok, std::string(file) + ": not an ideal");
    }
    detail = "axioms + fuzzy ideal over Q and GF(5)";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool weak_cut_equivalence(std::string& detail) {
    const SuiteReport& rep = batch_report();
    Check c;
    gate_row(c, rep, "flag-pointwise-subalgebra", 500);
    gate_row(c, rep, "flag-pointwise-ideal", 500);
    gate_row(c, rep, "upper-cut-subalgebra-equivalence", 500);
    gate_row(c, rep, "upper-cut-ideal-equivalence", 500);
    detail = std::to_string(find_row(rep, "upper-cut-subalgebra-equivalence").instances) +
             " instances, 0 disagreements";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool strong_cut_equivalence(std::string& detail) {
    const SuiteReport& rep = batch_report();
    Check c;
    gate_row(c, rep, "strong-cut-subalgebra-equivalence", 500);
    gate_row(c, rep, "strong-cut-ideal-equivalence", 500);
    detail = std::to_string(find_row(rep, "strong-cut-subalgebra-equivalence").instances) +
             " instances, 0 disagreements";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool subalgebra_sums(std::string& detail) {
    const SuiteReport& rep = batch_report();
    Check c;
    gate_row(c, rep, "sum-preserves-subalgebra", 200);
    gate_row(c, rep, "sum-preserves-ideal", 200);
    gate_row(c, rep, "sum-min-law", 200);
    gate_row(c, rep, "sum-min-law-triple", 50);
    detail = std::to_string(find_row(rep, "sum-preserves-subalgebra").instances) +
             " pairs + " + std::to_string(find_row(rep, "sum-min-law-triple").instances) +
             " triples, 0 disagreements";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool ideal_sum_search(std::string& detail) {
    Check c;
    std::uint64_t total_budget = 0;
    std::uint64_t found = 0;
    for (std::uint32_t p : {2u, 3u}) {
        for (std::size_t dim : {1u, 2u}) {
            for (Family family :
                 {Family::ZeroTwist, Family::ZeroBracket, Family::RejectionSampled}) {
                InstanceParams params;
                params.p = p;
                params.dim = dim;
                params.flag_depth = dim + 1;
                params.seed = 7000 + 100 * p + 10 * dim + static_cast<int>(family);
                params.family = family;
                Finding finding =
                    search_sum_counterexample(params, 850, StructureMode::Ideal);
                total_budget += 850;
                if (finding.kind == Finding::Kind::Counterexample) {
                    ++found;
                    bool verified = reverify_sum_counterexample(finding.instance_json,
                                                                StructureMode::Ideal);
                    c.require(verified, "counterexample failed fresh re-verification");
                }
            }
        }
    }
    c.require(total_budget >= 10000, "search budget below 10000");

    // control: the min-combination of fuzzy subalgebras is asserted by the
    // suite to always pass, so a subalgebra-mode "counterexample" would mean
    // the searcher itself is broken
    InstanceParams control;
    control.p = 2;
    control.dim = 2;
    control.flag_depth = 3;
    control.seed = 99;
    control.family = Family::RejectionSampled;
    Finding sub = search_sum_counterexample(control, 1000, StructureMode::Subalgebra);
    c.require(sub.kind == Finding::Kind::Exhausted,
              "subalgebra-mode search reported a counterexample");

    if (found == 0) {
        detail = "budget " + std::to_string(total_budget) +
                 " exhausted with no ideal-sum counterexample (consistent with the "
                 "min/join lattice inequality); subalgebra control exhausted";
    } else {
        detail = std::to_string(found) + " counterexample(s), each re-verified from a "
                                         "fresh parse; budget " +
                 std::to_string(total_budget);
    }
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool morphism_transport(std::string& detail) {
    const SuiteReport& rep = batch_report();
    Check c;
    gate_row(c, rep, "pullback-preserves-subalgebra", 500);
    gate_row(c, rep, "pullback-preserves-ideal", 500);
    gate_row(c, rep, "pullback-composition-law", 100);
    gate_row(c, rep, "pushforward-preserves-subalgebra-onto", 500);
    gate_row(c, rep, "pushforward-preserves-subalgebra-general", 500);
    gate_row(c, rep, "pushforward-preserves-ideal-onto", 500);
    gate_row(c, rep, "pushforward-fiber-law", 100);
    detail = std::to_string(find_row(rep, "pullback-preserves-subalgebra").instances) +
             " pullbacks, " +
             std::to_string(find_row(rep, "pushforward-preserves-ideal-onto").instances) +
             " onto pushforwards, 0 disagreements";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool oracle_coherence(std::string& detail) {
    Check c;
    // GF(2)/GF(3) coverage rides on the shared batch rows
    const SuiteReport& rep = batch_report();
    gate_row(c, rep, "cut-membership-coherence", 500);
    gate_row(c, rep, "flag-table-roundtrip", 500);

    // GF(5) up to 125 points, checked directly
    std::uint64_t gf5_instances = 0;
    for (std::size_t dim : {1u, 2u, 3u}) {
        auto batch = make_batch(500 + dim, 24, 5, dim);
        for (const InstanceParams& params : batch) {
            for (StructureMode mode : {StructureMode::Subalgebra, StructureMode::Ideal}) {
                Instance inst = random_instance(params, mode);
                FuzzyTable table = table_from_flag(inst.flag);
                bool points_agree = true;
                for (std::uint64_t r = 0; r < table.size(); ++r) {
                    Vector x = vector_unrank(inst.algebra.field(), inst.algebra.dim(), r);
                    if (evaluate(inst.flag, x) != table.at_rank(r)) {
                        points_agree = false;
                    }
                }
                c.require(points_agree, inst.algebra.name() + ": evaluate != table");
                c.require(flag_from_table(table) == inst.flag,
                          inst.algebra.name() + ": table round-trip changed the flag");
                ++gf5_instances;
            }
        }
    }

    // and the worked example over GF(5)
    HomLieAlgebra a5 = parse_algebra(read_text_file(g_data + "/example_algebra_gf5.json"));
    FuzzyFlag mu5 =
        parse_flag(read_text_file(g_data + "/example_flag.json"), a5.field(), a5.dim());
    FuzzyTable t5 = table_from_flag(mu5);
    c.require(flag_from_table(t5) == mu5, "GF(5) example: round-trip changed the flag");
    for (std::uint64_t r = 0; r < t5.size(); ++r) {
        if (evaluate(mu5, vector_unrank(a5.field(), 3, r)) != t5.at_rank(r)) {
            c.require(false, "GF(5) example: evaluate != table at rank " + std::to_string(r));
            break;
        }
    }

    detail = "batch rows + " + std::to_string(gf5_instances) +
             " GF(5) instances, all points agree, round-trips exact";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

bool cli_golden(std::string& detail) {
    Check c;
    nlohmann::json manifest =
        nlohmann::json::parse(read_text_file(g_data + "/golden/manifest.json"));
    std::size_t compared = 0;
    for (const auto& entry : manifest) {
        std::vector<std::string> argv;
        for (const auto& a : entry["argv"]) {
            argv.push_back(a.get<std::string>());
        }
        std::string report_name = entry["report"].get<std::string>();
        CliResult got = run_cli(argv);
        c.require(got.exit_code == entry["exit"].get<int>(),
                  report_name + ": exit " + std::to_string(got.exit_code) + ", wanted " +
                      std::to_string(entry["exit"].get<int>()));
        std::string golden = read_text_file(g_data + "/golden/" + report_name);
        c.require(normalize_timing(got.output) == golden,
                  report_name + ": report differs from golden");
        ++compared;
    }
    c.require(compared >= 14, "manifest unexpectedly small");

    // parse . serialize . parse = parse on every shipped document
    for (const char* file : {"example_algebra.json", "example_algebra_gf5.json",
                             "line_algebra.json"}) {
        HomLieAlgebra once = parse_algebra(read_text_file(g_data + "/" + file));
        c.require(parse_algebra(serialize_algebra(once)) == once,
                  std::string(file) + ": round-trip not idempotent");
    }
    for (const char* file : {"example_flag.json", "e3_flag.json", "line_flag.json"}) {
        std::string text = read_text_file(g_data + "/" + file);
        FuzzyFlag once = parse_flag_auto(text, std::nullopt, 3);
        if (std::string(file) == "line_flag.json") {
            once = parse_flag_auto(text, std::nullopt, 1);
        }
        c.require(parse_flag(serialize_flag(once), once.field(), once.dim()) == once,
                  std::string(file) + ": round-trip not idempotent");
    }

    // usage errors exit 2
    c.require(run_cli({"validate", "no-such-file.json"}).exit_code == 2,
              "missing file should exit 2");
    c.require(run_cli({"fuzzy-check", "example_algebra.json", "example_flag.json",
                       "--mode", "banana"})
                      .exit_code == 2,
              "bad mode should exit 2");

    detail = std::to_string(compared) + " golden reports byte-identical modulo timing, "
                                        "exit codes as recorded";
    if (!c.ok) {
        detail = c.why.str();
    }
    return c.ok;
}

struct Criterion {
    int id;
    const char* name;
    long budget_ms;
    std::function<bool(std::string&)> run;
    bool shares_batch;
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <cli-binary> <data-dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_data = argv[2];

    std::vector<Criterion> criteria = {
        {1, "worked example end-to-end (Q and GF(5))", 1000, worked_example, false},
        {2, "weak upper-cut equivalence on the seeded batch", 30000, weak_cut_equivalence,
         true},
        {3, "strong upper-cut equivalence on the seeded batch", 30000,
         strong_cut_equivalence, true},
        {4, "min-combination of subalgebras across direct sums", 30000, subalgebra_sums,
         true},
        {5, "ideal-sum counterexample search (budget 10^4)", 60000, ideal_sum_search,
         false},
        {6, "morphism transport of fuzzy structures", 60000, morphism_transport, true},
        {7, "flag/table oracle coherence up to 125 points", 10000, oracle_coherence, true},
        {8, "CLI golden reports and exit codes", 5000, cli_golden, false},
    };

    int failures = 0;
    for (Criterion& crit : criteria) {
        auto start = Clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = crit.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        long own = ms_since(start);
        // criteria sharing the batch are charged its full construction time
        long charged = crit.shares_batch ? own + g_batch_ms : own;
        static bool batch_charged = false;
        if (crit.shares_batch && !batch_charged) {
            batch_charged = true; // the first sharer ran it inside its own timer
            charged = own;
        }
        if (charged > crit.budget_ms) {
            ok = false;
            detail += " [over budget: " + std::to_string(charged) + " ms > " +
                      std::to_string(crit.budget_ms) + " ms]";
        }
        if (!ok) {
            ++failures;
        }
        std::printf("[%s] criterion %d: %s (%ld ms) - %s\n", ok ? "PASS" : "FAIL", crit.id,
                    crit.name, charged, detail.c_str());
    }

    if (failures == 0) {
        std::printf("acceptance: all 8 criteria pass\n");
    } else {
        std::printf("acceptance: %d of 8 criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
