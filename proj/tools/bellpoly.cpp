// bellpoly command-line front end: vertex listings, cached facet
// enumeration, the named experiments, the family registry and family
// export.  Reports are JSON on stdout (deterministic payload under
// "result"); --pretty prints a readable table instead.  Exit code 0 only
// when every asserted classification or certificate holds.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "bellpoly/bellpoly.hpp"

using namespace bellpoly;

namespace {

Scenario load_scenario(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open scenario file: " + file);
    nlohmann::json j;
    in >> j;
    return scenario_from_json(j);
}

std::string default_cache() {
    if (const char* env = std::getenv("BELLPOLY_CACHE")) return env;
    return "./bellpoly-cache";
}

void print_report(const ExperimentReport& rep, bool pretty) {
    if (!pretty) {
        nlohmann::json out{{"schema", 1},
                           {"experiment", rep.id},
                           {"pass", rep.pass},
                           {"result", rep.result},
                           {"meta", rep.meta},
                           {"wall_ms", rep.wall_ms}};
        std::cout << out.dump(1) << std::endl;
        return;
    }
    std::cout << "experiment: " << rep.id << "\n";
    if (rep.result.contains("summary")) {
        const auto& sum = rep.result.at("summary");
        std::cout << "  " << rep.result.value("scenario", std::string("?")) << "  facets: "
                  << sum.at("facets_total").get<long long>() << "\n";
        for (const auto& cl : sum.at("classes"))
            std::cout << "    [" << cl.at("label").get<std::string>() << " x"
                      << cl.at("multiplicity").get<long long>() << "] "
                      << cl.at("pretty").get<std::string>() << "\n";
    }
    if (rep.result.contains("scenarios")) {
        for (const auto& sc : rep.result.at("scenarios")) {
            std::cout << "  " << sc.value("scenario", std::string("?"));
            if (sc.contains("skipped_cap")) {
                std::cout << "  skipped (vertex cap)\n";
                continue;
            }
            if (sc.contains("counts")) {
                const auto& c = sc.at("counts");
                std::cout << "  facets: positivity " << c.at("positivity").get<long long>()
                          << ", chsh " << c.at("chsh").get<long long>() << ", other "
                          << c.at("other").get<long long>();
            }
            if (sc.contains("failures"))
                std::cout << "  failures: " << sc.at("failures").get<long long>();
            std::cout << "\n";
            if (sc.contains("classes"))
                for (const auto& cl : sc.at("classes"))
                    std::cout << "    [" << cl.at("label").get<std::string>() << " x"
                              << cl.at("multiplicity").get<long long>() << "] "
                              << cl.at("pretty").get<std::string>() << "\n";
        }
    }
    if (rep.result.contains("certificates")) {
        for (const auto& ct : rep.result.at("certificates"))
            std::cout << "  n=" << ct.at("n").get<int>() << "  "
                      << ct.at("scenario").get<std::string>() << "  saturating "
                      << ct.at("saturating_points").get<long long>() << " of affine rank "
                      << ct.at("affine_rank").get<long long>() << "\n    "
                      << ct.at("pretty").get<std::string>() << "\n";
    }
    std::cout << (rep.pass ? "PASS" : "FAIL") << " (" << rep.wall_ms / 1000.0 << " s)\n";
}

FamilyId parse_family(const std::string& name, int n, const std::vector<int>& w, int y, int yp,
                      const std::vector<int>& G, const std::vector<int>& Gp, int a, bool upper) {
    FamilyId id{};
    if (name == "chsh") id.kind = FamilyId::Kind::chsh;
    else if (name == "ch") id.kind = FamilyId::Kind::ch;
    else if (name == "newineq3") id.kind = FamilyId::Kind::newineq3;
    else if (name == "cglmp") id.kind = FamilyId::Kind::cglmp;
    else if (name == "froissart") id.kind = FamilyId::Kind::froissart;
    else if (name == "ineq2") { id.kind = FamilyId::Kind::ineq2; id.n = n; }
    else if (name == "chsh-lift") {
        id.kind = FamilyId::Kind::chsh_lift;
        id.w = w;
        id.y = y;
        id.yp = yp;
        id.G = G;
        id.Gp = Gp;
        id.a_choice = a;
        id.upper = upper;
    } else {
        throw std::runtime_error("unknown family: " + name);
    }
    return id;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact facet enumeration and classification for Bell local polytopes"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string cache_dir = default_cache();
    bool force = false, pretty = false, long_run = false, full = false, no_cache = false;
    long long max_vertices = 200;

    auto add_common = [&](CLI::App* cmd, bool with_cache) {
        cmd->add_flag("--pretty", pretty, "human-readable output");
        if (with_cache) {
            cmd->add_option("--cache", cache_dir, "cache directory (env BELLPOLY_CACHE)");
            cmd->add_flag("--force", force, "recompute even when cached");
            cmd->add_flag("--no-cache", no_cache, "disable the cache entirely");
            cmd->add_option("--max-vertices", max_vertices, "vertex-count cap for enumeration");
        }
    };

    auto* cmd_vertices = app.add_subcommand("vertices", "list local deterministic vertices");
    cmd_vertices->add_option("--scenario", scenario_file, "scenario JSON file")->required();
    cmd_vertices->add_flag("--full", full, "print every vertex");
    cmd_vertices->add_flag("--pretty", pretty, "human-readable output");

    auto* cmd_facets = app.add_subcommand("facets", "enumerate and classify all facets");
    cmd_facets->add_option("--scenario", scenario_file, "scenario JSON file")->required();
    add_common(cmd_facets, true);

    std::string experiment_id;
    int max_w = 0, max_n = 0, n_min = 2, n_max = 6, cases = 500;
    unsigned long seed = 12345;
    auto* cmd_exp = app.add_subcommand("experiment", "run a named experiment");
    cmd_exp->add_option("id", experiment_id,
                        "one of: theorem1, conjecture2, observation3, theorem4, fine-lemma")
        ->required();
    cmd_exp->add_flag("--long", long_run, "include the heavy runs (tripartite, larger grids)");
    cmd_exp->add_option("--max-w", max_w, "theorem1: largest outcome count in the grid");
    cmd_exp->add_option("--max-n", max_n, "theorem1: largest number of B settings in the grid");
    cmd_exp->add_option("--n-min", n_min, "theorem4: smallest n");
    cmd_exp->add_option("--n-max", n_max, "theorem4: largest n");
    cmd_exp->add_option("--cases", cases, "fine-lemma: randomized cases per scenario");
    cmd_exp->add_option("--seed", seed, "fine-lemma: RNG seed");
    add_common(cmd_exp, true);

    auto* cmd_families = app.add_subcommand("families", "list the inequality family registry");
    (void)cmd_families;

    std::string family_name;
    int fam_n = 2, fam_y = 1, fam_yp = 2, fam_a = 1;
    bool fam_upper = false;
    std::vector<int> fam_w, fam_G, fam_Gp;
    auto* cmd_make = app.add_subcommand("make-inequality", "emit a family member as JSON");
    cmd_make->add_option("family", family_name, "family name (see `families`)")->required();
    cmd_make->add_option("--n", fam_n, "ineq2: number of B settings");
    cmd_make->add_option("--w", fam_w, "chsh-lift: B outcome counts");
    cmd_make->add_option("--y", fam_y, "chsh-lift: first B setting");
    cmd_make->add_option("--yp", fam_yp, "chsh-lift: second B setting");
    cmd_make->add_option("--G", fam_G, "chsh-lift: outcome subset of setting y");
    cmd_make->add_option("--Gp", fam_Gp, "chsh-lift: outcome subset of setting yp");
    cmd_make->add_option("--a", fam_a, "chsh-lift: which A marginal (1 or 2)");
    cmd_make->add_flag("--upper", fam_upper, "chsh-lift: emit the <= 1 side");
    cmd_make->add_flag("--pretty", pretty, "human-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (no_cache) cache_dir.clear();

        if (cmd_vertices->parsed()) {
            Scenario s = load_scenario(scenario_file);
            auto strategies = enumerate_strategies(s);
            if (pretty) {
                std::cout << s.str() << ": " << strategies.size() << " vertices\n";
                if (full)
                    for (const auto& d : strategies) {
                        for (int p = 0; p < s.num_parties(); ++p) {
                            std::cout << (p ? " | " : "");
                            for (int x = 1; x <= s.num_settings(p); ++x)
                                std::cout << (x > 1 ? " " : "") << d.outcome(p, x);
                        }
                        std::cout << "\n";
                    }
            } else {
                nlohmann::json out{{"schema", 1},
                                   {"scenario", scenario_to_json(s)},
                                   {"count", (long long)strategies.size()}};
                if (full) {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& d : strategies) arr.push_back(d.choice);
                    out["vertices"] = arr;
                }
                std::cout << out.dump(1) << std::endl;
            }
            return 0;
        }

        if (cmd_facets->parsed()) {
            Scenario s = load_scenario(scenario_file);
            ExperimentOptions opt;
            opt.cache_dir = cache_dir;
            opt.force = force;
            opt.max_vertices = max_vertices;
            auto rep = run_facets(s, opt);
            print_report(rep, pretty);
            return rep.pass ? 0 : 1;
        }

        if (cmd_exp->parsed()) {
            ExperimentOptions opt;
            opt.cache_dir = cache_dir;
            opt.force = force;
            opt.long_run = long_run;
            opt.max_vertices = max_vertices;
            opt.max_w = max_w;
            opt.max_n = max_n;
            opt.n_min = n_min;
            opt.n_max = n_max;
            opt.cases = cases;
            opt.seed = seed;
            auto rep = run_experiment(experiment_id, opt);
            print_report(rep, pretty);
            return rep.pass ? 0 : 1;
        }

        if (cmd_families->parsed()) {
            for (const auto& line : family_registry()) std::cout << line << "\n";
            return 0;
        }

        if (cmd_make->parsed()) {
            FamilyId id =
                parse_family(family_name, fam_n, fam_w, fam_y, fam_yp, fam_G, fam_Gp, fam_a,
                             fam_upper);
            BellInequality i = make(id);
            if (pretty) {
                std::cout << i.scenario.str() << "\n" << render(i) << "\n";
            } else {
                std::cout << inequality_to_json(i).dump(1) << std::endl;
            }
            return 0;
        }
    } catch (const CapExceeded& e) {
        std::cerr << "refused: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
