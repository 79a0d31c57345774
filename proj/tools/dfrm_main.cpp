// dfrm: finite d-frame toolkit.
//
// Subcommands: validate, gen, check, coproduct, search. Exit codes:
// 0 success, 1 mathematical failure (witness printed), 2 input error,
// 3 capacity guard. DFRM_CAPACITY=<bits> overrides enumeration guards.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dfrm/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dfrm::StructureError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int finish(const dfrm::CommandResult& r) {
    std::cout << r.report;
    return r.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite d-frame toolkit: presentations, generation, coproducts"};
    app.require_subcommand(1);
    dfrm::Capacity cap = dfrm::Capacity::from_env();

    std::string file, name;
    bool conditions = false, dump = false;

    CLI::App* validate = app.add_subcommand("validate", "structural and axiom checks");
    validate->add_option("file", file)->required();
    validate->add_flag("--dump", dump, "machine-readable output");

    CLI::App* gen = app.add_subcommand("gen", "generate the pre-d-frame of a presentation");
    gen->add_option("file", file)->required();
    gen->add_option("--name", name, "predframe declaration to generate")->required();

    CLI::App* check = app.add_subcommand("check", "condition ladder and theorem gates");
    check->add_option("file", file)->required();
    check->add_option("--name", name)->required();
    check->add_flag("--conditions", conditions, "print the per-condition table");
    check->add_flag("--dump", dump);

    std::string names_csv;
    CLI::App* copr = app.add_subcommand("coproduct", "build a d-frame coproduct with certificate");
    copr->add_option("file", file)->required();
    copr->add_option("--names", names_csv, "comma-separated dframe names")->required();
    copr->add_flag("--dump", dump);

    dfrm::SearchConfig cfg;
    cfg.cap = cap;
    std::string mode = "exhaustive";
    CLI::App* search = app.add_subcommand("search", "sweep presentations for counterexamples");
    search->add_option("--max-b", cfg.max_b, "largest generator carrier per side");
    search->add_option("--max-rel", cfg.max_rel, "largest seed relation");
    search->add_option("--max-covers", cfg.max_covers, "cover-set size bound (-1: all)");
    search->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
    search->add_option("--samples", cfg.samples, "random-mode sample count");
    search->add_option("--seed", cfg.seed, "random-mode seed");
    search->add_flag("--dump", dump);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return finish(dfrm::cmd_validate(read_file(file), dump));
        if (gen->parsed()) return finish(dfrm::cmd_gen(read_file(file), name, cap));
        if (check->parsed())
            return finish(dfrm::cmd_check(read_file(file), name, conditions, dump, cap));
        if (copr->parsed()) {
            std::vector<std::string> names;
            std::stringstream ss(names_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) names.push_back(item);
            if (names.empty()) {
                std::cout << "no dframe names given\n";
                return 2;
            }
            return finish(dfrm::cmd_coproduct(read_file(file), names, dump, cap));
        }
        if (search->parsed()) {
            cfg.mode = mode == "random" ? dfrm::SearchConfig::Mode::Random
                                        : dfrm::SearchConfig::Mode::Exhaustive;
            return finish(dfrm::cmd_search(cfg, dump));
        }
    } catch (const dfrm::CapacityError& e) {
        std::cout << e.what() << "\n";
        return 3;
    } catch (const dfrm::StructureError& e) {
        std::cout << e.what() << "\n";
        return 2;
    }
    return 2;
}
