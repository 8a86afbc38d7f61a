// Command-line front end: instance I/O, algorithm dispatch, certificate and
// graph export, and seeded instance generation.
//
// Exit codes: 0 success, 1 input error, 2 internal fairness bug (an
// algorithm's own output failed its claimed notion), 3 check failed.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/checkers.hpp"
#include "fairdiv/generate.hpp"
#include "fairdiv/hardness.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/mixed_efm.hpp"

namespace {

using namespace fairdiv;

// Permutation flags come as comma-separated 1-based lists, e.g. "3,1,2".
std::vector<int> parse_permutation(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            require(used == tok.size(), "bad permutation entry '" + tok + "'");
            require(v >= 1, "permutation entries are 1-based indices");
            out.push_back(v - 1);
        } catch (const std::logic_error&) {
            throw InputError("bad permutation entry '" + tok + "'");
        }
    }
    require(!out.empty(), "permutation list is empty");
    return out;
}

std::string allocation_text(const Allocation& a) {
    std::string out = "allocation\n";
    for (int i = 0; i < a.agents(); ++i) {
        out += "a" + std::to_string(i + 1) + ":";
        for (int j : a.bundles[i]) out += " c" + std::to_string(j + 1);
        if (a.bundles[i].empty()) out += " (empty)";
        out += "\n";
    }
    return out;
}

std::string mixed_allocation_text(const MixedAllocation& a) {
    std::string out = allocation_text(a.items);
    for (int i = 0; i < a.agents(); ++i)
        out += "cake a" + std::to_string(i + 1) + ": " +
               detail::piece_text(a.cake[i]) + "\n";
    return out;
}

struct SolveOptions {
    std::string algo;
    std::optional<std::string> tracePath, dotPath, outPath;
    std::string cyclePolicy = "arbitrary";
    std::optional<std::string> itemOrder, agentOrder;
    std::uint64_t budget = kDefaultSearchBudget;
};

const IndivisibleInstance& items_only(const AnyInstance& inst, const std::string& algo) {
    if (const auto* p = std::get_if<IndivisibleInstance>(&inst)) return *p;
    throw InputError("algorithm '" + algo + "' needs an indivisible instance");
}

const MixedInstance& mixed_only(const AnyInstance& inst, const std::string& algo,
                                DivisibleKind kind) {
    const auto* p = std::get_if<MixedInstance>(&inst);
    require(p != nullptr, "algorithm '" + algo + "' needs a mixed instance");
    require(p->kind() == kind,
            "algorithm '" + algo + "' needs divisibleKind " +
                std::string(kind == DivisibleKind::Cake ? "cake" : "bad-cake"));
    return *p;
}

CyclePolicy parse_policy(const std::string& name) {
    // "dfs" is the deterministic spelling of the arbitrary policy: the
    // implementation always resolves the first cycle found by DFS.
    if (name == "arbitrary" || name == "dfs") return CyclePolicy::ArbitraryCycle;
    if (name == "refuse") return CyclePolicy::RefuseAll;
    throw InputError("unknown cycle policy '" + name + "'");
}

// Shared tail for indivisible solves: print, export, re-validate the claimed
// notion, and pick the exit code.
int finish_indivisible(const IndivisibleInstance& inst, const Allocation& alloc,
                       const RunTrace* trace, std::optional<Notion> claims,
                       const SolveOptions& opt) {
    std::cout << allocation_text(alloc);
    FairnessCertificate cert = claims && *claims == Notion::EF ? check_ef(inst, alloc)
                                                               : check_ef1(inst, alloc);
    if (!claims)
        std::cout << "note: this algorithm makes no fairness claim; "
                     "certificate is informational\n";
    std::cout << to_text(cert);
    if (opt.tracePath) {
        require(trace != nullptr, "algorithm '" + opt.algo + "' records no trace");
        write_text_file(*opt.tracePath, serialize_trace(*trace));
    }
    if (opt.dotPath)
        write_text_file(*opt.dotPath, to_dot(build_graph(inst, alloc, GraphVariant::Plain)));
    if (opt.outPath) write_text_file(*opt.outPath, serialize_allocation(alloc));
    if (claims && !cert.ok) {
        std::cerr << "internal error: output violates the claimed "
                  << notion_name(*claims) << " guarantee\n";
        return 2;
    }
    return 0;
}

int finish_mixed(const MixedInstance& inst, const MixedResult& result,
                 const SolveOptions& opt) {
    std::cout << mixed_allocation_text(result.allocation);
    FairnessCertificate cert = check_efm(inst, result.allocation);
    std::cout << to_text(cert);
    if (opt.tracePath) write_text_file(*opt.tracePath, serialize_trace(result.trace));
    if (opt.dotPath)
        write_text_file(*opt.dotPath,
                        to_dot(build_graph(inst, result.allocation,
                                           GraphVariant::Generalized)));
    if (opt.outPath) write_text_file(*opt.outPath, serialize_allocation(result.allocation));
    if (!cert.ok) {
        std::cerr << "internal error: output violates the claimed efm guarantee\n";
        return 2;
    }
    return 0;
}

int run_solve(const std::string& instancePath, const SolveOptions& opt) {
    AnyInstance any = load_instance(instancePath);
    std::optional<std::vector<int>> itemOrder, agentOrder;
    if (opt.itemOrder) itemOrder = parse_permutation(*opt.itemOrder);
    if (opt.agentOrder) agentOrder = parse_permutation(*opt.agentOrder);

    if (opt.algo == "naive-ece") {
        const auto& inst = items_only(any, opt.algo);
        AlgoResult r = naive_envy_cycle_elimination(inst, itemOrder);
        return finish_indivisible(inst, r.allocation, &r.trace, std::nullopt, opt);
    }
    if (opt.algo == "ttece") {
        const auto& inst = items_only(any, opt.algo);
        AlgoResult r = top_trading_envy_cycle_elimination(inst, itemOrder);
        return finish_indivisible(inst, r.allocation, &r.trace, Notion::EF1, opt);
    }
    if (opt.algo == "doubly-monotone") {
        const auto& inst = items_only(any, opt.algo);
        AlgoResult r = doubly_monotone_ef1(inst, itemOrder);
        return finish_indivisible(inst, r.allocation, &r.trace, Notion::EF1, opt);
    }
    if (opt.algo == "round-robin") {
        const auto& inst = items_only(any, opt.algo);
        Allocation a = round_robin(inst, agentOrder);
        // round robin is EF1 when all items share one sign per instance;
        // on mixed-sign instances it makes no claim
        bool signUniform = inst.monotone_non_increasing();
        if (!signUniform) {
            signUniform = true;
            for (int i = 0; i < inst.agents() && signUniform; ++i)
                signUniform = inst.valuation(i).monotone_non_decreasing();
        }
        return finish_indivisible(inst, a, nullptr,
                                  signUniform ? std::optional<Notion>(Notion::EF1)
                                              : std::nullopt,
                                  opt);
    }
    if (opt.algo == "cwma") {
        const auto& inst = items_only(any, opt.algo);
        AlgoResult r = cwma(inst);
        return finish_indivisible(inst, r.allocation, &r.trace, Notion::EF1, opt);
    }
    if (opt.algo == "brute-ef" || opt.algo == "brute-ef1") {
        const auto& inst = items_only(any, opt.algo);
        Notion notion = opt.algo == "brute-ef" ? Notion::EF : Notion::EF1;
        auto hit = brute_force_fair_search(inst, notion, opt.budget);
        if (!hit) {
            std::cout << "no " << (notion == Notion::EF ? "EF" : "EF1")
                      << " allocation\n";
            return 0;
        }
        return finish_indivisible(inst, *hit, nullptr, notion, opt);
    }
    if (opt.algo == "efm-badcake") {
        const auto& inst = mixed_only(any, opt.algo, DivisibleKind::BadCake);
        return finish_mixed(inst, efm_doubly_monotone_bad_cake(inst), opt);
    }
    if (opt.algo == "efm-cake-phase") {
        const auto& inst = mixed_only(any, opt.algo, DivisibleKind::Cake);
        const auto& items = inst.indivisible();
        // start from the strongest item allocation available: cwma for
        // additive chores (kills generalized envy cycles), otherwise the
        // doubly monotone EF1 algorithm
        Allocation start = items.additive() && items.monotone_non_increasing()
                               ? cwma(items).allocation
                               : doubly_monotone_ef1(items).allocation;
        return finish_mixed(inst, efm_cake_phase(inst, start, parse_policy(opt.cyclePolicy)),
                            opt);
    }
    if (opt.algo == "efm-identical") {
        const auto& inst = mixed_only(any, opt.algo, DivisibleKind::Cake);
        return finish_mixed(inst, efm_identical_rankings_chores_cake(inst), opt);
    }
    if (opt.algo == "efm-few-chores") {
        const auto& inst = mixed_only(any, opt.algo, DivisibleKind::Cake);
        return finish_mixed(inst, efm_few_chores_cake(inst), opt);
    }
    throw InputError("unknown algorithm '" + opt.algo + "'");
}

struct GenerateOptions {
    std::string family;
    std::uint64_t seed = 0;
    int agents = 3, items = 6;
    int universe = 3, members = 3;
    int segments = 4;
    std::optional<std::string> outPath;
};

int run_generate(const GenerateOptions& opt) {
    Rng rng(opt.seed);
    AnyInstance out = [&]() -> AnyInstance {
        if (opt.family == "additive-chores")
            return gen_additive_chores(rng, opt.agents, opt.items);
        if (opt.family == "binary-chores")
            return gen_binary_chores(rng, opt.agents, opt.items);
        if (opt.family == "doubly-monotone")
            return gen_doubly_monotone_additive(rng, opt.agents, opt.items);
        if (opt.family == "identical-rankings")
            return gen_identical_rankings_chores(rng, opt.agents, opt.items);
        if (opt.family == "set-splitting-reduced")
            return reduce_set_splitting(gen_set_splitting(rng, opt.universe, opt.members));
        if (opt.family == "mixed-badcake")
            return gen_mixed(rng, DivisibleKind::BadCake, opt.agents, opt.items,
                             opt.segments);
        if (opt.family == "mixed-cake")
            return gen_mixed(rng, DivisibleKind::Cake, opt.agents, opt.items,
                             opt.segments);
        throw InputError("unknown family '" + opt.family + "'");
    }();
    std::string text = serialize_instance(out);
    if (opt.outPath)
        write_text_file(*opt.outPath, text);
    else
        std::cout << text;
    return 0;
}

int run_check(const std::string& instancePath, const std::string& allocationPath,
              const std::string& notionName) {
    Notion notion;
    if (notionName == "ef") notion = Notion::EF;
    else if (notionName == "ef1") notion = Notion::EF1;
    else if (notionName == "efm") notion = Notion::EFM;
    else throw InputError("unknown notion '" + notionName + "'");

    AnyInstance any = load_instance(instancePath);
    AllocationFile file = load_allocation(allocationPath);

    FairnessCertificate cert;
    if (notion == Notion::EFM) {
        const auto* mixed = std::get_if<MixedInstance>(&any);
        require(mixed != nullptr, "efm check needs a mixed instance");
        MixedAllocation a(mixed->agents());
        a.items = file.items;
        if (file.cake) a.cake = *file.cake;
        require(static_cast<int>(a.cake.size()) == mixed->agents(),
                "allocation cake list does not match agent count");
        a.validate(mixed->agents(), mixed->items());
        require(a.items.complete(mixed->items()), "allocation leaves items unassigned");
        cert = check_efm(*mixed, a);
    } else {
        const IndivisibleInstance& items = std::holds_alternative<MixedInstance>(any)
                                               ? std::get<MixedInstance>(any).indivisible()
                                               : std::get<IndivisibleInstance>(any);
        require(!file.cake || std::holds_alternative<MixedInstance>(any),
                "allocation carries cake pieces but the instance is indivisible");
        file.items.validate(items.agents(), items.items());
        require(file.items.complete(items.items()), "allocation leaves items unassigned");
        cert = notion == Notion::EF ? check_ef(items, file.items)
                                    : check_ef1(items, file.items);
    }
    std::cout << to_text(cert);
    return cert.ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fair division of indivisible items and (bad) cake"};
    app.require_subcommand(1);

    std::string instancePath, allocationPath, notion = "ef1";
    SolveOptions solveOpt;
    GenerateOptions genOpt;
    std::string tracePath, dotPath, outPath, itemOrder, agentOrder, genOut;

    CLI::App* solve = app.add_subcommand("solve", "run an allocation algorithm");
    solve->add_option("instance", instancePath, "instance JSON file")->required();
    solve->add_option("--algo", solveOpt.algo,
                      "one of naive-ece, ttece, doubly-monotone, round-robin, cwma, "
                      "efm-badcake, efm-cake-phase, efm-identical, efm-few-chores, "
                      "brute-ef, brute-ef1")
        ->required();
    solve->add_option("--trace", tracePath, "write the run trace to this file");
    solve->add_option("--dot", dotPath, "write the final envy graph in DOT format");
    solve->add_option("--out", outPath, "write the allocation JSON to this file");
    solve->add_option("--cycle-policy", solveOpt.cyclePolicy,
                      "cycle handling for efm-cake-phase: arbitrary, refuse, dfs");
    solve->add_option("--item-order", itemOrder, "1-based item permutation, e.g. 2,1,3");
    solve->add_option("--agent-order", agentOrder, "1-based agent permutation");
    solve->add_option("--budget", solveOpt.budget, "assignment budget for brute-force");

    CLI::App* generate = app.add_subcommand("generate", "emit a random instance");
    generate->add_option("--family", genOpt.family,
                         "one of additive-chores, binary-chores, doubly-monotone, "
                         "identical-rankings, set-splitting-reduced, mixed-badcake, "
                         "mixed-cake")
        ->required();
    generate->add_option("--seed", genOpt.seed, "rng seed")->required();
    generate->add_option("--agents", genOpt.agents, "agent count (default 3)");
    generate->add_option("--items", genOpt.items, "item count (default 6)");
    generate->add_option("--universe", genOpt.universe,
                         "set-splitting universe size (default 3)");
    generate->add_option("--members", genOpt.members,
                         "set-splitting family size (default 3)");
    generate->add_option("--segments", genOpt.segments,
                         "max density segments for mixed families (default 4)");
    generate->add_option("--out", genOut, "write the instance here instead of stdout");

    CLI::App* check = app.add_subcommand("check", "verify a fairness notion");
    check->add_option("instance", instancePath, "instance JSON file")->required();
    check->add_option("allocation", allocationPath, "allocation JSON file")->required();
    check->add_option("--notion", notion, "ef, ef1, or efm")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            if (!tracePath.empty()) solveOpt.tracePath = tracePath;
            if (!dotPath.empty()) solveOpt.dotPath = dotPath;
            if (!outPath.empty()) solveOpt.outPath = outPath;
            if (!itemOrder.empty()) solveOpt.itemOrder = itemOrder;
            if (!agentOrder.empty()) solveOpt.agentOrder = agentOrder;
            return run_solve(instancePath, solveOpt);
        }
        if (generate->parsed()) {
            if (!genOut.empty()) genOpt.outPath = genOut;
            return run_generate(genOpt);
        }
        return run_check(instancePath, allocationPath, notion);
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CyclePolicyRefusal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
