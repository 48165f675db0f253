#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vcramsey/cli.hpp"

using vcramsey::RunConfig;

namespace {

void common(CLI::App* sub, RunConfig& c)
{
    sub->add_option("-o,--output", c.output, "Output file (.json selects JSON)");
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--budget", c.work_budget, "Work budget for exact searches");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Set-system and monochromatic-clique toolkit"};
    app.require_subcommand(1);
    RunConfig c;

    auto* analyze = app.add_subcommand("analyze", "VC and dual VC-dimension of a set system or coloring");
    analyze->add_option("input", c.input, "Set-system (or coloring) file")->required();
    analyze->add_flag("--vc", c.vc, "Report VC-dimension");
    analyze->add_flag("--dual-vc", c.dual_vc, "Report dual VC-dimension");
    analyze->add_flag("--coloring", c.coloring_input, "Input is a coloring; analyze its neighborhood family");
    common(analyze, c);

    auto* construct = app.add_subcommand("construct", "Build the recursive triangle-free coloring of K_{2^m}");
    construct->add_flag("--lower-bound", c.lower_bound, "Recursive two-copy construction")->required();
    construct->add_option("-m", c.m, "Number of colors")->required();
    common(construct, c);

    auto* random = app.add_subcommand("random", "Seeded random coloring or set system");
    random->add_option("--kind", c.kind, "coloring | system | intervals")
        ->check(CLI::IsMember({"coloring", "system", "intervals"}));
    random->add_option("-n", c.n, "Vertices / ground size")->required();
    random->add_option("-m", c.m, "Colors");
    random->add_option("--members", c.members, "Member count for set systems");
    random->add_option("--seed", c.seed, "Seed (default 0)");
    common(random, c);

    auto* pack = app.add_subcommand("pack", "Greedy maximal delta-separated packing");
    pack->add_option("input", c.input, "Set-system file")->required();
    pack->add_option("--delta", c.delta, "Separation threshold")->required();
    pack->add_option("-d", c.d, "Dual VC-dimension for the packing bound");
    common(pack, c);

    auto* part = app.add_subcommand("partition", "Low-crossing partition of the ground set");
    part->add_option("input", c.input, "Set-system file")->required();
    part->add_option("--delta", c.delta, "Crossing threshold")->required();
    part->add_option("-d", c.d, "Dual VC-dimension (default: computed exactly)");
    common(part, c);

    auto* search = app.add_subcommand("search", "Find a monochromatic clique");
    search->add_option("input", c.input, "Coloring file")->required();
    search->add_option("--method", c.method, "brute | descent")->check(CLI::IsMember({"brute", "descent"}));
    search->add_option("-k", c.k, "Clique size (brute) or common target (descent)");
    search->add_option("--targets", c.targets, "Per-color clique targets (descent)")->delimiter(',');
    search->add_option("--color", c.color, "Restrict brute-force search to one color");
    search->add_option("--menu-bound", c.menu_bound, "Colors offered per pivot (descent)");
    common(search, c);

    auto* trace = app.add_subcommand("trace", "Level-by-level covering construction report");
    trace->add_option("input", c.input, "Coloring file")->required();
    trace->add_option("--budgets", c.budgets, "Strictly decreasing level budgets, e.g. 8,3")
        ->delimiter(',')
        ->required();
    trace->add_option("-d", c.d, "Dual VC-dimension (default: computed exactly)");
    trace->add_option("-k", c.k, "Common clique target");
    trace->add_option("--targets", c.targets, "Per-color clique targets")->delimiter(',');
    common(trace, c);

    auto* ramsey = app.add_subcommand("ramsey-small", "Exact small multicolor Ramsey numbers r(k;m)");
    ramsey->add_option("-k", c.k, "Clique size")->required();
    ramsey->add_option("-m", c.m, "Colors")->required();
    ramsey->add_option("--n-max", c.n_max, "Largest vertex count to examine (default 10)");
    ramsey->add_option("--seed", c.seed, "Seed for the witness hunt (default 0)");
    common(ramsey, c);

    auto* verify = app.add_subcommand("verify", "Check certificates, clique-freeness or partitions");
    verify->add_option("input", c.input, "Coloring file");
    verify->add_option("--certificate", c.certificate, "Clique certificate JSON");
    verify->add_option("--no-clique", c.no_clique, "Assert no monochromatic K_k");
    verify->add_option("--system", c.system, "Set-system file for --partition");
    verify->add_option("--partition", c.partition, "Partition JSON");
    common(verify, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : vcramsey::kExitValidation;
    }
    for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();

    const vcramsey::RunResult r = vcramsey::run(c);
    std::cout << r.report;
    if (r.exit_code != vcramsey::kExitOk) std::cerr << "error: " << r.error << '\n';
    return r.exit_code;
}
