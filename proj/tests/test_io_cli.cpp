#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "vcramsey/cli.hpp"
#include "vcramsey/errors.hpp"
#include "vcramsey/io.hpp"
#include "vcramsey/ramsey_small.hpp"

using namespace vcramsey;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("vcramsey_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::size_t error_line(const std::string& text, bool coloring)
{
    std::istringstream in(text);
    try {
        if (coloring) read_coloring_text(in);
        else read_set_system_text(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

RunConfig cfg(const std::string& command)
{
    RunConfig c;
    c.command = command;
    return c;
}

json report_of(const RunResult& r) { return json::parse(r.report); }

}  // namespace

TEST_SUITE("io_cli")
{
    TEST_CASE("set-system text parsing")
    {
        std::istringstream in("# comment\n4 3\n\n1010\ns 1 3\ns\n");
        const SetSystem s = read_set_system_text(in);
        CHECK(s.ground_size() == 4);
        REQUIRE(s.size() == 3);
        CHECK(s.member(0).indices() == IndexSet{0, 2});
        CHECK(s.member(1).indices() == IndexSet{1, 3});
        CHECK(s.member(2).indices().empty());
    }

    TEST_CASE("parse errors carry line numbers")
    {
        CHECK(error_line("", false) == 1);
        CHECK(error_line("3 1\n10\n", false) == 2);
        CHECK(error_line("3 2\n101\n1x1\n", false) == 3);
        CHECK(error_line("3 1\ns 0 3\n", false) == 2);
        CHECK(error_line("# c\n3 x\n", false) == 2);
        CHECK(error_line("3 2\n0 1 2\n", true) == 2);
        CHECK(error_line("3 2\n0 1\n", true) == 2);
        CHECK(error_line("3 2\n0 1 1\n1\n", true) == 3);
    }

    TEST_CASE("text and JSON round trips")
    {
        const SetSystem s = random_set_system(9, 14, 2);
        std::stringstream a;
        write_set_system_text(a, s);
        CHECK(read_set_system_text(a) == s);
        CHECK(set_system_from_json(to_json(s)) == s);

        const EdgeColoring c = random_coloring(11, 3, 4);
        std::stringstream b;
        write_coloring_text(b, c);
        CHECK(read_coloring_text(b) == c);
        CHECK(coloring_from_json(to_json(c)) == c);

        const CliqueCertificate cert{{1, 4, 6}, 2};
        CHECK(certificate_from_json(to_json(cert)) == cert);

        const Partition p = partition(random_interval_system(40, 30, 1), 4, 2);
        const Partition q = partition_from_json(to_json(p));
        CHECK(q.parts == p.parts);
        CHECK(q.delta == p.delta);
        CHECK(q.size_cap == p.size_cap);
    }

    TEST_CASE("file helpers choose the format from the extension")
    {
        TempDir dir;
        const EdgeColoring c = lower_bound_coloring(3);
        save_coloring(dir / "c.txt", c);
        save_coloring(dir / "c.json", c);
        CHECK(load_coloring(dir / "c.txt") == c);
        CHECK(load_coloring(dir / "c.json") == c);
        CHECK(load_json(dir / "c.json").contains("edges"));
        CHECK_THROWS_AS(load_coloring(dir / "missing.txt"), ValidationError);
    }

    TEST_CASE("run: analyze")
    {
        TempDir dir;
        std::ofstream(dir / "p3.txt") << "3 8\ns\ns 0\ns 1\ns 2\ns 0 1\ns 0 2\ns 1 2\ns 0 1 2\n";
        RunConfig c = cfg("analyze");
        c.input = dir / "p3.txt";
        const RunResult r = run(c);
        REQUIRE(r.exit_code == kExitOk);
        const json j = report_of(r);
        CHECK(j["schema_version"] == 1);
        CHECK(j["status"] == "ok");
        CHECK(j["result"]["vc_dimension"] == 3);
        CHECK(j["result"]["dual_vc_dimension"] == 1);
        CHECK(j["config"]["command"] == "analyze");
    }

    TEST_CASE("run: construct, verify and search")
    {
        TempDir dir;
        RunConfig c = cfg("construct");
        c.lower_bound = true;
        c.m = 3;
        c.output = dir / "k8.txt";
        const json j = report_of(run(c));
        CHECK(j["result"]["triangle_free"] == true);
        CHECK(j["result"]["round_trip"] == true);

        RunConfig v = cfg("verify");
        v.input = dir / "k8.txt";
        v.no_clique = 3;
        CHECK(run(v).exit_code == kExitOk);
        v.no_clique = 2;
        const RunResult bad = run(v);
        CHECK(bad.exit_code == kExitIntegrity);
        CHECK(report_of(bad)["status"] == "integrity_failure");

        RunConfig s = cfg("search");
        s.input = dir / "k8.txt";
        s.k = 2;
        const json found = report_of(run(s));
        CHECK(found["result"]["found"] == true);
        CHECK(found["result"]["verified"] == true);
        s.method = "descent";
        s.targets = {3, 3, 3};
        const json desc = report_of(run(s));
        CHECK(desc["result"]["descent"]["success"] == false);
    }

    TEST_CASE("run: certificate verification")
    {
        TempDir dir;
        save_coloring(dir / "c.txt", lower_bound_coloring(2));
        save_json(dir / "good.json", to_json(CliqueCertificate{{0, 1}, 0}));
        save_json(dir / "bad.json", to_json(CliqueCertificate{{0, 1, 2}, 0}));
        RunConfig v = cfg("verify");
        v.input = dir / "c.txt";
        v.certificate = dir / "good.json";
        CHECK(run(v).exit_code == kExitOk);
        v.certificate = dir / "bad.json";
        CHECK(run(v).exit_code == kExitIntegrity);
    }

    TEST_CASE("run: random, pack, partition and partition verification")
    {
        TempDir dir;
        RunConfig r = cfg("random");
        r.kind = "intervals";
        r.n = 50;
        r.members = 60;
        r.seed = 3;
        r.output = dir / "iv.txt";
        REQUIRE(run(r).exit_code == kExitOk);

        RunConfig p = cfg("pack");
        p.input = dir / "iv.txt";
        p.delta = 8;
        p.d = 2;
        const json pj = report_of(run(p));
        CHECK(pj["status"] == "ok");

        RunConfig q = cfg("partition");
        q.input = dir / "iv.txt";
        q.delta = 8;
        const RunResult qr = run(q);
        REQUIRE(qr.exit_code == kExitOk);
        const json qj = report_of(qr);
        CHECK(qj["result"]["d_source"] == "exact_dual_vc");
        save_json(dir / "part.json", qj["result"]["partition"]);

        RunConfig v = cfg("verify");
        v.system = dir / "iv.txt";
        v.partition = dir / "part.json";
        CHECK(run(v).exit_code == kExitOk);

        json broken = qj["result"]["partition"];
        broken["parts"].erase(0);
        save_json(dir / "broken.json", broken);
        v.partition = dir / "broken.json";
        CHECK(run(v).exit_code == kExitIntegrity);
    }

    TEST_CASE("run: trace")
    {
        TempDir dir;
        save_coloring(dir / "c.txt", random_coloring(64, 3, 2));
        RunConfig t = cfg("trace");
        t.input = dir / "c.txt";
        t.budgets = {4, 2};
        t.d = 2;
        const json j = report_of(run(t));
        CHECK(j["status"] == "ok");
        CHECK(j["result"]["d_source"] == "given");
    }

    TEST_CASE("run: exit codes for bad input")
    {
        CHECK(run(cfg("frobnicate")).exit_code == kExitValidation);
        RunConfig a = cfg("analyze");
        a.input = "/nonexistent/file.txt";
        CHECK(run(a).exit_code == kExitValidation);
        RunConfig f = cfg("ramsey-small");
        f.format = "xml";
        CHECK(run(f).exit_code == kExitValidation);

        TempDir dir;
        std::ofstream(dir / "bad.txt") << "2 1\n1x\n";
        a.input = dir / "bad.txt";
        const RunResult r = run(a);
        CHECK(r.exit_code == kExitValidation);
        CHECK(r.error.find("line 2") != std::string::npos);

        save_coloring(dir / "big.txt", lower_bound_coloring(6));
        RunConfig s = cfg("search");
        s.input = dir / "big.txt";
        s.k = 3;
        s.work_budget = 10;
        CHECK(run(s).exit_code == kExitBudget);
    }

    TEST_CASE("run is deterministic and formats agree")
    {
        RunConfig c = cfg("ramsey-small");
        c.k = 3;
        c.m = 2;
        const RunResult a = run(c);
        const RunResult b = run(c);
        CHECK(a.report == b.report);
        const json j = report_of(a);
        CHECK(j["result"]["ramsey"]["value"] == 6);

        c.format = "csv";
        const std::string csv = run(c).report;
        CHECK(csv.rfind("key,value\n", 0) == 0);
        CHECK(csv.find("result.ramsey.value,6\n") != std::string::npos);
        c.format = "text";
        CHECK(run(c).report.find("result.ramsey.value: 6\n") != std::string::npos);
    }

    TEST_CASE("small Ramsey numbers")
    {
        CHECK(ramsey_small(1, 3).value == 1u);
        CHECK(ramsey_small(2, 3).value == 2u);
        CHECK(ramsey_small(3, 1).value == 3u);
        CHECK(ramsey_small(4, 1).value == 4u);
        const RamseyResult r = ramsey_small(3, 2);
        CHECK(r.value == 6u);
        CHECK(r.lower_bound == 6);
        CHECK(r.exhaustive_confirmed);
        CHECK(r.colorings_checked == 32768);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->n() == 5);
    }
}
