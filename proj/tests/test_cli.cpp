#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

struct ToolRun {
    int exit_code;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        const fs::path d =
            fs::temp_directory_path() / ("qvord_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

ToolRun run_tool(const std::string& args) {
    static int counter = 0;
    const fs::path out_file = scratch_dir() / ("out" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        QVORD_TOOL_PATH + (" " + args) + " >" + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {code, buffer.str()};
}

const std::string kTable1 = std::string(QVORD_DATA_DIR) + "/table1_slavic.tsv";

} // namespace

TEST_CASE("reproduce prints the expected modified-graph clusters") {
    const ToolRun r = run_tool("reproduce --seed 42");
    REQUIRE(r.exit_code == 0);
    const std::string expected = "{BUL,CRO,MAC,SLO,SRB} {CZE,SVK} {POL,RUS,UKR,UPS}";
    std::size_t hits = 0;
    std::istringstream lines(r.out);
    std::string line;
    bool in_modified = false;
    while (std::getline(lines, line)) {
        if (line.find("modified coordinates") != std::string::npos)
            in_modified = true;
        else if (line.find("original coordinates") != std::string::npos)
            in_modified = false;
        if (in_modified && line.find(expected) != std::string::npos)
            ++hits;
    }
    CHECK(hits == 5);
    CHECK(r.out.find("all five methods agree") != std::string::npos);
    CHECK(r.out.find("original-coordinate clusters match the inventory-size clusters") !=
          std::string::npos);
}

TEST_CASE("reproduce is byte-deterministic across runs") {
    const fs::path dir_a = scratch_dir() / "rep_a";
    const fs::path dir_b = scratch_dir() / "rep_b";
    const ToolRun a = run_tool("reproduce --seed 42 --output-dir " + dir_a.string());
    const ToolRun b = run_tool("reproduce --seed 42 --output-dir " + dir_b.string());
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    for (const char* name : {"report_modified.json", "report_original.json",
                             "report_inventory.json", "modified.svg", "original.svg",
                             "report_modified.csv"}) {
        std::ifstream fa(dir_a / name, std::ios::binary);
        std::ifstream fb(dir_b / name, std::ios::binary);
        REQUIRE(fa);
        REQUIRE(fb);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        REQUIRE(sa.str().size() > 0);
        CHECK(sa.str() == sb.str());
    }
}

TEST_CASE("indices subcommand prints all eleven languages") {
    const ToolRun r = run_tool("indices --input " + kTable1 + " --format matrix");
    REQUIRE(r.exit_code == 0);
    for (const char* lang : {"BUL", "CRO", "CZE", "MAC", "POL", "RUS", "SLO", "SRB", "SVK",
                             "UKR", "UPS"})
        CHECK(r.out.find(lang) != std::string::npos);
    CHECK(r.out.find("0.976644") != std::string::npos); // SLO va
}

TEST_CASE("ord subcommand emits JSON on request") {
    const fs::path json = scratch_dir() / "ord.json";
    const ToolRun r = run_tool("ord --input " + kTable1 + " --format matrix --output " +
                               json.string());
    REQUIRE(r.exit_code == 0);
    std::ifstream in(json);
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str().find("\"languages\"") != std::string::npos);
    const auto doc = nlohmann::json::parse(buffer.str());
    CHECK(std::abs(doc.at("languages").at("RUS").at("i").get<double>() -
                   5.449278459683599) < 1e-12);
}

TEST_CASE("cluster subcommand prints the groups and writes a report") {
    const fs::path json = scratch_dir() / "cluster.json";
    const ToolRun r = run_tool("cluster --input " + kTable1 +
                               " --coords modified --k 3 --method kmeans --variant lloyd "
                               "--seed 42 --restarts 50 --output " +
                               json.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("{BUL, CRO, MAC, SLO, SRB}") != std::string::npos);
    CHECK(r.out.find("{CZE, SVK}") != std::string::npos);
    CHECK(fs::exists(json));

    // feed the report back into plot --clusters
    const fs::path svg = scratch_dir() / "plot.svg";
    const ToolRun p = run_tool("plot --input " + kTable1 +
                               " --coords modified --clusters " + json.string() +
                               " --overlay --output " + svg.string());
    REQUIRE(p.exit_code == 0);
    std::ifstream in(svg, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::size_t markers = 0;
    for (std::size_t pos = buffer.str().find("class=\"pt\""); pos != std::string::npos;
         pos = buffer.str().find("class=\"pt\"", pos + 1))
        ++markers;
    CHECK(markers == 11);
}

TEST_CASE("theory subcommand") {
    const ToolRun r = run_tool("theory --dist binomial --params 10,0.5 --classify");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("I    = 0.5") != std::string::npos);
    CHECK(r.out.find("S    = 0") != std::string::npos);
    CHECK(r.out.find("BINOMIAL_SEGMENT") != std::string::npos);

    const ToolRun poisson = run_tool("theory --dist poisson --params 2 --classify");
    REQUIRE(poisson.exit_code == 0);
    CHECK(poisson.out.find("POISSON_POINT") != std::string::npos);
}

TEST_CASE("count subcommand produces a loadable long TSV") {
    const fs::path text = scratch_dir() / "sample.txt";
    const fs::path alphabet = scratch_dir() / "alpha.txt";
    const fs::path out = scratch_dir() / "counts.tsv";
    {
        std::ofstream t(text);
        t << "Chclia bacha!";
        std::ofstream a(alphabet);
        a << "# test alphabet\na\nb\nc\nh\nch\nl\ni\n";
    }
    const ToolRun r = run_tool("count --text " + text.string() + " --alphabet " +
                               alphabet.string() + " --fold-case --output " + out.string());
    REQUIRE(r.exit_code == 0);

    const ToolRun ind = run_tool("indices --input " + out.string() + " --format long");
    CHECK(ind.exit_code == 0);
    CHECK(ind.out.find("sample") != std::string::npos);
}

TEST_CASE("exit codes follow the usage/data/numeric convention") {
    CHECK(run_tool("no-such-command").exit_code == 1);
    CHECK(run_tool("indices --input x.tsv").exit_code == 1); // missing required --format
    CHECK(run_tool("indices --input /nonexistent.tsv --format long").exit_code == 2);
    CHECK(run_tool("theory --dist binomial --params 10,0").exit_code == 3);
    CHECK(run_tool("theory --dist binomial --params 10,7").exit_code == 2);
    const ToolRun toobig = run_tool("cluster --input " + kTable1 +
                                    " --coords modified --k 12 --method kmeans");
    CHECK(toobig.exit_code == 2);
    CHECK(run_tool("--version").exit_code == 0);
}
