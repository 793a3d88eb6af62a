#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* env = std::getenv("NLSCHWARZ_BIN");
    REQUIRE_MESSAGE(env != nullptr, "NLSCHWARZ_BIN must point at the CLI");
    return env;
}

int run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("nlschwarz-cli-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> lines_of(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("a sweep writes per-run and summary artifacts") {
    fs::path dir = fresh_dir("sweep");
    CHECK(run("--n 8 --re 100 --method-list nl-hybrid,nks --out " +
              dir.string()) == 0);

    auto summary = lines_of(dir / "summary.csv");
    REQUIRE(summary.size() == 3);
    CHECK(summary[0].rfind("method,reynolds,n,", 0) == 0);
    CHECK(summary[1].rfind("nl-hybrid,100,8,2,1,rgdsw-a,", 0) == 0);
    CHECK(summary[2].rfind("nks,100,8,2,1,", 0) == 0);

    for (const char* sub : {"nl-hybrid_re100", "nks_re100"}) {
        auto log = lines_of(dir / sub / "run.csv");
        CHECK(log[0] ==
              "outer_iter,abs_residual,rel_residual,inner_min,inner_max,"
              "inner_avg,coarse_iters,gmres_iters,step_length");
        CHECK(log.size() >= 3);  // header plus several iterations
        CHECK(log[1].rfind("1,", 0) == 0);

        auto vtk = lines_of(dir / sub / "solution.vtk");
        CHECK(vtk[0].rfind("# vtk", 0) == 0);
    }
}

TEST_CASE("config file values are applied and flags override them") {
    fs::path dir = fresh_dir("config");
    fs::path cfg = dir / "run.ini";
    {
        std::ofstream out(cfg);
        out << "n=8\nre=100\nmethod=newton\nout=" << (dir / "a").string()
            << "\n";
    }
    CHECK(run("--config " + cfg.string()) == 0);
    auto a = lines_of(dir / "a" / "summary.csv");
    REQUIRE(a.size() == 2);
    CHECK(a[1].rfind("newton,100,8,", 0) == 0);

    CHECK(run("--config " + cfg.string() + " --method nks --out " +
              (dir / "b").string()) == 0);
    auto b = lines_of(dir / "b" / "summary.csv");
    REQUIRE(b.size() == 2);
    CHECK(b[1].rfind("nks,100,8,", 0) == 0);
}

TEST_CASE("per-iteration vtk dumps include the coarse update") {
    fs::path dir = fresh_dir("vtk");
    CHECK(run("--n 8 --method nl-hybrid --max-outer 2 --vtk --out " +
              dir.string()) == 2);  // budget too small: max-outer status
    fs::path sub = dir / "nl-hybrid_re100";
    CHECK(fs::exists(sub / "state_001.vtk"));
    CHECK(fs::exists(sub / "coarse_001.vtk"));
    CHECK(fs::exists(sub / "state_002.vtk"));
}

TEST_CASE("classification dump lists every dof once") {
    fs::path dir = fresh_dir("classify");
    CHECK(run("--n 8 --method nl-hybrid --classify --out " + dir.string()) ==
          0);
    auto rows = lines_of(dir / "nl-hybrid_re100" / "classification.csv");
    CHECK(rows[0].rfind("dof,field,", 0) == 0);
    // 2 velocity fields on the quadratic lattice plus vertex pressures
    CHECK(rows.size() == 1 + 2 * 17 * 17 + 9 * 9);
}

TEST_CASE("failure modes map to distinct exit codes") {
    fs::path dir = fresh_dir("codes");
    CHECK(run("--n 8 --method nl-hybrid --max-inner 0 --out " +
              (dir / "div").string()) == 3);
    CHECK(run("--method bogus --out " + (dir / "m").string()) == 1);
    CHECK(run("--coarse bogus --out " + (dir / "c").string()) == 1);
    CHECK(run("--n 8 --subdomains 3 --out " + (dir / "s").string()) == 1);
    CHECK(run("--definitely-not-a-flag") == 1);
    CHECK(run("--help") == 0);
}
