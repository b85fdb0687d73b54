#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "twistplane/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = twistplane::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        char name[] = "/tmp/twistplane-test-XXXXXX";
        int fd = mkstemp(name);
        REQUIRE(fd >= 0);
        close(fd);
        path = name;
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("classification output") {
    auto r = run({"quad-classify", "--b", "2", "--c", "3", "--depth", "64", "--format", "json"});
    CHECK(r.code == 0);
    json doc = r.parsed();
    CHECK(doc["verdict"] == "undetermined");
    CHECK(doc["scan_bound"] == 64);

    auto closed = run({"quad-classify", "--b", "-3", "--c", "3", "--format", "json"});
    CHECK(closed.parsed()["verdict"] == "twist-exists");
    CHECK(closed.parsed()["algebra_type"] == "yx-zero");

    // text and json agree on the verdict
    auto text = run({"quad-classify", "--b", "-3", "--c", "3"});
    CHECK(text.out.find("verdict: twist-exists") != std::string::npos);
}

TEST_CASE("build then verify round trip") {
    auto build = run({"quad-build", "--b", "2", "--c", "3", "--rows", "14", "--format", "json"});
    REQUIRE(build.code == 0);
    TempFile file(build.out);

    auto check = run({"verify", "--input", file.path, "--twist", "5"});
    CHECK(check.code == 0);
    CHECK(check.out.find("FAIL") == std::string::npos);

    auto quad = run({"verify", "--input", file.path, "--quadratic", "--b", "2", "--c", "3"});
    CHECK(quad.code == 0);

    // damaged inputs are rejected by the same gate
    json doc = build.parsed();
    doc["rows"][3][0][1] = "99";
    TempFile bad(doc.dump());
    auto fail = run({"verify", "--input", bad.path, "--twist", "5"});
    CHECK(fail.code == 1);
}

TEST_CASE("marker-family build with verification") {
    auto r = run({"bfam-build", "--n", "2", "--a", "1", "--seq", "2,4,6,8,10", "--rows", "14",
                  "--verify", "10", "--format", "json"});
    CHECK(r.code == 0);
    json doc = r.parsed();
    CHECK(doc["exact_rows"] == 12);
    CHECK(doc["n"] == 14);
    CHECK(doc["report"]["first_failure"].is_null());
}

TEST_CASE("sequence checks") {
    auto bad = run({"seq-check", "--n", "2", "--seq", "2,5,7,9", "--format", "json"});
    CHECK(bad.code == 1);
    json doc = bad.parsed();
    CHECK(doc["almost_balanced"] == false);
    CHECK(doc["witness"]["r"] == 4);
    CHECK(doc["witness"]["j"] == 2);
    CHECK(doc["witness"]["delta"] == -1);

    auto good = run({"seq-check", "--n", "2", "--seq", "2,4,6,8", "--format", "json"});
    CHECK(good.code == 0);
    CHECK(good.parsed()["witness"].is_null());
}

TEST_CASE("sequence enumeration and extension") {
    auto r = run({"seq-enumerate", "--n", "2", "--r", "4", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.parsed()["count"] == 6);

    auto e = run({"seq-extend", "--n", "2", "--seq", "2,4,7", "--format", "json"});
    CHECK(e.code == 0);
    json ext = e.parsed()["extensions"];
    REQUIRE(ext.size() == 1);  // the wide continuation is pruned
    CHECK(ext[0] == json::array({2, 4, 7, 9}));
}

TEST_CASE("family subcommands") {
    auto roots = run({"afam-roots", "--n", "2", "--d", "-1/3", "--a", "-4/3", "--format", "json"});
    CHECK(roots.code == 0);
    CHECK(roots.parsed()["verdict"] == "root-at");
    CHECK(roots.parsed()["k"] == 4);

    auto build = run({"afam-build", "--n", "3", "--d", "1/5", "--a", "1", "--rows", "12",
                      "--verify", "4", "--format", "json"});
    CHECK(build.code == 0);
    json doc = build.parsed();
    CHECK(doc["sidecar"]["R"].size() >= 4);
    CHECK(doc["report"]["first_failure"].is_null());
}

TEST_CASE("special branch and fixture commands") {
    auto exc = run({"exc-build", "--case", "beqneg1", "--c", "2", "--rows", "12", "--verify"});
    CHECK(exc.code == 0);

    auto br = run({"branch-2n", "--n", "2", "--a", "1", "--format", "json"});
    CHECK(br.code == 0);
    json arr = br.parsed();
    REQUIRE(arr.size() == 4);
    CHECK(arr[0]["tag"] == "late-marker-primary");
    CHECK(arr[0]["rows"].size() == 9);  // through row 3n+2
    CHECK(arr[1]["undetermined_tail"] == true);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"quad-classify", "--b", "2"}).code == 2);          // missing --c
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"quad-build", "--b", "x", "--c", "3", "--rows", "8"}).code == 2);  // bad scalar
    CHECK(run({}).code == 2);
}

TEST_CASE("every build output is accepted back by verify") {
    std::vector<std::vector<std::string>> builds = {
        {"quad-build", "--b", "2", "--c", "3", "--rows", "12"},
        {"quad-build", "--b", "4", "--c", "3", "--rows", "12", "--field", "fp:7"},
        {"a0-build", "--b", "2", "--c", "1", "--rows", "12"},
        {"exc-build", "--case", "ceqzero", "--b", "2", "--rows", "12"},
        {"afam-build", "--n", "2", "--d", "1/3", "--a", "1", "--rows", "12", "--m-form"},
        {"bfam-build", "--n", "2", "--a", "1", "--seq", "2,4,6,8,10,12", "--rows", "12"},
    };
    for (auto args : builds) {
        args.push_back("--format");
        args.push_back("json");
        auto build = run(args);
        REQUIRE(build.code == 0);
        TempFile file(build.out);
        auto check = run({"verify", "--input", file.path, "--twist", "4"});
        CHECK(check.code == 0);
    }
}

TEST_CASE("environment default for the scan depth") {
    setenv("TWISTPLANE_DEPTH", "17", 1);
    auto r = run({"quad-classify", "--b", "2", "--c", "3", "--format", "json"});
    unsetenv("TWISTPLANE_DEPTH");
    CHECK(r.parsed()["scan_bound"] == 17);
}

TEST_CASE("prime fields on the command line") {
    auto r = run({"quad-classify", "--b", "4", "--c", "3", "--field", "fp:7", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.parsed()["verdict"] == "twist-exists");  // b = -c mod 7

    auto reject = run({"quad-classify", "--b", "5", "--c", "4", "--field", "fp:7"});
    CHECK(reject.code == 2);  // characteristic-zero-only branch
    CHECK(reject.err.find("characteristic") != std::string::npos);
}
