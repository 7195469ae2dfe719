#include <doctest.h>

#include <string>
#include <vector>

#include "polarcalc/cli.hpp"

using namespace polarcalc;

namespace {
bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}
}  // namespace

TEST_CASE("polygon command renders the worked cubic") {
    CliResult r = run_cli({"polygon", "x^3 - y^4 + y^5", "--arc", "x = y^(4/3)"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "dots: (0, 5) (1, 8/3) (2, 4/3) (3, 0)\n"
          "edges:\n"
          "  tan(theta) = 4/3, from (3, 0) to (1, 8/3), edge polynomial 3*z + 3*z^2 + z^3\n"
          "  tan(theta) = 7/3, from (1, 8/3) to (0, 5), edge polynomial 1 + 3*z\n"
          "h0 = 5, h1 = 8/3\n");
}

TEST_CASE("polygon JSON carries the edge angles") {
    CliResult r = run_cli(
        {"polygon", "x^3 - y^4 + y^5", "--arc", "x = y^(4/3)", "--format", "json"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "\"tan_theta\": \"4/3\""));
    CHECK(contains(r.out, "\"tan_theta\": \"7/3\""));
    CHECK(contains(r.out, "\"h0\": \"5\""));
    CHECK(contains(r.out, "\"tolerance_used\": false"));
}

TEST_CASE("polygon defaults to the zero arc") {
    CliResult r = run_cli({"polygon", "x^2 - y^3"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "dots: (0, 3) (2, 0)"));
    CHECK(contains(r.out, "tan(theta) = 3/2"));
}

TEST_CASE("lojasiewicz command, complex and real") {
    CliResult c = run_cli({"lojasiewicz",
                           "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5"});
    REQUIRE(c.exit_code == 0);
    CHECK(contains(c.out, "L = 10/11"));
    CHECK(contains(c.out, "polar quotients: 6 11"));

    CliResult rj = run_cli({"lojasiewicz", "x^3 + 3*x*y^3", "--field", "real",
                            "--format", "json"});
    REQUIRE(rj.exit_code == 0);
    CHECK(contains(rj.out, "\"L\": \"7/9\""));
    CHECK(contains(rj.out, "\"L_plus\": \"2/3\""));
    CHECK(contains(rj.out, "\"L_minus\": \"7/9\""));
    CHECK(contains(rj.out, "\"field\": \"real\""));

    CliResult cusp = run_cli({"lojasiewicz", "x^2 - y^3", "--field", "real"});
    CHECK(contains(cusp.out, "L = 2/3"));
}

TEST_CASE("quotients command agrees across routes") {
    CliResult r = run_cli({"quotients", "(x^2 - y^2)*(x^2 - y^4)"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "quotient set: 4 6"));
    CliResult j = run_cli({"quotients", "x^2 - y^3", "--format", "json"});
    REQUIRE(j.exit_code == 0);
    CHECK(contains(j.out, "\"value\": \"3\""));
    CHECK(contains(j.out, "\"quotient_route\": \"both\""));
}

TEST_CASE("roots command lists branches with contacts") {
    CliResult r = run_cli({"roots", "x^2 - y^3"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "x = y^(3/2)"));
    CHECK(contains(r.out, "x = -y^(3/2)"));
    CHECK(contains(r.out, "contact orders:"));
    CHECK(contains(r.out, "inf 3/2"));
}

TEST_CASE("bounds command reports the degree bounds") {
    CliResult r = run_cli({"bounds", "x^2 - y^3"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "L = 2/3"));
    CHECK(contains(r.out, "4/5"));
}

TEST_CASE("imult command computes intersection numbers") {
    CliResult r = run_cli({"imult", "x^2 - y^3", "y"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "= 2"));
    CliResult inf = run_cli({"imult", "x^2 - y^3", "x^2 - y^3"});
    CHECK(contains(inf.out, "= inf"));
}

TEST_CASE("estimate command fits the log-log slope") {
    CliResult r = run_cli({"estimate", "x^2 - y^3", "--arc", "x = 0"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "0.66"));
    CliResult j = run_cli({"estimate", "x^2 - y^3", "--arc", "x = 0", "--format",
                           "json"});
    CHECK(contains(j.out, "\"estimate\": \"0.666"));
    CHECK(contains(j.out, "\"samples\": 64"));
}

TEST_CASE("exit code 2 for malformed input") {
    CHECK(run_cli({"polygon", "x^(1/2)"}).exit_code == 2);
    CHECK(run_cli({"polygon", "x +"}).exit_code == 2);
    CHECK(run_cli({"lojasiewicz", "1 + x"}).exit_code == 2);
    CHECK(run_cli({"imult", "1 + x", "y"}).exit_code == 2);
    CHECK(run_cli({"nonsense", "x"}).exit_code == 2);
    CHECK(run_cli({"polygon"}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("polygon relative to a root shows an unbounded first column") {
    CliResult r = run_cli({"polygon", "x^2 - y^3", "--arc", "x = y^(3/2)"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "h0 = inf"));
    CHECK(contains(r.out, "h1 = 3/2"));
}

TEST_CASE("exit code 3 for uncertifiable requests") {
    // truncation 2 is too shallow against the highest edge angle 7/3
    CliResult shallow =
        run_cli({"polygon", "x^3 - y^4 + y^5", "--arc", "x = y^(4/3) + O(y^2)"});
    CHECK(shallow.exit_code == 3);
    CHECK(contains(shallow.err, "certification"));

    // estimating along a root branch leaves no usable samples
    CliResult est = run_cli({"estimate", "x^2 - y^3", "--arc", "x = y^(3/2)"});
    CHECK(est.exit_code == 3);

    CliResult few = run_cli({"estimate", "x^2 - y^3", "--arc", "x = 0",
                             "--samples", "1"});
    CHECK(few.exit_code == 3);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).exit_code == 0);
    CHECK(run_cli({"roots", "--help"}).exit_code == 0);
}

TEST_CASE("identical invocations produce identical bytes") {
    std::vector<std::vector<std::string>> cases = {
        {"lojasiewicz", "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5",
         "--format", "json"},
        {"quotients", "(x^2 - y^2)*(x^2 - y^4)", "--format", "json", "--seed", "3"},
        {"roots", "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5", "--format",
         "json"},
        {"lojasiewicz", "x^3 + 3*x*y^3", "--field", "real", "--format", "json"},
    };
    for (const auto& args : cases) {
        CliResult a = run_cli(args);
        CliResult b = run_cli(args);
        REQUIRE(a.exit_code == 0);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}

TEST_CASE("seeds steer genericity but not certified values") {
    for (const char* seed : {"1", "2", "17"}) {
        CliResult r = run_cli({"lojasiewicz", "x^3 + 3*x*y^3", "--field", "real",
                               "--seed", seed});
        REQUIRE(r.exit_code == 0);
        CHECK(contains(r.out, "L = 7/9"));
        CHECK(contains(r.out, "L+ = 2/3"));
    }
}

TEST_CASE("diagram dump rides along when requested") {
    CliResult r = run_cli({"quotients", "x^2 - y^3", "--emit-diagram"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "quotient set: 3"));
    CHECK(contains(r.out, "dots:"));
    CHECK(contains(r.out, "tan(theta) = 3/2"));
}

TEST_CASE("tolerance and precision flags are accepted") {
    CliResult r = run_cli({"lojasiewicz", "x^2 - y^3", "--precision-bits", "128",
                           "--tolerance", "20"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "L = 2/3"));
}
