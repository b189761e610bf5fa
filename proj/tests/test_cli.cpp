#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "theta2/siegel.hpp"

// End-to-end checks of the command line binary: exit codes, output shapes,
// and the documented JSON conventions. The binary path is injected by the
// build so the tests run from any working directory.

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
};

run_result run_cli(const std::string& args) {
    const std::string out_path = "cli_test_output.tmp";
    std::string cmd = std::string(THETA2_CLI_BIN) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    run_result r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(out_path.c_str());
    return r;
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int count = 0;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (line.find(needle) != std::string::npos) ++count;
    return count;
}

}  // namespace

TEST_CASE("theta command prints all constants with radii") {
    run_result r = run_cli("theta --tau \"1i; 1i; 0\" --prec 128");
    CHECK(r.exit_code == 0);
    CHECK(count_lines_with(r.out, "radius") == 16);
    CHECK(r.out.find("j=0") != std::string::npos);
    CHECK(r.out.find("j=15") != std::string::npos);

    run_result g1 = run_cli("theta --genus 1 --tau 1i --prec 128");
    CHECK(g1.exit_code == 0);
    CHECK(count_lines_with(g1.out, "radius") == 4);
    CHECK(g1.out.find("1.0864348112133080145753161215102234570") != std::string::npos);
}

TEST_CASE("theta JSON carries numbers as decimal strings") {
    run_result r = run_cli("theta --tau \"0.5+1i; 2i; 0.3i\" --prec 96 --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["genus"] == "2");
    CHECK(j["values"].size() == 16);
    for (const auto& entry : j["values"]) {
        CHECK(entry["value"].is_string());
        CHECK(entry["radius"].is_string());
    }
}

TEST_CASE("exit codes follow the documented mapping") {
    CHECK(run_cli("theta --tau garbage").exit_code == 2);
    CHECK(run_cli("theta --tau \"1i; 1i; 0\" --prec 32").exit_code == 2);   // precision gate
    CHECK(run_cli("theta --tau \"1i; 1i; 0\" --prec 128 --method newton").exit_code == 2);
    CHECK(run_cli("theta --tau \"0.0001i; 0.0001i; 0\" --prec 128").exit_code == 3);
    CHECK(run_cli("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("theta --help").exit_code == 0);
}

TEST_CASE("invert round trips a quotient file written by theta") {
    // even squared quotients at z1 = 0.5+i, z2 = 2i, z3 = 0.3i (55 digits)
    const char* quotients =
        "# even squared quotients, ascending index, first slot omitted\n"
        "9.400987777499119791243169370681999294141950449927928022e-1"
        "-3.409021678914958170066831297511745451615348762131082507e-1i\n"
        "9.849063143771616156496685043205125327325932074751096702e-1"
        "-2.990112866043707773561093369790978313583947582390628142e-3i\n"
        "9.269285583024147488793889294325172640037913280532412095e-1"
        "-3.329456962904955335312518060491995110482916292113021539e-1i\n"
        "6.75518945403014043700021522625271778210239031417350728e-1"
        "+4.736024373194024617345131894911133975217432180409798915e-1i\n"
        "6.608957587114285088877033408155280171039978472270535056e-1"
        "+4.633502054528635224198298055613618947168741011035511645e-1i\n"
        "1.725066732292839573752176459144723520354592281018202115e-1"
        "+1.385852865238788858077941950893395232800760563414146497e-2i\n"
        "1.574489101951678683824730667649361806992484535270913143e-1"
        "-7.183628472713475535105899439692922105680948505600992571e-2i\n"
        "1.425947126714826224907943225149404498432769253821700026e-1"
        "+9.997233079789316549725072303542776612207634149681997963e-2i\n"
        "2.811779447640141949350442505411103085858366679278747934e-2"
        "+1.971322356936271874897493969317584062233825830454759254e-2i\n";
    {
        std::ofstream f("cli_test_quotients.tmp");
        f << quotients;
    }
    run_result r = run_cli("invert --quotients cli_test_quotients.tmp --prec 128 --json");
    std::remove("cli_test_quotients.tmp");
    CHECK(r.exit_code == 0);
    {
        nlohmann::json j = nlohmann::json::parse(r.out);
        theta2::tau2 got = theta2::parse_tau2(j["tau"].get<std::string>(), 192);
        theta2::tau2 want = theta2::parse_tau2("0.5+1i; 2i; 0.3i", 192);
        CHECK(abs(got.z1 - want.z1).to_double() < 1e-35);
        CHECK(abs(got.z2 - want.z2).to_double() < 1e-35);
        CHECK(abs(got.z3 - want.z3).to_double() < 1e-35);
        CHECK(theta2::bigfloat::from_str(j["radius"].get<std::string>(), 64).to_double() < 1e-30);
    }

    // genus 1: lambda at tau = i is 2^(-1/2)
    {
        std::ofstream f("cli_test_lambda.tmp");
        f << "0.70710678118654752440084436210484903928483593768847\n";
    }
    run_result g1 = run_cli("invert --genus 1 --quotients cli_test_lambda.tmp --prec 128 --json");
    std::remove("cli_test_lambda.tmp");
    CHECK(g1.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(g1.out);
    theta2::bigcomplex got = theta2::parse_complex(j["tau"].get<std::string>(), 160);
    CHECK(abs(got - theta2::bigcomplex(0.0, 1.0, 160)).to_double() < 1e-35);

    // wrong token count is a parse failure
    {
        std::ofstream f("cli_test_short.tmp");
        f << "1\n2\n3\n";
    }
    CHECK(run_cli("invert --quotients cli_test_short.tmp --prec 128").exit_code == 2);
    std::remove("cli_test_short.tmp");
}

TEST_CASE("certify constants-only exits clean and emits valid JSON") {
    run_result r = run_cli("certify --constants-only --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["checks"].size() == 31);
    for (const auto& c : j["checks"]) {
        CHECK(c["pass"] == true);
        CHECK(c["margin"].is_string());
    }
    CHECK(j["samples"].is_null());

    run_result sweep = run_cli("certify --samples 6 --seed 9 --ymax 16 --json");
    CHECK(sweep.exit_code == 0);
    nlohmann::json js = nlohmann::json::parse(sweep.out);
    CHECK(js["samples"]["failures"] == 0);
    CHECK(js["samples"]["min_margin"].is_string());

    // --out writes the same report to a file
    run_result filed = run_cli("certify --constants-only --out cli_test_report.tmp");
    CHECK(filed.exit_code == 0);
    std::ifstream in("cli_test_report.tmp");
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove("cli_test_report.tmp");
    CHECK(ss.str().find("constants checks 31 failed 0") != std::string::npos);
}

TEST_CASE("bench prints one CSV row per method and precision") {
    run_result r = run_cli("bench --genus 1 --prec-list 64,128");
    CHECK(r.exit_code == 0);
    CHECK(count_lines_with(r.out, "g1_series,") == 2);
    CHECK(count_lines_with(r.out, "g1_newton,") == 2);
    CHECK(count_lines_with(r.out, "g2_invert,") == 0);
    CHECK(r.out.find("method,prec,seconds") != std::string::npos);
    CHECK(run_cli("bench --prec-list 12").exit_code == 2);  // precision gate again
}
