#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "support/run.hpp"

using nlohmann::json;

namespace {

const std::string kSmall = "--grid-radial 11 --grid-angular 40 ";

std::string scratch(const std::string& name, const std::string& contents) {
    const auto dir = std::filesystem::temp_directory_path() / "chordal_test_cli";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << contents;
    return path.string();
}

json parse(const cli::Result& r) {
    REQUIRE_MESSAGE(!r.out.empty(), "no output");
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("usage errors") {
    CHECK(cli::run("").code == 2);
    CHECK(cli::run("frobnicate").code == 2);
    CHECK(cli::run("--help").code == 0);
    CHECK(cli::run("norm").code == 2);
    CHECK(cli::run("--grid-radial 1 norm " + cli::data("controller.json")).code == 2);
}

TEST_CASE("norm") {
    SUBCASE("z1 z2") {
        const auto r = cli::run(kSmall + "--json norm " + cli::data("controller.json"));
        CHECK(r.code == 0);
        const auto j = parse(r);
        CHECK(j["l1"] == 1.0);
        CHECK(j["sup"]["lo"].get<double>() <= 1.0);
        CHECK(j["sup"]["hi"].get<double>() >= 1.0);
    }
    SUBCASE("empty terms") {
        const auto r = cli::run(kSmall + "--json norm " + cli::data("zero_controller.json"));
        CHECK(r.code == 0);
        const auto j = parse(r);
        CHECK(j["l1"] == 0.0);
        CHECK(j["sup"]["hi"] == 0.0);
    }
    SUBCASE("malformed exponent") {
        const auto path = scratch("bad.json", R"({"version": 1, "nvars": 2, "terms": [{"exp": [1, -2], "re": 1, "im": 0}]})");
        const auto r = cli::run("norm " + path);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        const auto with_err = cli::run("norm " + path, true);
        CHECK(with_err.out.find("terms[0].exp[1]") != std::string::npos);
    }
    SUBCASE("human output carries the same numbers") {
        const auto r = cli::run(kSmall + "norm " + cli::data("controller.json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("l1") != std::string::npos);
    }
}

TEST_CASE("distance") {
    SUBCASE("p0 vs p0") {
        const auto r = cli::run(kSmall + "--json distance " + cli::data("p0.json") + " " + cli::data("p0.json"));
        CHECK(r.code == 0);
        const auto j = parse(r);
        CHECK(j["kappa"]["lower"] == 0.0);
        CHECK(j["kappa"]["upper"] == 0.0);
    }
    SUBCASE("p0 vs p_0.05") {
        const auto r = cli::run(kSmall + "--json distance " + cli::data("p0.json") + " " + cli::data("p_alpha_0.05.json"));
        CHECK(r.code == 0);
        CHECK(parse(r)["kappa"]["lower"].get<double>() <= 2.0 / std::sqrt(3.0) * 0.05 + 1e-12);
    }
    SUBCASE("mismatched nvars") {
        const auto one = scratch("one_var.json", R"({"version": 1,
            "num": {"nvars": 1, "terms": [{"exp": [1], "re": 1, "im": 0}]},
            "den": {"nvars": 1, "terms": [{"exp": [0], "re": 1, "im": 0}]}})");
        CHECK(cli::run(kSmall + "distance " + cli::data("p0.json") + " " + one).code == 2);
    }
    SUBCASE("common factor") {
        const auto common = scratch("common.json", R"({"version": 1,
            "num": {"nvars": 2, "terms": [{"exp": [1, 1], "re": 1, "im": 0}]},
            "den": {"nvars": 2, "terms": [{"exp": [1, 0], "re": 1, "im": 0}]}})");
        CHECK(cli::run(kSmall + "distance " + cli::data("p0.json") + " " + common).code == 3);
    }
}

TEST_CASE("margin") {
    SUBCASE("bidisc example") {
        const auto r = cli::run("--json margin " + cli::data("p0.json") + " " + cli::data("controller.json"));
        CHECK(r.code == 0);
        const auto j = parse(r);
        CHECK(j["margin"].get<double>() <= 1.0 / 6.0);
        CHECK(j["margin"].get<double>() >= 1.0 / 6.0 - 1e-9);
        CHECK(j["stabilizes_nominal"] == "Proved");
        CHECK(j.contains("grid"));
    }
    SUBCASE("zero controller, unstable nominal") {
        CHECK(cli::run(kSmall + "margin " + cli::data("p0.json") + " " + cli::data("zero_controller.json")).code == 4);
    }
    SUBCASE("zero controller, stable nominal") {
        const auto stable = scratch("stable.json", R"({"version": 1,
            "num": {"nvars": 2, "terms": [{"exp": [1, 1], "re": 2, "im": 0}]},
            "den": {"nvars": 2, "terms": [{"exp": [0, 0], "re": 1, "im": 0}]}})");
        const auto r = cli::run(kSmall + "--json margin " + stable + " " + cli::data("zero_controller.json"));
        CHECK(r.code == 0);
        const auto j = parse(r);
        CHECK(j["k"] == 0.0);
        CHECK(j["margin"].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    }
}

TEST_CASE("certify") {
    const std::string files = cli::data("p0.json") + " ";
    const std::string c = " " + cli::data("controller.json");
    SUBCASE("alpha = 0.05 certifies after refinement") {
        const auto r = cli::run("--json certify " + files + cli::data("p_alpha_0.05.json") + c);
        CHECK(r.code == 0);
        const auto j = parse(r);
        CHECK(j["verdict"] == "CertifiedStable");
        CHECK(j["independent_check"] == "Proved");
        for (const char* key : {"k", "g", "margin", "kappa_lower", "kappa_upper", "grid", "refinement_factor"})
            CHECK(j.contains(key));
        CHECK(j["grid"].contains("delta"));
    }
    SUBCASE("alpha = 0.5 is stable but not certified") {
        const auto r = cli::run(kSmall + "--json certify " + files + cli::data("p_alpha_0.5.json") + c);
        CHECK(r.code == 1);
        const auto j = parse(r);
        CHECK(j["verdict"] == "NotCertified");
        CHECK(j["independent_check"] == "Proved");
    }
    SUBCASE("p = p0") {
        CHECK(cli::run(kSmall + "certify " + files + cli::data("p0.json") + c).code == 0);
    }
    SUBCASE("nominal not stabilized") {
        CHECK(cli::run(kSmall + "certify " + files + cli::data("p0.json") + " " + cli::data("zero_controller.json"))
                  .code == 4);
    }
}

TEST_CASE("example") {
    SUBCASE("alpha = 0") {
        const auto r = cli::run(kSmall + "--json example --alphas 0");
        CHECK(r.code == 0);
        const auto j = parse(r);
        REQUIRE(j["rows"].size() == 1);
        CHECK(j["rows"][0]["kappa_lower"] == 0.0);
        CHECK(j["rows"][0]["verdict"] == "CertifiedStable");
    }
    SUBCASE("alpha = 0.95") {
        const auto r = cli::run(kSmall + "--json example --alphas 0.95");
        CHECK(r.code == 0);
        const auto row = parse(r)["rows"][0];
        CHECK(row["verdict"] == "NotCertified");
        CHECK(row["independent_check"] == "Proved");
    }
    SUBCASE("ranges") {
        const auto r = cli::run(kSmall + "--json example --alphas 0:0.1:0.05");
        CHECK(r.code == 0);
        CHECK(parse(r)["rows"].size() == 3);
        const auto human = cli::run(kSmall + "example --alphas 0,0.02");
        CHECK(human.out.find("1/(4 sqrt 3)") != std::string::npos);
    }
    SUBCASE("range violations") {
        CHECK(cli::run(kSmall + "example --alphas 1.0").code == 2);
        CHECK(cli::run(kSmall + "example --alphas 0:2:0.5").code == 2);
        CHECK(cli::run(kSmall + "example --alphas 0:0.1").code == 2);
        CHECK(cli::run(kSmall + "example --alphas abc").code == 2);
    }
}

TEST_CASE("sweep") {
    const auto r = cli::run(kSmall + "--json sweep " + cli::data("p0.json") + " " + cli::data("controller.json") + " " +
                            cli::data("p0.json") + " " + cli::data("p_alpha_0.9.json"));
    CHECK(r.code == 0);
    const auto j = parse(r);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["verdict"] == "CertifiedStable");
    CHECK(j["rows"][1]["verdict"] == "NotCertified");
    CHECK(j["rows"][1]["independent_check"] == "Proved");
}

TEST_CASE("test-theorem") {
    const auto r = cli::run(kSmall + "--json test-theorem --trials 5 --seed 7");
    CHECK(r.code == 0);
    const auto j = parse(r);
    CHECK(j["trials"] == 5);
    CHECK(j["certified_not_stable"] == 0);
    CHECK(cli::run(kSmall + "--json test-theorem --trials 5 --seed 7").out == r.out);
}
