#include "doctest.h"

#include "qcoh/catalog.hpp"
#include "qcoh/cli.hpp"
#include "qcoh/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qcoh;

namespace {

int run(const std::vector<std::string>& args, std::string* out_text = nullptr)
{
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

} // namespace

TEST_CASE("round trip: export then import cyclic(3) gives identical matrices")
{
    ExactQuadruple q = catalog_build("cyclic", 3);
    Json j = quadruple_to_json(q);
    ExactQuadruple back = quadruple_from_json(j);
    CHECK(back.d_ab().matrix() == q.d_ab().matrix());
    CHECK(back.d_bc().matrix() == q.d_bc().matrix());
    CHECK(back.d_cd().matrix() == q.d_cd().matrix());
    REQUIRE(back.homotopy().has_value());
    CHECK(back.homotopy()->h_cb.matrix() == q.homotopy()->h_cb.matrix());
    // and the document is byte-stable
    CHECK(quadruple_to_json(back).dump() == j.dump());
}

TEST_CASE("round trip is the identity across the catalog")
{
    for (auto [fam, k, m] : std::vector<std::tuple<const char*, int, int>>{
             {"sigma", 4, 2}, {"dihedral", 4, 0}, {"biquadratic", 0, 0}, {"remark18", 6, 3},
             {"s4", 0, 0}}) {
        ExactQuadruple q = catalog_build(fam, k, m);
        Json j = quadruple_to_json(q);
        ExactQuadruple back = quadruple_from_json(j);
        INFO(fam);
        CHECK(quadruple_to_json(back).dump() == j.dump());
        CHECK(verify(back).all_ok() == verify(q).all_ok());
    }
}

TEST_CASE("import rejects documents that break d o d = 0")
{
    ExactQuadruple q = catalog_build("sigma", 4, 2);
    Json j = quadruple_to_json(q);
    j["maps"][0]["matrix"][4][0] = 2; // flip the sign of the -m component
    CHECK_THROWS_AS((void)quadruple_from_json(j), InvariantError);
}

TEST_CASE("import rejects malformed schema")
{
    Json j = Json{{"group", Json{{"order", 2}}}};
    CHECK_THROWS_AS((void)quadruple_from_json(j), SchemaError);
}

TEST_CASE("import rejects broken group tables and actions")
{
    ExactQuadruple q = catalog_build("cyclic", 2);
    Json good = quadruple_to_json(q);
    {
        Json j = good;
        j["group"]["table"][0][0] = 1; // identity law broken
        CHECK_THROWS_AS((void)quadruple_from_json(j), InvariantError);
    }
    {
        Json j = good;
        j["modules"][1]["action"]["1"][0][0] = 1; // no longer a permutation action
        CHECK_THROWS_AS((void)quadruple_from_json(j), InvariantError);
    }
}

TEST_CASE("cli: catalog list")
{
    std::string text;
    CHECK(run({"catalog", "list"}, &text) == 0);
    for (const char* fam : {"cyclic", "sigma", "dihedral", "dihedral_plus", "biquadratic",
                            "biquadratic2", "remark18", "s4"})
        CHECK(text.find(fam) != std::string::npos);
    // eight entries in json form
    std::string js;
    CHECK(run({"catalog", "list", "--format", "json"}, &js) == 0);
    Json j = Json::parse(js);
    CHECK(j["entries"].size() == 8);
}

TEST_CASE("cli: verify exit codes")
{
    CHECK(run({"verify", "dihedral", "--k", "8"}) == 0);
    CHECK(run({"verify", "sigma", "--k", "4", "--m", "2", "--solve-homotopy", "2"}) == 0);
    CHECK(run({"verify", "dihedral", "--k", "6"}) == 2);
    CHECK(run({"verify", "nonsense"}) == 2);
    CHECK(run({"frobnicate"}) == 2);
}

TEST_CASE("cli: cohomology tables")
{
    std::string js;
    CHECK(run({"cohomology", "--group", "cyclic:4", "--coeff", "trivial:2", "--nmax", "3",
               "--format", "json"},
              &js) == 0);
    Json j = Json::parse(js);
    for (int n = 0; n <= 3; ++n) {
        CHECK(j["table"][n]["divisors"].size() == 1);
        CHECK(j["table"][n]["divisors"][0] == 2);
    }
    CHECK(run({"cohomology", "--group", "trivial", "--coeff", "trivial:4", "--nmax", "2",
               "--format", "json"},
              &js) == 0);
    j = Json::parse(js);
    CHECK(j["table"][0]["divisors"][0] == 4);
    CHECK(j["table"][1]["divisors"].empty());
    CHECK(j["table"][2]["divisors"].empty());

    // dihedral(4) mod 2: dimensions 1, 2, 3
    CHECK(run({"cohomology", "--group", "dihedral:4", "--coeff", "trivial:2", "--nmax", "2",
               "--format", "json"},
              &js) == 0);
    j = Json::parse(js);
    CHECK(j["table"][0]["divisors"].size() == 1);
    CHECK(j["table"][1]["divisors"].size() == 2);
    CHECK(j["table"][2]["divisors"].size() == 3);

    // resource ceiling -> exit 3
    CHECK(run({"cohomology", "--group", "dihedral:4", "--coeff", "trivial:2", "--nmax", "2",
               "--dim-ceiling", "10"}) == 3);
}

TEST_CASE("cli: sixterm variants")
{
    CHECK(run({"sixterm", "--quadruple", "cyclic", "--k", "2", "--coeff", "trivial", "--n", "0"}) == 0);
    CHECK(run({"sixterm", "--variant", "prop8", "--group", "cyclic:4", "--m", "2", "--n", "0"}) == 0);
    CHECK(run({"sixterm", "--variant", "biquadratic", "--n", "0"}) == 0);
    CHECK(run({"sixterm", "--variant", "prop7", "--group", "cyclic:4", "--h-order", "2", "--m", "4",
               "--n", "0"}) == 0);
    CHECK(run({"sixterm", "--variant", "dihedral", "--k", "4", "--display", "2", "--n", "0"}) == 0);
    // gated run reports exit 1 with the failed Bockstein listed
    std::string js;
    CHECK(run({"sixterm", "--quadruple", "cyclic", "--k", "2", "--coeff", "trivial", "--n", "1",
               "--format", "json"},
              &js) == 1);
    Json j = Json::parse(js);
    CHECK_FALSE(j["gates_passed"].get<bool>());
}

TEST_CASE("cli: export / import round trip and corrupt file")
{
    std::string dir = "/tmp/qcoh_io_test";
    std::filesystem::create_directories(dir);
    std::string path = dir + "/cyclic3.json";
    CHECK(run({"export", "--quadruple", "cyclic", "--k", "3", "--out-file", path}) == 0);
    CHECK(run({"import", path}) == 0);

    // corrupt the document: break d o d = 0
    std::ifstream in(path);
    Json j = Json::parse(in);
    in.close();
    j["maps"][1]["matrix"][0][0] = 5;
    std::string bad = dir + "/bad.json";
    std::ofstream out(bad);
    out << j.dump();
    out.close();
    CHECK(run({"import", bad}) == 4);
}

TEST_CASE("cli: json output is byte-identical across runs")
{
    for (auto args : std::vector<std::vector<std::string>>{
             {"catalog", "list", "--format", "json"},
             {"verify", "dihedral", "--k", "4", "--format", "json"},
             {"cohomology", "--group", "dihedral:4", "--coeff", "trivial:2", "--nmax", "2",
              "--format", "json"},
             {"sixterm", "--quadruple", "cyclic", "--k", "2", "--coeff", "trivial", "--n", "0",
              "--format", "json"}}) {
        std::string first, second;
        run(args, &first);
        run(args, &second);
        CHECK(first == second);
        CHECK_FALSE(first.empty());
    }
}
