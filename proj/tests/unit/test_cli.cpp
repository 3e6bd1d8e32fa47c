#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "cli_commands.hpp"

using namespace gjn;
using nlohmann::json;

namespace {

cli::Result gjn_run(const std::vector<std::string>& args, const std::string& stdin_text = {})
{
    std::istringstream in(stdin_text);
    return cli::run(args, in);
}

json out_json(const cli::Result& r) { return json::parse(r.out); }

} // namespace

TEST(Cli, VerifyAlgebraPasses)
{
    const auto r = gjn_run({"verify", "algebra", "--n", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = out_json(r);
    EXPECT_EQ(j["suite"], "algebra");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["conventions"]["sigma"], 1);
    EXPECT_EQ(j["conventions"]["action_order"], "left");
    EXPECT_DOUBLE_EQ(j["conventions"]["central_phase"].get<double>(), 1.0);
    std::set<std::string> ids;
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(ids.insert(c["check"].get<std::string>()).second) << c["check"];
        EXPECT_FALSE(c["anchor"].get<std::string>().empty());
        EXPECT_TRUE(c["pass"].get<bool>()) << c["check"];
    }
    EXPECT_TRUE(ids.count("algebra.jacobi_structure.n2"));
}

TEST(Cli, AllSuitesHaveUniqueIds)
{
    const auto r = gjn_run({"verify", "all", "--n", "1", "--k", "6", "--samples", "20000"});
    const json j = out_json(r);
    std::set<std::string> ids;
    for (const auto& c : j["checks"])
        EXPECT_TRUE(ids.insert(c["check"].get<std::string>()).second) << c["check"];
    EXPECT_GT(ids.size(), 50u);
    // 2e4 samples is too few for the 1% normalization gate; everything else passes
    for (const auto& c : j["checks"]) {
        if (!c["check"].get<std::string>().starts_with("measure.")) {
            EXPECT_TRUE(c["pass"].get<bool>()) << c["check"];
        }
    }
}

TEST(Cli, BadSuiteIsInvalidArgument)
{
    const auto r = gjn_run({"verify", "nonsense"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("nonsense"), std::string::npos);
}

TEST(Cli, ArgumentErrorsExitTwo)
{
    EXPECT_EQ(gjn_run({}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "algebra", "--frobnicate"}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "algebra", "--n", "9"}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "algebra", "--n", "two"}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "measure", "--samples", "1.5"}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "measure", "--samples", "-3"}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "jacobi", "--k", "3"}).code, 2);
    EXPECT_EQ(gjn_run({"verify", "measure", "--n", "1", "--k", "3"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "volume"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "lambda", "--n", "1"}).code, 2);
    EXPECT_EQ(gjn_run({"decompose", "polar", "--g", "{}"}).code, 2);
}

TEST(Cli, SamplesAcceptScientificNotation)
{
    EXPECT_EQ(cli::sample_count(1e6), 1000000u);
    const auto r = gjn_run({"verify", "gj1", "--samples", "1e3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(out_json(r)["options"]["samples"], 1000);
}

TEST(Cli, EvalLambda)
{
    const auto r = gjn_run({"eval", "lambda", "--n", "1", "--k", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = out_json(r);
    EXPECT_NEAR(j["value"].get<double>(), 1.0 / (kPi * kPi), 1e-15);
    EXPECT_NE(r.out.find("0.10132118"), std::string::npos);
    EXPECT_FALSE(j["anchor"].get<std::string>().empty());
    EXPECT_EQ(gjn_run({"eval", "lambda", "--n", "2", "--k", "4"}).code, 2);
}

TEST(Cli, EvalKernelAtOrigin)
{
    const auto r = gjn_run({"eval", "kernel", "--n", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json v = out_json(r)["value"];
    EXPECT_DOUBLE_EQ(v[0].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(v[1].get<double>(), 0.0);
}

TEST(Cli, EvalDensity)
{
    const auto r = gjn_run({"eval", "density", "--n", "1", "--x", R"({"z":[0],"W":0.5})"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(out_json(r)["value"].get<double>(), 64.0 / 27.0, 1e-14);
}

TEST(Cli, EvalKernelMatchesLibrary)
{
    const CSPoint x = jacobi::make_point(CVec::Constant(1, cplx(0.1, 0.2)), CMat::Constant(1, 1, cplx(0.3, -0.1)));
    const CSPoint y = jacobi::make_point(CVec::Constant(1, cplx(-0.2, 0.1)), CMat::Constant(1, 1, cplx(0.1, 0.2)));
    const json in{{"x", json_io::to_json(x)}, {"y", json_io::to_json(y)}};
    const auto r = gjn_run({"eval", "kernel", "--n", "1", "--k", "3", "--input", "-"}, in.dump());
    ASSERT_EQ(r.code, 0) << r.err;
    const cplx got = json_io::complex_from(out_json(r)["value"]);
    EXPECT_LT(std::abs(got - jacobi::kernel(x, y, 3.0)), 1e-15);
}

TEST(Cli, EvalFormAndPotential)
{
    const std::string x = R"({"z":[[0.1,0.2]],"W":[0.1,0.0]})";
    const auto f = gjn_run({"eval", "form", "--n", "1", "--k", "4", "--x", x});
    ASSERT_EQ(f.code, 0) << f.err;
    const CMat H = json_io::cmat_from(out_json(f)["value"]);
    const CSPoint p = json_io::point_from(json::parse(x));
    EXPECT_LT(max_abs(CMat(H - jacobi::kahler_form(p, 4.0))), 1e-15);
    const auto pot = gjn_run({"eval", "potential", "--n", "1", "--k", "4", "--x", x});
    EXPECT_DOUBLE_EQ(out_json(pot)["value"].get<double>(), jacobi::kahler_potential(p, 4.0));
}

TEST(Cli, MalformedJsonExitsTwo)
{
    EXPECT_EQ(gjn_run({"eval", "kernel", "--n", "1", "--x", "{bad"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "kernel", "--n", "1", "--x", R"({"z":[0]})"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "kernel", "--n", "1", "--x", R"({"z":["a"],"W":0})"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "kernel", "--n", "2", "--x", R"({"z":[0],"W":0})"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "density", "--n", "1", "--x", R"({"z":[0],"W":1.5})"}).code, 2);
    EXPECT_EQ(gjn_run({"eval", "kernel", "--input", "-"}, "not json").code, 2);
    EXPECT_EQ(gjn_run({"eval", "kernel", "--input", "/nonexistent/file.json"}).code, 2);
    EXPECT_EQ(gjn_run({"decompose", "gauss"}).code, 2);
    EXPECT_EQ(gjn_run({"decompose", "gauss", "--g", R"({"a":{"rows":1,"cols":1,"re":[2]},"b":{"rows":1,"cols":1,"re":[0]}})"})
                  .code,
              2);
}

TEST(Cli, DecomposeIdentityGauss)
{
    const json g = json_io::to_json(symplectic::sp_identity(2));
    const auto r = gjn_run({"decompose", "gauss", "--g", g.dump()});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = out_json(r);
    EXPECT_EQ(max_abs(json_io::cmat_from(j["factors"]["Y"])), 0.0);
    EXPECT_EQ(max_abs(json_io::cmat_from(j["factors"]["Yp"])), 0.0);
    EXPECT_EQ(j["residual"].get<double>(), 0.0);
    EXPECT_EQ(r.out.find("-0.0"), std::string::npos);
}

TEST(Cli, DecomposeCartanBoost)
{
    const json g{{"a", json_io::to_json(CMat(CMat::Constant(1, 1, std::cosh(0.3))))},
                 {"b", json_io::to_json(CMat(CMat::Constant(1, 1, std::sinh(0.3))))}};
    const auto r = gjn_run({"decompose", "cartan", "--g", g.dump()});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = out_json(r);
    EXPECT_NEAR(std::abs(json_io::cmat_from(j["factors"]["Z"])(0, 0) - 0.3), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(json_io::cmat_from(j["factors"]["v"])(0, 0) - 1.0), 0.0, 1e-14);
}

TEST(Cli, DecomposeRandomResiduals)
{
    Rng rng = substream(11, 0);
    for (int n = 1; n <= 3; ++n)
        for (int s = 0; s < 10; ++s) {
            const SpElement g = symplectic::sp_random(n, 0.8, rng);
            for (const char* which : {"gauss", "cartan"}) {
                const auto r = gjn_run({"decompose", which, "--g", json_io::to_json(g).dump(17)});
                ASSERT_EQ(r.code, 0) << r.err;
                EXPECT_LE(out_json(r)["residual"].get<double>(), 1e-9);
            }
        }
}

TEST(Cli, DecomposeGateUsesTol)
{
    Rng rng = substream(3, 0);
    const json g = json_io::to_json(symplectic::sp_random(2, 0.8, rng));
    const auto r = gjn_run({"decompose", "cartan", "--g", g.dump(), "--tol", "1e-30"});
    // a 1e-30 tolerance also rejects the input as off the group or fails the reassembly gate
    EXPECT_NE(r.code, 0);
}

TEST(Cli, ReportsAreByteIdentical)
{
    const std::vector<std::string> a{"verify", "symplectic", "--seed", "3"};
    EXPECT_EQ(gjn_run(a).out, gjn_run(a).out);
    const auto b = gjn_run({"verify", "symplectic", "--seed", "4"});
    EXPECT_NE(gjn_run(a).out, b.out);
}

TEST(Cli, MeasureReportIndependentOfWorkers)
{
    const std::vector<std::string> base{"verify", "measure", "--n", "1", "--k", "6", "--samples", "1e5", "--json-indent", "-1"};
    auto w3 = base;
    w3.insert(w3.end(), {"--workers", "3"});
    const auto r1 = gjn_run(base), r3 = gjn_run(w3);
    EXPECT_EQ(r1.out, r3.out);
    EXPECT_EQ(r1.out.find('\n'), r1.out.size() - 1);
}

TEST(Cli, OracleSuiteAtCutoff60)
{
    const auto r = gjn_run({"verify", "oracle", "--cutoff", "60"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& c : out_json(r)["checks"])
        EXPECT_TRUE(c["pass"].get<bool>()) << c["check"];
}

TEST(Cli, FailingCheckExitsOne)
{
    // the normalization gate cannot be met with a handful of samples
    const auto r = gjn_run({"verify", "measure", "--n", "1", "--k", "6", "--samples", "64"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(out_json(r)["pass"].get<bool>());
}

TEST(Verify, ExceptionBecomesInfiniteResidual)
{
    std::vector<verify::CheckRecord> out;
    verify::Options opt;
    verify::detail::Recorder rec(out, opt);
    rec.run("x.throws", "anchor", 1, 2, 0, 1.0, []() -> double { fail(Errc::Singular, "boom"); });
    ASSERT_EQ(out.size(), 1u);
    EXPECT_FALSE(out[0].pass);
    EXPECT_TRUE(std::isinf(out[0].residual));
    verify::VerifyReport rep;
    rep.checks = out;
    EXPECT_EQ(verify::to_json(rep)["checks"][0]["residual"], "inf");
}

TEST(JsonIo, RoundTrips)
{
    Rng rng = substream(5, 0);
    const JacobiElement h = jacobi::jacobi_random(2, 0.5, 0.8, rng);
    const JacobiElement h2 = json_io::jacobi_from(json::parse(json_io::to_json(h).dump()));
    EXPECT_EQ(verify::detail::dist(h, h2), 0.0);
    const CSPoint x = jacobi::random_point(2, 0.8, 0.6, rng);
    EXPECT_EQ(verify::detail::dist(x, json_io::point_from(json::parse(json_io::to_json(x).dump()))), 0.0);
}
