#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"

#include "cimred/report.hpp"

using namespace cimred;
using namespace testutil;

using Json = nlohmann::ordered_json;

namespace {

QuiverDocument doc51() { return example_document("fomin6", 2, 13, 5, 7); }
QuiverDocument doc52() { return example_document("fomin6", 1, 1, 2, 3); }
QuiverDocument doc53() { return example_document("fomin6", 2, 6, 2, 4); }

} // namespace

TEST_CASE("document parsing accepts matrix and family forms") {
    QuiverDocument m = parse_document(R"({"schema_version":"1","matrix":[[0,1],[-1,0]]})");
    CHECK(document_matrix(m).size() == 2);

    QuiverDocument f = parse_document(
        R"({"schema_version":"1","family":{"name":"fomin6","r":2,"s":13,"t":5,"p":7},"label":"ex"})");
    CHECK(f.label == "ex");
    CHECK(document_matrix(f) == fomin6({2, 13, 5, 7}));
}

TEST_CASE("document parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_document("not json"), Error);
    CHECK_THROWS_AS(parse_document(R"({"schema_version":"1"})"), Error); // neither
    CHECK_THROWS_AS(parse_document(
                        R"({"matrix":[[0,1],[-1,0]],"family":{"name":"fomin6","r":1,"s":1,"t":1,"p":1}})"),
                    Error); // both
    CHECK_THROWS_AS(parse_document(R"({"matrix":[[0,1],[1,0]]})"), Error); // not skew
    CHECK_THROWS_AS(parse_document(R"({"matrix":[[0,0.5],[-0.5,0]]})"), Error);  // floats
    CHECK_THROWS_AS(parse_document(R"({"matrix":[[0,1],[-1]]})"), Error);        // ragged
    CHECK_THROWS_AS(parse_document(R"({"family":{"name":"nope","r":1,"s":1,"t":1,"p":1}})"), Error);
    CHECK_THROWS_AS(parse_document(R"({"family":{"name":"fomin6","r":0,"s":1,"t":1,"p":1}})"), Error);
}

TEST_CASE("example document round-trips to the exact family matrix") {
    for (auto params : {std::array<long long, 4>{2, 13, 5, 7}, {1, 1, 2, 3}, {2, 6, 2, 4}}) {
        QuiverDocument doc = example_document("fomin6", params[0], params[1], params[2], params[3]);
        QuiverDocument back = parse_document(document_to_json(doc));
        CHECK(document_matrix(back) == fomin6({params[0], params[1], params[2], params[3]}));
    }
    CHECK_THROWS_AS(example_document("octagon", 1, 1, 1, 1), Error);
}

TEST_CASE("reports are byte-identical across runs") {
    RunConfig cfg;
    cfg.trials = 20;
    Report a = cmd_reduce(doc51(), cfg);
    Report b = cmd_reduce(doc51(), cfg);
    CHECK(a.text == b.text);
    CHECK(a.json == b.json);
    CHECK(a.exit_code == b.exit_code);

    Report c = cmd_verify(doc52(), cfg);
    Report d = cmd_verify(doc52(), cfg);
    CHECK(c.text == d.text);
    CHECK(c.json == d.json);
}

TEST_CASE("period command output") {
    RunConfig cfg;
    Report r1 = cmd_period(doc51(), cfg);
    CHECK(r1.exit_code == 0);
    CHECK(r1.text.find("period: 2") != std::string::npos);
    Json j1 = Json::parse(r1.json);
    CHECK(j1["period"] == 2);
    CHECK(j1["match"] == true);

    Report r2 = cmd_period(doc53(), cfg);
    CHECK(r2.text.find("period: 1") != std::string::npos);
    CHECK(r2.text.find("u[n+6]·u[n] = u[n+1]^2·u[n+3]^4·u[n+5]^2 + "
                       "u[n+2]^6·u[n+4]^6") != std::string::npos);

    // generic skew 5x5 with no period up to the bound
    QuiverDocument none = parse_document(
        R"({"matrix":[[0,2,-1,4,0],[-2,0,3,-1,2],[1,-3,0,1,-4],[-4,1,-1,0,2],[0,-2,4,-2,0]]})");
    Report r3 = cmd_period(none, cfg);
    CHECK(r3.exit_code == 0); // absence of a period is a value, not an error
    CHECK(r3.text.find("period: none up to 12") != std::string::npos);
    CHECK(Json::parse(r3.json)["period"].is_null());
}

TEST_CASE("reduce report lists the known reduced variables") {
    RunConfig cfg;
    cfg.trials = 25;
    Report r = cmd_reduce(doc51(), cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("rank: 2") != std::string::npos);
    CHECK(r.text.find("f1 = u2·u4^(7/2)·u6^(5/2)/(u3^(13/2)·u5^(13/2))") !=
          std::string::npos);
    Json j = Json::parse(r.json);
    CHECK(j["rank"] == 2);
    CHECK(j["g"][0] == Json::array({"0", "1", "-13/2", "7/2", "-13/2", "5/2"}));
    CHECK(j["verification"]["commutation"]["pass"] == true);
    CHECK(j["verification"]["fiber_invariance"]["pass"] == true);
    CHECK(j["verification"]["symplecticity"]["pass"] == true);
}

TEST_CASE("reduce with scale and post-transform recovers the symmetric reduced variables") {
    RunConfig cfg;
    cfg.trials = 25;
    cfg.scale = rat("-1/2");
    cfg.post_transform = parse_rational_matrix(R"([["-3","-1"],["1","0"]])");
    Report r = cmd_reduce(doc53(), cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("f1 = u1·u3^2·u5/(u2^3·u4^3)") != std::string::npos);
    CHECK(r.text.find("f2 = u2·u4^2·u6/(u3^3·u5^3)") != std::string::npos);

    // a non-symplectic transform is refused with the dedicated exit code
    RunConfig bad = cfg;
    bad.post_transform = parse_rational_matrix(R"([["2","0"],["0","1"]])");
    try {
        cmd_reduce(doc53(), bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_symplectic_change);
    }
}

TEST_CASE("reduce on degenerate ranks") {
    RunConfig cfg;
    cfg.trials = 10;
    QuiverDocument zero = parse_document(R"({"matrix":[[0,0,0],[0,0,0],[0,0,0]]})");
    Report r = cmd_reduce(zero, cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("rank 0: nothing to reduce") != std::string::npos);

    QuiverDocument full = example_document("fomin6", 1, 1, 2, 4); // p != r+t
    Report rf = cmd_reduce(full, cfg);
    CHECK(rf.exit_code == 3);
    CHECK(rf.text.find("full rank") != std::string::npos);
    Json j = Json::parse(rf.json);
    CHECK(j["rank"] == 6);
}

TEST_CASE("verify command") {
    RunConfig cfg;
    cfg.trials = 30;
    Report ok = cmd_verify(doc52(), cfg);
    CHECK(ok.exit_code == 0);
    CHECK(ok.text.find("overall: pass") != std::string::npos);
    Json j = Json::parse(ok.json);
    CHECK(j["pass"] == true);
    CHECK(j["invariance"]["exact"] == true);
    CHECK(j["invariance"]["verdicts_agree"] == true);

    QuiverDocument zero = parse_document(R"({"matrix":[[0,0],[0,0]]})");
    CHECK(cmd_verify(zero, cfg).exit_code == 0);

    // an unreachable tolerance forces the failure path / exit 5
    RunConfig harsh = cfg;
    harsh.tol = 1e-300;
    Report bad = cmd_verify(doc52(), harsh);
    CHECK(bad.exit_code == 5);
    CHECK(bad.text.find("worst residual") != std::string::npos);
}

TEST_CASE("orbit command follows the reduced recurrence") {
    RunConfig cfg;
    cfg.scale = rat("-1/2");
    cfg.post_transform = parse_rational_matrix(R"([["-3","-1"],["1","0"]])");
    ClusterPoint ones(std::vector<double>(6, 1.0));
    Report r = cmd_orbit(doc53(), cfg, ones, 20);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("reduced-map check: pass") != std::string::npos);
    Json j = Json::parse(r.json);
    CHECK(j["rows"].size() == 21);
    CHECK(j["reduced_map_check"]["pass"] == true);

    Report r0 = cmd_orbit(doc53(), cfg, ones, 0);
    CHECK(Json::parse(r0.json)["rows"].size() == 1);

    // reduced-map residual along a fomin6(2,13,5,7) orbit
    RunConfig cfg51;
    SplitMix64 rng(103);
    ClusterPoint u0 = random_point(rng, 6);
    Report r51 = cmd_orbit(doc51(), cfg51, u0, 10);
    CHECK(r51.exit_code == 0);
    CHECK(Json::parse(r51.json)["reduced_map_check"]["pass"] == true);

    // aperiodic quiver: no orbit, NotPeriodic
    QuiverDocument none = parse_document(
        R"({"matrix":[[0,2,-1,4,0],[-2,0,3,-1,2],[1,-3,0,1,-4],[-4,1,-1,0,2],[0,-2,4,-2,0]]})");
    try {
        cmd_orbit(none, cfg51, ClusterPoint(std::vector<double>(5, 1.0)), 3);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_periodic);
    }
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), Error);
    cfg = RunConfig{};
    cfg.trials = 0;
    CHECK_THROWS_AS(validate_config(cfg), Error);
    cfg = RunConfig{};
    cfg.scale = Rational(0);
    CHECK_THROWS_AS(validate_config(cfg), Error);
}
