#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cvnl/io.hpp"
#include "cvnl/landscape.hpp"
#include "cvnl/rng.hpp"

#include <sstream>

using namespace cvnl;
using namespace cvnl::io;

TEST_CASE("complex values serialize as [re, im] pairs") {
    Json j = complex_to_json(Complex(1.5, -2.25));
    CHECK(j.is_array());
    CHECK(j[0] == 1.5);
    CHECK(j[1] == -2.25);
    CHECK(complex_from_json(j) == Complex(1.5, -2.25));
    CHECK_THROWS_AS(complex_from_json(Json::array({1.0})), IoError);
}

TEST_CASE("dataset round trip preserves every entry") {
    Rng rng(1);
    Dataset data(rng.complex_normal_matrix(3, 5), rng.complex_normal_vector(5));
    Json j = dataset_to_json(data);
    CHECK(j["d"] == 3);
    CHECK(j["n"] == 5);
    CHECK(j["X"].size() == 5);    // one array per column
    CHECK(j["X"][0].size() == 3); // d entries each
    Dataset back = dataset_from_json(j);
    CHECK((back.x - data.x).norm() == 0.0);
    CHECK((back.y - data.y).norm() == 0.0);
}

TEST_CASE("weights round trip") {
    Rng rng(2);
    QuadNet net(rng.complex_normal_matrix(3, 2), rng.complex_normal_vector(3));
    Json j = quadnet_to_json(net);
    CHECK(j["k"] == 3);
    CHECK(j["W"].size() == 3);    // one array per row
    CHECK(j["W"][0].size() == 2);
    QuadNet back = quadnet_from_json(j);
    CHECK((back.w - net.w).norm() == 0.0);
    CHECK((back.v - net.v).norm() == 0.0);
}

TEST_CASE("crelu weights extend the shared format") {
    auto fx = landscape::trap_fixture();
    auto net = crelu::construct_local_min(fx.dataset, 2, 1.0,
                                          crelu::PiecewiseActivation::crelu());
    Json j = crelu_to_json(net);
    CHECK(j.contains("W"));
    CHECK(j.contains("v"));
    CHECK(j.contains("b1"));
    CHECK(j.contains("b2"));
    CHECK(j["s_plus"] == 1.0);
    CHECK(j["s_minus"] == 0.0);
    auto back = crelu_from_json(j);
    CHECK((back.w1 - net.w1).norm() == 0.0);
    CHECK((back.b1 - net.b1).norm() == 0.0);
    CHECK((back.w2 - net.w2).norm() == 0.0);
    CHECK(back.b2 == net.b2);
}

TEST_CASE("malformed payloads raise IoError") {
    Json j = Json::parse(R"({"d": 2, "n": 2, "X": [[[1,0],[0,0]]], "y": [[0,0],[0,0]]})");
    CHECK_THROWS_AS(dataset_from_json(j), IoError); // X has 1 column, n says 2

    Json w = Json::parse(R"({"k": 1, "d": 1, "W": [[[1,0]]]})");
    CHECK_THROWS_AS(quadnet_from_json(w), IoError); // v missing
}

TEST_CASE("file io round trip and missing-file error") {
    Rng rng(3);
    Dataset data(rng.complex_normal_matrix(2, 3), rng.complex_normal_vector(3));
    std::string path = "/tmp/cvnl_test_dataset.json";
    save_json_file(dataset_to_json(data), path);
    Dataset back = load_dataset(path);
    CHECK((back.x - data.x).norm() == 0.0);
    CHECK_THROWS_AS(load_dataset("/tmp/does_not_exist_cvnl.json"), IoError);
}
