#include <doctest.h>

#include <json.hpp>

#include "adwords/errors.hpp"
#include "adwords/generators.hpp"
#include "adwords/instance_io.hpp"
#include "adwords/report.hpp"

using namespace adwords;
using nlohmann::json;

namespace {

const char* kSmall = R"({
  "mode": "laminar",
  "num_dimensions": 2,
  "bidders": [
    {"id": "u", "constraints": [{"id": "both", "dims": [0, 1], "budget": "3/2"}]}
  ],
  "impressions": [
    {"id": "v0", "bids": {"u": {"0": "0.25", "1": 1}}},
    {"id": "v1", "bids": {}}
  ]
})";

}  // namespace

TEST_CASE("instance JSON parses money strings and synthesizes singletons") {
  const Instance inst = parse_instance(kSmall);
  CHECK(inst.mode() == Mode::Laminar);
  CHECK(inst.bidder(0).constraints.size() == 3);
  CHECK(inst.impression(0).bid(0, 0) == Rational(1, 4));
  CHECK(inst.impression(0).bid(0, 1) == Rational(1));
  CHECK(inst.impression(1).bids_of(0).empty());
  LoadOptions raw;
  raw.synthesize_singletons = false;
  raw.validate = false;
  CHECK(parse_instance(kSmall, raw).bidder(0).constraints.size() == 1);
}

TEST_CASE("serialization round trips exactly") {
  const Instance inst = parse_instance(kSmall);
  const std::string text = serialize_instance(inst);
  const Instance back = parse_instance(text);
  CHECK(serialize_instance(back) == text);
  CHECK(back.impression(0).bid(0, 0) == Rational(1, 4));
  const json doc = json::parse(text);
  CHECK(doc["impressions"][0]["bids"]["u"]["0"] == "1/4");
}

TEST_CASE("meta survives a round trip") {
  Instance inst = parse_instance(kSmall);
  inst.set_meta({{"opt_analytic", "7/2"}, {"kind", "test"}});
  const Instance back = parse_instance(serialize_instance(inst));
  CHECK(back.meta() == inst.meta());
}

TEST_CASE("malformed input is a validation error") {
  CHECK_THROWS_AS(parse_instance("{"), ValidationError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "laminar"})"), ValidationError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "x", "num_dimensions": 1, "bidders": [], "impressions": []})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "general", "num_dimensions": 1, "bidders": [],
                                     "impressions": [{"id": "v", "bids": {"nobody": {"0": "1"}}}]})"),
                  ValidationError);
  // overlapping but not nested
  CHECK_THROWS_AS(parse_instance(R"({"mode": "laminar", "num_dimensions": 3, "bidders": [{"id": "u",
                                     "constraints": [{"id": "a", "dims": [0, 1], "budget": "1"},
                                                     {"id": "b", "dims": [1, 2], "budget": "1"}]}],
                                     "impressions": []})"),
                  ValidationError);
}

TEST_CASE("generators are deterministic per seed") {
  RandomInstanceSpec spec;
  spec.mode = Mode::General;
  const std::string a = serialize_instance(random_instance(spec, 17));
  CHECK(a == serialize_instance(random_instance(spec, 17)));
  CHECK(a != serialize_instance(random_instance(spec, 18)));
}

TEST_CASE("report JSON carries the audit fields") {
  const Instance inst = parse_instance(kSmall);
  const Report report = run_online(inst, Strategy::AdLaminar);
  const json doc = json::parse(report_json(report));
  CHECK(doc["strategy"] == "adlaminar");
  CHECK(doc["primal"] == "5/4");
  CHECK(doc["sigma_rule"] == "covering-minimum");
  CHECK(doc["dual_objective"].is_number());
  CHECK(doc["ratio"].is_number());
  CHECK(doc["feasibility"]["pass"] == true);
  CHECK(doc["warnings"].is_array());
  CHECK(doc["audit_failures"].empty());
}

TEST_CASE("greedy report carries the fitted dual") {
  const Instance inst = parse_instance(kSmall);
  const json doc = json::parse(report_json(run_online(inst, Strategy::GreedyLaminar)));
  CHECK(doc["dual_objective"].is_null());
  CHECK(doc["dual_fit"]["feasible"].is_boolean());
}

TEST_CASE("trace CSV has one row per impression") {
  const Instance inst = parse_instance(kSmall);
  const Report report = run_online(inst, Strategy::AdLaminar);
  const std::string csv = trace_csv(report, inst);
  CHECK(csv.rfind("impression,bidder,earned,earned_exact,sigma,dual_objective\n", 0) == 0);
  CHECK(csv.find("\nv0,u,1.25,5/4,") != std::string::npos);
  CHECK(csv.find("\nv1,-,0,0/1,") != std::string::npos);
}

TEST_CASE("competitive ratio conventions") {
  CHECK(competitive_ratio(2, 1) == 2);
  CHECK(competitive_ratio(0, 0) == 1);
  CHECK(std::isinf(competitive_ratio(1, 0)));
}
