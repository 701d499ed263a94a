#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "sugeno.hpp"

using namespace sugeno;
using nlohmann::json;

namespace {

void expect_same_instance(const BoundInstance& a, const BoundInstance& b) {
  // serialization is canonical, so equal dumps mean equal values
  EXPECT_EQ(io::instance_to_json(a).dump(), io::instance_to_json(b).dump());
  ASSERT_EQ(a.discrete(), b.discrete());
  if (a.discrete()) {
    const int n = a.mu->space().size();
    for (std::uint32_t s = 0; s < (1u << n); ++s) EXPECT_EQ((*a.mu)(Subset{s}), (*b.mu)(Subset{s}));
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.f.values(), b.f.values());
  }
  for (double x : {0.0, 0.25, 1.0, 2.5, 7.0}) EXPECT_EQ(a.h(x), b.h(x));
  EXPECT_EQ(a.op.name, b.op.name);
  EXPECT_EQ(a.star.name, b.star.name);
}

json parse_file(const std::string& text) {
  const std::string path = testing::TempDir() + "io_case.json";
  std::ofstream(path) << text;
  return io::load_json_file(path);
}

}  // namespace

TEST(Io, RoundTripGeneratedInstances) {
  verify::FuzzConfig cfg;
  for (const auto& id : bound_ids()) {
    for (int t = 0; t < 5; ++t) {
      const BoundInstance in = verify::random_instance(cfg, t, id);
      const json j = io::instance_to_json(in);
      const BoundInstance back = io::instance_from_json(json::parse(j.dump()));
      expect_same_instance(in, back);
    }
  }
}

TEST(Io, RoundTripFixtures) {
  for (const BoundInstance& in : {repro::ex2_4_instance(), repro::cex2_6_instance(), repro::sec3_instance(),
                                  repro::sec4_1_instance(ops::ovee_op()), repro::sec4_2_instance(ops::plus())}) {
    expect_same_instance(in, io::instance_from_json(json::parse(io::instance_to_json(in).dump())));
  }
}

TEST(Io, InfinityAndClosureMode) {
  const json j = json::parse(R"({"n": 2, "measure": {"0": 1, "0,1": "inf"}, "mode": "closure",
                                 "A": [0, 1], "f": [1, "inf"]})");
  const BoundInstance in = io::instance_from_json(j);
  EXPECT_EQ((*in.mu)(Subset::of({1})), ExtReal(0.0));
  EXPECT_EQ((*in.mu)(Subset::of({0, 1})), ExtReal::infinity());
  EXPECT_EQ(in.f[1], SignedExtReal::pos_infinity());
  const BoundInstance back = io::instance_from_json(io::instance_to_json(in));
  EXPECT_EQ((*back.mu)(Subset::of({0, 1})), ExtReal::infinity());
}

TEST(Io, SegmentMapsInBothSpellings) {
  const json a = json::parse(R"({"domain": "nonneg", "segments": [
      {"lo": 0, "hi": 1, "kind": "const", "params": [0], "mono": "const"},
      {"lo": 1, "hi": "inf", "kind": "affine", "params": [-1, 1], "mono": "inc"}]})");
  const PiecewiseMap h = io::map_from_json(a);
  EXPECT_EQ(h(0.5), 0.0);
  EXPECT_EQ(h(1.0), 0.0);
  EXPECT_EQ(h(3.0), 2.0);
  const PiecewiseMap back = io::map_from_json(io::map_to_json(h));
  for (double x : {0.0, 0.999, 1.0, 4.0}) EXPECT_EQ(h(x), back(x));
}

TEST(Io, MalformedInputNamesTheLocation) {
  auto message = [](const std::string& text) -> std::string {
    try {
      io::instance_from_json(json::parse(text));
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message(R"({"n": 2, "measure": {"0": 1, "0,5": 2}, "f": [1, 1]})").find("instance.measure"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": "counting", "A": [3], "f": [1, 1]})").find("instance.A"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": "counting", "f": [1]})").find("instance.f"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": "counting", "f": [1, 1], "op": "bogus"})").find("instance.op"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": "counting", "f": [1, 1], "H": {"template": "wavy"}})").find("instance.H"),
            std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": {"0": -1}, "f": [1, 1]})").find("nonnegative"), std::string::npos);
  EXPECT_NE(message(R"({"measure": "counting", "f": [1, 1]})").find("n"), std::string::npos);
}

TEST(Io, MalformedFileReportsLineAndColumn) {
  try {
    parse_file("{\n  \"n\": 2,\n  \"measure\": [1, 2,\n}");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("line 4"), std::string::npos) << what;
  }
  EXPECT_THROW(io::load_json_file("/nonexistent/instance.json"), Error);
}

TEST(Io, SampleDataFilesLoad) {
  for (const char* name : {"counting_five.json", "three_point.json", "signed_three_point.json", "lebesgue_sqrt.json"}) {
    const BoundInstance in = io::instance_from_json(io::load_json_file(std::string(SUGENO_SAMPLE_DATA) + "/" + name));
    EXPECT_NO_THROW(io::instance_to_json(in)) << name;
  }
}

TEST(Io, ReportsUseTwelveSignificantDigits) {
  EXPECT_EQ(io::rounded(1.0 / 3).dump(), "0.333333333333");
  EXPECT_EQ(io::number(std::numeric_limits<double>::infinity()), "inf");
}
