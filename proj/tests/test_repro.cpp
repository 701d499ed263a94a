#include <gtest/gtest.h>

#include <cmath>

#include "sugeno.hpp"

using namespace sugeno;
using nlohmann::json;

TEST(Repro, EveryFixturePasses) {
  ASSERT_EQ(repro::fixture_ids().size(), 8u);
  for (const auto& id : repro::fixture_ids()) {
    const repro::FixtureResult r = repro::run_fixture(id);
    EXPECT_TRUE(r.passed()) << id << ": " << repro::to_json(r).dump(2);
    EXPECT_FALSE(r.checks.empty()) << id;
    for (const auto& c : r.checks) EXPECT_FALSE(c.reference.empty()) << id << " " << c.name;
  }
}

TEST(Repro, SingleExponent) {
  const repro::FixtureResult r = repro::run_fixture("ex2_9", 2.0);
  ASSERT_TRUE(r.passed());
  ASSERT_NE(r.find("[q=2.0] sugeno(f)"), nullptr);
  ASSERT_NE(r.find("[q=2.0] shilkret(H(f))"), nullptr);
  EXPECT_NEAR(r.find("[q=2.0] sugeno(f)")->actual, 0.25, 1e-9);
  EXPECT_NEAR(r.find("[q=2.0] shilkret(H(f))")->actual, 4.0 / 27, 1e-9);
}

TEST(Repro, DiscrepancyNoteIsFlagged) {
  const repro::FixtureResult r = repro::run_fixture("sec4_1");
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("discrepancy"), std::string::npos);
  EXPECT_NEAR(r.find("literal rhs (plus)")->actual, 0.299, 1e-12);
}

TEST(Repro, Deterministic) {
  for (const char* id : {"ex2_4", "sec3", "sec4_2"}) {
    json a = repro::to_json(repro::run_fixture(id));
    json b = repro::to_json(repro::run_fixture(id));
    a.erase("seconds");
    b.erase("seconds");
    EXPECT_EQ(a.dump(), b.dump()) << id;
  }
}

TEST(Repro, UnknownFixture) { EXPECT_THROW(repro::run_fixture("ex9_9"), Error); }
