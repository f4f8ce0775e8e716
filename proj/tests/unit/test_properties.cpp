#include <gtest/gtest.h>

#include "properties.hpp"

using namespace salemforge;

TEST(Properties, SmithCayleyHamiltonSignature) {
  for (const auto& r : {props::smith_suite(), props::cayley_hamilton_suite(), props::signature_suite()}) {
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
    EXPECT_EQ(r.instances, 200) << r.name;
  }
}

TEST(Properties, ShortVectorsAgainstBox) {
  props::PropertyResult r = props::short_vector_suite();
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Properties, RootCounts) {
  for (const auto& c : props::root_counts()) {
    EXPECT_EQ(c.oracle, c.expected) << c.name;
    EXPECT_EQ(c.library, c.expected) << c.name;
  }
}

TEST(Properties, PositivityInvariance) {
  auto cases = props::regression_cases(SALEMFORGE_DATA_DIR, unlimited_budget());
  EXPECT_EQ(cases.size(), 30u);
  props::PropertyResult r = props::positivity_invariance(cases, unlimited_budget());
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
