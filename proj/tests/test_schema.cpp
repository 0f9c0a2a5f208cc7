#include <gtest/gtest.h>

#include <stdexcept>

#include "gpsizing/schema.hpp"

using namespace gpsizing;

TEST(CompetitionSize, Examples) {
  const PrimitiveSet p18({"F"}, {"a", "b", "c", "d", "e", "f", "g", "h"});
  EXPECT_EQ(competition_size({1, 1}, p18), 8u);
  const PrimitiveSet p32({"F", "G", "H"}, {"a", "b"});
  EXPECT_EQ(competition_size({0, 1}, p32), 2u);
  const PrimitiveSet p24({"F", "G"}, {"a", "b", "c", "d"});
  EXPECT_EQ(competition_size({2, 1}, p24), 16u);
}

TEST(CompetitionSize, Errors) {
  const PrimitiveSet p({"F", "G"}, {"a", "b", "c", "d"});
  EXPECT_THROW(competition_size({0, 0}, p), std::invalid_argument);
  EXPECT_THROW(competition_size({-1, 2}, p), std::invalid_argument);
  EXPECT_THROW(competition_size({0, 40}, p), std::overflow_error);
  EXPECT_EQ(competition_size({0, 31}, p), std::uint64_t{1} << 62);
}

TEST(TreeFragment, DefiningLength) {
  EXPECT_EQ((TreeFragment{2, 3}).defining_length(), 5);
}

TEST(FragmentQuantity, Examples) {
  EXPECT_DOUBLE_EQ(fragment_quantity(2, 15.0), 3.75);
  EXPECT_DOUBLE_EQ(fragment_quantity(1, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(fragment_quantity(4, 16.0), 1.0);
}
