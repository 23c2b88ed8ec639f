#include <gtest/gtest.h>

#include "test_support.hpp"
#include "atem/reference_tables.hpp"

using atem::Real;
using atem::TableId;

TEST(MatchingDigits, CountsSignificantDigitsOfTheReference) {
  // |diff| = 5e-7 is below one unit in the 7th digit (1e-6), not the 8th.
  EXPECT_EQ(atem::matching_digits(Real::from_string("1.0652855"), "1.065286"), 7);
  // |diff| = 1.05e-6 is not below 1e-6.
  EXPECT_EQ(atem::matching_digits(Real::from_string("1.06528495"), "1.065286"), 6);
  EXPECT_EQ(atem::matching_digits(Real::from_string("26.17305"), "26.17305"), 60);
  EXPECT_EQ(atem::matching_digits(Real::from_string("26.17305"), "26.17305", 30), 30);
  // |diff| = 0.6 is still below one unit in the leading digit.
  EXPECT_EQ(atem::matching_digits(Real::from_string("5.747959"), "5.147959"), 1);
  EXPECT_EQ(atem::matching_digits(Real::from_string("50"), "5"), 0);
  EXPECT_EQ(atem::matching_digits(Real::from_string("0.4229446"), "0.4229511"), 5);
}

TEST(MatchingDigits, ZeroReferenceUsesAbsoluteDigits) {
  EXPECT_EQ(atem::matching_digits(Real::from_string("2e-11"), "0"), 10);
  EXPECT_EQ(atem::matching_digits(Real::from_string("-6.15e-21"), "0"), 20);
  EXPECT_EQ(atem::matching_digits(Real(0), "0"), 60);
}

TEST(ReferenceTables, Shapes) {
  const auto& t1 = atem::reference_table(TableId::t1);
  EXPECT_EQ(t1.groups(), (std::vector<std::string>{"g=0.01", "g=0.05", "g=0.1", "g=0.5", "g=1", "g=10", "g=100"}));
  for (const auto& g : t1.groups()) EXPECT_EQ(t1.column(t1.validated_column, g).size(), 4u) << g;
  EXPECT_EQ(t1.column("exact").size(), 28u);

  const auto& t2 = atem::reference_table(TableId::t2);
  EXPECT_EQ(t2.column("ATEM", "g=0.1").size(), 10u);
  EXPECT_EQ(t2.column("comparison").size(), 10u);

  const auto& t3 = atem::reference_table(TableId::t3);
  EXPECT_EQ(t3.groups(), std::vector<std::string>{""});
  EXPECT_EQ(t3.column("ATEM").size(), 10u);
  EXPECT_EQ(t3.column("ATEM").front().value, "0");

  for (auto id : {TableId::t1, TableId::t2, TableId::t3}) {
    const auto& t = atem::reference_table(id);
    EXPECT_EQ(t.id, id);
    EXPECT_EQ(t.validated_column, "ATEM");
    EXPECT_FALSE(t.notes.empty());
    for (const auto& e : t.entries) EXPECT_NO_THROW((void)Real::from_string(e.value)) << e.value;
  }
}

TEST(ReferenceTables, ValuesAscendWithinEachColumn) {
  for (auto id : {TableId::t1, TableId::t2, TableId::t3}) {
    const auto& t = atem::reference_table(id);
    for (const auto& g : t.groups()) {
      const auto col = t.column(t.validated_column, g);
      for (std::size_t i = 1; i < col.size(); ++i) {
        EXPECT_LT(Real::from_string(col[i - 1].value), Real::from_string(col[i].value)) << g << " " << i;
        EXPECT_EQ(col[i].state, static_cast<int>(i));
      }
    }
  }
}

// The short table at g = 0.1 is the long one rounded to seven digits.
TEST(ReferenceTables, QuarticTablesAgreeAtSharedCoupling) {
  const auto short_col = atem::reference_table(TableId::t1).column("ATEM", "g=0.1");
  const auto long_col = atem::reference_table(TableId::t2).column("ATEM", "g=0.1");
  for (std::size_t i = 0; i < short_col.size(); ++i) {
    EXPECT_EQ(Real::from_string(long_col[i].value).to_string(7), short_col[i].value);
  }
}

TEST(ReferenceTables, RequiredDigits) {
  EXPECT_EQ(atem::required_digits(TableId::t1, "g=0.1"), 7);
  EXPECT_EQ(atem::required_digits(TableId::t1, "g=100"), 6);
  EXPECT_EQ(atem::required_digits(TableId::t2, "g=0.1"), 15);
  EXPECT_EQ(atem::required_digits(TableId::t3, ""), 7);
}

TEST(TableId, RoundTripsAndIgnoresCase) {
  for (auto id : {TableId::t1, TableId::t2, TableId::t3}) EXPECT_EQ(atem::table_id_from_string(atem::to_string(id)), id);
  EXPECT_EQ(atem::table_id_from_string("T2"), TableId::t2);
  EXPECT_FALSE(atem::table_id_from_string("t4"));
  EXPECT_FALSE(atem::table_id_from_string(""));
}
