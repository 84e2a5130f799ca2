#include <gtest/gtest.h>

#include <sstream>

#include "numeralkit/tokenization.hpp"

using namespace numeralkit;

TEST(TokensPerDigit, TableFourRows) {
  EXPECT_EQ(tokens_per_digit("922,436.38 + 4,359", TokenizationScheme::chunk3()), Ratio::make(5, 12));
  EXPECT_EQ(tokens_per_digit("922,436.38 + 4,359", TokenizationScheme::digit1()), Ratio::make(1, 1));
  EXPECT_EQ(tokens_per_digit("922,436.38 + 4,359", TokenizationScheme::chunk3()).to_string(), "5/12");
}

TEST(TokensPerDigit, SingleDigit) {
  EXPECT_EQ(tokens_per_digit("7", TokenizationScheme::chunk3()), Ratio::make(1, 1));
  EXPECT_EQ(tokens_per_digit("7", TokenizationScheme::digit1()), Ratio::make(1, 1));
}

TEST(TokensPerDigit, Chunking) {
  const auto c3 = TokenizationScheme::chunk3();
  EXPECT_EQ(c3.digit_tokens("1234567"), 3);  // 123|456|7
  EXPECT_EQ(c3.digit_tokens("12 plus 3456"), 3);
  EXPECT_EQ(c3.digit_tokens("१२३४ plus ५"), 3);
  EXPECT_EQ(c3.digit_tokens("三百八十二万"), 3);  // multipliers split the run
  for (int n = 1; n <= 30; ++n) {
    const std::string s(static_cast<std::size_t>(n), '5');
    EXPECT_EQ(TokenizationScheme::digit1().digit_tokens(s), n);
    EXPECT_EQ(c3.digit_tokens(s), (n + 2) / 3);
    EXPECT_GE(c3.digit_tokens(s), 1);
  }
}

TEST(TokensPerDigit, ExternalTable) {
  std::istringstream in("# expression\tcount\n922,436.38 + 4,359\t7\n");
  const auto t = TokenizationScheme::table(in);
  EXPECT_EQ(tokens_per_digit("922,436.38 + 4,359", t), Ratio::make(7, 12));
  try {
    tokens_per_digit("1 + 1", t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoTableEntry);
  }
  std::istringstream bad("x\tzero\n");
  EXPECT_THROW(TokenizationScheme::table(bad), Error);
}

TEST(TokensPerDigit, NoDigits) {
  try {
    tokens_per_digit("plus", TokenizationScheme::chunk3());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoDigits);
  }
  EXPECT_THROW(TokenizationScheme::parse("bpe"), Error);
  EXPECT_EQ(TokenizationScheme::parse("digit1").kind(), TokenizerKind::Digit1);
}
