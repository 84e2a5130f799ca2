#pragma once

// Recursive myriad renderer used only as a test oracle. It works top-down
// from the largest magnitude and decides each 零 from the size of the
// remainder, unlike the library's left-to-right group walk.

#include <cstdint>
#include <string>

namespace oracle {

inline std::u32string chinese_digit(std::int64_t d) {
  static const char32_t kDigits[] = U"〇一二三四五六七八九";
  return std::u32string(1, kDigits[d]);
}

inline std::u32string chinese(std::int64_t n, bool leading = true) {
  if (n < 10) return chinese_digit(n);
  struct Step {
    std::int64_t unit;
    char32_t glyph;
  };
  static const Step kSteps[] = {{100000000, U'亿'}, {10000, U'万'}, {1000, U'千'}, {100, U'百'}, {10, U'十'}};
  for (const auto& step : kSteps) {
    if (n < step.unit) continue;
    const std::int64_t head = n / step.unit;
    const std::int64_t rest = n % step.unit;
    std::u32string s;
    if (step.unit == 10 && head == 1 && leading) {
      // 十五, not 一十五, at the very front
    } else if (step.unit >= 10000) {
      s += chinese(head, leading);
    } else {
      s += chinese_digit(head);
    }
    s.push_back(step.glyph);
    if (rest > 0) {
      if (rest < step.unit / 10) s.push_back(U'零');
      s += chinese(rest, false);
    }
    return s;
  }
  return {};
}

}  // namespace oracle
