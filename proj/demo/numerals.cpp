// Renders one value in every script and format, then scores a few answers.

#include <iostream>

#include "numeralkit/numeralkit.hpp"

using namespace numeralkit;

int main() {
  const auto x = ExactDecimal::parse("922436.38");

  std::cout << "scripts\n";
  for (ScriptId s : all_scripts()) {
    const auto n = ExactDecimal::parse(is_positional(s) ? "922436.38" : "922436");
    std::cout << "  " << script_name(s) << ": " << to_script(n, s).text << '\n';
  }

  std::cout << "\nformats\n";
  for (FormatId f : all_formats()) std::cout << "  " << format_name(f) << ": " << render(x, f) << '\n';

  std::cout << "\nclassify(125.3):";
  for (FormatId f : classify("125.3")) std::cout << ' ' << format_name(f);
  std::cout << "\n\n";

  const ExpressionCase c(1, ExactDecimal::parse("22436.447"), Operation::Add, ExactDecimal::parse("4359"),
                         RoundingDirective::to_three_places());
  const auto prompt = render_format_prompt(c, FormatId::F3, PromptStrategy::FormattedOutput);
  std::cout << prompt.user_text << "\n\n";

  for (const char* reply : {"Answer: 26\u2009795,447", "Answer: 26795.447", "Answer: 26\u2009795,5", "I cannot say."}) {
    const auto s = score({1, FormatId::F3, PromptStrategy::FormattedOutput, "demo", reply, false}, prompt);
    std::cout << "  " << reply << " -> " << outcome_name(s.outcome)
              << (s.value_correct_format_wrong ? " (right value, wrong format)" : "") << '\n';
  }
}
