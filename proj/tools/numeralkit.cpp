// numeralkit command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "numeralkit/numeralkit.hpp"

using namespace numeralkit;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kNetwork = 4 };

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Network: return kNetwork;
    case ErrorKind::ConfigError:
    case ErrorKind::UnknownName: return kUsage;
    default: return kData;
  }
}

void report_error(std::string_view kind, std::string_view message) {
  const nlohmann::json rec = {{"error", kind}, {"message", message}};
  std::cerr << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<ScriptId> script_list(const std::string& spec) {
  if (spec == "all") {
    const auto a = all_scripts();
    return {a.begin(), a.end()};
  }
  std::vector<ScriptId> out;
  for (const auto& s : split_list(spec)) out.push_back(parse_script(s));
  return out;
}

std::vector<FormatId> format_list(const std::string& spec) {
  if (spec == "all") {
    const auto a = all_formats();
    return {a.begin(), a.end()};
  }
  std::vector<FormatId> out;
  for (const auto& s : split_list(spec)) out.push_back(parse_format_id(s));
  return out;
}

template <std::size_t N>
std::vector<PromptStrategy> strategy_list(const std::string& spec, const std::array<PromptStrategy, N>& track) {
  if (spec == "all") return {track.begin(), track.end()};
  std::vector<PromptStrategy> out;
  for (const auto& s : split_list(spec)) {
    const auto st = parse_strategy(s);
    if (std::find(track.begin(), track.end(), st) == track.end())
      throw Error(ErrorKind::ConfigError, "strategy " + s + " does not belong to this suite");
    out.push_back(st);
  }
  return out;
}

// Writes to `path` atomically, or to stdout for "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    std::cout.flush();
  } else {
    records::write_atomically(path, body);
  }
}

void print_accuracy_table(std::ostream& os, const AccuracyTable& t) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-18s %-24s %6s %8s %8s %8s %8s %8s %8s %8s\n", "model", "variant", "strategy",
                "n", "accuracy", "std", "correct", "instr", "arith", "format", "no_out");
  os << buf;
  for (const auto& g : t.groups) {
    std::snprintf(buf, sizeof buf, "%-16s %-18s %-24s %6zu %8.4f %8.4f %8.4f %8.4f %8.4f %8.4f %8.4f\n",
                  g.model_id.c_str(), g.variant.c_str(), std::string(strategy_name(g.strategy)).c_str(), g.n,
                  g.accuracy, g.stddev, g.shares[0], g.shares[1], g.shares[2], g.shares[3], g.shares[4]);
    os << buf;
  }
  os << "\nbest non-reference variant\n";
  for (const auto& b : t.best) {
    std::snprintf(buf, sizeof buf, "%-16s %-24s %-18s %8.4f\n", b.model_id.c_str(),
                  std::string(strategy_name(b.strategy)).c_str(), b.variant.empty() ? "-" : b.variant.c_str(),
                  b.accuracy);
    os << buf;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numeral scripts, locale formats and arithmetic benchmark tooling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "numeralkit 0.1.0");

  // scripts
  auto* cmd_scripts = app.add_subcommand("scripts", "Print the digit registry as a table");

  // translit
  std::string tl_from, tl_to, tl_text;
  auto* cmd_translit = app.add_subcommand("translit", "Rewrite a numeral in another script");
  cmd_translit->add_option("--from", tl_from, "Source script (identified when omitted)");
  cmd_translit->add_option("--to", tl_to, "Target script")->required();
  cmd_translit->add_option("text", tl_text, "Numeral")->required();

  // identify
  std::string id_text;
  auto* cmd_identify = app.add_subcommand("identify", "Name the script of a numeral");
  cmd_identify->add_option("text", id_text)->required();

  // fmt / parse / classify
  std::string fmt_format, fmt_value;
  auto* cmd_fmt = app.add_subcommand("fmt", "Render a plain decimal in a locale format");
  cmd_fmt->add_option("--format", fmt_format, "F1..F6")->required();
  cmd_fmt->add_option("value", fmt_value)->required();

  std::string parse_format, parse_text;
  bool parse_lenient = false;
  auto* cmd_parse = app.add_subcommand("parse", "Read a formatted numeral back to a plain decimal");
  cmd_parse->add_option("--format", parse_format, "F1..F6")->required();
  cmd_parse->add_flag("--lenient", parse_lenient, "Also accept U+202F/U+00A0 and U+2019 separators");
  cmd_parse->add_option("text", parse_text)->required();

  std::string cls_text;
  auto* cmd_classify = app.add_subcommand("classify", "List the formats a numeral parses under");
  cmd_classify->add_option("text", cls_text)->required();

  // bench
  auto* cmd_bench = app.add_subcommand("bench", "Generate, render and collect benchmark suites");
  cmd_bench->require_subcommand(1);

  GenerationConfig gen;
  std::string gen_out = "-";
  auto* cmd_generate = cmd_bench->add_subcommand("generate", "Generate seeded expression cases");
  cmd_generate->add_option("--seed", gen.seed)->capture_default_str();
  cmd_generate->add_option("--cases-per-op", gen.cases_per_op)->capture_default_str();
  cmd_generate->add_option("--min-digits", gen.min_digits)->capture_default_str();
  cmd_generate->add_option("--max-digits", gen.max_digits)->capture_default_str();
  cmd_generate->add_option("--decimal-probability", gen.decimal_operand_probability)->capture_default_str();
  cmd_generate->add_option("--max-result-digits", gen.max_result_digits)->capture_default_str();
  cmd_generate->add_option("-o,--out", gen_out, "Output file ('-' for stdout)")->capture_default_str();

  std::string rs_cases, rs_scripts = "all", rs_strategies = "all", rs_catalog, rs_out = "-";
  auto* cmd_render_scripts = cmd_bench->add_subcommand("render-scripts", "Render the numeral-script suite");
  cmd_render_scripts->add_option("--cases", rs_cases)->required();
  cmd_render_scripts->add_option("--scripts", rs_scripts, "Comma list or 'all'")->capture_default_str();
  cmd_render_scripts->add_option("--strategies", rs_strategies, "Comma list or 'all'")->capture_default_str();
  cmd_render_scripts->add_option("--catalog", rs_catalog, "Extra prompt catalog (TSV)");
  cmd_render_scripts->add_option("-o,--out", rs_out)->capture_default_str();

  std::string rf_cases, rf_formats = "all", rf_strategies = "all", rf_out = "-";
  auto* cmd_render_formats = cmd_bench->add_subcommand("render-formats", "Render the number-format suite");
  cmd_render_formats->add_option("--cases", rf_cases)->required();
  cmd_render_formats->add_option("--formats", rf_formats, "Comma list or 'all'")->capture_default_str();
  cmd_render_formats->add_option("--strategies", rf_strategies, "Comma list or 'all'")->capture_default_str();
  cmd_render_formats->add_option("-o,--out", rf_out)->capture_default_str();

  std::string col_suite, col_config, col_out;
  auto* cmd_collect = cmd_bench->add_subcommand("collect", "Query a chat endpoint for every prompt (resumable)");
  cmd_collect->add_option("--suite", col_suite)->required();
  cmd_collect->add_option("--config", col_config, "Run config JSON")->required();
  cmd_collect->add_option("-o,--out", col_out, "Response file; existing records are kept")->required();

  // score / report
  std::string sc_suite, sc_responses, sc_out = "-";
  auto* cmd_score = app.add_subcommand("score", "Score responses against a suite");
  cmd_score->add_option("--suite", sc_suite)->required();
  cmd_score->add_option("--responses", sc_responses)->required();
  cmd_score->add_option("-o,--out", sc_out)->capture_default_str();

  std::string rp_scores, rp_json;
  auto* cmd_report = app.add_subcommand("report", "Accuracy and outcome shares per model, variant and strategy");
  cmd_report->add_option("--scores", rp_scores)->required();
  cmd_report->add_option("--json", rp_json, "Also write the table as JSON lines");

  // corpus
  auto* cmd_corpus = app.add_subcommand("corpus", "Digit-script and number-format shares in a text corpus");
  cmd_corpus->require_subcommand(1);
  ScanOptions scan;
  std::string scan_path, scan_out = "-", scan_json;
  auto add_scan_options = [&](CLI::App* c) {
    c->add_option("--sample", scan.sample_size, "Documents to reservoir-sample")->capture_default_str();
    c->add_option("--seed", scan.seed)->capture_default_str();
    c->add_option("--workers", scan.workers)->capture_default_str();
    c->add_flag("--per-document", scan.per_document_mean, "Average per-document shares instead of pooling");
    c->add_option("-o,--out", scan_out, "Text report")->capture_default_str();
    c->add_option("--json", scan_json, "JSON report");
    c->add_option("path", scan_path, "Directory, text file or .jsonl file")->required();
  };
  auto* cmd_scan_scripts = cmd_corpus->add_subcommand("scan-scripts", "Count digits by script");
  add_scan_options(cmd_scan_scripts);
  auto* cmd_scan_formats = cmd_corpus->add_subcommand("scan-formats", "Count numerals by format");
  add_scan_options(cmd_scan_formats);

  // analyze
  auto* cmd_analyze = app.add_subcommand("analyze", "Logistic regression over scored responses");
  cmd_analyze->require_subcommand(1);
  std::string an_scores, an_suite, an_tokenizer = "chunk3", an_blacklist, an_out = "-";
  bool an_models = false;
  auto add_analyze_options = [&](CLI::App* c) {
    c->add_option("--scores", an_scores)->required();
    c->add_option("--suite", an_suite)->required();
    c->add_option("--tokenizer", an_tokenizer, "chunk3, digit1 or table:<path>")->capture_default_str();
    c->add_option("--exclude", an_blacklist, "Comma list of variants to drop");
    c->add_flag("--model-dummies", an_models, "Add fixed-effect columns per model");
    c->add_option("-o,--out", an_out)->capture_default_str();
  };
  auto* cmd_fit = cmd_analyze->add_subcommand("fit", "Fit and print coefficients");
  add_analyze_options(cmd_fit);
  auto* cmd_export = cmd_analyze->add_subcommand("export-design", "Write the design matrix as CSV");
  add_analyze_options(cmd_export);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("Usage", e.what());
    return kUsage;
  }

  try {
    if (cmd_scripts->parsed()) {
      write_registry_table(std::cout);
    } else if (cmd_translit->parsed()) {
      const ScriptId from = tl_from.empty() ? identify_script(tl_text) : parse_script(tl_from);
      std::cout << transliterate({tl_text, from}, parse_script(tl_to)).text << '\n';
    } else if (cmd_identify->parsed()) {
      const ScriptId s = identify_script(id_text);
      (void)from_script(NumeralString{id_text, s});
      std::cout << display_name(s) << " (" << language_for(s) << ")\n";
    } else if (cmd_fmt->parsed()) {
      std::cout << render(ExactDecimal::parse(fmt_value), parse_format_id(fmt_format)) << '\n';
    } else if (cmd_parse->parsed()) {
      std::cout << parse(parse_text, parse_format_id(parse_format), parse_lenient ? ParseMode::Lenient : ParseMode::Strict)
                       .to_string()
                << '\n';
    } else if (cmd_classify->parsed()) {
      const auto fits = classify(cls_text);
      for (std::size_t i = 0; i < fits.size(); ++i) std::cout << (i ? " " : "") << format_name(fits[i]);
      if (fits.empty()) std::cout << "(no format)";
      if (fits.size() > 1) std::cout << " (ambiguous)";
      std::cout << '\n';
    } else if (cmd_generate->parsed()) {
      const auto cases = generate_cases(gen);
      emit(gen_out, [&](std::ostream& os) { records::write_jsonl(os, cases); });
    } else if (cmd_render_scripts->parsed()) {
      PromptCatalog catalog;
      if (!rs_catalog.empty()) catalog.load_file(rs_catalog);
      const auto suite = render_script_suite(records::read_cases(rs_cases), script_list(rs_scripts),
                                             strategy_list(rs_strategies, kScriptStrategies), catalog);
      emit(rs_out, [&](std::ostream& os) { records::write_jsonl(os, suite); });
    } else if (cmd_render_formats->parsed()) {
      const auto suite = render_format_suite(records::read_cases(rf_cases), format_list(rf_formats),
                                             strategy_list(rf_strategies, kFormatStrategies));
      emit(rf_out, [&](std::ostream& os) { records::write_jsonl(os, suite); });
    } else if (cmd_collect->parsed()) {
      const auto cfg = load_run_config(col_config);
      const auto suite = records::read_prompts(col_suite);
      std::vector<ModelResponse> existing;
      if (std::filesystem::exists(col_out)) existing = records::read_responses(col_out);
      auto save = [&](const std::vector<ModelResponse>& rs) {
        records::write_atomically(col_out, [&](std::ostream& os) { records::write_jsonl(os, rs); });
      };
      CollectStats stats;
      const auto merged = collect(suite, cfg, std::move(existing), &stats, save);
      save(merged);
      std::cerr << "requests " << stats.requests << ", new " << stats.collected << ", skipped " << stats.skipped << '\n';
    } else if (cmd_score->parsed()) {
      const auto scores = score_all(records::read_responses(sc_responses), records::read_prompts(sc_suite));
      emit(sc_out, [&](std::ostream& os) { records::write_jsonl(os, scores); });
    } else if (cmd_report->parsed()) {
      const auto table = aggregate(records::read_scores(rp_scores));
      print_accuracy_table(std::cout, table);
      if (!rp_json.empty())
        records::write_atomically(rp_json, [&](std::ostream& os) {
          records::write_jsonl(os, table.groups);
          records::write_jsonl(os, table.best);
        });
    } else if (cmd_scan_scripts->parsed() || cmd_scan_formats->parsed()) {
      const auto report = cmd_scan_scripts->parsed() ? scan_scripts(std::filesystem::path(scan_path), scan)
                                                     : scan_formats(std::filesystem::path(scan_path), scan);
      emit(scan_out, [&](std::ostream& os) { write_report(os, report); });
      if (!scan_json.empty())
        records::write_atomically(scan_json, [&](std::ostream& os) { os << report_json(report).dump(2) << '\n'; });
    } else if (cmd_fit->parsed() || cmd_export->parsed()) {
      const auto list = split_list(an_blacklist);
      const auto rows = build_design(records::read_scores(an_scores), records::read_prompts(an_suite),
                                     TokenizationScheme::parse(an_tokenizer), {list.begin(), list.end()});
      const DesignOptions opt{an_models};
      if (cmd_export->parsed()) {
        emit(an_out, [&](std::ostream& os) { export_design_csv(os, rows, opt); });
      } else {
        const auto result = fit(design_matrix(rows, opt));
        emit(an_out, [&](std::ostream& os) { write_fit_table(os, result); });
      }
    }
  } catch (const Error& e) {
    report_error(error_kind_name(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error("Internal", e.what());
    return kData;
  }
  return kOk;
}
