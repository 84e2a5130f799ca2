#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "numeralkit/benchmark_builder.hpp"
#include "numeralkit/locale_format.hpp"
#include "numeralkit/script_registry.hpp"

namespace numeralkit {

namespace unicode_nd {

// First code point (value 0) of every decimal-digit run, Unicode 15.0.
inline constexpr std::array<char32_t, 68> kRunStarts = {
    0x0030,  0x0660,  0x06F0,  0x07C0,  0x0966,  0x09E6,  0x0A66,  0x0AE6,  0x0B66,  0x0BE6,  0x0C66,  0x0CE6,
    0x0D66,  0x0DE6,  0x0E50,  0x0ED0,  0x0F20,  0x1040,  0x1090,  0x17E0,  0x1810,  0x1946,  0x19D0,  0x1A80,
    0x1A90,  0x1B50,  0x1BB0,  0x1C40,  0x1C50,  0xA620,  0xA8D0,  0xA900,  0xA9D0,  0xA9F0,  0xAA50,  0xABF0,
    0xFF10,  0x104A0, 0x10D30, 0x11066, 0x110F0, 0x11136, 0x111D0, 0x112F0, 0x11450, 0x114D0, 0x11650, 0x116C0,
    0x11730, 0x118E0, 0x11950, 0x11C50, 0x11D50, 0x11DA0, 0x11F50, 0x16A60, 0x16AC0, 0x16B50, 0x1D7CE, 0x1D7D8,
    0x1D7E2, 0x1D7EC, 0x1D7F6, 0x1E140, 0x1E2F0, 0x1E4F0, 0x1E950, 0x1FBF0,
};

inline bool is_decimal_digit(char32_t cp) {
  auto it = std::upper_bound(kRunStarts.begin(), kRunStarts.end(), cp);
  if (it == kRunStarts.begin()) return false;
  return cp - *(it - 1) < 10;
}

}  // namespace unicode_nd

inline constexpr std::size_t kOtherBucket = kScriptCount;  // index of "other" in script counts

struct ScanOptions {
  std::size_t sample_size = 500'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool per_document_mean = false;  // average per-document shares instead of pooling counts
};

struct ScriptTally {
  std::array<std::uint64_t, kScriptCount + 1> counts{};
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  ScriptTally& operator+=(const ScriptTally& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    return *this;
  }
};

struct FormatTally {
  std::array<std::uint64_t, kFormatCount> counts{};
  std::uint64_t ambiguous = 0;
  std::uint64_t unmatched = 0;
  std::uint64_t candidates = 0;
  std::uint64_t counted() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  FormatTally& operator+=(const FormatTally& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    ambiguous += o.ambiguous;
    unmatched += o.unmatched;
    candidates += o.candidates;
    return *this;
  }
};

struct CorpusReport {
  std::uint64_t documents_scanned = 0;
  bool per_document_mean = false;
  bool has_scripts = false;
  bool has_formats = false;
  ScriptTally scripts;
  std::array<double, kScriptCount + 1> script_shares{};
  FormatTally formats;
  std::array<double, kFormatCount> format_shares{};

  std::uint64_t ambiguous_discarded() const { return formats.ambiguous; }
  double other_script_share() const { return script_shares[kOtherBucket]; }
};

/// Counts every registered digit by owning script; other Unicode decimal
/// digits land in the "other" bucket.
inline ScriptTally count_script_digits(std::string_view doc) {
  ScriptTally t;
  std::size_t pos = 0;
  while (pos < doc.size()) {
    const char32_t cp = utf8::next(doc, pos);
    if (const auto sd = script_of_codepoint(cp))
      ++t.counts[static_cast<std::size_t>(sd->script)];
    else if (unicode_nd::is_decimal_digit(cp))
      ++t.counts[kOtherBucket];
  }
  return t;
}

namespace detail {

inline bool is_candidate_char(char32_t cp) {
  return (cp >= U'0' && cp <= U'9') || cp == U'.' || cp == U',' || cp == U'\'' || cp == kThinSpace;
}

}  // namespace detail

/// Maximal runs of ASCII digits, '.', ',', '\'' and U+2009, trimmed to begin
/// and end on a digit. Runs without digits are not candidates.
inline std::vector<std::string> extract_numeral_candidates(std::string_view doc) {
  std::vector<std::string> out;
  const std::u32string s = utf8::decode(doc);
  auto is_digit = [](char32_t c) { return c >= U'0' && c <= U'9'; };
  std::size_t i = 0;
  while (i < s.size()) {
    if (!detail::is_candidate_char(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && detail::is_candidate_char(s[j])) ++j;
    std::size_t a = i, b = j;
    while (a < b && !is_digit(s[a])) ++a;
    while (b > a && !is_digit(s[b - 1])) --b;
    if (a < b) out.push_back(utf8::encode(std::u32string_view(s).substr(a, b - a)));
    i = j;
  }
  return out;
}

inline FormatTally count_formats(std::string_view doc) {
  FormatTally t;
  for (const auto& cand : extract_numeral_candidates(doc)) {
    ++t.candidates;
    const auto fits = classify(cand);
    if (fits.size() == 1)
      ++t.counts[static_cast<std::size_t>(fits.front())];
    else if (fits.empty())
      ++t.unmatched;
    else
      ++t.ambiguous;
  }
  return t;
}

/// Algorithm R over a stream of documents; the result keeps stream order
/// of the slots, which is all later stages need.
class ReservoirSampler {
 public:
  ReservoirSampler(std::size_t k, std::uint64_t seed) : k_(k), rng_(seed) {
    if (k == 0) throw Error(ErrorKind::ConfigError, "sample size must be at least 1");
  }

  void offer(std::string doc) {
    if (sample_.size() < k_) {
      sample_.push_back(std::move(doc));
    } else {
      const std::uint64_t j = detail::uniform_below(rng_, seen_ + 1);
      if (j < k_) sample_[j] = std::move(doc);
    }
    ++seen_;
  }

  std::uint64_t seen() const { return seen_; }
  std::vector<std::string>& sample() { return sample_; }

 private:
  std::size_t k_;
  std::mt19937_64 rng_;
  std::uint64_t seen_ = 0;
  std::vector<std::string> sample_;
};

/// Feeds every document under `path` to `sink`. Directories are walked in
/// sorted order; `.jsonl` files yield one document per line from its "text"
/// field, any other file is one document.
inline void for_each_document(const std::filesystem::path& path, const std::function<void(std::string)>& sink) {
  namespace fs = std::filesystem;
  auto read_file = [&](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read '" + p.string() + "'");
    if (p.extension() == ".jsonl") {
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::BadRecord, p.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("text") || !j["text"].is_string())
          throw Error(ErrorKind::BadRecord, p.string() + ":" + std::to_string(lineno) + ": missing string field \"text\"");
        sink(j["text"].get<std::string>());
      }
    } else {
      std::ostringstream ss;
      ss << in.rdbuf();
      sink(ss.str());
    }
  };
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(path))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) read_file(f);
  } else if (fs::is_regular_file(path, ec)) {
    read_file(path);
  } else {
    throw Error(ErrorKind::Io, "no such corpus path '" + path.string() + "'");
  }
}

inline std::vector<std::string> sample_documents(const std::filesystem::path& path, const ScanOptions& opt) {
  ReservoirSampler r(opt.sample_size, opt.seed);
  for_each_document(path, [&](std::string d) { r.offer(std::move(d)); });
  return std::move(r.sample());
}

namespace detail {

// Runs fn(i) for every document index across `workers` threads, each owning
// a contiguous block.
template <class Fn>
void parallel_blocks(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

template <std::size_t N>
void mean_of_shares(std::array<double, N>& out, const std::vector<std::array<std::uint64_t, N>>& per_doc) {
  out.fill(0.0);
  std::size_t used = 0;
  for (const auto& c : per_doc) {
    std::uint64_t tot = 0;
    for (auto x : c) tot += x;
    if (tot == 0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += static_cast<double>(c[i]) / static_cast<double>(tot);
    ++used;
  }
  if (used)
    for (auto& v : out) v /= static_cast<double>(used);
}

template <std::size_t N>
void pooled_shares(std::array<double, N>& out, const std::array<std::uint64_t, N>& counts) {
  std::uint64_t tot = 0;
  for (auto x : counts) tot += x;
  for (std::size_t i = 0; i < N; ++i) out[i] = tot ? static_cast<double>(counts[i]) / static_cast<double>(tot) : 0.0;
}

}  // namespace detail

/// Script digit shares over an already-sampled document set.
inline CorpusReport scan_scripts(const std::vector<std::string>& docs, const ScanOptions& opt = {}) {
  if (docs.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no documents");
  std::vector<ScriptTally> per_doc(docs.size());
  detail::parallel_blocks(docs.size(), opt.workers, [&](std::size_t i) { per_doc[i] = count_script_digits(docs[i]); });
  CorpusReport r;
  r.documents_scanned = docs.size();
  r.per_document_mean = opt.per_document_mean;
  r.has_scripts = true;
  for (const auto& t : per_doc) r.scripts += t;
  if (opt.per_document_mean) {
    std::vector<std::array<std::uint64_t, kScriptCount + 1>> counts;
    for (const auto& t : per_doc) counts.push_back(t.counts);
    detail::mean_of_shares(r.script_shares, counts);
  } else {
    detail::pooled_shares(r.script_shares, r.scripts.counts);
  }
  return r;
}

/// Format shares; ambiguous candidates are excluded from the denominator.
inline CorpusReport scan_formats(const std::vector<std::string>& docs, const ScanOptions& opt = {}) {
  if (docs.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no documents");
  std::vector<FormatTally> per_doc(docs.size());
  detail::parallel_blocks(docs.size(), opt.workers, [&](std::size_t i) { per_doc[i] = count_formats(docs[i]); });
  CorpusReport r;
  r.documents_scanned = docs.size();
  r.per_document_mean = opt.per_document_mean;
  r.has_formats = true;
  for (const auto& t : per_doc) r.formats += t;
  if (opt.per_document_mean) {
    std::vector<std::array<std::uint64_t, kFormatCount>> counts;
    for (const auto& t : per_doc) counts.push_back(t.counts);
    detail::mean_of_shares(r.format_shares, counts);
  } else {
    detail::pooled_shares(r.format_shares, r.formats.counts);
  }
  return r;
}

inline CorpusReport scan_scripts(const std::filesystem::path& path, const ScanOptions& opt) {
  return scan_scripts(sample_documents(path, opt), opt);
}

inline CorpusReport scan_formats(const std::filesystem::path& path, const ScanOptions& opt) {
  return scan_formats(sample_documents(path, opt), opt);
}

inline std::string format_proportion(double p) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << p;
  return os.str();
}

/// Sectioned tab-separated report with four-decimal proportions.
inline void write_report(std::ostream& os, const CorpusReport& r) {
  os << "documents_scanned\t" << r.documents_scanned << '\n';
  os << "weighting\t" << (r.per_document_mean ? "per-document-mean" : "pooled") << '\n';
  if (r.has_scripts) {
    os << "\n[scripts]\nscript\tdigits\tproportion\n";
    for (ScriptId s : all_scripts())
      os << script_name(s) << '\t' << r.scripts.counts[static_cast<std::size_t>(s)] << '\t'
         << format_proportion(r.script_shares[static_cast<std::size_t>(s)]) << '\n';
    os << "other\t" << r.scripts.counts[kOtherBucket] << '\t' << format_proportion(r.script_shares[kOtherBucket])
       << '\n';
    os << "total\t" << r.scripts.total() << '\n';
  }
  if (r.has_formats) {
    os << "\n[formats]\nformat\tnumerals\tproportion\n";
    for (FormatId f : all_formats())
      os << format_name(f) << '\t' << r.formats.counts[static_cast<std::size_t>(f)] << '\t'
         << format_proportion(r.format_shares[static_cast<std::size_t>(f)]) << '\n';
    os << "counted\t" << r.formats.counted() << '\n';
    os << "ambiguous_discarded\t" << r.formats.ambiguous << '\n';
    os << "unmatched\t" << r.formats.unmatched << '\n';
    os << "candidates\t" << r.formats.candidates << '\n';
  }
}

inline nlohmann::json report_json(const CorpusReport& r) {
  nlohmann::json j;
  j["documents_scanned"] = r.documents_scanned;
  j["weighting"] = r.per_document_mean ? "per-document-mean" : "pooled";
  if (r.has_scripts) {
    auto& s = j["scripts"];
    for (ScriptId id : all_scripts()) {
      const auto i = static_cast<std::size_t>(id);
      s[std::string(script_name(id))] = {{"digits", r.scripts.counts[i]}, {"proportion", r.script_shares[i]}};
    }
    s["other"] = {{"digits", r.scripts.counts[kOtherBucket]}, {"proportion", r.script_shares[kOtherBucket]}};
    j["other_script_share"] = r.other_script_share();
  }
  if (r.has_formats) {
    auto& f = j["formats"];
    for (FormatId id : all_formats()) {
      const auto i = static_cast<std::size_t>(id);
      f[std::string(format_name(id))] = {{"numerals", r.formats.counts[i]}, {"proportion", r.format_shares[i]}};
    }
    j["ambiguous_discarded"] = r.formats.ambiguous;
    j["unmatched"] = r.formats.unmatched;
    j["candidates"] = r.formats.candidates;
  }
  return j;
}

}  // namespace numeralkit
