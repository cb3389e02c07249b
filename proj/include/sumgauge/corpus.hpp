#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sumgauge/common.hpp"

namespace sumgauge {

// The word definition every metric depends on. Tokenization splits on
// Unicode whitespace, then per token strips leading/trailing punctuation,
// lowercases, and drops tokens shorter than min_token_len.
struct TokenizerConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  std::size_t min_token_len = 1;

  bool operator==(const TokenizerConfig&) const = default;
};

using WordSeq = std::vector<std::string>;

// Pure and deterministic: same (text, config) -> same words. Input is
// expected to be valid UTF-8 (the loader enforces this); stray invalid
// bytes decode as U+FFFD rather than failing.
WordSeq tokenize(std::string_view text, const TokenizerConfig& config);

// Returns the byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view text);

struct Sample {
  std::string id;
  std::string document;
  std::string summary;
  // tokenized once at load with the dataset's config, reused by every metric
  WordSeq document_words;
  WordSeq summary_words;
};

// Immutable after construction; safe to share across threads.
struct Dataset {
  std::string name;
  std::string domain_label;
  TokenizerConfig tokenizer;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
};

struct LoadOptions {
  // degenerate = empty tokenized document or summary; default is a hard
  // error naming the line, the flag skips and counts instead
  bool skip_degenerate = false;
  unsigned threads = 1;
};

// One JSON object per line: "document" and "summary" required strings,
// "id" optional (defaults to the 0-based line index). Invalid UTF-8,
// malformed JSON, missing fields and degenerate records are reported with
// their 1-based line number.
Dataset load_jsonl(const std::string& path, const TokenizerConfig& config,
                   const LoadOptions& options = {},
                   std::size_t* skipped_degenerate = nullptr);

// Builds a dataset directly from (document, summary) text pairs; ids are
// the 0-based positions. Same degenerate-record rule as load_jsonl.
Dataset make_dataset(std::string name,
                     const std::vector<std::pair<std::string, std::string>>& pairs,
                     const TokenizerConfig& config);

void save_jsonl(const Dataset& dataset, const std::string& path);

std::uint64_t word_count(const Dataset& dataset, Scope scope);

// Dataset-level word frequency table.
struct Vocab {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t unique() const { return counts.size(); }
  void add(const std::string& word, std::uint64_t n = 1) {
    counts[word] += n;
    total += n;
  }
};

Vocab vocab(const Dataset& dataset, Scope scope);

using UniqueWords = std::unordered_set<std::string>;

UniqueWords unique_words(const Dataset& dataset, Scope scope);

// Uniform sample without replacement; deterministic per seed; keeps the
// relative sample order. Requires 1 <= n <= dataset.size().
Dataset sample_subset(const Dataset& dataset, std::size_t n,
                      std::uint64_t seed);

}  // namespace sumgauge
