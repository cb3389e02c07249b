#include "sumgauge/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "sumgauge/parallel.hpp"
#include "sumgauge/rng.hpp"

namespace sumgauge {

const char* to_string(Scope scope) {
  switch (scope) {
    case Scope::kDocuments: return "docs";
    case Scope::kSummaries: return "sums";
    case Scope::kBoth: return "both";
  }
  return "both";
}

std::optional<Scope> scope_from_string(std::string_view name) {
  if (name == "docs" || name == "documents") return Scope::kDocuments;
  if (name == "sums" || name == "summaries") return Scope::kSummaries;
  if (name == "both") return Scope::kBoth;
  return std::nullopt;
}

const char* to_string(GammaUnit unit) {
  return unit == GammaUnit::kPercent ? "percent" : "fraction";
}

std::optional<GammaUnit> gamma_unit_from_string(std::string_view name) {
  if (name == "fraction") return GammaUnit::kFraction;
  if (name == "percent") return GammaUnit::kPercent;
  return std::nullopt;
}

namespace {

constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the code point starting at text[pos], advancing pos. Invalid
// sequences (truncated, overlong, surrogates, > U+10FFFF) yield U+FFFD and
// advance one byte.
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacementChar;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kReplacementChar;
  }
  for (int i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacementChar;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len] || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacementChar;
  }
  pos += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode White_Space property.
bool is_space(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// Punctuation (P categories) over the blocks this toolkit is likely to
// see; not a full UCD table. Symbol characters ($ + < = > ^ ` | ~) are
// deliberately not stripped.
bool is_punct(char32_t c) {
  if (c < 0x80) {
    switch (c) {
      case '!': case '"': case '#': case '%': case '&': case '\'':
      case '(': case ')': case '*': case ',': case '-': case '.':
      case '/': case ':': case ';': case '?': case '@': case '[':
      case '\\': case ']': case '_': case '{': case '}':
        return true;
      default:
        return false;
    }
  }
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF:                                       // Latin-1
    case 0x37E: case 0x387:                          // Greek
    case 0x589: case 0x58A:                          // Armenian
    case 0x5BE: case 0x5C0: case 0x5C3: case 0x5C6:
    case 0x5F3: case 0x5F4:                          // Hebrew
    case 0x60C: case 0x60D: case 0x61B: case 0x61E:
    case 0x61F: case 0x6D4:                          // Arabic
    case 0x964: case 0x965: case 0x970:              // Devanagari
    case 0x10FB:                                     // Georgian
    case 0x3030: case 0x303D:                        // CJK
      return true;
    default:
      break;
  }
  if (c >= 0x55A && c <= 0x55F) return true;     // Armenian
  if (c >= 0x66A && c <= 0x66D) return true;     // Arabic
  if (c >= 0x1360 && c <= 0x1368) return true;   // Ethiopic
  if (c >= 0x2010 && c <= 0x2027) return true;   // general punctuation
  if (c >= 0x2030 && c <= 0x205E) return true;
  if (c >= 0x2E00 && c <= 0x2E7F) return true;   // supplemental punctuation
  if (c >= 0x3001 && c <= 0x3003) return true;   // CJK symbols
  if (c >= 0x3008 && c <= 0x3011) return true;
  if (c >= 0x3014 && c <= 0x301F) return true;
  if (c >= 0xFE50 && c <= 0xFE6B) return true;   // small form variants
  if (c >= 0xFF01 && c <= 0xFF65) {              // fullwidth/halfwidth forms
    switch (c) {
      case 0xFF04: case 0xFF0B: case 0xFF1C: case 0xFF1D: case 0xFF1E:
      case 0xFF3E: case 0xFF40: case 0xFF5C: case 0xFF5E:
        return false;  // currency/math mirrors of the ASCII symbols
      default:
        return c <= 0xFF0F || (c >= 0xFF1A && c <= 0xFF20) ||
               (c >= 0xFF3B && c <= 0xFF3F) || c >= 0xFF5B;
    }
  }
  return false;
}

// Simple case mapping for the common bicameral scripts (ASCII, Latin-1,
// Latin Extended-A, Greek, Cyrillic). Everything else passes through.
char32_t simple_lowercase(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 0x20 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x137) return (c & 1) ? c : c + 1;
  if (c >= 0x139 && c <= 0x148) return (c & 1) ? c + 1 : c;
  if (c == 0x130) return 0x69;  // dotted capital I
  if (c >= 0x14A && c <= 0x177) return (c & 1) ? c : c + 1;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 0x25;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 0x3F;
  if (c >= 0x391 && c <= 0x3A1) return c + 0x20;
  if (c >= 0x3A3 && c <= 0x3AB) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c;
}

}  // namespace

std::size_t find_invalid_utf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (decode_utf8(text, pos) == kReplacementChar &&
        pos - start == 1 &&
        static_cast<unsigned char>(text[start]) >= 0x80) {
      return start;
    }
  }
  return std::string_view::npos;
}

WordSeq tokenize(std::string_view text, const TokenizerConfig& config) {
  WordSeq words;
  std::vector<char32_t> token;
  std::size_t pos = 0;
  const auto flush = [&] {
    if (token.empty()) return;
    std::size_t begin = 0;
    std::size_t end = token.size();
    if (config.strip_punctuation) {
      while (begin < end && is_punct(token[begin])) ++begin;
      while (end > begin && is_punct(token[end - 1])) --end;
    }
    if (end - begin >= std::max<std::size_t>(config.min_token_len, 1)) {
      std::string word;
      for (std::size_t i = begin; i < end; ++i) {
        encode_utf8(config.lowercase ? simple_lowercase(token[i]) : token[i],
                    word);
      }
      words.push_back(std::move(word));
    }
    token.clear();
  };
  while (pos < text.size()) {
    const char32_t cp = decode_utf8(text, pos);
    if (is_space(cp)) {
      flush();
    } else {
      token.push_back(cp);
    }
  }
  flush();
  return words;
}

namespace {

struct ParsedRecord {
  Sample sample;
  bool degenerate = false;
  std::string error;  // non-empty on hard failure
};

ParsedRecord parse_record(std::string_view line, std::size_t line_index,
                          const TokenizerConfig& config) {
  ParsedRecord out;
  const std::size_t lineno = line_index + 1;
  const std::size_t bad = find_invalid_utf8(line);
  if (bad != std::string_view::npos) {
    out.error = "invalid UTF-8 at line " + std::to_string(lineno) +
                ", byte offset " + std::to_string(bad);
    return out;
  }
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    out.error = "malformed JSON at line " + std::to_string(lineno) + ": " +
                e.what();
    return out;
  }
  if (!record.is_object()) {
    out.error = "malformed JSON at line " + std::to_string(lineno) +
                ": expected an object";
    return out;
  }
  for (const char* field : {"document", "summary"}) {
    if (!record.contains(field) || !record[field].is_string()) {
      out.error = std::string("missing or non-string \"") + field +
                  "\" at line " + std::to_string(lineno);
      return out;
    }
  }
  Sample& s = out.sample;
  s.document = record["document"].get<std::string>();
  s.summary = record["summary"].get<std::string>();
  if (record.contains("id")) {
    if (!record["id"].is_string()) {
      out.error = "non-string \"id\" at line " + std::to_string(lineno);
      return out;
    }
    s.id = record["id"].get<std::string>();
  } else {
    s.id = std::to_string(line_index);
  }
  s.document_words = tokenize(s.document, config);
  s.summary_words = tokenize(s.summary, config);
  out.degenerate = s.document_words.empty() || s.summary_words.empty();
  return out;
}

bool blank_line(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

Dataset load_jsonl(const std::string& path, const TokenizerConfig& config,
                   const LoadOptions& options,
                   std::size_t* skipped_degenerate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::string_view rest = content;
  for (std::size_t index = 0; !rest.empty(); ++index) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{}
                                        : rest.substr(nl + 1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (!blank_line(line)) lines.emplace_back(index, line);
  }

  std::vector<ParsedRecord> records(lines.size());
  parallel_for(lines.size(), options.threads, [&](std::size_t i) {
    records[i] = parse_record(lines[i].second, lines[i].first, config);
  });

  Dataset dataset;
  dataset.tokenizer = config;
  dataset.samples.reserve(records.size());
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ParsedRecord& rec = records[i];
    if (!rec.error.empty()) throw DataError(path + ": " + rec.error);
    if (rec.degenerate) {
      if (options.skip_degenerate) {
        ++skipped;
        continue;
      }
      throw DataError(path + ": degenerate record at line " +
                      std::to_string(lines[i].first + 1) + " (id \"" +
                      rec.sample.id + "\"): empty tokenized " +
                      (rec.sample.document_words.empty() ? "document"
                                                         : "summary"));
    }
    dataset.samples.push_back(std::move(rec.sample));
  }
  if (skipped_degenerate) *skipped_degenerate = skipped;
  return dataset;
}

Dataset make_dataset(
    std::string name,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const TokenizerConfig& config) {
  Dataset dataset;
  dataset.name = std::move(name);
  dataset.tokenizer = config;
  dataset.samples.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Sample s;
    s.id = std::to_string(i);
    s.document = pairs[i].first;
    s.summary = pairs[i].second;
    s.document_words = tokenize(s.document, config);
    s.summary_words = tokenize(s.summary, config);
    if (s.document_words.empty() || s.summary_words.empty()) {
      throw DataError(dataset.name + ": degenerate record at index " +
                      std::to_string(i));
    }
    dataset.samples.push_back(std::move(s));
  }
  return dataset;
}

void save_jsonl(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  for (const Sample& s : dataset.samples) {
    nlohmann::ordered_json record;
    record["id"] = s.id;
    record["document"] = s.document;
    record["summary"] = s.summary;
    out << record.dump() << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::uint64_t word_count(const Dataset& dataset, Scope scope) {
  std::uint64_t total = 0;
  for (const Sample& s : dataset.samples) {
    if (scope != Scope::kSummaries) total += s.document_words.size();
    if (scope != Scope::kDocuments) total += s.summary_words.size();
  }
  return total;
}

Vocab vocab(const Dataset& dataset, Scope scope) {
  Vocab v;
  for (const Sample& s : dataset.samples) {
    if (scope != Scope::kSummaries)
      for (const std::string& w : s.document_words) v.add(w);
    if (scope != Scope::kDocuments)
      for (const std::string& w : s.summary_words) v.add(w);
  }
  return v;
}

UniqueWords unique_words(const Dataset& dataset, Scope scope) {
  UniqueWords set;
  for (const Sample& s : dataset.samples) {
    if (scope != Scope::kSummaries)
      set.insert(s.document_words.begin(), s.document_words.end());
    if (scope != Scope::kDocuments)
      set.insert(s.summary_words.begin(), s.summary_words.end());
  }
  return set;
}

Dataset sample_subset(const Dataset& dataset, std::size_t n,
                      std::uint64_t seed) {
  if (n < 1 || n > dataset.size()) {
    throw DataError("sample size " + std::to_string(n) +
                    " out of range for dataset \"" + dataset.name +
                    "\" with " + std::to_string(dataset.size()) + " samples");
  }
  Dataset subset;
  subset.name = dataset.name;
  subset.domain_label = dataset.domain_label;
  subset.tokenizer = dataset.tokenizer;
  subset.samples.reserve(n);
  for (std::size_t idx : sample_indices(dataset.size(), n, seed)) {
    subset.samples.push_back(dataset.samples[idx]);
  }
  return subset;
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        std::uint64_t seed) {
  std::vector<std::size_t> indices(population);
  for (std::size_t i = 0; i < population; ++i) indices[i] = i;
  std::mt19937_64 rng(seed);
  // partial Fisher-Yates: the first n slots are a uniform sample
  for (std::size_t i = 0; i < n && i + 1 < population; ++i) {
    const std::uint64_t j = i + bounded_uniform(rng, population - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(n);
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace sumgauge
