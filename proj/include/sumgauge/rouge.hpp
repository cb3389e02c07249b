#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumgauge/common.hpp"
#include "sumgauge/corpus.hpp"

namespace sumgauge {

// All scores live on [0,1]; report columns multiply by 100.
struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// ROUGE-N for n in [1,4], or ROUGE-L (the toolkit default).
class RougeVariant {
 public:
  static RougeVariant lcs() { return RougeVariant(0); }
  static RougeVariant ngram(int n);

  bool is_lcs() const { return n_ == 0; }
  int n() const { return n_; }

  // "l", "1", "2", ...
  std::string name() const;
  static std::optional<RougeVariant> parse(std::string_view name);

  bool operator==(const RougeVariant&) const = default;

 private:
  explicit RougeVariant(int n) : n_(n) {}
  int n_ = 0;  // 0 means LCS
};

// Clipped n-gram overlap. Sequences shorter than n score 0.
RougeScore rouge_n(const WordSeq& candidate, const WordSeq& reference, int n);

// Sequence-level LCS; P = LCS/|candidate|, R = LCS/|reference|.
RougeScore rouge_l(const WordSeq& candidate, const WordSeq& reference);

RougeScore rouge_score(const WordSeq& candidate, const WordSeq& reference,
                       RougeVariant variant);

// Arithmetic mean of per-pair F1, accumulated in pair order so the result
// does not depend on the thread count. Errors on an empty list.
double corpus_rouge(
    std::span<const std::pair<const WordSeq*, const WordSeq*>> pairs,
    RougeVariant variant, unsigned threads = 1);

}  // namespace sumgauge
