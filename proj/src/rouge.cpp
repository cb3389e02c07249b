#include "sumgauge/rouge.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "sumgauge/parallel.hpp"

namespace sumgauge {

namespace {

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  if (sum == 0.0) return 0.0;
  return 2.0 * (precision * recall) / sum;
}

// Word -> small integer ids shared by both sequences, so n-gram keys and
// LCS comparisons work on ints instead of strings.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> intern(
    const WordSeq& a, const WordSeq& b) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  ids.reserve(a.size() + b.size());
  const auto map = [&](const WordSeq& words) {
    std::vector<std::uint32_t> out;
    out.reserve(words.size());
    for (const std::string& w : words) {
      out.push_back(ids.emplace(w, static_cast<std::uint32_t>(ids.size()))
                        .first->second);
    }
    return out;
  };
  auto ia = map(a);
  auto ib = map(b);
  return {std::move(ia), std::move(ib)};
}

std::uint64_t lcs_length(std::span<const std::uint32_t> a,
                         std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() < b.size()) std::swap(a, b);  // rows over the shorter side
  std::vector<std::uint64_t> prev(b.size() + 1, 0);
  std::vector<std::uint64_t> curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                     : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

}  // namespace

RougeVariant RougeVariant::ngram(int n) {
  if (n < 1 || n > 4) throw DataError("ROUGE-N order must be in [1,4]");
  return RougeVariant(n);
}

std::string RougeVariant::name() const {
  return is_lcs() ? "l" : std::to_string(n_);
}

std::optional<RougeVariant> RougeVariant::parse(std::string_view name) {
  if (name == "l" || name == "L") return lcs();
  if (name.size() == 1 && name[0] >= '1' && name[0] <= '4')
    return ngram(name[0] - '0');
  return std::nullopt;
}

RougeScore rouge_n(const WordSeq& candidate, const WordSeq& reference,
                   int n) {
  if (n < 1) throw DataError("ROUGE-N order must be >= 1");
  const std::size_t order = static_cast<std::size_t>(n);
  if (candidate.size() < order || reference.size() < order) return {};

  auto [cand, ref] = intern(candidate, reference);
  // collision-free n-gram ids: extend one word at a time, interning each
  // (prefix id, word id) pair into a fresh id shared by both sequences
  for (std::size_t level = 1; level < order; ++level) {
    std::unordered_map<std::uint64_t, std::uint32_t> pair_ids;
    pair_ids.reserve(cand.size() + ref.size());
    const auto extend = [&](std::vector<std::uint32_t>& ids) {
      for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(ids[i]) << 32) | ids[i + 1];
        ids[i] = pair_ids
                     .emplace(key, static_cast<std::uint32_t>(pair_ids.size()))
                     .first->second;
      }
      ids.pop_back();
    };
    extend(cand);
    extend(ref);
  }
  const auto make_counts = [](const std::vector<std::uint32_t>& ids) {
    std::unordered_map<std::uint32_t, std::uint64_t> counts;
    counts.reserve(ids.size());
    for (const std::uint32_t id : ids) ++counts[id];
    return counts;
  };
  const auto cand_counts = make_counts(cand);
  const auto ref_counts = make_counts(ref);

  std::uint64_t overlap = 0;
  for (const auto& [key, count] : cand_counts) {
    const auto it = ref_counts.find(key);
    if (it != ref_counts.end()) overlap += std::min(count, it->second);
  }
  const std::uint64_t cand_total = cand.size() - order + 1;
  const std::uint64_t ref_total = ref.size() - order + 1;
  RougeScore score;
  score.precision = static_cast<double>(overlap) / cand_total;
  score.recall = static_cast<double>(overlap) / ref_total;
  score.f1 = f_measure(score.precision, score.recall);
  return score;
}

RougeScore rouge_l(const WordSeq& candidate, const WordSeq& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const auto [cand, ref] = intern(candidate, reference);
  const std::uint64_t lcs = lcs_length(cand, ref);
  RougeScore score;
  score.precision = static_cast<double>(lcs) / cand.size();
  score.recall = static_cast<double>(lcs) / ref.size();
  score.f1 = f_measure(score.precision, score.recall);
  return score;
}

RougeScore rouge_score(const WordSeq& candidate, const WordSeq& reference,
                       RougeVariant variant) {
  return variant.is_lcs() ? rouge_l(candidate, reference)
                          : rouge_n(candidate, reference, variant.n());
}

double corpus_rouge(
    std::span<const std::pair<const WordSeq*, const WordSeq*>> pairs,
    RougeVariant variant, unsigned threads) {
  if (pairs.empty()) throw DataError("corpus ROUGE over an empty pair list");
  std::vector<double> f1(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    f1[i] = rouge_score(*pairs[i].first, *pairs[i].second, variant).f1;
  });
  double sum = 0.0;
  for (const double v : f1) sum += v;
  return sum / static_cast<double>(pairs.size());
}

}  // namespace sumgauge
