#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumgauge/common.hpp"
#include "sumgauge/corpus.hpp"
#include "sumgauge/rouge.hpp"

namespace sumgauge {

// Per-dataset difficulty indicators. lambda is always computed from
// alpha and beta, never stored.
struct DifficultyReport {
  std::string dataset_name;
  std::string domain_label;
  double alpha = 0.0;  // compression ratio
  double beta = 0.0;   // abstraction level
  std::size_t n_samples = 0;
  RougeVariant rouge_variant = RougeVariant::lcs();
  std::uint64_t word_count_docs = 0;
  std::uint64_t word_count_sums = 0;

  double lambda() const { return alpha * beta; }
};

// Mean over samples of |document| / |summary| in words. A per-sample
// ratio averaged, not a ratio of totals.
double compression_ratio(const Dataset& dataset);

// Reciprocal of the mean document-summary ROUGE F1 (summary as candidate,
// document as reference), F1 on [0,1].
double abstraction_level(const Dataset& dataset, RougeVariant variant,
                         unsigned threads = 1);

// lambda = alpha * beta. Inputs must be positive.
double learning_difficulty(double alpha, double beta);

// finetuned - base, both in percent points. May be negative.
double gain(double rouge_base, double rouge_finetuned);

// lambda * gain. lambda must be positive.
double ld_gain(double lambda, double gain);

// Fraction of source tokens whose word occurs in the target's unique-word
// set. Exactly equal to the per-unique-word double sum: both sides are an
// integer count divided by the integer source total.
double pair_overlap(const Vocab& source, const UniqueWords& target_unique);

struct OverlapResult {
  double gamma = 0.0;  // fraction on [0,1]; mean of per_pair
  std::vector<std::vector<double>> per_pair;  // [source][target]
  std::vector<std::string> source_names;
  std::vector<std::string> target_names;
};

OverlapResult cross_domain_overlap(std::span<const Dataset> sources,
                                   std::span<const Dataset> targets,
                                   Scope scope, unsigned threads = 1);
OverlapResult cross_domain_overlap(std::span<const Dataset* const> sources,
                                   std::span<const Dataset* const> targets,
                                   Scope scope, unsigned threads = 1);

DifficultyReport difficulty_report(const Dataset& dataset,
                                   RougeVariant variant,
                                   unsigned threads = 1);

// One (source set, target) experiment row. ROUGE columns are percent
// points; gamma is a fraction.
struct AdaptationRecord {
  std::vector<std::string> source_names;
  std::string target_name;
  std::optional<double> gamma;
  std::optional<double> lambda;
  double rouge_base = 0.0;
  double rouge_finetuned = 0.0;

  double gain() const { return rouge_finetuned - rouge_base; }
  std::optional<double> ld_gain() const {
    if (!lambda) return std::nullopt;
    return *lambda * gain();
  }
  std::string source_key() const;  // names joined with '+'
};

// Evaluation-results CSV: header row with at least
// source,target,rouge_base,rouge_finetuned; optional gamma, lambda, gain,
// ld_gain columns. Multi-source rows join names with '+'. Stored gain /
// ld_gain / lambda cells are validated against recomputation; a mismatch
// above 0.005 is an error. gamma cells are read in `unit`.
std::vector<AdaptationRecord> read_eval_csv(const std::string& path,
                                            GammaUnit unit);

// Fills missing gamma (overlap of the row's sources vs its target) and
// lambda (target difficulty) from the named datasets. Unknown dataset
// names are an error only for rows that need them.
void fill_records_from_datasets(std::vector<AdaptationRecord>& records,
                                std::span<const Dataset> datasets,
                                Scope scope, RougeVariant variant,
                                unsigned threads = 1);

nlohmann::ordered_json to_json(const DifficultyReport& report);
nlohmann::ordered_json to_json(const OverlapResult& result, GammaUnit unit);

}  // namespace sumgauge
