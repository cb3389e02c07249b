#include "sumgauge/metrics.hpp"

#include <cmath>
#include <unordered_map>

#include "sumgauge/csv.hpp"
#include "sumgauge/parallel.hpp"

namespace sumgauge {

namespace {

// tolerance for stored-vs-recomputed evaluation columns
constexpr double kStoredMismatch = 0.005;

}  // namespace

double compression_ratio(const Dataset& dataset) {
  if (dataset.samples.empty())
    throw DataError("compression ratio of an empty dataset");
  double sum = 0.0;
  for (const Sample& s : dataset.samples) {
    if (s.summary_words.empty()) {
      throw DataError("degenerate sample \"" + s.id + "\" in dataset \"" +
                      dataset.name + "\": empty summary");
    }
    if (s.document_words.empty()) {
      throw DataError("degenerate sample \"" + s.id + "\" in dataset \"" +
                      dataset.name + "\": empty document");
    }
    sum += static_cast<double>(s.document_words.size()) /
           static_cast<double>(s.summary_words.size());
  }
  return sum / static_cast<double>(dataset.samples.size());
}

double abstraction_level(const Dataset& dataset, RougeVariant variant,
                         unsigned threads) {
  if (dataset.samples.empty())
    throw DataError("abstraction level of an empty dataset");
  std::vector<std::pair<const WordSeq*, const WordSeq*>> pairs;
  pairs.reserve(dataset.samples.size());
  for (const Sample& s : dataset.samples) {
    pairs.emplace_back(&s.summary_words, &s.document_words);
  }
  const double mean = corpus_rouge(pairs, variant, threads);
  if (mean == 0.0) {
    throw DataError("degenerate corpus: zero document-summary overlap in \"" +
                    dataset.name + "\"");
  }
  return 1.0 / mean;
}

double learning_difficulty(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DataError("learning difficulty needs positive alpha and beta");
  }
  return alpha * beta;
}

double gain(double rouge_base, double rouge_finetuned) {
  return rouge_finetuned - rouge_base;
}

double ld_gain(double lambda, double gain) {
  if (!(lambda > 0.0)) throw DataError("ld_gain needs positive lambda");
  return lambda * gain;
}

double pair_overlap(const Vocab& source, const UniqueWords& target_unique) {
  if (source.total == 0) throw DataError("pair overlap with empty source");
  std::uint64_t matched = 0;
  for (const auto& [word, count] : source.counts) {
    if (target_unique.contains(word)) matched += count;
  }
  return static_cast<double>(matched) / static_cast<double>(source.total);
}

OverlapResult cross_domain_overlap(std::span<const Dataset> sources,
                                   std::span<const Dataset> targets,
                                   Scope scope, unsigned threads) {
  std::vector<const Dataset*> src, tgt;
  for (const Dataset& d : sources) src.push_back(&d);
  for (const Dataset& d : targets) tgt.push_back(&d);
  return cross_domain_overlap(std::span<const Dataset* const>(src),
                              std::span<const Dataset* const>(tgt), scope,
                              threads);
}

OverlapResult cross_domain_overlap(std::span<const Dataset* const> sources,
                                   std::span<const Dataset* const> targets,
                                   Scope scope, unsigned threads) {
  if (sources.empty() || targets.empty())
    throw DataError("overlap needs at least one source and one target");

  std::vector<Vocab> source_vocabs(sources.size());
  std::vector<UniqueWords> target_sets(targets.size());
  parallel_for(sources.size() + targets.size(), threads, [&](std::size_t i) {
    if (i < sources.size()) {
      source_vocabs[i] = vocab(*sources[i], scope);
    } else {
      target_sets[i - sources.size()] =
          unique_words(*targets[i - sources.size()], scope);
    }
  });

  OverlapResult result;
  for (const Dataset* d : sources) {
    if (word_count(*d, scope) == 0)
      throw DataError("source dataset \"" + d->name +
                      "\" is empty under scope " + to_string(scope));
    result.source_names.push_back(d->name);
  }
  for (const Dataset* d : targets) {
    if (word_count(*d, scope) == 0)
      throw DataError("target dataset \"" + d->name +
                      "\" is empty under scope " + to_string(scope));
    result.target_names.push_back(d->name);
  }

  result.per_pair.assign(sources.size(),
                         std::vector<double>(targets.size(), 0.0));
  parallel_for(sources.size() * targets.size(), threads, [&](std::size_t k) {
    const std::size_t i = k / targets.size();
    const std::size_t j = k % targets.size();
    result.per_pair[i][j] = pair_overlap(source_vocabs[i], target_sets[j]);
  });

  double sum = 0.0;
  for (const auto& row : result.per_pair)
    for (const double v : row) sum += v;
  result.gamma = sum / static_cast<double>(sources.size() * targets.size());
  return result;
}

DifficultyReport difficulty_report(const Dataset& dataset,
                                   RougeVariant variant, unsigned threads) {
  DifficultyReport report;
  report.dataset_name = dataset.name;
  report.domain_label = dataset.domain_label;
  report.alpha = compression_ratio(dataset);
  report.beta = abstraction_level(dataset, variant, threads);
  report.n_samples = dataset.size();
  report.rouge_variant = variant;
  report.word_count_docs = word_count(dataset, Scope::kDocuments);
  report.word_count_sums = word_count(dataset, Scope::kSummaries);
  return report;
}

std::string AdaptationRecord::source_key() const {
  std::string key;
  for (const std::string& name : source_names) {
    if (!key.empty()) key += '+';
    key += name;
  }
  return key;
}

std::vector<AdaptationRecord> read_eval_csv(const std::string& path,
                                            GammaUnit unit) {
  const CsvTable table = read_csv(path);
  for (const char* required : {"source", "target", "rouge_base",
                               "rouge_finetuned"}) {
    if (table.column(required) == std::string_view::npos)
      throw DataError(path + ": missing required column \"" +
                      std::string(required) + "\"");
  }
  const std::size_t c_source = table.column("source");
  const std::size_t c_target = table.column("target");
  const std::size_t c_base = table.column("rouge_base");
  const std::size_t c_ft = table.column("rouge_finetuned");
  const std::size_t c_gamma = table.column("gamma");
  const std::size_t c_lambda = table.column("lambda");
  const std::size_t c_gain = table.column("gain");
  const std::size_t c_ldgain = table.column("ld_gain");
  constexpr std::size_t npos = std::string_view::npos;

  std::vector<AdaptationRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    AdaptationRecord rec;

    std::string_view source = row[c_source];
    while (!source.empty()) {
      const std::size_t plus = source.find('+');
      rec.source_names.emplace_back(source.substr(0, plus));
      source = plus == npos ? std::string_view{} : source.substr(plus + 1);
    }
    if (rec.source_names.empty())
      throw DataError(path + ": line " + std::to_string(line) +
                      ": empty source");
    rec.target_name = row[c_target];
    if (rec.target_name.empty())
      throw DataError(path + ": line " + std::to_string(line) +
                      ": empty target");
    rec.rouge_base = parse_double_field(row[c_base], "rouge_base", line);
    rec.rouge_finetuned =
        parse_double_field(row[c_ft], "rouge_finetuned", line);
    if (c_gamma != npos && !row[c_gamma].empty()) {
      rec.gamma = gamma_to_fraction(
          parse_double_field(row[c_gamma], "gamma", line), unit);
    }
    if (c_lambda != npos && !row[c_lambda].empty()) {
      const double lambda = parse_double_field(row[c_lambda], "lambda", line);
      if (!(lambda > 0.0))
        throw DataError(path + ": line " + std::to_string(line) +
                        ": lambda must be positive");
      rec.lambda = lambda;
    }
    if (c_gain != npos && !row[c_gain].empty()) {
      const double stored = parse_double_field(row[c_gain], "gain", line);
      if (std::abs(stored - rec.gain()) > kStoredMismatch) {
        throw DataError(path + ": line " + std::to_string(line) +
                        ": stored gain " + row[c_gain] +
                        " disagrees with rouge_finetuned - rouge_base = " +
                        std::to_string(rec.gain()));
      }
    }
    if (c_ldgain != npos && !row[c_ldgain].empty()) {
      if (!rec.lambda)
        throw DataError(path + ": line " + std::to_string(line) +
                        ": ld_gain given without lambda");
      const double stored =
          parse_double_field(row[c_ldgain], "ld_gain", line);
      if (std::abs(stored - *rec.ld_gain()) > kStoredMismatch) {
        throw DataError(path + ": line " + std::to_string(line) +
                        ": stored ld_gain " + row[c_ldgain] +
                        " disagrees with lambda * gain = " +
                        std::to_string(*rec.ld_gain()));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void fill_records_from_datasets(std::vector<AdaptationRecord>& records,
                                std::span<const Dataset> datasets,
                                Scope scope, RougeVariant variant,
                                unsigned threads) {
  std::unordered_map<std::string_view, const Dataset*> by_name;
  for (const Dataset& d : datasets) by_name[d.name] = &d;
  const auto find = [&](const std::string& name) -> const Dataset& {
    const auto it = by_name.find(name);
    if (it == by_name.end())
      throw DataError("record references unknown dataset \"" + name + "\"");
    return *it->second;
  };

  std::unordered_map<std::string, double> lambda_cache;
  for (AdaptationRecord& rec : records) {
    if (!rec.gamma) {
      std::vector<Dataset> sources;
      for (const std::string& name : rec.source_names)
        sources.push_back(find(name));
      const std::vector<Dataset> targets{find(rec.target_name)};
      rec.gamma = cross_domain_overlap(sources, targets, scope, threads).gamma;
    }
    if (!rec.lambda) {
      auto it = lambda_cache.find(rec.target_name);
      if (it == lambda_cache.end()) {
        const DifficultyReport report =
            difficulty_report(find(rec.target_name), variant, threads);
        it = lambda_cache.emplace(rec.target_name, report.lambda()).first;
      }
      rec.lambda = it->second;
    }
  }
}

nlohmann::ordered_json to_json(const DifficultyReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.dataset_name;
  j["domain_label"] = report.domain_label;
  j["n_samples"] = report.n_samples;
  j["alpha"] = report.alpha;
  j["beta"] = report.beta;
  j["lambda"] = report.lambda();
  j["rouge_variant"] = report.rouge_variant.name();
  j["word_count_docs"] = report.word_count_docs;
  j["word_count_sums"] = report.word_count_sums;
  return j;
}

nlohmann::ordered_json to_json(const OverlapResult& result, GammaUnit unit) {
  nlohmann::ordered_json j;
  j["sources"] = result.source_names;
  j["targets"] = result.target_names;
  j["gamma_unit"] = to_string(unit);
  j["gamma"] = gamma_from_fraction(result.gamma, unit);
  nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
  for (const auto& row : result.per_pair) {
    nlohmann::ordered_json out_row = nlohmann::ordered_json::array();
    for (const double v : row) out_row.push_back(gamma_from_fraction(v, unit));
    matrix.push_back(std::move(out_row));
  }
  j["per_pair"] = std::move(matrix);
  return j;
}

}  // namespace sumgauge
