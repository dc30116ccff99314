#include "qedacvc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qedacvc/error.hpp"

namespace qedacvc {

ConfusionCounts confusion_counts(std::span<const int> predicted, std::span<const int> reference,
                                 const Mask& pad_mask) {
  if (predicted.size() != reference.size() || pad_mask.size() != reference.size()) {
    raise(errc::shape, "confusion counting needs aligned sequences of one padded length");
  }
  constexpr int kPad = 0;
  ConfusionCounts c;
  for (size_t i = 0; i < reference.size(); ++i) {
    if (!pad_mask[i]) {
      if (predicted[i] == reference[i]) {
        c.alpha += 1;
      } else {
        c.upsilon += 1;
        c.delta += 1;
      }
    } else {
      if (predicted[i] == kPad) {
        c.beta += 1;
      } else {
        c.upsilon += 1;
      }
    }
  }
  return c;
}

double accuracy(const ConfusionCounts& counts) {
  const int64_t denom = counts.alpha + counts.beta + counts.upsilon + counts.delta;
  if (denom <= 0) raise(errc::evaluation, "accuracy over zero counted positions");
  return static_cast<double>(counts.alpha + counts.beta) / static_cast<double>(denom);
}

namespace {

using NgramCounts = std::map<std::string, int64_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    counts[key] += 1;
  }
  return counts;
}

}  // namespace

BleuReport bleu(const std::vector<std::vector<std::string>>& candidates,
                const std::vector<std::vector<std::string>>& references, int max_n,
                bool smoothing) {
  if (candidates.size() != references.size()) {
    raise(errc::evaluation, "candidate and reference corpora differ in size");
  }
  if (candidates.empty()) raise(errc::evaluation, "cannot score an empty corpus");
  if (max_n < 1 || max_n > 4) raise(errc::config, "BLEU n-gram order must be 1..4");

  std::vector<int64_t> matches(max_n, 0), totals(max_n, 0);
  int64_t cand_len = 0, ref_len = 0;
  for (size_t s = 0; s < candidates.size(); ++s) {
    cand_len += static_cast<int64_t>(candidates[s].size());
    ref_len += static_cast<int64_t>(references[s].size());
    for (int n = 1; n <= max_n; ++n) {
      const auto cand = count_ngrams(candidates[s], n);
      const auto ref = count_ngrams(references[s], n);
      for (const auto& [gram, count] : cand) {
        totals[n - 1] += count;
        auto it = ref.find(gram);
        if (it != ref.end()) matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  BleuReport report;
  double log_sum = 0.0;
  bool zero_precision = false;
  for (int n = 1; n <= max_n; ++n) {
    double p;
    if (totals[n - 1] == 0) {
      p = 1.0;  // order absent from the corpus; neutral in the geometric mean
    } else if (smoothing && n > 1) {
      p = static_cast<double>(matches[n - 1] + 1) / static_cast<double>(totals[n - 1] + 1);
    } else {
      p = static_cast<double>(matches[n - 1]) / static_cast<double>(totals[n - 1]);
    }
    report.ngram_precisions[n - 1] = p;
    if (p <= 0.0) {
      zero_precision = true;
    } else {
      log_sum += std::log(p);
    }
  }

  if (cand_len == 0) {
    report.brevity_penalty = 0.0;
    report.score = 0.0;
    return report;
  }
  report.brevity_penalty =
      cand_len < ref_len
          ? std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len))
          : 1.0;
  report.score =
      zero_precision ? 0.0 : report.brevity_penalty * std::exp(log_sum / max_n);
  return report;
}

}  // namespace qedacvc
