#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qedacvc/common.hpp"

namespace qedacvc {

// Position-wise confusion totals over token predictions. alpha: matches at
// reference positions; upsilon/delta: one each per mismatch at a reference
// position; beta: positions where candidate and reference have both already
// terminated; a spurious token past the reference end counts one upsilon.
struct ConfusionCounts {
  int64_t alpha = 0;
  int64_t beta = 0;
  int64_t upsilon = 0;
  int64_t delta = 0;

  void add(const ConfusionCounts& o) {
    alpha += o.alpha;
    beta += o.beta;
    upsilon += o.upsilon;
    delta += o.delta;
  }
};

// Aligned, equally padded sequences; pad_mask marks the reference padding
// region. PAD entries in the candidate mean "finished".
ConfusionCounts confusion_counts(std::span<const int> predicted, std::span<const int> reference,
                                 const Mask& pad_mask);

double accuracy(const ConfusionCounts& counts);

struct BleuReport {
  double score = 0.0;
  std::array<double, 4> ngram_precisions{};  // orders with no n-grams report 1
  double brevity_penalty = 1.0;
};

// Corpus-level BLEU: clipped modified n-gram precisions pooled over all
// sentence pairs, uniform geometric mean over orders 1..max_n, brevity
// penalty exp(1 - r/c) when c < r. With smoothing, orders above 1 use
// add-one counts (for tiny corpora where zero counts are routine).
BleuReport bleu(const std::vector<std::vector<std::string>>& candidates,
                const std::vector<std::vector<std::string>>& references, int max_n = 4,
                bool smoothing = false);

}  // namespace qedacvc
