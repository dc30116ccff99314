#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qedacvc/common.hpp"

namespace qedacvc {

// Lowercased, whitespace-split tokens with ASCII punctuation detached as
// single-character tokens. Bytes outside ASCII pass through untouched.
std::vector<std::string> tokenize(std::string_view text);
std::string detokenize(std::span<const std::string> tokens);

// Joint vocabulary shared by every language. Reserved ids come first:
// PAD, SOS, EOS, UNK, then one tag token per language.
struct Vocab {
  static constexpr int PAD = 0;
  static constexpr int SOS = 1;
  static constexpr int EOS = 2;
  static constexpr int UNK = 3;

  std::vector<std::string> id_to_token;
  std::map<std::string, int> token_to_id;
  std::vector<std::string> languages;  // sorted codes

  int size() const { return static_cast<int>(id_to_token.size()); }
  int n_reserved() const { return 4 + static_cast<int>(languages.size()); }
  int id_of(const std::string& token) const;  // UNK for unknown tokens
  const std::string& token_of(int id) const;
  int lang_tag_id(const std::string& lang) const;
  static std::string lang_tag(const std::string& lang) { return "<" + lang + ">"; }
};

// Frequency-ordered vocabulary (ties broken lexicographically); tokens below
// min_freq fall back to UNK.
Vocab build_vocab(const std::vector<std::string>& lines, int min_freq,
                  const std::vector<std::string>& languages);

enum class Split { train = 0, test = 1, validation = 2 };

struct SplitRatios {
  double train = 5.0 / 7.0;
  double test = 3.0 / 14.0;
  double validation = 1.0 / 14.0;
};

struct SentencePair {
  std::vector<int> source;  // content token ids, no specials
  std::vector<int> target;
  int src_lang = 0;  // index into vocab.languages
  int tgt_lang = 0;
  Split split = Split::train;
};

struct ParallelCorpus {
  Vocab vocab;
  std::vector<SentencePair> pairs;
  std::array<std::vector<size_t>, 3> split_order;  // pair indices per split

  const std::vector<size_t>& of(Split s) const { return split_order[static_cast<int>(s)]; }
};

// Tab-separated pairs, one per line, UTF-8. Lines of the form "# src tgt"
// start a language-pair section; files without headers use the fallback
// languages. The split assignment is a seeded shuffle cut by the ratios.
ParallelCorpus load_parallel(const std::string& path, const std::string& fallback_src,
                             const std::string& fallback_tgt, SplitRatios ratios, uint64_t seed,
                             int min_freq);

// Two plain-text files aligned by line number.
ParallelCorpus load_moses(const std::string& source_path, const std::string& target_path,
                          const std::string& src_lang, const std::string& tgt_lang,
                          SplitRatios ratios, uint64_t seed, int min_freq);

// Retokenizes an already loaded file against a fixed vocabulary (evaluation
// against a trained checkpoint); unknown words become UNK, split assignment
// uses the stored seed and ratios.
ParallelCorpus load_parallel_with_vocab(const std::string& path, const Vocab& vocab,
                                        const std::string& fallback_src,
                                        const std::string& fallback_tgt, SplitRatios ratios,
                                        uint64_t seed);

struct Batch {
  std::vector<std::vector<int>> source;  // [rows][seq_len]
  std::vector<std::vector<int>> target;
  std::vector<Mask> source_mask;  // nonzero at PAD positions
  std::vector<Mask> target_mask;
  std::vector<size_t> pair_index;
};

// Rows are [tag, tokens..., EOS, PAD...] on the source side and
// [SOS, tag, tokens..., EOS, PAD...] on the target side, truncated so the
// specials always survive, padded to exactly seq_len.
std::vector<Batch> make_batches(const ParallelCorpus& corpus, Split split, int batch_size,
                                int seq_len);

enum class SynthTask { copy, reverse, lexicon };
SynthTask parse_task(const std::string& name);

// Deterministic synthetic corpus generator. Sentences are runs of a seeded
// cyclic word order partitioned into fixed segments, so the continuation of
// any sentence is recoverable from its content alone. "lexicon" renders the
// same concept sequence in several surface languages and emits every ordered
// language pair.
void synth_corpus(const std::string& path, SynthTask task, int n_pairs, int vocab_size,
                  int max_len, uint64_t seed);

// Surface form of a concept in one synthetic language; injective per
// language, disjoint across languages.
std::string synth_word(int lang_index, int concept);

// The segment plan used by synth_corpus, exposed for tests.
std::vector<std::vector<int>> synth_segments(int vocab_size, int max_len, uint64_t seed);

}  // namespace qedacvc
