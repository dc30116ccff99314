#include "qedacvc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qedacvc/error.hpp"
#include "qedacvc/rng.hpp"

namespace qedacvc {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char ch : text) {
    if (ch < 0x80 && std::isspace(ch)) {
      flush();
    } else if (ch < 0x80 && std::ispunct(ch)) {
      flush();
      out.emplace_back(1, static_cast<char>(ch));
    } else {
      cur.push_back(ch < 0x80 ? static_cast<char>(std::tolower(ch)) : static_cast<char>(ch));
    }
  }
  flush();
  return out;
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

int Vocab::id_of(const std::string& token) const {
  auto it = token_to_id.find(token);
  return it == token_to_id.end() ? UNK : it->second;
}

const std::string& Vocab::token_of(int id) const {
  if (id < 0 || id >= size()) {
    raise(errc::vocab, "token id " + std::to_string(id) + " outside vocabulary of " +
                           std::to_string(size()));
  }
  return id_to_token[id];
}

int Vocab::lang_tag_id(const std::string& lang) const {
  auto it = token_to_id.find(lang_tag(lang));
  if (it == token_to_id.end()) raise(errc::config, "unknown language tag '" + lang + "'");
  return it->second;
}

Vocab build_vocab(const std::vector<std::string>& lines, int min_freq,
                  const std::vector<std::string>& languages) {
  if (min_freq < 1) raise(errc::config, "min_freq must be at least 1");
  if (lines.empty()) raise(errc::vocab, "cannot build a vocabulary from an empty corpus");

  std::map<std::string, int64_t> freq;
  for (const auto& line : lines) {
    for (auto& tok : tokenize(line)) freq[tok] += 1;
  }
  std::vector<std::pair<std::string, int64_t>> kept;
  for (const auto& [tok, n] : freq) {
    if (n >= min_freq) kept.emplace_back(tok, n);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab v;
  v.languages = languages;
  std::sort(v.languages.begin(), v.languages.end());
  v.id_to_token = {"<pad>", "<sos>", "<eos>", "<unk>"};
  for (const auto& lang : v.languages) v.id_to_token.push_back(Vocab::lang_tag(lang));
  for (auto& [tok, n] : kept) v.id_to_token.push_back(tok);
  for (int i = 0; i < v.size(); ++i) v.token_to_id[v.id_to_token[i]] = i;
  return v;
}

namespace {

bool valid_utf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = s[i];
    int extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size() + (extra ? 0 : 1)) {
      if (i + extra >= s.size() && extra > 0) return false;
    }
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= s.size() || (static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

struct RawPair {
  std::string source, target;
  std::string src_lang, tgt_lang;
};

std::vector<RawPair> read_tsv(const std::string& path, const std::string& fallback_src,
                              const std::string& fallback_tgt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::data, "cannot open corpus file '" + path + "'");
  std::vector<RawPair> raw;
  std::string line;
  std::string src_lang = fallback_src, tgt_lang = fallback_tgt;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string a, b, rest;
      if (!(hs >> a >> b) || (hs >> rest)) {
        raise(errc::data, path + ":" + std::to_string(line_no) +
                              ": header must name exactly two languages");
      }
      src_lang = a;
      tgt_lang = b;
      continue;
    }
    if (!valid_utf8(line)) {
      raise(errc::data, path + ":" + std::to_string(line_no) + ": invalid UTF-8");
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      raise(errc::data, path + ":" + std::to_string(line_no) +
                            ": expected exactly one tab between source and target");
    }
    if (src_lang.empty() || tgt_lang.empty()) {
      raise(errc::data, path + ":" + std::to_string(line_no) +
                            ": sentence pair before any language header");
    }
    raw.push_back({line.substr(0, tab), line.substr(tab + 1), src_lang, tgt_lang});
  }
  if (raw.empty()) raise(errc::data, "corpus file '" + path + "' holds no sentence pairs");
  return raw;
}

void assign_splits(ParallelCorpus& corpus, SplitRatios ratios, uint64_t seed) {
  if (ratios.train < 0 || ratios.test < 0 || ratios.validation < 0 ||
      ratios.train + ratios.test + ratios.validation > 1.0 + 1e-9) {
    raise(errc::config, "split ratios must be non-negative and sum to at most 1");
  }
  const size_t n = corpus.pairs.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  auto rng = make_rng(seed, "split");
  std::shuffle(order.begin(), order.end(), rng);

  const auto n_train = static_cast<size_t>(std::llround(static_cast<double>(n) * ratios.train));
  const auto n_test = static_cast<size_t>(std::llround(static_cast<double>(n) * ratios.test));
  for (size_t i = 0; i < n; ++i) {
    Split s = i < n_train ? Split::train : (i < n_train + n_test ? Split::test : Split::validation);
    corpus.pairs[order[i]].split = s;
    corpus.split_order[static_cast<int>(s)].push_back(order[i]);
  }
}

ParallelCorpus finish_corpus(const std::vector<RawPair>& raw, const Vocab* fixed_vocab,
                             SplitRatios ratios, uint64_t seed, int min_freq) {
  std::set<std::string> langs;
  for (const auto& p : raw) {
    langs.insert(p.src_lang);
    langs.insert(p.tgt_lang);
  }

  ParallelCorpus corpus;
  if (fixed_vocab) {
    corpus.vocab = *fixed_vocab;
    for (const auto& lang : langs) {
      corpus.vocab.lang_tag_id(lang);  // reject unknown languages
    }
  } else {
    std::vector<std::string> lines;
    lines.reserve(raw.size() * 2);
    for (const auto& p : raw) {
      lines.push_back(p.source);
      lines.push_back(p.target);
    }
    corpus.vocab = build_vocab(lines, min_freq, {langs.begin(), langs.end()});
  }

  auto lang_index = [&](const std::string& code) {
    const auto& ls = corpus.vocab.languages;
    return static_cast<int>(std::find(ls.begin(), ls.end(), code) - ls.begin());
  };
  for (const auto& p : raw) {
    SentencePair sp;
    for (auto& tok : tokenize(p.source)) sp.source.push_back(corpus.vocab.id_of(tok));
    for (auto& tok : tokenize(p.target)) sp.target.push_back(corpus.vocab.id_of(tok));
    sp.src_lang = lang_index(p.src_lang);
    sp.tgt_lang = lang_index(p.tgt_lang);
    corpus.pairs.push_back(std::move(sp));
  }
  assign_splits(corpus, ratios, seed);
  return corpus;
}

}  // namespace

ParallelCorpus load_parallel(const std::string& path, const std::string& fallback_src,
                             const std::string& fallback_tgt, SplitRatios ratios, uint64_t seed,
                             int min_freq) {
  return finish_corpus(read_tsv(path, fallback_src, fallback_tgt), nullptr, ratios, seed,
                       min_freq);
}

ParallelCorpus load_parallel_with_vocab(const std::string& path, const Vocab& vocab,
                                        const std::string& fallback_src,
                                        const std::string& fallback_tgt, SplitRatios ratios,
                                        uint64_t seed) {
  return finish_corpus(read_tsv(path, fallback_src, fallback_tgt), &vocab, ratios, seed, 1);
}

ParallelCorpus load_moses(const std::string& source_path, const std::string& target_path,
                          const std::string& src_lang, const std::string& tgt_lang,
                          SplitRatios ratios, uint64_t seed, int min_freq) {
  std::ifstream src(source_path, std::ios::binary), tgt(target_path, std::ios::binary);
  if (!src) raise(errc::data, "cannot open '" + source_path + "'");
  if (!tgt) raise(errc::data, "cannot open '" + target_path + "'");
  std::vector<RawPair> raw;
  std::string a, b;
  int line_no = 0;
  while (true) {
    const bool got_a = static_cast<bool>(std::getline(src, a));
    const bool got_b = static_cast<bool>(std::getline(tgt, b));
    if (!got_a && !got_b) break;
    ++line_no;
    if (got_a != got_b) {
      raise(errc::data, "aligned files differ in length at line " + std::to_string(line_no));
    }
    if (!a.empty() && a.back() == '\r') a.pop_back();
    if (!b.empty() && b.back() == '\r') b.pop_back();
    if (!valid_utf8(a) || !valid_utf8(b)) {
      raise(errc::data, "line " + std::to_string(line_no) + ": invalid UTF-8");
    }
    raw.push_back({a, b, src_lang, tgt_lang});
  }
  if (raw.empty()) raise(errc::data, "aligned corpus is empty");
  return finish_corpus(raw, nullptr, ratios, seed, min_freq);
}

std::vector<Batch> make_batches(const ParallelCorpus& corpus, Split split, int batch_size,
                                int seq_len) {
  if (batch_size < 1) raise(errc::config, "batch size must be at least 1");
  if (seq_len < 4) raise(errc::config, "sequence length must leave room for the specials");

  const auto& order = corpus.of(split);
  std::vector<Batch> batches;
  for (size_t start = 0; start < order.size(); start += batch_size) {
    Batch batch;
    const size_t stop = std::min(order.size(), start + batch_size);
    for (size_t i = start; i < stop; ++i) {
      const SentencePair& pair = corpus.pairs[order[i]];
      const int tag = corpus.vocab.lang_tag_id(corpus.vocab.languages[pair.tgt_lang]);

      std::vector<int> src_row{tag};
      const size_t src_cap = static_cast<size_t>(seq_len) - 2;
      for (size_t k = 0; k < pair.source.size() && k < src_cap; ++k) {
        src_row.push_back(pair.source[k]);
      }
      src_row.push_back(Vocab::EOS);

      std::vector<int> tgt_row{Vocab::SOS, tag};
      const size_t tgt_cap = static_cast<size_t>(seq_len) - 3;
      for (size_t k = 0; k < pair.target.size() && k < tgt_cap; ++k) {
        tgt_row.push_back(pair.target[k]);
      }
      tgt_row.push_back(Vocab::EOS);

      src_row.resize(seq_len, Vocab::PAD);
      tgt_row.resize(seq_len, Vocab::PAD);
      Mask src_mask(seq_len, 0), tgt_mask(seq_len, 0);
      for (int k = 0; k < seq_len; ++k) {
        src_mask[k] = src_row[k] == Vocab::PAD;
        tgt_mask[k] = tgt_row[k] == Vocab::PAD;
      }
      batch.source.push_back(std::move(src_row));
      batch.target.push_back(std::move(tgt_row));
      batch.source_mask.push_back(std::move(src_mask));
      batch.target_mask.push_back(std::move(tgt_mask));
      batch.pair_index.push_back(order[i]);
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

SynthTask parse_task(const std::string& name) {
  if (name == "copy") return SynthTask::copy;
  if (name == "reverse") return SynthTask::reverse;
  if (name == "lexicon") return SynthTask::lexicon;
  raise(errc::config, "unknown synthetic task '" + name + "'");
}

std::string synth_word(int lang_index, int concept) {
  static const char* consonants[4] = {"bdfgk", "lmnpr", "stvzj", "cqhwx"};
  static const char vowels[] = "aeiou";
  if (lang_index < 0 || lang_index > 3) raise(errc::config, "synthetic languages are 0..3");
  const char* cons = consonants[lang_index];
  std::string w;
  w += cons[concept % 5];
  w += vowels[(concept / 5) % 5];
  if (concept >= 25) {
    w += cons[(concept / 25) % 5];
    w += 'a';
  }
  return w;
}

std::vector<std::vector<int>> synth_segments(int vocab_size, int max_len, uint64_t seed) {
  if (vocab_size < 4) raise(errc::config, "synthetic vocabulary needs at least 4 words");
  std::vector<int> order(vocab_size);
  for (int i = 0; i < vocab_size; ++i) order[i] = i;
  auto rng = make_rng(seed, "synth-order");
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<int> cycle;
  for (int len = std::max(2, max_len - 2); len <= std::max(2, max_len); ++len) cycle.push_back(len);

  std::vector<std::vector<int>> segments;
  size_t pos = 0, turn = 0;
  while (pos < order.size()) {
    size_t len = cycle[turn++ % cycle.size()];
    size_t remaining = order.size() - pos;
    if (remaining - std::min(len, remaining) == 1) len += 1;  // avoid a trailing 1-word segment
    len = std::min(len, remaining);
    segments.emplace_back(order.begin() + pos, order.begin() + pos + len);
    pos += len;
  }
  if (!segments.empty() && segments.back().size() == 1 && segments.size() > 1) {
    segments[segments.size() - 2].push_back(segments.back()[0]);
    segments.pop_back();
  }
  return segments;
}

void synth_corpus(const std::string& path, SynthTask task, int n_pairs, int vocab_size,
                  int max_len, uint64_t seed) {
  if (n_pairs < 1) raise(errc::config, "n_pairs must be positive");
  const auto segments = synth_segments(vocab_size, max_len, seed);
  auto rng = make_rng(seed, "synth-sample");
  std::uniform_int_distribution<size_t> pick(0, segments.size() - 1);

  const int n_langs = task == SynthTask::lexicon ? 4 : 1;
  static const char* codes[4] = {"aa", "bb", "cc", "dd"};
  std::vector<std::pair<int, int>> lang_pairs;
  for (int s = 0; s < n_langs; ++s) {
    for (int t = 0; t < n_langs; ++t) {
      if (n_langs == 1 || s != t) lang_pairs.emplace_back(s, t);
    }
  }

  // group lines per ordered language pair, assignment cycles deterministically
  std::vector<std::vector<std::string>> lines(lang_pairs.size());
  for (int i = 0; i < n_pairs; ++i) {
    const size_t pair_slot = i % lang_pairs.size();
    const auto [ls, lt] = lang_pairs[pair_slot];
    const auto& seg = segments[pick(rng)];
    std::vector<int> tgt_concepts = seg;
    if (task == SynthTask::reverse) std::reverse(tgt_concepts.begin(), tgt_concepts.end());

    std::string line;
    for (size_t k = 0; k < seg.size(); ++k) {
      if (k) line += ' ';
      line += synth_word(ls, seg[k]);
    }
    line += '\t';
    for (size_t k = 0; k < tgt_concepts.size(); ++k) {
      if (k) line += ' ';
      line += synth_word(lt, tgt_concepts[k]);
    }
    lines[pair_slot].push_back(std::move(line));
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io, "cannot write '" + path + "'");
  for (size_t p = 0; p < lang_pairs.size(); ++p) {
    if (lines[p].empty()) continue;
    out << "# " << codes[lang_pairs[p].first] << ' ' << codes[lang_pairs[p].second] << '\n';
    for (const auto& line : lines[p]) out << line << '\n';
  }
}

}  // namespace qedacvc
