#ifndef CNBRACKET_EXTRACTION_HPP
#define CNBRACKET_EXTRACTION_HPP

#include <algorithm>
#include <cstddef>
#include <future>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cnbracket/error.hpp"
#include "cnbracket/lexicon.hpp"
#include "cnbracket/text.hpp"

namespace cnbracket {

/// A maximal run of two or more unambiguous nouns, lemmatized.
struct NounSequence {
  std::vector<std::string> nouns;
  std::size_t source_offset = 0;  // byte offset of the first token

  friend bool operator==(const NounSequence&, const NounSequence&) = default;
};

/// (modifier, head) as it appeared in a two-noun run.
struct NounPair {
  std::string modifier;
  std::string head;

  friend auto operator<=>(const NounPair&, const NounPair&) = default;
};

struct ExtractOptions {
  std::size_t max_run_length = 8;  // longer runs are dropped
};

struct ExtractStats {
  std::size_t tokens = 0;
  std::size_t noun_tokens = 0;
  std::size_t dropped_runs = 0;

  ExtractStats& operator+=(const ExtractStats& o) {
    tokens += o.tokens;
    noun_tokens += o.noun_tokens;
    dropped_runs += o.dropped_runs;
    return *this;
  }
};

/// Scans `text` for maximal runs of whitespace-separated unambiguous nouns.
///
/// A token is a maximal run of non-whitespace bytes; any non-letter in it
/// (punctuation included) makes it a non-noun. A whitespace gap containing
/// two or more newlines is a paragraph break and ends the current run.
/// Offsets are reported relative to `base_offset`.
inline std::vector<NounSequence> extract_sequences(
    std::string_view text, const Lexicon& lex, const ExtractOptions& opts = {},
    ExtractStats* stats = nullptr, std::size_t base_offset = 0) {
  std::vector<NounSequence> out;
  ExtractStats local;
  NounSequence run;

  auto flush = [&] {
    if (run.nouns.size() >= 2) {
      if (run.nouns.size() > opts.max_run_length)
        ++local.dropped_runs;
      else
        out.push_back(run);
    }
    run.nouns.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t newlines = 0;
    while (i < text.size() && text::is_space(text[i])) {
      newlines += text[i] == '\n';
      ++i;
    }
    if (newlines >= 2) flush();
    if (i == text.size()) break;

    std::size_t start = i;
    while (i < text.size() && !text::is_space(text[i])) ++i;
    ++local.tokens;
    auto lemma = noun_lemma(lex, text.substr(start, i - start));
    if (!lemma) {
      flush();
      continue;
    }
    ++local.noun_tokens;
    if (run.nouns.empty()) run.source_offset = base_offset + start;
    run.nouns.push_back(std::move(*lemma));
  }
  flush();

  if (stats) *stats += local;
  return out;
}

struct Paragraph {
  std::size_t offset;
  std::string_view text;
};

/// Splits at paragraph breaks. Runs never cross a break, so extracting each
/// paragraph separately and concatenating gives the whole-text result.
inline std::vector<Paragraph> split_paragraphs(std::string_view text) {
  std::vector<Paragraph> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!text::is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t gap = i;
    std::size_t newlines = 0;
    while (i < text.size() && text::is_space(text[i])) newlines += text[i++] == '\n';
    if (newlines >= 2) {
      out.push_back({start, text.substr(start, gap - start)});
      start = i;
    }
  }
  if (start < text.size()) out.push_back({start, text.substr(start)});
  return out;
}

/// Paragraph-sharded extraction on up to `shards` worker tasks. Output is
/// identical to extract_sequences on the whole text.
inline std::vector<NounSequence> extract_sequences_sharded(
    std::string_view text, const Lexicon& lex, std::size_t shards,
    const ExtractOptions& opts = {}, ExtractStats* stats = nullptr) {
  auto paragraphs = split_paragraphs(text);
  if (shards <= 1 || paragraphs.size() <= 1)
    return extract_sequences(text, lex, opts, stats);

  struct ShardResult {
    std::vector<NounSequence> seqs;
    ExtractStats stats;
  };
  const std::size_t per = (paragraphs.size() + shards - 1) / shards;
  std::vector<std::future<ShardResult>> jobs;
  for (std::size_t first = 0; first < paragraphs.size(); first += per) {
    std::size_t last = std::min(first + per, paragraphs.size());
    jobs.push_back(std::async(std::launch::async, [&, first, last] {
      ShardResult r;
      for (std::size_t p = first; p < last; ++p) {
        auto part = extract_sequences(paragraphs[p].text, lex, opts, &r.stats,
                                      paragraphs[p].offset);
        r.seqs.insert(r.seqs.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
      }
      return r;
    }));
  }
  std::vector<NounSequence> out;
  for (auto& job : jobs) {
    auto r = job.get();
    if (stats) *stats += r.stats;
    out.insert(out.end(), std::make_move_iterator(r.seqs.begin()),
               std::make_move_iterator(r.seqs.end()));
  }
  return out;
}

struct Partition {
  std::vector<NounPair> training_pairs;
  std::vector<NounSequence> ambiguous;
};

/// Two-noun runs become training pairs; longer runs are the ambiguous
/// compounds. Nothing is harvested from inside a longer run.
inline Partition partition(const std::vector<NounSequence>& seqs) {
  Partition p;
  for (const auto& s : seqs) {
    if (s.nouns.size() == 2)
      p.training_pairs.push_back({s.nouns[0], s.nouns[1]});
    else if (s.nouns.size() > 2)
      p.ambiguous.push_back(s);
  }
  return p;
}

// Sequence file: "<nouns separated by spaces>\t<offset>\n" per run.

inline void write_sequences(std::ostream& out,
                            const std::vector<NounSequence>& seqs) {
  for (const auto& s : seqs)
    out << text::join(s.nouns, " ") << '\t' << s.source_offset << '\n';
}

inline std::vector<NounSequence> read_sequences(std::istream& in) {
  std::vector<NounSequence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_skippable(line)) continue;
    auto cols = text::split(text::chomp(line), '\t');
    if (cols.size() != 2)
      throw FormatError(lineno, "expected '<nouns>\\t<offset>'");
    NounSequence s;
    if (!text::parse_int(cols[1], s.source_offset))
      throw FormatError(lineno, "bad offset '" + std::string(cols[1]) + "'");
    for (auto w : text::split_ws(cols[0])) {
      if (!text::is_alphabetic(w))
        throw FormatError(lineno, "bad noun '" + std::string(w) + "'");
      s.nouns.push_back(text::to_lower(w));
    }
    if (s.nouns.size() < 2)
      throw FormatError(lineno, "a sequence needs at least two nouns");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace cnbracket

#endif  // CNBRACKET_EXTRACTION_HPP
