#ifndef CNBRACKET_LEXICON_HPP
#define CNBRACKET_LEXICON_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "cnbracket/error.hpp"
#include "cnbracket/text.hpp"

namespace cnbracket {

/// Set of coarse part-of-speech tags. Only the noun/non-noun split matters.
class TagSet {
 public:
  static constexpr std::uint8_t kNoun = 1;
  static constexpr std::uint8_t kOther = 2;

  constexpr TagSet() = default;
  constexpr explicit TagSet(std::uint8_t bits) : bits_(bits) {}

  constexpr bool has_noun() const { return bits_ & kNoun; }
  constexpr bool has_other() const { return bits_ & kOther; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool only_noun() const { return bits_ == kNoun; }
  constexpr std::uint8_t bits() const { return bits_; }

  TagSet& operator|=(TagSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(TagSet, TagSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

/// Surface form to tag set. Keys are lowercase alphabetic strings.
class Lexicon {
 public:
  Lexicon() = default;

  /// Merges `tags` into the entry for `surface` (lowercased).
  void add(std::string_view surface, TagSet tags) {
    entries_[text::to_lower(surface)] |= tags;
  }

  /// Absent surfaces yield nullopt ("unknown"), never an empty set.
  std::optional<TagSet> lookup(std::string_view surface) const {
    auto it = entries_.find(text::to_lower(surface));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return entries_.size(); }

  std::size_t unambiguous_noun_count() const {
    std::size_t n = 0;
    for (const auto& [_, tags] : entries_) n += tags.only_noun();
    return n;
  }

  const std::unordered_map<std::string, TagSet>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, TagSet> entries_;
};

/// Parses the tag column. N is a noun; V, A and O all collapse to "other".
inline std::optional<TagSet> parse_tags(std::string_view field) {
  if (field.empty()) return std::nullopt;
  std::uint8_t bits = 0;
  for (char c : field) {
    switch (c) {
      case 'N': bits |= TagSet::kNoun; break;
      case 'V':
      case 'A':
      case 'O': bits |= TagSet::kOther; break;
      default: return std::nullopt;
    }
  }
  return TagSet(bits);
}

/// Reads `<surface> <tags>` lines. Tab is the canonical separator but any
/// run of whitespace is accepted.
inline Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_skippable(line)) continue;
    auto fields = text::split_ws(line);
    if (fields.size() != 2)
      throw FormatError(lineno, "expected '<surface>\\t<tags>'");
    if (!text::is_alphabetic(fields[0]))
      throw FormatError(lineno, "surface '" + std::string(fields[0]) +
                                    "' is not alphabetic");
    auto tags = parse_tags(fields[1]);
    if (!tags)
      throw FormatError(lineno,
                        "bad tag string '" + std::string(fields[1]) + "'");
    lex.add(fields[0], *tags);
  }
  return lex;
}

inline Lexicon load_lexicon(const std::string& path) {
  auto in = text::open_input(path);
  return parse_lexicon(in);
}

/// True iff the lowercased surface is alphabetic, known, and tagged only as
/// a noun.
inline bool is_unambiguous_noun(const Lexicon& lex, std::string_view surface) {
  if (!text::is_alphabetic(surface)) return false;
  auto tags = lex.lookup(surface);
  return tags && tags->only_noun();
}

namespace detail {

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
};

// Tried in order; the first lexicon-validated candidate wins.
inline constexpr std::array<SuffixRule, 7> kPluralRules{{
    {"ies", "y"},
    {"ches", "ch"},
    {"shes", "sh"},
    {"ses", "s"},
    {"xes", "x"},
    {"zes", "z"},
    {"s", ""},
}};

inline std::optional<std::string> reduce_once(const Lexicon& lex,
                                              const std::string& word) {
  for (const auto& rule : kPluralRules) {
    if (word.size() <= rule.suffix.size() || !word.ends_with(rule.suffix))
      continue;
    if (rule.suffix == "s" && word.ends_with("ss")) continue;
    std::string candidate = word.substr(0, word.size() - rule.suffix.size());
    candidate += rule.replacement;
    if (is_unambiguous_noun(lex, candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace detail

/// Singular noun lemma for `surface`, or nullopt when it does not reduce to
/// an unambiguous noun. Reduction runs to a fixpoint, so the result is its
/// own lemma.
inline std::optional<std::string> noun_lemma(const Lexicon& lex,
                                             std::string_view surface) {
  if (!text::is_alphabetic(surface)) return std::nullopt;
  std::string word = text::to_lower(surface);
  while (auto shorter = detail::reduce_once(lex, word)) word = *shorter;
  if (is_unambiguous_noun(lex, word)) return word;
  return std::nullopt;
}

/// The noun lemma of `surface`, or `surface` unchanged.
inline std::string normalize(const Lexicon& lex, std::string_view surface) {
  if (auto lemma = noun_lemma(lex, surface)) return *lemma;
  return std::string(surface);
}

}  // namespace cnbracket

#endif  // CNBRACKET_LEXICON_HPP
