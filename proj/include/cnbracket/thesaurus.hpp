#ifndef CNBRACKET_THESAURUS_HPP
#define CNBRACKET_THESAURUS_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "cnbracket/error.hpp"
#include "cnbracket/lexicon.hpp"
#include "cnbracket/text.hpp"

namespace cnbracket {

/// Numeric thesaurus category, e.g. 103 for Fewness.
enum class CategoryId : std::int32_t {};

constexpr std::int32_t id_value(CategoryId id) {
  return static_cast<std::int32_t>(id);
}

struct Category {
  std::string name;
  std::set<std::string> members;
};

/// Category id to member nouns, plus the inverse index. Immutable once
/// loaded.
class Thesaurus {
 public:
  /// Throws DuplicateCategory (line 0) if `id` is already present.
  void add_category(CategoryId id, std::string name,
                    const std::set<std::string>& members) {
    auto [it, inserted] =
        categories_.try_emplace(id, Category{std::move(name), members});
    if (!inserted) throw DuplicateCategory(0, id_value(id));
    for (const auto& w : members) inverse_[w].insert(id);
  }

  const std::set<CategoryId>& categories_of(std::string_view word) const {
    static const std::set<CategoryId> kNone;
    auto it = inverse_.find(word);
    return it == inverse_.end() ? kNone : it->second;
  }

  /// Number of categories containing `word`.
  std::size_t ambig(std::string_view word) const {
    return categories_of(word).size();
  }

  bool contains(std::string_view word) const { return ambig(word) > 0; }

  std::size_t category_count() const { return categories_.size(); }

  const Category* find(CategoryId id) const {
    auto it = categories_.find(id);
    return it == categories_.end() ? nullptr : &it->second;
  }

  std::string name_of(CategoryId id) const {
    const Category* c = find(id);
    return c ? c->name : std::string();
  }

  const std::map<CategoryId, Category>& categories() const {
    return categories_;
  }
  const std::map<std::string, std::set<CategoryId>, std::less<>>& inverse()
      const {
    return inverse_;
  }

 private:
  std::map<CategoryId, Category> categories_;
  std::map<std::string, std::set<CategoryId>, std::less<>> inverse_;
};

struct ThesaurusLoadStats {
  std::size_t multiword_skipped = 0;
  std::size_t malformed_skipped = 0;
};

/// Reads `<id>\t<name>\t<comma-separated members>` lines. Multi-word and
/// non-alphabetic members are skipped and counted. When `lex` is given,
/// members are mapped through normalize() so they share the corpus lemma
/// space.
inline Thesaurus parse_thesaurus(std::istream& in, const Lexicon* lex = nullptr,
                                 ThesaurusLoadStats* stats = nullptr) {
  Thesaurus th;
  ThesaurusLoadStats local;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_skippable(line)) continue;
    auto cols = text::split(text::chomp(line), '\t');
    if (cols.size() != 3)
      throw FormatError(lineno, "expected '<id>\\t<name>\\t<members>'");
    std::int32_t id = 0;
    if (!text::parse_int(text::trim(cols[0]), id) || id <= 0)
      throw FormatError(lineno, "bad category id '" + std::string(cols[0]) + "'");
    auto name = text::trim(cols[1]);
    if (name.empty()) throw FormatError(lineno, "empty category name");
    if (text::trim(cols[2]).empty())
      throw FormatError(lineno, "empty member list");

    std::set<std::string> members;
    for (auto raw : text::split(cols[2], ',')) {
      auto w = text::trim(raw);
      if (w.empty()) continue;
      if (text::split_ws(w).size() > 1) {
        ++local.multiword_skipped;
        continue;
      }
      if (!text::is_alphabetic(w)) {
        ++local.malformed_skipped;
        continue;
      }
      members.insert(lex ? text::to_lower(normalize(*lex, w))
                         : text::to_lower(w));
    }
    if (members.empty())
      throw FormatError(lineno, "no single-word members");
    if (th.find(CategoryId{id})) throw DuplicateCategory(lineno, id);
    th.add_category(CategoryId{id}, std::string(name), members);
  }
  if (stats) *stats = local;
  return th;
}

inline Thesaurus load_thesaurus(const std::string& path,
                                const Lexicon* lex = nullptr,
                                ThesaurusLoadStats* stats = nullptr) {
  auto in = text::open_input(path);
  return parse_thesaurus(in, lex, stats);
}

}  // namespace cnbracket

#endif  // CNBRACKET_THESAURUS_HPP
