#ifndef CNBRACKET_ASSOCIATION_HPP
#define CNBRACKET_ASSOCIATION_HPP

#include <cmath>
#include <cstdint>
#include <future>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cnbracket/error.hpp"
#include "cnbracket/extraction.hpp"
#include "cnbracket/text.hpp"
#include "cnbracket/thesaurus.hpp"

namespace cnbracket {

/// COUNT(modifier, head) over the training pairs. Order-sensitive.
struct PairCounts {
  std::map<NounPair, std::uint64_t> counts;
  std::uint64_t total_pairs = 0;

  std::uint64_t count(const std::string& modifier,
                      const std::string& head) const {
    auto it = counts.find(NounPair{modifier, head});
    return it == counts.end() ? 0 : it->second;
  }

  PairCounts& operator+=(const PairCounts& o) {
    for (const auto& [pair, n] : o.counts) counts[pair] += n;
    total_pairs += o.total_pairs;
    return *this;
  }
};

inline PairCounts count_pairs(std::span<const NounPair> pairs) {
  PairCounts pc;
  for (const auto& p : pairs) ++pc.counts[p];
  pc.total_pairs = pairs.size();
  return pc;
}

using CategoryPair = std::pair<CategoryId, CategoryId>;

/// Ambiguity-discounted category-pair mass FREQ(t1, t2) with its row and
/// column marginals. CA queries read from it.
class AssociationModel {
 public:
  AssociationModel() = default;

  /// Builds from explicit cells; zero cells are dropped and marginals
  /// recomputed.
  explicit AssociationModel(std::map<CategoryPair, double> cells)
      : freq_(std::move(cells)) {
    std::erase_if(freq_, [](const auto& kv) { return kv.second == 0.0; });
    recompute_marginals();
  }

  double freq(CategoryId t1, CategoryId t2) const {
    auto it = freq_.find({t1, t2});
    return it == freq_.end() ? 0.0 : it->second;
  }

  /// Sum over i of FREQ(t, i).
  double row_sum(CategoryId t) const { return lookup(row_sum_, t); }
  /// Sum over i of FREQ(i, t).
  double col_sum(CategoryId t) const { return lookup(col_sum_, t); }

  /// CA(t1, t2) = FREQ(t1,t2) / (row_sum(t1) * col_sum(t2)); 0 when the
  /// cell or either marginal is empty. Not symmetric.
  double conceptual_association(CategoryId t1, CategoryId t2) const {
    double f = freq(t1, t2);
    if (f == 0.0) return 0.0;
    double r = row_sum(t1);
    double c = col_sum(t2);
    if (r == 0.0 || c == 0.0) return 0.0;
    return f / (r * c);
  }

  double trained_mass() const { return trained_mass_; }
  std::uint64_t skipped_pairs() const { return skipped_pairs_; }
  std::size_t cell_count() const { return freq_.size(); }
  bool empty() const { return freq_.empty(); }

  const std::map<CategoryPair, double>& cells() const { return freq_; }
  const std::map<CategoryId, double>& row_sums() const { return row_sum_; }
  const std::map<CategoryId, double>& col_sums() const { return col_sum_; }

  /// Cellwise addition. Associative and commutative up to rounding.
  AssociationModel& operator+=(const AssociationModel& o) {
    for (const auto& [cell, f] : o.freq_) freq_[cell] += f;
    skipped_pairs_ += o.skipped_pairs_;
    recompute_marginals();
    return *this;
  }

 private:
  friend AssociationModel build_freq(const PairCounts&, const Thesaurus&);

  static double lookup(const std::map<CategoryId, double>& m, CategoryId t) {
    auto it = m.find(t);
    return it == m.end() ? 0.0 : it->second;
  }

  void recompute_marginals() {
    row_sum_.clear();
    col_sum_.clear();
    trained_mass_ = 0.0;
    for (const auto& [cell, f] : freq_) {
      row_sum_[cell.first] += f;
      col_sum_[cell.second] += f;
      trained_mass_ += f;
    }
  }

  std::map<CategoryPair, double> freq_;
  std::map<CategoryId, double> row_sum_;
  std::map<CategoryId, double> col_sum_;
  double trained_mass_ = 0.0;
  std::uint64_t skipped_pairs_ = 0;
};

/// FREQ(t1,t2) = sum over w1 in t1, w2 in t2 of
///   COUNT(w1,w2) / (AMBIG(w1) * AMBIG(w2)).
/// Each pair spreads a total weight of one over the category pairs of its
/// two words. Pairs with a word outside the thesaurus are skipped.
inline AssociationModel build_freq(const PairCounts& pc, const Thesaurus& th) {
  AssociationModel m;
  for (const auto& [pair, n] : pc.counts) {
    const auto& mods = th.categories_of(pair.modifier);
    const auto& heads = th.categories_of(pair.head);
    if (mods.empty() || heads.empty()) {
      m.skipped_pairs_ += n;
      continue;
    }
    const double share = static_cast<double>(n) /
                         (static_cast<double>(mods.size()) *
                          static_cast<double>(heads.size()));
    for (CategoryId t1 : mods)
      for (CategoryId t2 : heads) m.freq_[{t1, t2}] += share;
  }
  m.recompute_marginals();
  return m;
}

/// Splits the pair table into `shards` pieces, builds each concurrently and
/// merges the partial models.
inline AssociationModel build_freq_sharded(const PairCounts& pc,
                                           const Thesaurus& th,
                                           std::size_t shards) {
  if (shards <= 1 || pc.counts.size() < 2) return build_freq(pc, th);
  std::vector<PairCounts> parts(shards);
  std::size_t i = 0;
  for (const auto& [pair, n] : pc.counts) {
    auto& part = parts[i++ % shards];
    part.counts.emplace(pair, n);
    part.total_pairs += n;
  }
  std::vector<std::future<AssociationModel>> jobs;
  for (const auto& part : parts)
    jobs.push_back(std::async(std::launch::async,
                              [&part, &th] { return build_freq(part, th); }));
  AssociationModel merged;
  for (auto& job : jobs) merged += job.get();
  return merged;
}

// Model file:
//   #cn-assoc v1 cells=<N> mass=<trained mass>
//   <t1>\t<t2>\t<freq>      (N lines, ascending by (t1, t2))

inline constexpr std::string_view kModelMagic = "#cn-assoc v1";

inline void write_model(std::ostream& out, const AssociationModel& m) {
  out << kModelMagic << " cells=" << m.cell_count()
      << " mass=" << text::format_double(m.trained_mass()) << '\n';
  for (const auto& [cell, f] : m.cells())
    out << id_value(cell.first) << '\t' << id_value(cell.second) << '\t'
        << text::format_double(f) << '\n';
}

inline void save_model(const AssociationModel& m, const std::string& path) {
  auto out = text::open_output(path);
  write_model(out, m);
  if (!out) throw IoError(path);
}

inline AssociationModel read_model(std::istream& in) {
  std::string content(std::istreambuf_iterator<char>(in), {});
  if (content.empty()) throw FormatError(0, "empty model file");

  auto lines = text::split(content, '\n');
  const bool complete = content.back() == '\n';
  if (complete) lines.pop_back();

  auto header = text::split_ws(text::chomp(lines.front()));
  std::size_t declared = 0;
  double mass = 0.0;
  if (header.size() != 4 || header[0] != "#cn-assoc" || header[1] != "v1" ||
      !header[2].starts_with("cells=") || !header[3].starts_with("mass=") ||
      !text::parse_int(header[2].substr(6), declared) ||
      !text::parse_double(header[3].substr(5), mass))
    throw FormatError(1, "bad model header");

  const std::size_t body = lines.size() - 1;
  if (body != declared || (!complete && body > 0))
    throw ChecksumMismatch("model header declares " + std::to_string(declared) +
                           " cells, body has " + std::to_string(body) +
                           (complete ? "" : " (last line truncated)"));

  std::map<CategoryPair, double> cells;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cols = text::split(text::chomp(lines[i]), '\t');
    std::int32_t a = 0, b = 0;
    double f = 0.0;
    if (cols.size() != 3 || !text::parse_int(cols[0], a) ||
        !text::parse_int(cols[1], b) || !text::parse_double(cols[2], f) ||
        !std::isfinite(f) || f < 0.0)
      throw FormatError(i + 1, "expected '<t1>\\t<t2>\\t<freq>'");
    if (!cells.emplace(CategoryPair{CategoryId{a}, CategoryId{b}}, f).second)
      throw FormatError(i + 1, "duplicate cell");
  }
  AssociationModel m(std::move(cells));
  if (std::abs(m.trained_mass() - mass) > 1e-9 * std::max(1.0, mass))
    throw ChecksumMismatch("model mass " + text::format_double(m.trained_mass()) +
                           " disagrees with header " + text::format_double(mass));
  return m;
}

inline AssociationModel load_model(const std::string& path) {
  auto in = text::open_input(path);
  return read_model(in);
}

}  // namespace cnbracket

#endif  // CNBRACKET_ASSOCIATION_HPP
