#ifndef CNBRACKET_EVALUATION_HPP
#define CNBRACKET_EVALUATION_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cnbracket/association.hpp"
#include "cnbracket/bracketer.hpp"
#include "cnbracket/error.hpp"
#include "cnbracket/lexicon.hpp"
#include "cnbracket/text.hpp"
#include "cnbracket/thesaurus.hpp"

namespace cnbracket {

/// Gold label of a test compound: left/right branching, semantically
/// indeterminate, or not a compound at all.
enum class Label { L = 0, R = 1, I = 2, E = 3 };

inline constexpr std::array<Label, 4> kAllLabels{Label::L, Label::R, Label::I,
                                                 Label::E};

inline char to_char(Label l) { return "LRIE"[static_cast<int>(l)]; }

inline std::optional<Label> parse_label(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'L': return Label::L;
    case 'R': return Label::R;
    case 'I': return Label::I;
    case 'E': return Label::E;
    default: return std::nullopt;
  }
}

struct EvalExample {
  std::vector<std::string> nouns;
  Label label = Label::L;
};

/// `<space-separated nouns>\t<label>` per line, at least three nouns.
inline std::vector<EvalExample> parse_test_set(std::istream& in,
                                               const Lexicon* lex = nullptr) {
  std::vector<EvalExample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_skippable(line)) continue;
    auto cols = text::split(text::chomp(line), '\t');
    if (cols.size() != 2)
      throw FormatError(lineno, "expected '<nouns>\\t<label>'");
    auto label_field = text::trim(cols[1]);
    auto label = parse_label(label_field);
    if (!label) throw UnknownLabel(lineno, std::string(label_field));
    EvalExample ex;
    ex.label = *label;
    for (auto w : text::split_ws(cols[0])) {
      if (!text::is_alphabetic(w))
        throw FormatError(lineno, "bad noun '" + std::string(w) + "'");
      ex.nouns.push_back(lex ? text::to_lower(normalize(*lex, w))
                             : text::to_lower(w));
    }
    if (ex.nouns.size() < 3)
      throw FormatError(lineno, "a test compound needs at least three nouns");
    out.push_back(std::move(ex));
  }
  return out;
}

inline std::vector<EvalExample> load_test_set(const std::string& path,
                                              const Lexicon* lex = nullptr) {
  auto in = text::open_input(path);
  return parse_test_set(in, lex);
}

struct LabelHistogram {
  std::array<std::size_t, 4> counts{};

  std::size_t operator[](Label l) const { return counts[static_cast<int>(l)]; }
  void add(Label l) { ++counts[static_cast<int>(l)]; }
  std::size_t total() const {
    return counts[0] + counts[1] + counts[2] + counts[3];
  }
};

inline LabelHistogram label_histogram(std::span<const EvalExample> examples) {
  LabelHistogram h;
  for (const auto& ex : examples) h.add(ex.label);
  return h;
}

/// Actual (rows) by output (columns) over L/R examples, plus skips.
struct ConfusionMatrix {
  std::size_t ll = 0, lr = 0, rl = 0, rr = 0;
  std::size_t skipped = 0;

  void add(Label actual, Bracketing output) {
    const bool out_left = output == Bracketing::Left;
    if (actual == Label::L)
      ++(out_left ? ll : lr);
    else if (actual == Label::R)
      ++(out_left ? rl : rr);
    else
      ++skipped;
  }

  std::size_t scored() const { return ll + lr + rl + rr; }
  std::size_t correct() const { return ll + rr; }
  std::size_t total() const { return scored() + skipped; }

  std::optional<double> accuracy() const {
    if (scored() == 0) return std::nullopt;
    return static_cast<double>(correct()) / static_cast<double>(scored());
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    ll += o.ll;
    lr += o.lr;
    rl += o.rl;
    rr += o.rr;
    skipped += o.skipped;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

enum class SkipReason {
  Indeterminate,
  NotCompound,
  WordNotInThesaurus,
  SequenceTooLong,
};

inline std::string_view to_string(SkipReason r) {
  switch (r) {
    case SkipReason::Indeterminate: return "INDETERMINATE";
    case SkipReason::NotCompound: return "NOT_CN";
    case SkipReason::WordNotInThesaurus: return "WORD_NOT_IN_THESAURUS";
    case SkipReason::SequenceTooLong: return "SEQUENCE_TOO_LONG";
  }
  return "";
}

struct EvalRecord {
  EvalExample example;
  std::optional<Bracketing> output;
  std::optional<SkipReason> skip;
  std::optional<DecisionTrace> trace;  // triples only
  std::optional<BracketTree> tree;
  double score = 0.0;  // product score for longer compounds

  bool correct() const {
    return output && ((example.label == Label::L && *output == Bracketing::Left) ||
                      (example.label == Label::R && *output == Bracketing::Right));
  }
};

struct EvaluationResult {
  ConfusionMatrix matrix;
  std::vector<EvalRecord> records;
};

/// Runs the bracketer over L/R examples. I and E examples, and examples with
/// words outside the thesaurus, become skip records. Triples use the
/// pairwise attachment procedure; longer compounds count as L when the
/// final noun is the root's right constituent.
inline EvaluationResult evaluate(const AssociationModel& m, const Thesaurus& th,
                                 std::span<const EvalExample> examples,
                                 const BracketOptions& opts = {}) {
  EvaluationResult result;
  for (const auto& ex : examples) {
    EvalRecord rec{ex, {}, {}, {}, {}, 0.0};
    auto skip = [&](SkipReason r) {
      rec.skip = r;
      ++result.matrix.skipped;
    };
    if (ex.label == Label::I) {
      skip(SkipReason::Indeterminate);
    } else if (ex.label == Label::E) {
      skip(SkipReason::NotCompound);
    } else if (!std::all_of(ex.nouns.begin(), ex.nouns.end(),
                            [&](const auto& w) { return th.contains(w); })) {
      skip(SkipReason::WordNotInThesaurus);
    } else if (ex.nouns.size() > opts.max_length) {
      skip(SkipReason::SequenceTooLong);
    } else if (ex.nouns.size() == 3) {
      auto a = analyse_triple(m, th, ex.nouns[0], ex.nouns[1], ex.nouns[2],
                              opts.left_bias);
      rec.output = a.bracketing;
      rec.trace = a.trace;
      rec.tree = a.tree;
      result.matrix.add(ex.label, a.bracketing);
    } else {
      auto a = analyse_compound(m, th, ex.nouns, opts);
      rec.output = a.best.right().is_leaf() ? Bracketing::Left : Bracketing::Right;
      rec.tree = a.best;
      rec.score = a.score;
      result.matrix.add(ex.label, *rec.output);
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

/// A frozen (gold label, system output) pair, for scoring predictions made
/// elsewhere.
struct Prediction {
  Label actual = Label::L;
  std::optional<Bracketing> output;
};

/// `<actual>\t<output>` per line; output is L, R, or '-' for none.
inline std::vector<Prediction> parse_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_skippable(line)) continue;
    auto cols = text::split_ws(line);
    if (cols.size() != 2)
      throw FormatError(lineno, "expected '<actual>\\t<output>'");
    auto actual = parse_label(cols[0]);
    if (!actual) throw UnknownLabel(lineno, std::string(cols[0]));
    Prediction p{*actual, {}};
    if (cols[1] == "L")
      p.output = Bracketing::Left;
    else if (cols[1] == "R")
      p.output = Bracketing::Right;
    else if (cols[1] != "-")
      throw FormatError(lineno, "bad output '" + std::string(cols[1]) + "'");
    out.push_back(p);
  }
  return out;
}

inline ConfusionMatrix tally(std::span<const Prediction> preds) {
  ConfusionMatrix m;
  for (const auto& p : preds) {
    if (p.output)
      m.add(p.actual, *p.output);
    else
      ++m.skipped;
  }
  return m;
}

namespace detail {

/// round(100 * part / whole), halves away from zero.
inline std::size_t rounded_percent(std::size_t part, std::size_t whole) {
  return (200 * part + whole) / (2 * whole);
}

inline std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace detail

/// Accuracy as a percentage with one decimal, e.g. "74.6%".
inline std::string format_accuracy(const ConfusionMatrix& m) {
  if (m.scored() == 0) return "-";
  const std::size_t tenths =
      (2000 * m.correct() + m.scored()) / (2 * m.scored());
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

/// Label distribution table followed by the confusion matrix. Fixed layout.
inline std::string report(const ConfusionMatrix& m, const LabelHistogram& h) {
  using detail::pad_left;
  using detail::pad_right;
  std::ostringstream out;
  out << "Label distribution\n";
  out << "Label    Count  Fraction\n";
  const std::size_t total = h.total();
  auto row = [&](std::string name, std::size_t count, std::string frac) {
    out << pad_right(std::move(name), 5) << pad_left(std::to_string(count), 9)
        << pad_left(std::move(frac), 10) << '\n';
  };
  for (Label l : kAllLabels)
    row(std::string(1, to_char(l)), h[l],
        total ? std::to_string(detail::rounded_percent(h[l], total)) + "%"
              : "-");
  row("Total", total, total ? "100%" : "-");

  out << "\nResults (actual x output)\n";
  if (m.scored() == 0) {
    out << "no scorable examples\n";
  } else {
    out << pad_right("", 12) << pad_left("Output L", 10)
        << pad_left("Output R", 10) << '\n';
    out << pad_right("Actual L", 12) << pad_left(std::to_string(m.ll), 10)
        << pad_left(std::to_string(m.lr), 10) << '\n';
    out << pad_right("Actual R", 12) << pad_left(std::to_string(m.rl), 10)
        << pad_left(std::to_string(m.rr), 10) << '\n';
    out << "Accuracy: " << format_accuracy(m) << " (" << m.correct() << "/"
        << m.scored() << ")\n";
  }
  out << "Skipped: " << m.skipped << '\n';
  return out.str();
}

/// Short, tab-free description of the evidence behind a record.
inline std::string trace_summary(const EvalRecord& r) {
  if (r.trace) {
    std::string s;
    for (const auto& c : r.trace->candidates) {
      if (!s.empty()) s += ' ';
      const auto i = std::to_string(c.position);
      s += "S" + i + "=" + std::to_string(id_value(c.evidence.modifier_category)) +
           " T" + i + "=" + std::to_string(id_value(c.evidence.head_category)) +
           " CA" + i + "=" + text::format_double(c.evidence.value, 6);
    }
    return s + " tie=" + (r.trace->tie ? "1" : "0");
  }
  if (r.tree)
    return "tree=" + r.tree->to_string() +
           " score=" + text::format_double(r.score, 6);
  return "-";
}

/// Per-example TSV: nouns, label, output, correct, skip reason, trace.
inline void write_records(std::ostream& out,
                          std::span<const EvalRecord> records) {
  out << "#nouns\tlabel\toutput\tcorrect\tskip\ttrace\n";
  for (const auto& r : records) {
    out << text::join(r.example.nouns, " ") << '\t' << to_char(r.example.label)
        << '\t' << (r.output ? std::string(1, to_char(*r.output)) : "-")
        << '\t' << (r.output ? (r.correct() ? "yes" : "no") : "-") << '\t'
        << (r.skip ? to_string(*r.skip) : "-") << '\t' << trace_summary(r)
        << '\n';
  }
}

}  // namespace cnbracket

#endif  // CNBRACKET_EVALUATION_HPP
