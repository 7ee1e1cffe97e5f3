#ifndef CNBRACKET_TOOLS_CLI_HPP
#define CNBRACKET_TOOLS_CLI_HPP

// Command-line front end: extract, train, bracket, evaluate.
// Exit codes: 0 success, 1 usage error, 2 data or format error.

#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnbracket/association.hpp"
#include "cnbracket/bracketer.hpp"
#include "cnbracket/evaluation.hpp"
#include "cnbracket/extraction.hpp"
#include "cnbracket/lexicon.hpp"
#include "cnbracket/text.hpp"
#include "cnbracket/thesaurus.hpp"

namespace cnbracket::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDataError = 2;

struct Config {
  std::string lexicon_path;
  std::string thesaurus_path;
  std::string model_path;
  double left_bias = 1.0;
  std::size_t max_sequence_len = 8;
};

namespace detail {

inline std::optional<Lexicon> maybe_lexicon(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return load_lexicon(path);
}

inline Thesaurus thesaurus_for(const Config& cfg, const Lexicon* lex,
                               std::ostream& err) {
  ThesaurusLoadStats stats;
  auto th = load_thesaurus(cfg.thesaurus_path, lex, &stats);
  if (stats.multiword_skipped || stats.malformed_skipped)
    err << "thesaurus: skipped " << stats.multiword_skipped
        << " multi-word and " << stats.malformed_skipped
        << " malformed members\n";
  return th;
}

inline std::string category_label(const Thesaurus& th, CategoryId id) {
  return std::to_string(id_value(id)) + ":" + th.name_of(id);
}

inline int run_extract(const Config& cfg, const std::string& corpus_path,
                       const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  auto lex = load_lexicon(cfg.lexicon_path);
  auto corpus = text::read_file(corpus_path);
  ExtractStats stats;
  auto seqs = extract_sequences(corpus, lex, {cfg.max_sequence_len}, &stats);
  if (stats.dropped_runs)
    err << "extract: dropped " << stats.dropped_runs
        << " runs longer than " << cfg.max_sequence_len << " nouns\n";
  auto file = text::open_output(out_path);
  write_sequences(file, seqs);
  if (!file) throw IoError(out_path);
  auto parts = partition(seqs);
  out << "sequences=" << seqs.size() << " pairs=" << parts.training_pairs.size()
      << " ambiguous=" << parts.ambiguous.size()
      << " dropped_runs=" << stats.dropped_runs << '\n';
  return kOk;
}

inline int run_train(const Config& cfg, const std::string& sequences_path,
                     std::ostream& out, std::ostream& err) {
  auto lex = maybe_lexicon(cfg.lexicon_path);
  auto th = thesaurus_for(cfg, lex ? &*lex : nullptr, err);
  auto in = text::open_input(sequences_path);
  auto seqs = read_sequences(in);
  auto parts = partition(seqs);
  auto counts = count_pairs(parts.training_pairs);
  auto model = build_freq(counts, th);
  save_model(model, cfg.model_path);
  out << "pairs=" << counts.total_pairs
      << " skipped_pairs=" << model.skipped_pairs()
      << " ignored_sequences=" << parts.ambiguous.size()
      << " cells=" << model.cell_count()
      << " mass=" << text::format_double(model.trained_mass()) << '\n';
  return kOk;
}

inline int run_bracket(const Config& cfg, const std::vector<std::string>& words,
                       bool explain_nodes, std::ostream& out,
                       std::ostream& err) {
  auto lex = maybe_lexicon(cfg.lexicon_path);
  std::vector<std::string> nouns;
  for (const auto& w : words)
    for (auto tok : text::split_ws(w))
      nouns.push_back(text::to_lower(lex ? normalize(*lex, tok) : std::string(tok)));
  if (nouns.size() < 2) {
    err << "bracket: need at least two nouns\n";
    return kUsage;
  }
  auto th = thesaurus_for(cfg, lex ? &*lex : nullptr, err);
  auto model = load_model(cfg.model_path);

  BracketOptions opts{cfg.left_bias, cfg.max_sequence_len};
  std::optional<BracketTree> tree;
  if (nouns.size() == 3)
    tree = analyse_triple(model, th, nouns[0], nouns[1], nouns[2],
                          opts.left_bias)
               .tree;
  else
    tree = analyse_compound(model, th, nouns, opts).best;

  out << tree->to_string() << '\n';
  if (explain_nodes)
    for (const auto& node : explain(model, th, *tree))
      out << node.left_head << ' ' << node.right_head
          << " S=" << category_label(th, node.evidence.modifier_category)
          << " T=" << category_label(th, node.evidence.head_category)
          << " CA=" << text::format_double(node.evidence.value, 6) << '\n';
  return kOk;
}

inline int run_evaluate(const Config& cfg, const std::string& test_path,
                        const std::string& records_path, std::ostream& out,
                        std::ostream& err) {
  auto lex = maybe_lexicon(cfg.lexicon_path);
  auto th = thesaurus_for(cfg, lex ? &*lex : nullptr, err);
  auto model = load_model(cfg.model_path);
  auto examples = load_test_set(test_path, lex ? &*lex : nullptr);
  auto result = evaluate(model, th, examples,
                         {cfg.left_bias, cfg.max_sequence_len});
  out << report(result.matrix, label_histogram(examples));
  if (!records_path.empty()) {
    auto file = text::open_output(records_path);
    write_records(file, result.records);
    if (!file) throw IoError(records_path);
  }
  return kOk;
}

}  // namespace detail

/// Runs one subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Compound noun bracketing from thesaurus-category associations",
               "cn_bracket"};
  app.require_subcommand(1);
  app.footer(
      "CN_BRACKET_SEED is reserved and currently unused: no step is random.");

  Config cfg;
  std::string corpus_path, out_path, sequences_path, test_path, records_path;
  std::vector<std::string> words;
  bool explain_nodes = false;

  auto add_bias = [&](CLI::App* sub) {
    sub->add_option("--left-bias", cfg.left_bias,
                    "multiplier on left attachments")
        ->check(CLI::PositiveNumber);
  };
  auto add_max_len = [&](CLI::App* sub) {
    sub->add_option("--max-len", cfg.max_sequence_len,
                    "longest noun sequence considered")
        ->check(CLI::Range(std::size_t{3}, std::size_t{64}));
  };

  auto* extract = app.add_subcommand("extract", "extract noun sequences");
  extract->add_option("--lexicon", cfg.lexicon_path)->required();
  extract->add_option("--corpus", corpus_path)->required();
  extract->add_option("--out", out_path)->required();
  add_max_len(extract);

  auto* train = app.add_subcommand("train", "build an association model");
  train->add_option("--thesaurus", cfg.thesaurus_path)->required();
  train->add_option("--sequences", sequences_path)->required();
  train->add_option("--out", cfg.model_path)->required();
  train->add_option("--lexicon", cfg.lexicon_path,
                    "normalize thesaurus members through this lexicon");

  auto* bracket = app.add_subcommand("bracket", "bracket one compound");
  bracket->add_option("--model", cfg.model_path)->required();
  bracket->add_option("--thesaurus", cfg.thesaurus_path)->required();
  bracket->add_option("--lexicon", cfg.lexicon_path);
  bracket->add_flag("--explain", explain_nodes,
                    "print the evidence for each internal node");
  bracket->add_option("nouns", words, "the compound, e.g. \"fruit tree farmer\"")
      ->required();
  add_bias(bracket);
  add_max_len(bracket);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a labeled test set");
  evaluate_cmd->add_option("--model", cfg.model_path)->required();
  evaluate_cmd->add_option("--thesaurus", cfg.thesaurus_path)->required();
  evaluate_cmd->add_option("--test", test_path)->required();
  evaluate_cmd->add_option("--records", records_path);
  evaluate_cmd->add_option("--lexicon", cfg.lexicon_path);
  add_bias(evaluate_cmd);
  add_max_len(evaluate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*extract)
      return detail::run_extract(cfg, corpus_path, out_path, out, err);
    if (*train) return detail::run_train(cfg, sequences_path, out, err);
    if (*bracket)
      return detail::run_bracket(cfg, words, explain_nodes, out, err);
    if (*evaluate_cmd)
      return detail::run_evaluate(cfg, test_path, records_path, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace cnbracket::cli

#endif  // CNBRACKET_TOOLS_CLI_HPP
