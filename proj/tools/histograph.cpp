// histograph: citation historiography from tagged bibliographic exports.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "histograph/histograph.hpp"

namespace {

using namespace histograph;

struct InputOptions {
  std::vector<std::string> inputs;
};

void add_inputs(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.inputs, "Tagged export file(s)")->required()->check(CLI::ExistingFile);
}

CitationNetwork load_network(const InputOptions& in) {
  auto corpus = load_corpus(in.inputs);
  for (const auto& w : corpus.warnings) std::cerr << w << '\n';
  auto net = build_network(std::move(corpus.records));
  for (const auto& w : net.warnings) std::cerr << "WARN 0: " << w << '\n';
  return net;
}

LinkMode parse_mode(const std::string& s) {
  if (s == "cited") return LinkMode::Cited;
  if (s == "citing") return LinkMode::Citing;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

void print_summary(const BundleSummary& s) {
  for (const auto& w : s.warnings) std::cerr << w << '\n';
  std::cerr << s.node_count << " nodes, " << s.edge_count << " local links, " << s.graph_nodes
            << " nodes in the graph, " << s.files.size() << " files written\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation historiography: citation matrix, rankings, outer references, "
               "missing links and the historiograph from tagged bibliographic exports"};
  app.set_config("--config", "", "Read options from a TOML/INI file (command-line flags win)");
  app.require_subcommand(1);

  // analyze / graph share the run configuration
  RunConfig cfg;
  std::string metric = "lcs";
  std::vector<std::string> formats;
  std::string lookup;
  std::string stopwords;
  std::string output;
  auto add_run_options = [&](CLI::App* cmd, bool full) {
    cmd->add_option("-i,--input", cfg.input_paths, "Tagged export file(s)")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", output, "Output directory")->required();
    cmd->add_option("--min-lcs", cfg.min_metric_threshold,
                    "Keep nodes whose metric is at least N in the graph (13 = strict 'LCS > 12')")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--metric", metric, "Graph selection metric")
        ->capture_default_str()
        ->check(CLI::IsMember({"lcs", "gcs"}));
    cmd->add_option("--format", formats, "Comma-separated outputs: svg,dot,html,json,csv")
        ->delimiter(',')
        ->check(CLI::IsMember({"svg", "dot", "html", "json", "csv"}));
    cmd->add_flag("--arrowheads", cfg.arrowheads, "Draw arrowheads on graph edges");
    if (!full) return;
    cmd->add_option("--page-size", cfg.page_size, "Nodes per citation matrix page")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--top-outer", cfg.top_outer, "Outer references to list")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lookup-url", lookup, "URL template for outer references, {key} is substituted");
    cmd->add_option("--stopwords", stopwords, "Stopword file for title-word frequencies")->check(CLI::ExistingFile);
  };
  auto* analyze = app.add_subcommand("analyze", "Write the full report bundle");
  add_run_options(analyze, true);
  auto* graph = app.add_subcommand("graph", "Write the historiograph only");
  add_run_options(graph, false);

  InputOptions in;
  std::string sort = "pubs";
  std::size_t top = 0;
  auto* authors = app.add_subcommand("authors", "Ranked all-author list as CSV");
  add_inputs(authors, in);
  authors->add_option("--sort", sort, "pubs, tlcs, tgcs or name")->check(CLI::IsMember({"pubs", "tlcs", "tgcs", "name"}));
  authors->add_option("--top", top, "Rows to print (0 = all)");

  std::size_t top_outer = kDefaultTopOuter;
  auto* outer = app.add_subcommand("outer", "Outer references ranked by local citations, as CSV");
  add_inputs(outer, in);
  outer->add_option("--top-outer", top_outer, "Rows to print")->capture_default_str()->check(CLI::PositiveNumber);

  auto* missing = app.add_subcommand("missing", "Potentially missed citations");
  add_inputs(missing, in);

  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;
  auto* matrix = app.add_subcommand("matrix", "One page of the citation matrix, tab separated");
  add_inputs(matrix, in);
  matrix->add_option("--page", page, "Page number")->capture_default_str();
  matrix->add_option("--page-size", page_size, "Nodes per page")->capture_default_str()->check(CLI::PositiveNumber);

  std::string mode = "cited";
  std::size_t min_strength = 0;
  auto* pairs = app.add_subcommand("pairs", "Co-citation (cited) or coupling (citing) pairs as CSV");
  add_inputs(pairs, in);
  pairs->add_option("--mode", mode, "cited or citing")->capture_default_str()->check(CLI::IsMember({"cited", "citing"}));
  pairs->add_option("--min-strength", min_strength, "Minimum shared count (default 1)");
  auto* clusters = app.add_subcommand("clusters", "Connected components of the pair graph as CSV");
  add_inputs(clusters, in);
  clusters->add_option("--mode", mode, "cited or citing")->capture_default_str()->check(CLI::IsMember({"cited", "citing"}));
  clusters->add_option("--min-strength", min_strength, "Minimum shared count (default 2)");

  NodeId origin = 0;
  std::size_t max_depth = 3;
  auto* levels = app.add_subcommand("levels", "Reference levels and citation chains from one node");
  add_inputs(levels, in);
  levels->add_option("--origin", origin, "Origin node id")->required();
  levels->add_option("--max-depth", max_depth, "Deepest level")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze || *graph) {
      cfg.output_dir = output;
      cfg.metric = parse_metric(metric);
      if (!formats.empty()) cfg.formats = {formats.begin(), formats.end()};
      if (!lookup.empty()) cfg.lookup_url_template = lookup;
      if (!stopwords.empty()) cfg.stopword_path = stopwords;
      print_summary(*analyze ? cmd_analyze(cfg) : cmd_graph(cfg));
    } else if (*authors) {
      auto rows = rank_authors(load_network(in), parse_author_sort(sort));
      if (top > 0 && rows.size() > top) rows.resize(top);
      std::cout << authors_csv(rows);
    } else if (*outer) {
      std::cout << outer_csv(outer_references(load_network(in), top_outer));
    } else if (*missing) {
      auto net = load_network(in);
      std::cout << render_missing_links_text(net, missing_links(net));
    } else if (*matrix) {
      auto net = load_network(in);
      std::cout << "cited nodes\tcited\tnode\tgcs\tlcs\tciting nodes\n";
      for (const auto& row : matrix_rows(net, page, page_size)) std::cout << format_matrix_row(row) << '\n';
    } else if (*pairs) {
      auto strength = min_strength ? min_strength : kDefaultPairStrength;
      std::cout << pairs_csv(link_pairs(load_network(in), parse_mode(mode), strength));
    } else if (*clusters) {
      auto strength = min_strength ? min_strength : kDefaultClusterStrength;
      std::cout << clusters_csv(cluster(load_network(in), parse_mode(mode), strength));
    } else if (*levels) {
      auto net = load_network(in);
      auto ls = reference_levels(net, origin, max_depth);
      for (std::size_t k = 0; k < ls.levels.size(); ++k)
        std::cout << "level " << k << ": " << text::join(ls.levels[k], " ") << '\n';
      std::cout << "\n" << render_paths(origin, citation_paths(net, origin, max_depth));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
