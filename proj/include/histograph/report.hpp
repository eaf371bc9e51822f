#ifndef HISTOGRAPH_REPORT_HPP
#define HISTOGRAPH_REPORT_HPP

// Pipeline driver and static HTML report bundle: paginated citation matrix,
// ranked authors, frequency tables, outer references, missing links, the
// historiograph and machine-readable dumps, all linked from index.html.

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "histograph/citation_network.hpp"
#include "histograph/collection_qc.hpp"
#include "histograph/historiograph.hpp"
#include "histograph/isi_ingest.hpp"
#include "histograph/linkage_analysis.hpp"
#include "histograph/rankings.hpp"
#include "histograph/text.hpp"

namespace histograph {

inline const std::set<std::string>& all_output_formats() {
  static const std::set<std::string> formats{"svg", "dot", "html", "json", "csv"};
  return formats;
}

struct RunConfig {
  std::vector<std::string> input_paths;
  std::filesystem::path output_dir;
  // Inclusive threshold; 13 reproduces the strict "LCS > 12" reading.
  std::int64_t min_metric_threshold = 13;
  Metric metric = Metric::Lcs;
  std::size_t page_size = kDefaultPageSize;
  std::size_t top_outer = kDefaultTopOuter;
  std::set<std::string> formats = all_output_formats();
  std::optional<std::string> lookup_url_template;
  std::optional<std::string> stopword_path;
  bool arrowheads = false;

  void validate() const {
    if (input_paths.empty()) throw std::invalid_argument("no input files given");
    if (output_dir.empty()) throw std::invalid_argument("no output directory given");
    if (page_size < 1) throw std::invalid_argument("page size must be at least 1");
    if (top_outer < 1) throw std::invalid_argument("top-outer must be at least 1");
    if (min_metric_threshold < 0) throw std::invalid_argument("threshold must be non-negative");
    for (const auto& f : formats)
      if (!all_output_formats().contains(f)) throw std::invalid_argument("unknown format '" + f + "'");
  }
};

struct Corpus {
  std::vector<BibRecord> records;
  std::vector<std::string> warnings;  // "WARN <line>: <message>"
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

/// Parses every input; structural errors name the file and propagate.
inline Corpus load_corpus(const std::vector<std::string>& paths) {
  Corpus corpus;
  for (const auto& p : paths) {
    ParseResult parsed;
    try {
      parsed = parse_export(read_file(p));
    } catch (const ParseError& e) {
      throw std::runtime_error(p + ": " + e.what());
    }
    for (auto& w : parsed.warnings) corpus.warnings.push_back(ParseWarning{w.line, p + ": " + w.message}.to_string());
    for (auto& r : parsed.records) corpus.records.push_back(std::move(r));
  }
  return corpus;
}

struct BundleSummary {
  std::vector<std::string> files;  // relative to output_dir, sorted
  std::vector<std::string> warnings;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t matrix_pages = 0;
  std::size_t graph_nodes = 0;
};

namespace report_detail {

using text::html_escape;

inline std::string matrix_page_name(std::size_t page) { return "matrix-" + std::to_string(page) + ".html"; }

inline std::string node_href(NodeId id, std::size_t page_size) {
  return matrix_page_name(page_of(id, page_size)) + "#n" + std::to_string(id);
}

inline std::string node_links(const std::vector<NodeId>& ids, std::size_t page_size) {
  std::string out;
  for (auto id : ids) {
    if (!out.empty()) out += ' ';
    out += "<a href=\"" + node_href(id, page_size) + "\">" + std::to_string(id) + "</a>";
  }
  return out;
}

inline std::string page_open(std::string_view title) {
  return "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" +
         html_escape(title) +
         "</title>\n<style>body{font-family:Helvetica,Arial,sans-serif;margin:1.5em;}"
         "table{border-collapse:collapse;}td,th{padding:2px 8px;vertical-align:top;text-align:left;}"
         "tr:nth-child(even){background:#f3f6fa;}.num{text-align:right;}</style>\n</head>\n<body>\n"
         "<p><a href=\"index.html\">Index</a></p>\n<h1>" +
         html_escape(title) + "</h1>\n";
}

inline std::string page_close() { return "</body>\n</html>\n"; }

struct Writer {
  std::filesystem::path dir;
  std::set<std::string> written;

  void put(const std::string& name, std::string_view content) {
    write_file(dir / name, content);
    written.insert(name);
  }
  bool has(const std::string& name) const { return written.contains(name); }
};

inline std::string matrix_page(const CitationNetwork& net, std::size_t page, std::size_t page_size) {
  const auto pages = page_count(net.size(), page_size);
  std::string out = page_open("Citation matrix, page " + std::to_string(page));
  out += "<p>Nodes: " + std::to_string(net.size()) + ". Sorted by year, journal, volume, page.</p>\n<p>Page:";
  for (std::size_t p = 1; p <= pages; ++p) {
    out += p == page ? " <b>" + std::to_string(p) + "</b>"
                     : " <a href=\"" + matrix_page_name(p) + "\">" + std::to_string(p) + "</a>";
  }
  out += "</p>\n<table>\n<tr><th>Cited nodes</th><th>Cited</th><th>Node</th><th>GCS</th><th>LCS</th>"
         "<th>Citing nodes</th></tr>\n";
  for (const auto& row : matrix_rows(net, page, page_size)) {
    const auto& n = net.node(row.node_id);
    out += "<tr id=\"n" + std::to_string(row.node_id) + "\"><td>" + node_links(row.cited_nodes, page_size) +
           "</td><td class=\"num\">" + std::to_string(row.cited_count) + "</td><td title=\"" +
           html_escape(n.record.title) + "\">" + html_escape(row.label()) + "</td><td class=\"num\">" +
           std::to_string(row.gcs) + "</td><td class=\"num\">" + std::to_string(row.lcs) + "</td><td>" +
           node_links(row.citing_nodes, page_size) + "</td></tr>\n";
  }
  out += "</table>\n" + page_close();
  return out;
}

inline std::string authors_page(const std::vector<AuthorRow>& rows, AuthorSort sort, std::size_t page_size) {
  std::string out = page_open("Ranked all-author list");
  out += "<p>Total: " + std::to_string(rows.size()) + ". Sorted by <b>" + std::string(to_string(sort)) +
         "</b>. Sort by:";
  for (auto s : {AuthorSort::Pubs, AuthorSort::Tlcs, AuthorSort::Tgcs, AuthorSort::Name})
    out += " <a href=\"authors-" + std::string(to_string(s)) + ".html\">" + std::string(to_string(s)) + "</a>";
  out += "</p>\n<table>\n<tr><th>#</th><th>Name</th><th>TGCS</th><th>TLCS</th><th>Pubs</th><th>Nodes</th></tr>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += "<tr><td class=\"num\">" + std::to_string(i + 1) + "</td><td>" + html_escape(r.name) +
           "</td><td class=\"num\">" + std::to_string(r.tgcs) + "</td><td class=\"num\">" +
           std::to_string(r.tlcs) + "</td><td class=\"num\">" + std::to_string(r.pubs) + "</td><td>" +
           node_links(r.node_ids, page_size) + "</td></tr>\n";
  }
  out += "</table>\n" + page_close();
  return out;
}

inline std::string frequency_page(const FrequencyTable& table) {
  std::string field(to_string(table.field));
  std::string out = page_open("Frequency: " + field);
  char coverage[32];
  std::snprintf(coverage, sizeof coverage, "%.1f", 100.0 * table.coverage());
  out += "<p>Records: " + std::to_string(table.records) + ". Records with data: " + coverage + "% (" +
         std::to_string(table.records_without_data) + " counted as " + std::string(kUnknownKey) + ").</p>\n";
  out += "<table>\n<tr><th>#</th><th>" + html_escape(field) + "</th><th>Count</th><th>Share</th></tr>\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    char share[32];
    std::snprintf(share, sizeof share, "%.1f%%", 100.0 * r.share);
    out += "<tr><td class=\"num\">" + std::to_string(i + 1) + "</td><td>" + html_escape(r.key) +
           "</td><td class=\"num\">" + std::to_string(r.count) + "</td><td class=\"num\">" + share +
           "</td></tr>\n";
  }
  out += "</table>\n" + page_close();
  return out;
}

inline std::string outer_page(const OuterReport& report, std::size_t page_size,
                              const std::optional<std::string>& lookup_template) {
  std::string out = page_open("Outer references");
  out += "<p>Cited references outside of this network.</p>\n<p>Total: " + std::to_string(report.total_groups) +
         " distinct references, " + std::to_string(report.total_occurrences) + " citations (top " +
         std::to_string(report.entries.size()) + " shown). Sorted by LCS.</p>\n";
  out += "<table>\n<tr><th>#</th><th>LCS</th><th>Reference</th><th>Citing nodes</th></tr>\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    std::string ref = html_escape(e.display);
    if (e.in_corpus_source) ref += " <b>[same source]</b>";
    if (lookup_template)
      ref += " <a href=\"" + html_escape(lookup_url(*lookup_template, e.key)) + "\">lookup</a>";
    out += "<tr><td class=\"num\">" + std::to_string(i + 1) + "</td><td class=\"num\">" +
           std::to_string(e.local_cites) + "</td><td>" + ref + "</td><td>" +
           node_links(e.citing_nodes, page_size) + "</td></tr>\n";
  }
  out += "</table>\n" + page_close();
  return out;
}

inline std::string missing_page(const CitationNetwork& net, const MissingLinkReport& report, std::size_t page_size) {
  std::string out = page_open("Missing links");
  out += "<p>Potentially missed citations...</p>\n<p>" + std::to_string(report.nodes_with_links) +
         " nodes have citations that may potentially refer to other nodes.</p>\n";
  std::size_t group = 0;
  NodeId current = 0;
  for (const auto& link : report.links) {
    if (link.citing_node != current) {
      if (current) out += "</ul>\n";
      current = link.citing_node;
      const auto& n = net.node(current);
      out += "<h3>" + std::to_string(++group) + " | <a href=\"" + node_href(current, page_size) + "\">" +
             std::to_string(current) + "</a> " + html_escape(detail::source_line(n.record)) + "</h3>\n<p>" +
             html_escape(text::to_upper(text::join(n.record.authors, "; "))) + "<br>" +
             html_escape(text::to_upper(n.record.title)) + "</p>\n<ul>\n";
    }
    out += "<li>" + html_escape(link.cited_ref.raw) + " may refer to [<a href=\"" +
           node_href(link.candidate_node, page_size) + "\">" + std::to_string(link.candidate_node) +
           "</a>] " + html_escape(link.candidate_key.canonical) + " <small>(" +
           html_escape(link.reasons.to_string()) + ")</small></li>\n";
  }
  if (current) out += "</ul>\n";
  out += page_close();
  return out;
}

inline std::string index_page(const CitationNetwork& net, const Writer& w, const BundleSummary& summary,
                              const OuterReport& outer, const MissingLinkReport& missing) {
  std::string out = page_open("Citation historiography report");
  out += "<p>Nodes: " + std::to_string(net.size()) + ". Local citation links: " + std::to_string(net.edges.size()) +
         ". Unresolved cited references: " + std::to_string(net.unresolved.size()) + " (" +
         std::to_string(outer.total_groups) + " distinct). Nodes with potentially missed citations: " +
         std::to_string(missing.nodes_with_links) + ".</p>\n";
  if (!summary.warnings.empty())
    out += "<p>" + std::to_string(summary.warnings.size()) + " warnings were reported while reading the input.</p>\n";
  out += "<ul>\n";
  auto item = [&](const std::string& file, const std::string& label) {
    if (w.has(file)) out += "<li><a href=\"" + file + "\">" + html_escape(label) + "</a></li>\n";
  };
  if (summary.matrix_pages > 0) {
    out += "<li>Citation matrix, pages:";
    for (std::size_t p = 1; p <= summary.matrix_pages; ++p)
      out += " <a href=\"" + matrix_page_name(p) + "\">" + std::to_string(p) + "</a>";
    out += "</li>\n";
  }
  for (auto s : {"pubs", "tlcs", "tgcs", "name"})
    item(std::string("authors-") + s + ".html", std::string("Ranked authors by ") + s);
  for (auto f : {"year", "doc_type", "country", "institution", "word"})
    item(std::string("freq-") + f + ".html", std::string("Frequency by ") + f);
  item("outer-refs.html", "Outer references");
  item("missing-links.html", "Missing links");
  item("missing-links.txt", "Missing links (text)");
  item("graph.html", "Historiograph");
  item("graph.svg", "Historiograph (SVG)");
  item("graph.dot", "Historiograph (dot)");
  for (const auto& f : w.written) {
    auto ext = std::filesystem::path(f).extension().string();
    if (ext == ".json" || ext == ".csv") item(f, f);
  }
  out += "</ul>\n" + page_close();
  return out;
}

inline GraphSpec build_graph(const CitationNetwork& net, const RunConfig& cfg, BundleSummary& summary) {
  auto spec = layout(select_nodes(net, cfg.min_metric_threshold, cfg.metric));
  for (const auto& w : spec.warnings) summary.warnings.push_back("WARN 0: " + w);
  summary.graph_nodes = spec.nodes.size();
  return spec;
}

inline void write_graph(Writer& w, const GraphSpec& spec, const RunConfig& cfg, bool link_nodes) {
  RenderOptions opt;
  opt.arrowheads = cfg.arrowheads;
  if (link_nodes) {
    const auto page_size = cfg.page_size;
    opt.node_href = [page_size](NodeId id) { return node_href(id, page_size); };
  }
  if (cfg.formats.contains("svg")) w.put("graph.svg", render_svg(spec, opt));
  if (cfg.formats.contains("dot")) w.put("graph.dot", render_dot(spec, opt));
  if (cfg.formats.contains("html")) w.put("graph.html", render_html(spec, opt));
}

inline Writer open_output(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw std::runtime_error("cannot create output directory " + dir.string());
  return Writer{dir, {}};
}

}  // namespace report_detail

/// Full report bundle for an already built network.
inline BundleSummary write_bundle(const CitationNetwork& net, const RunConfig& cfg,
                                  std::vector<std::string> warnings = {}) {
  using namespace report_detail;
  BundleSummary summary;
  summary.warnings = std::move(warnings);
  for (const auto& w : net.warnings) summary.warnings.push_back("WARN 0: " + w);
  summary.node_count = net.size();
  summary.edge_count = net.edges.size();
  summary.matrix_pages = page_count(net.size(), cfg.page_size);
  if (net.size() == 0) summary.warnings.push_back("WARN 0: the input contains no usable records");

  auto w = open_output(cfg.output_dir);
  const bool csv = cfg.formats.contains("csv");
  const bool json = cfg.formats.contains("json");

  for (std::size_t p = 1; p <= summary.matrix_pages; ++p)
    w.put(matrix_page_name(p), matrix_page(net, p, cfg.page_size));

  auto authors = rank_authors(net, AuthorSort::Pubs);
  for (auto s : {AuthorSort::Pubs, AuthorSort::Tlcs, AuthorSort::Tgcs, AuthorSort::Name}) {
    sort_authors(authors, s);
    w.put("authors-" + std::string(to_string(s)) + ".html", authors_page(authors, s, cfg.page_size));
    if (csv && s == AuthorSort::Pubs) w.put("authors.csv", authors_csv(authors));
  }

  const auto stopwords = cfg.stopword_path ? load_stopwords(*cfg.stopword_path) : default_stopwords();
  for (auto f : {FrequencyField::Year, FrequencyField::DocType, FrequencyField::Country,
                 FrequencyField::Institution, FrequencyField::Word}) {
    auto table = frequency_table(net, f, stopwords);
    const std::string name = "freq-" + std::string(to_string(f));
    w.put(name + ".html", frequency_page(table));
    if (csv) w.put(name + ".csv", frequency_csv(table));
  }

  const auto outer = outer_references(net, cfg.top_outer);
  w.put("outer-refs.html", outer_page(outer, cfg.page_size, cfg.lookup_url_template));
  if (csv) w.put("outer-refs.csv", outer_csv(outer));

  const auto missing = missing_links(net);
  w.put("missing-links.html", missing_page(net, missing, cfg.page_size));
  w.put("missing-links.txt", render_missing_links_text(net, missing));

  const auto cocited = cocitations(net);
  const auto coupled = bibliographic_couplings(net);
  const auto clusters_cited = cluster(net, LinkMode::Cited);
  const auto clusters_citing = cluster(net, LinkMode::Citing);
  if (csv) {
    w.put("cocitations.csv", pairs_csv(cocited));
    w.put("couplings.csv", pairs_csv(coupled));
    w.put("clusters-cited.csv", clusters_csv(clusters_cited));
    w.put("clusters-citing.csv", clusters_csv(clusters_citing));
  }
  if (json) {
    w.put("network.json", network_to_json(net).dump(1) + "\n");
    w.put("cocitations.json", pairs_to_json(cocited).dump(1) + "\n");
    w.put("couplings.json", pairs_to_json(coupled).dump(1) + "\n");
    w.put("clusters-cited.json", clusters_to_json(clusters_cited).dump() + "\n");
    w.put("clusters-citing.json", clusters_to_json(clusters_citing).dump() + "\n");
  }

  write_graph(w, build_graph(net, cfg, summary), cfg, summary.matrix_pages > 0);

  // index last, once every page it links to exists
  w.put("index.html", index_page(net, w, summary, outer, missing));
  summary.files.assign(w.written.begin(), w.written.end());
  return summary;
}

/// parse -> network -> full bundle.
inline BundleSummary cmd_analyze(const RunConfig& cfg) {
  cfg.validate();
  auto corpus = load_corpus(cfg.input_paths);
  auto net = build_network(std::move(corpus.records));
  return write_bundle(net, cfg, std::move(corpus.warnings));
}

/// parse -> network -> select -> layout -> render, historiograph files only.
inline BundleSummary cmd_graph(const RunConfig& cfg) {
  cfg.validate();
  auto corpus = load_corpus(cfg.input_paths);
  auto net = build_network(std::move(corpus.records));
  BundleSummary summary;
  summary.warnings = std::move(corpus.warnings);
  summary.node_count = net.size();
  summary.edge_count = net.edges.size();
  auto w = report_detail::open_output(cfg.output_dir);
  report_detail::write_graph(w, report_detail::build_graph(net, cfg, summary), cfg, false);
  summary.files.assign(w.written.begin(), w.written.end());
  return summary;
}

}  // namespace histograph

#endif  // HISTOGRAPH_REPORT_HPP
