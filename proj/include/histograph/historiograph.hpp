#ifndef HISTOGRAPH_HISTORIOGRAPH_HPP
#define HISTOGRAPH_HISTORIOGRAPH_HPP

// Historiograph: the thresholded subgraph of highly cited nodes, laid out in
// one horizontal band per publication year and drawn as circles whose area
// is proportional to the selection metric.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "histograph/citation_network.hpp"
#include "histograph/text.hpp"

namespace histograph {

enum class Metric { Lcs, Gcs };

inline Metric parse_metric(std::string_view s) {
  if (s == "lcs") return Metric::Lcs;
  if (s == "gcs") return Metric::Gcs;
  throw std::invalid_argument("unknown metric '" + std::string(s) + "'");
}

inline std::string_view to_string(Metric m) { return m == Metric::Lcs ? "lcs" : "gcs"; }

inline std::int64_t metric_value(const Node& n, Metric m) { return m == Metric::Lcs ? n.lcs : n.gcs; }

struct CircleScale {
  double r_min = 8.0;
  double r_max = 40.0;
};

struct GraphNode {
  NodeId id = 0;
  int year = 0;
  std::string first_author;
  std::string title;
  std::int64_t lcs = 0;
  std::int64_t gcs = 0;
  std::int64_t metric = 0;
  double radius = 0.0;
  bool clamped = false;  // radius limited by r_max (or floored for metric 0)
  double x = 0.0;
  double y = 0.0;

  double area() const { return std::acos(-1.0) * radius * radius; }
};

struct GraphSpec {
  std::int64_t threshold = 0;
  Metric metric = Metric::Lcs;
  std::vector<GraphNode> nodes;  // selected nodes, ascending id
  std::vector<Edge> edges;       // (citing, cited), both endpoints selected
  std::map<int, std::vector<NodeId>> year_rows;  // year -> ids, left to right once laid out
  std::vector<std::string> warnings;
  bool positioned = false;
  double width = 0.0;
  double height = 0.0;

  std::vector<NodeId> selected() const {
    std::vector<NodeId> ids;
    ids.reserve(nodes.size());
    for (const auto& n : nodes) ids.push_back(n.id);
    return ids;
  }

  const GraphNode* find(NodeId id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const GraphNode& n, NodeId v) { return n.id < v; });
    return it != nodes.end() && it->id == id ? &*it : nullptr;
  }
};

/// Keeps nodes whose metric is at least `threshold` (inclusive) and the
/// citation edges among them. Radii follow r = r_min * sqrt(m / m_min).
inline GraphSpec select_nodes(const CitationNetwork& net, std::int64_t threshold,
                              Metric metric = Metric::Lcs, const CircleScale& scale = {}) {
  if (threshold < 0) throw std::invalid_argument("threshold must be non-negative");
  GraphSpec spec;
  spec.threshold = threshold;
  spec.metric = metric;
  std::vector<char> keep(net.size() + 1, 0);
  for (const auto& n : net.nodes) {
    auto m = metric_value(n, metric);
    if (m < threshold) continue;
    keep[static_cast<std::size_t>(n.id)] = 1;
    GraphNode g;
    g.id = n.id;
    g.year = n.record.pub_year;
    g.first_author = n.record.authors.empty() ? std::string{} : n.record.authors.front();
    g.title = n.record.title;
    g.lcs = n.lcs;
    g.gcs = n.gcs;
    g.metric = m;
    spec.nodes.push_back(std::move(g));
    spec.year_rows[n.record.pub_year].push_back(n.id);
  }
  for (const auto& e : net.edges)
    if (keep[static_cast<std::size_t>(e.citing)] && keep[static_cast<std::size_t>(e.cited)])
      spec.edges.push_back(e);
  if (spec.nodes.empty()) {
    spec.warnings.push_back("no node has " + std::string(to_string(metric)) + " >= " +
                            std::to_string(threshold) + "; the graph is empty");
    return spec;
  }

  std::int64_t base = std::numeric_limits<std::int64_t>::max();
  for (const auto& g : spec.nodes)
    if (g.metric > 0) base = std::min(base, g.metric);
  for (auto& g : spec.nodes) {
    if (g.metric <= 0) {
      g.radius = scale.r_min / 2.0;
      g.clamped = true;
      continue;
    }
    double r = scale.r_min * std::sqrt(static_cast<double>(g.metric) / static_cast<double>(base));
    if (r > scale.r_max) {
      r = scale.r_max;
      g.clamped = true;
    }
    g.radius = r;
  }
  return spec;
}

struct LayoutOptions {
  double margin = 20.0;
  double year_gutter = 48.0;  // room for year labels left of the plot
  double node_gap = 12.0;
  double band_gap = 28.0;
};

/// Bands top to bottom by increasing year. Inside a band, nodes are ordered
/// by the mean x of their already placed cited neighbours (nodes without one
/// go last), ties by id, then packed left to right without overlap.
inline GraphSpec layout(GraphSpec spec, const LayoutOptions& opt = {}) {
  spec.positioned = true;
  const double plot_left = opt.margin + opt.year_gutter;
  if (spec.nodes.empty()) {
    spec.width = plot_left + opt.margin;
    spec.height = 2 * opt.margin;
    return spec;
  }
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) index[spec.nodes[i].id] = i;
  std::unordered_map<NodeId, std::vector<NodeId>> cites;
  for (const auto& e : spec.edges) cites[e.citing].push_back(e.cited);

  std::vector<char> placed(spec.nodes.size(), 0);
  double cursor = opt.margin;
  double right = plot_left;
  for (auto& [year, ids] : spec.year_rows) {
    struct Item {
      NodeId id;
      std::optional<double> bary;
    };
    std::vector<Item> items;
    double band_r = 0.0;
    for (auto id : ids) {
      const auto& g = spec.nodes[index.at(id)];
      band_r = std::max(band_r, g.radius);
      double sum = 0.0;
      int count = 0;
      if (auto it = cites.find(id); it != cites.end()) {
        for (auto c : it->second) {
          auto j = index.at(c);
          if (!placed[j]) continue;
          sum += spec.nodes[j].x;
          ++count;
        }
      }
      items.push_back({id, count ? std::optional<double>(sum / count) : std::nullopt});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.bary.has_value() != b.bary.has_value()) return a.bary.has_value();
      if (a.bary && *a.bary != *b.bary) return *a.bary < *b.bary;
      return a.id < b.id;
    });

    const double y = cursor + band_r;
    double prev_x = 0.0;
    double prev_r = 0.0;
    bool first = true;
    ids.clear();
    for (const auto& item : items) {
      auto& g = spec.nodes[index.at(item.id)];
      double min_x = first ? plot_left + g.radius : prev_x + prev_r + opt.node_gap + g.radius;
      g.x = item.bary ? std::max(*item.bary, min_x) : min_x;
      g.y = y;
      placed[index.at(item.id)] = 1;
      right = std::max(right, g.x + g.radius);
      prev_x = g.x;
      prev_r = g.radius;
      first = false;
      ids.push_back(item.id);
    }
    cursor += 2 * band_r + opt.band_gap;
  }
  spec.width = right + opt.margin;
  spec.height = cursor - opt.band_gap + opt.margin;
  return spec;
}

/// Weakly connected components of the selected subgraph, singletons
/// included, largest first.
inline std::vector<std::vector<NodeId>> graph_components(const GraphSpec& spec) {
  std::unordered_map<NodeId, NodeId> parent;
  for (const auto& g : spec.nodes) parent[g.id] = g.id;
  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : spec.edges) {
    auto a = find(e.citing);
    auto b = find(e.cited);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<NodeId, std::vector<NodeId>> groups;
  for (const auto& g : spec.nodes) groups[find(g.id)].push_back(g.id);
  std::vector<std::vector<NodeId>> out;
  for (auto& [_, m] : groups) out.push_back(std::move(m));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

// ---- rendering -------------------------------------------------------------

enum class RenderFormat { Svg, Dot, Html };

inline RenderFormat parse_render_format(std::string_view s) {
  if (s == "svg") return RenderFormat::Svg;
  if (s == "dot") return RenderFormat::Dot;
  if (s == "html") return RenderFormat::Html;
  throw std::invalid_argument("unknown graph format '" + std::string(s) + "'");
}

struct RenderOptions {
  bool arrowheads = false;
  // Link target for a node (report page anchor); empty function for none.
  std::function<std::string(NodeId)> node_href;
  std::string title = "Historiograph";
};

namespace detail {

inline std::string tooltip(const GraphNode& g) {
  std::string t = g.first_author.empty() ? std::string("[anonymous]") : g.first_author;
  t += ", " + std::to_string(g.year);
  if (!g.title.empty()) t += ". " + g.title;
  t += ". LCS " + std::to_string(g.lcs) + ", GCS " + std::to_string(g.gcs);
  return t;
}

inline std::string threshold_caption(const GraphSpec& spec) {
  return text::to_upper(to_string(spec.metric)) + " >= " + std::to_string(spec.threshold);
}

inline std::string svg_body(const GraphSpec& spec, const RenderOptions& opt, bool standalone) {
  using text::fixed2;
  using text::html_escape;
  std::string out;
  const double w = spec.nodes.empty() ? 420.0 : spec.width;
  const double h = spec.nodes.empty() ? 60.0 : spec.height;
  if (standalone) out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
         "version=\"1.1\" width=\"" + fixed2(w) + "\" height=\"" + fixed2(h) + "\" viewBox=\"0 0 " +
         fixed2(w) + " " + fixed2(h) + "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  out += "<title>" + html_escape(opt.title + " (" + threshold_caption(spec) + ")") + "</title>\n";
  if (spec.nodes.empty()) {
    out += "<text x=\"20.00\" y=\"35.00\" font-size=\"14\">No nodes meet the selection threshold (" +
           html_escape(threshold_caption(spec)) + ").</text>\n</svg>\n";
    return out;
  }
  if (opt.arrowheads) {
    out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
           "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#555555\"/>"
           "</marker></defs>\n";
  }
  out += "<g class=\"years\" font-size=\"11\" fill=\"#666666\">\n";
  for (const auto& [year, ids] : spec.year_rows) {
    if (ids.empty()) continue;
    const auto* g = spec.find(ids.front());
    out += "<text x=\"20.00\" y=\"" + fixed2(g->y + 4.0) + "\">" + std::to_string(year) + "</text>\n";
  }
  out += "</g>\n<g class=\"edges\" stroke=\"#555555\" stroke-width=\"1\" fill=\"none\">\n";
  for (const auto& e : spec.edges) {
    const auto* cited = spec.find(e.cited);
    const auto* citing = spec.find(e.citing);
    // Line from the cited circle's rim to the citing circle's rim.
    const double dx = citing->x - cited->x;
    const double dy = citing->y - cited->y;
    const double len = std::hypot(dx, dy);
    double x1 = cited->x, y1 = cited->y, x2 = citing->x, y2 = citing->y;
    if (len > cited->radius + citing->radius) {
      x1 += dx / len * cited->radius;
      y1 += dy / len * cited->radius;
      x2 -= dx / len * citing->radius;
      y2 -= dy / len * citing->radius;
    }
    if (opt.arrowheads) {
      out += "<line x1=\"" + fixed2(x2) + "\" y1=\"" + fixed2(y2) + "\" x2=\"" + fixed2(x1) +
             "\" y2=\"" + fixed2(y1) + "\" marker-end=\"url(#arrow)\"/>\n";
    } else {
      out += "<line x1=\"" + fixed2(x1) + "\" y1=\"" + fixed2(y1) + "\" x2=\"" + fixed2(x2) +
             "\" y2=\"" + fixed2(y2) + "\"/>\n";
    }
  }
  out += "</g>\n<g class=\"nodes\">\n";
  for (const auto& g : spec.nodes) {
    const auto id = std::to_string(g.id);
    out += "<g class=\"node\" id=\"n" + id + "\">";
    out += "<title>" + html_escape(tooltip(g)) + "</title>";
    std::string href = opt.node_href ? opt.node_href(g.id) : std::string{};
    if (!href.empty()) out += "<a xlink:href=\"" + html_escape(href) + "\">";
    out += "<circle cx=\"" + fixed2(g.x) + "\" cy=\"" + fixed2(g.y) + "\" r=\"" + fixed2(g.radius) +
           "\" fill=\"#dce9f5\" stroke=\"#1f4e79\" stroke-width=\"1.2\"/>";
    const double font = std::clamp(g.radius * 0.55, 6.0, 13.0);
    out += "<text x=\"" + fixed2(g.x) + "\" y=\"" + fixed2(g.y + font * 0.35) +
           "\" text-anchor=\"middle\" font-size=\"" + fixed2(font) + "\">" + id + "</text>";
    if (!href.empty()) out += "</a>";
    out += "</g>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline std::string dot_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

inline std::string render_svg(const GraphSpec& spec, const RenderOptions& opt = {}) {
  if (!spec.nodes.empty() && !spec.positioned)
    throw std::logic_error("svg rendering needs a laid out graph");
  return detail::svg_body(spec, opt, true);
}

inline std::string render_dot(const GraphSpec& spec, const RenderOptions& opt = {}) {
  std::string out = "digraph historiograph {\n";
  out += "  graph [rankdir=TB, label=" + detail::dot_string(opt.title + " (" + detail::threshold_caption(spec) + ")") +
         ", labelloc=t];\n";
  out += "  node [shape=circle, fixedsize=true, fontsize=10];\n";
  out += std::string("  edge [dir=") + (opt.arrowheads ? "forward" : "none") + "];\n";
  if (spec.nodes.empty()) {
    out += "  \"empty\" [shape=plaintext, fixedsize=false, label=\"No nodes meet the selection threshold\"];\n}\n";
    return out;
  }
  for (const auto& [year, ids] : spec.year_rows) {
    out += "  subgraph " + detail::dot_string("year_" + std::to_string(year)) + " {\n    rank=same;\n";
    for (auto id : ids) {
      const auto* g = spec.find(id);
      out += "    " + detail::dot_string(std::to_string(id)) + " [label=" +
             detail::dot_string(std::to_string(id)) + ", width=" + text::fixed2(2 * g->radius / 72.0) +
             ", tooltip=" + detail::dot_string(detail::tooltip(*g)) + "];\n";
    }
    out += "  }\n";
  }
  for (const auto& e : spec.edges)
    out += "  " + detail::dot_string(std::to_string(e.citing)) + " -> " +
           detail::dot_string(std::to_string(e.cited)) + ";\n";
  out += "}\n";
  return out;
}

/// Self-contained page: inline styles, the svg inline, and a node list with
/// an anchor per node.
inline std::string render_html(const GraphSpec& spec, const RenderOptions& opt = {}) {
  if (!spec.nodes.empty() && !spec.positioned)
    throw std::logic_error("html rendering needs a laid out graph");
  using text::html_escape;
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + html_escape(opt.title) + "</title>\n";
  out += "<style>body{font-family:Helvetica,Arial,sans-serif;margin:1.5em;}"
         "table{border-collapse:collapse;}td,th{padding:2px 8px;text-align:left;}"
         "g.node:hover circle{fill:#f5d76e;}</style>\n</head>\n<body>\n";
  out += "<h1>" + html_escape(opt.title) + "</h1>\n";
  out += "<p>" + std::to_string(spec.nodes.size()) + " nodes, " + std::to_string(spec.edges.size()) +
         " links, " + html_escape(detail::threshold_caption(spec)) + ". Hover a circle for its record.</p>\n";
  out += detail::svg_body(spec, opt, false);
  if (!spec.nodes.empty()) {
    out += "<h2>Nodes</h2>\n<table>\n<tr><th>Node</th><th>Year</th><th>Author</th><th>Title</th>"
           "<th>LCS</th><th>GCS</th></tr>\n";
    for (const auto& g : spec.nodes) {
      const auto id = std::to_string(g.id);
      std::string href = opt.node_href ? opt.node_href(g.id) : std::string{};
      std::string cell = href.empty() ? id : "<a href=\"" + html_escape(href) + "\">" + id + "</a>";
      out += "<tr id=\"node-" + id + "\"><td>" + cell + "</td><td>" + std::to_string(g.year) +
             "</td><td>" + html_escape(g.first_author) + "</td><td>" + html_escape(g.title) +
             "</td><td>" + std::to_string(g.lcs) + "</td><td>" + std::to_string(g.gcs) + "</td></tr>\n";
    }
    out += "</table>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

inline std::string render(const GraphSpec& spec, RenderFormat format, const RenderOptions& opt = {}) {
  switch (format) {
    case RenderFormat::Svg: return render_svg(spec, opt);
    case RenderFormat::Dot: return render_dot(spec, opt);
    case RenderFormat::Html: return render_html(spec, opt);
  }
  throw std::invalid_argument("unknown graph format");
}

inline std::string render(const GraphSpec& spec, std::string_view format, const RenderOptions& opt = {}) {
  return render(spec, parse_render_format(format), opt);
}

}  // namespace histograph

#endif  // HISTOGRAPH_HISTORIOGRAPH_HPP
