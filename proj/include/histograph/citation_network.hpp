#ifndef HISTOGRAPH_CITATION_NETWORK_HPP
#define HISTOGRAPH_CITATION_NETWORK_HPP

// Numbered citation network: nodes sorted by (year, journal, volume, page),
// cited references resolved by strict key match, and the paged citation
// matrix view with cited/citing lists and LCS/GCS per node.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "histograph/isi_ingest.hpp"
#include "histograph/text.hpp"

namespace histograph {

using NodeId = std::int32_t;

struct Node {
  NodeId id = 0;
  BibRecord record;
  CitedRef self_ref;  // the record described as a cited reference
  std::int64_t lcs = 0;
  std::int64_t gcs = 0;
  std::vector<NodeId> cited_nodes;   // sorted
  std::vector<NodeId> citing_nodes;  // sorted

  /// "4306 1973 FRANCIS L"
  std::string label() const {
    std::string out = std::to_string(id) + " " + std::to_string(record.pub_year);
    if (!record.authors.empty()) out += " " + record.authors.front();
    return out;
  }
};

struct Edge {
  NodeId citing = 0;
  NodeId cited = 0;
  auto operator<=>(const Edge&) const = default;
};

struct RefOccurrence {
  NodeId citing = 0;
  CitedRef ref;
};

struct CitationNetwork {
  std::vector<Node> nodes;               // nodes[i].id == i + 1
  std::vector<Edge> edges;               // sorted, distinct
  std::vector<RefOccurrence> unresolved;  // in citing-node, then source order
  std::vector<RefOccurrence> self_citations;
  std::size_t resolved_occurrences = 0;
  std::vector<std::string> warnings;

  std::size_t size() const { return nodes.size(); }
  bool contains(NodeId id) const { return id >= 1 && static_cast<std::size_t>(id) <= nodes.size(); }
  const Node& node(NodeId id) const {
    if (!contains(id)) throw std::out_of_range("no node " + std::to_string(id));
    return nodes[static_cast<std::size_t>(id - 1)];
  }
  std::size_t total_cited_refs() const {
    return resolved_occurrences + self_citations.size() + unresolved.size();
  }
};

namespace detail {

// Absent < numeric < text, so the order stays total for mixed values.
struct NumberOrder {
  int kind = 0;
  long long number = 0;
  std::string text;
  auto operator<=>(const NumberOrder&) const = default;
};

inline NumberOrder number_order(const std::optional<std::string>& v) {
  if (!v) return {};
  auto t = text::trim(*v);
  if (text::all_digits(t) && t.size() < 18) return {1, *text::parse_int<long long>(t), {}};
  return {2, 0, text::to_lower(text::normalize_number_token(t))};
}

inline auto node_sort_key(const BibRecord& r, const CitedRef& self) {
  return std::make_tuple(r.pub_year, text::to_lower(text::collapse_spaces(r.source_title)),
                         number_order(r.volume), number_order(r.begin_page), self.author_key,
                         text::to_lower(r.title));
}

}  // namespace detail

/// Strict-match index over nodes keyed by (first-author key, year, volume,
/// begin page). Nodes missing any of the four are not indexed.
class MatchIndex {
 public:
  MatchIndex() = default;
  explicit MatchIndex(const std::vector<Node>& nodes) {
    for (const auto& n : nodes)
      if (auto k = key_of(n.self_ref)) by_key_[*k].push_back(n.id);
  }

  static std::optional<std::string> key_of(const CitedRef& ref) {
    if (ref.author_key.empty() || !ref.year || !ref.volume || !ref.page) return std::nullopt;
    return ref.author_key + '\x1f' + std::to_string(*ref.year) + '\x1f' + *ref.volume + '\x1f' +
           *ref.page;
  }

  std::span<const NodeId> lookup(const CitedRef& ref) const {
    auto k = key_of(ref);
    if (!k) return {};
    auto it = by_key_.find(*k);
    if (it == by_key_.end()) return {};
    return it->second;
  }

 private:
  std::unordered_map<std::string, std::vector<NodeId>> by_key_;
};

/// Exact match on author, year, volume and page. Near misses are left for
/// the missing-links audit. Ambiguous keys resolve to the lowest node id.
inline std::optional<NodeId> resolve_reference(const CitedRef& ref, const MatchIndex& index,
                                               std::vector<std::string>* warnings = nullptr) {
  auto hits = index.lookup(ref);
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1 && warnings) {
    warnings->push_back("reference '" + ref.raw + "' matches " + std::to_string(hits.size()) +
                        " nodes (" + text::join(hits, ", ") + "); using node " +
                        std::to_string(hits.front()));
  }
  return hits.front();
}

inline CitationNetwork build_network(std::vector<BibRecord> records) {
  CitationNetwork net;

  std::vector<CitedRef> selves;
  selves.reserve(records.size());
  for (const auto& r : records) selves.push_back(record_as_ref(r));
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  {
    std::vector<decltype(detail::node_sort_key(records[0], selves[0]))> keys;
    keys.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
      keys.push_back(detail::node_sort_key(records[i], selves[i]));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (auto c = keys[a] <=> keys[b]; c != 0) return c < 0;
      return records[a] < records[b];
    });
  }

  net.nodes.reserve(records.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    Node n;
    n.id = static_cast<NodeId>(pos + 1);
    n.record = std::move(records[order[pos]]);
    n.self_ref = std::move(selves[order[pos]]);
    n.gcs = n.record.global_cites;
    net.nodes.push_back(std::move(n));
  }

  const MatchIndex index(net.nodes);
  std::set<Edge> edges;
  for (const auto& n : net.nodes) {
    for (const auto& raw : n.record.cited_refs) {
      CitedRef ref = parse_cited_ref(raw);
      auto target = resolve_reference(ref, index, &net.warnings);
      if (!target) {
        net.unresolved.push_back({n.id, std::move(ref)});
      } else if (*target == n.id) {
        net.self_citations.push_back({n.id, std::move(ref)});
      } else {
        ++net.resolved_occurrences;
        edges.insert({n.id, *target});
      }
    }
  }
  net.edges.assign(edges.begin(), edges.end());
  for (const auto& e : net.edges) {
    net.nodes[static_cast<std::size_t>(e.citing - 1)].cited_nodes.push_back(e.cited);
    net.nodes[static_cast<std::size_t>(e.cited - 1)].citing_nodes.push_back(e.citing);
  }
  for (auto& n : net.nodes) {
    std::sort(n.citing_nodes.begin(), n.citing_nodes.end());
    n.lcs = static_cast<std::int64_t>(n.citing_nodes.size());
  }
  return net;
}

// ---- citation matrix -------------------------------------------------------

struct MatrixRow {
  std::vector<NodeId> cited_nodes;
  std::size_t cited_count = 0;
  NodeId node_id = 0;
  int year = 0;
  std::string first_author;
  std::int64_t gcs = 0;
  std::int64_t lcs = 0;
  std::vector<NodeId> citing_nodes;

  std::string label() const {
    std::string out = std::to_string(node_id) + " " + std::to_string(year);
    if (!first_author.empty()) out += " " + first_author;
    return out;
  }
};

inline constexpr std::size_t kDefaultPageSize = 500;

inline std::size_t page_count(std::size_t node_count, std::size_t page_size) {
  if (page_size == 0) throw std::invalid_argument("page size must be at least 1");
  return (node_count + page_size - 1) / page_size;
}

/// Page of the matrix that lists the given node (1-based).
inline std::size_t page_of(NodeId id, std::size_t page_size) {
  return (static_cast<std::size_t>(id) - 1) / page_size + 1;
}

inline MatrixRow matrix_row(const Node& n) {
  MatrixRow row;
  row.cited_nodes = n.cited_nodes;
  row.cited_count = n.cited_nodes.size();
  row.node_id = n.id;
  row.year = n.record.pub_year;
  row.first_author = n.record.authors.empty() ? std::string{} : n.record.authors.front();
  row.gcs = n.gcs;
  row.lcs = n.lcs;
  row.citing_nodes = n.citing_nodes;
  return row;
}

inline std::vector<MatrixRow> matrix_rows(const CitationNetwork& net, std::size_t page,
                                          std::size_t page_size) {
  const auto pages = page_count(net.size(), page_size);
  if (page < 1 || page > pages)
    throw std::out_of_range("page " + std::to_string(page) + " outside 1.." + std::to_string(pages));
  std::vector<MatrixRow> rows;
  const auto first = (page - 1) * page_size;
  const auto last = std::min(net.size(), first + page_size);
  for (auto i = first; i < last; ++i) rows.push_back(matrix_row(net.nodes[i]));
  return rows;
}

/// Tab-separated row in the column order
/// cited nodes, count, node, GCS, LCS, citing nodes.
inline std::string format_matrix_row(const MatrixRow& row) {
  return text::join(row.cited_nodes, " ") + '\t' + std::to_string(row.cited_count) + '\t' +
         row.label() + '\t' + std::to_string(row.gcs) + '\t' + std::to_string(row.lcs) + '\t' +
         text::join(row.citing_nodes, " ");
}

// ---- serialization ---------------------------------------------------------

inline nlohmann::json ref_to_json(const CitedRef& ref) {
  nlohmann::json j;
  j["raw"] = ref.raw;
  j["author_key"] = ref.author_key;
  j["year"] = ref.year ? nlohmann::json(*ref.year) : nlohmann::json(nullptr);
  j["source"] = ref.source_abbrev;
  j["volume"] = ref.volume ? nlohmann::json(*ref.volume) : nlohmann::json(nullptr);
  j["page"] = ref.page ? nlohmann::json(*ref.page) : nlohmann::json(nullptr);
  j["key"] = ref_key(ref).canonical;
  auto flags = nlohmann::json::array();
  for (auto f : {RefFlag::Unpublished, RefFlag::InPress, RefFlag::NoPage, RefFlag::NoVolume,
                 RefFlag::NoYear})
    if (ref.flags.has(f)) flags.push_back(flag_name(f));
  j["flags"] = flags;
  return j;
}

/// Machine-readable dump of nodes, adjacency and unresolved references.
/// Object keys are emitted sorted, so the text is stable across runs.
inline nlohmann::json network_to_json(const CitationNetwork& net) {
  nlohmann::json j;
  auto nodes = nlohmann::json::array();
  for (const auto& n : net.nodes) {
    nlohmann::json jn;
    jn["id"] = n.id;
    jn["record_id"] = n.record.record_id;
    jn["year"] = n.record.pub_year;
    jn["authors"] = n.record.authors;
    jn["title"] = n.record.title;
    jn["source"] = n.record.source_title;
    jn["doc_type"] = n.record.doc_type;
    jn["volume"] = n.record.volume ? nlohmann::json(*n.record.volume) : nlohmann::json(nullptr);
    jn["begin_page"] =
        n.record.begin_page ? nlohmann::json(*n.record.begin_page) : nlohmann::json(nullptr);
    jn["key"] = ref_key(n.self_ref).canonical;
    jn["gcs"] = n.gcs;
    jn["lcs"] = n.lcs;
    jn["cited_nodes"] = n.cited_nodes;
    jn["citing_nodes"] = n.citing_nodes;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  auto edges = nlohmann::json::array();
  for (const auto& e : net.edges) edges.push_back({e.citing, e.cited});
  j["edges"] = std::move(edges);
  auto unresolved = nlohmann::json::array();
  for (const auto& u : net.unresolved) {
    auto ju = ref_to_json(u.ref);
    ju["citing"] = u.citing;
    unresolved.push_back(std::move(ju));
  }
  j["unresolved"] = std::move(unresolved);
  j["node_count"] = net.size();
  j["edge_count"] = net.edges.size();
  j["self_citations_dropped"] = net.self_citations.size();
  return j;
}

}  // namespace histograph

#endif  // HISTOGRAPH_CITATION_NETWORK_HPP
