#ifndef HISTOGRAPH_COLLECTION_QC_HPP
#define HISTOGRAPH_COLLECTION_QC_HPP

// Collection audit: outer references (cited works that are not nodes,
// ranked by how many nodes cite them) and missing links (unresolved
// references that nearly match a node and may be the same work).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "histograph/citation_network.hpp"
#include "histograph/text.hpp"

namespace histograph {

// ---- source titles ---------------------------------------------------------

namespace detail {

inline std::vector<std::string> title_tokens(std::string_view s) {
  std::string cleaned;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    cleaned.push_back(std::isalnum(u) && u < 0x80 ? static_cast<char>(std::toupper(u)) : ' ');
  }
  return text::split_words(cleaned);
}

inline bool skippable_title_word(std::string_view w) {
  static const std::set<std::string, std::less<>> words{"OF", "THE", "AND", "FOR", "IN", "ON",
                                                        "A",  "DE",  "DER", "LA",  "LE", "ET"};
  return words.contains(w);
}

}  // namespace detail

/// True when `abbrev` reads as an abbreviation of `title`: each abbreviated
/// token is a prefix of the next significant title token, in order
/// ("BIOL BULL" ~ "BIOLOGICAL BULLETIN", "J BIOL CHEM" ~ "JOURNAL OF
/// BIOLOGICAL CHEMISTRY").
inline bool source_matches(std::string_view abbrev, std::string_view title) {
  auto a = detail::title_tokens(abbrev);
  auto t = detail::title_tokens(title);
  if (a.empty() || t.empty()) return false;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size()) {
    if (j < t.size() && text::starts_with(t[j], a[i])) {
      ++i;
      ++j;
    } else if (j < t.size() && detail::skippable_title_word(t[j])) {
      ++j;
    } else if (detail::skippable_title_word(a[i])) {
      ++i;
    } else {
      return false;
    }
  }
  for (; j < t.size(); ++j)
    if (!detail::skippable_title_word(t[j])) return false;
  return true;
}

// ---- outer references ------------------------------------------------------

struct OuterRef {
  RefKey key;
  std::string display;
  std::size_t local_cites = 0;       // == citing_nodes.size()
  std::vector<NodeId> citing_nodes;  // sorted
  bool in_corpus_source = false;
  std::vector<RefOccurrence> occurrences;  // raw forms as cited
};

struct OuterReport {
  std::vector<OuterRef> entries;  // ranked, truncated to top_n
  std::size_t total_groups = 0;       // distinct keys before truncation
  std::size_t total_occurrences = 0;  // unresolved cited-reference strings
  std::size_t total_incidences = 0;   // distinct (citing node, key) pairs
};

inline constexpr std::size_t kDefaultTopOuter = 300;

inline OuterReport outer_references(const CitationNetwork& net,
                                    std::size_t top_n = kDefaultTopOuter) {
  std::set<std::string> corpus_sources;
  for (const auto& n : net.nodes)
    if (!n.record.source_title.empty()) corpus_sources.insert(text::to_upper(n.record.source_title));

  std::map<std::string, OuterRef> groups;
  for (const auto& occ : net.unresolved) {
    auto key = ref_key(occ.ref);
    auto [it, fresh] = groups.try_emplace(key.canonical);
    auto& g = it->second;
    if (fresh) {
      g.key = key;
      g.display = display_string(occ.ref);
      g.in_corpus_source = std::any_of(corpus_sources.begin(), corpus_sources.end(), [&](const auto& s) {
        return occ.ref.source_abbrev == s || source_matches(occ.ref.source_abbrev, s);
      });
    }
    if (g.citing_nodes.empty() || g.citing_nodes.back() != occ.citing) g.citing_nodes.push_back(occ.citing);
    g.occurrences.push_back(occ);
  }

  OuterReport report;
  report.total_groups = groups.size();
  report.total_occurrences = net.unresolved.size();
  for (auto& [_, g] : groups) {
    g.local_cites = g.citing_nodes.size();
    report.total_incidences += g.local_cites;
    report.entries.push_back(std::move(g));
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const OuterRef& x, const OuterRef& y) {
    if (x.local_cites != y.local_cites) return x.local_cites > y.local_cites;
    return x.key < y.key;
  });
  if (report.entries.size() > top_n) report.entries.resize(top_n);
  return report;
}

/// Substitutes the URL-encoded canonical key for `{key}`.
inline std::string lookup_url(std::string_view tmpl, const RefKey& key) {
  std::string encoded;
  for (unsigned char c : key.canonical) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      encoded.push_back(static_cast<char>(c));
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      encoded += buf;
    }
  }
  std::string out(tmpl);
  for (auto pos = out.find("{key}"); pos != std::string::npos; pos = out.find("{key}", pos + encoded.size()))
    out.replace(pos, 5, encoded);
  return out;
}

inline std::string outer_csv(const OuterReport& report) {
  std::string out = text::csv_row({"rank", "lcs", "reference", "key", "in_corpus_source", "citing_nodes"});
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    out += text::csv_row({std::to_string(i + 1), std::to_string(e.local_cites), e.display,
                          e.key.canonical, e.in_corpus_source ? "true" : "false",
                          text::join(e.citing_nodes, " ")});
  }
  return out;
}

// ---- missing links ---------------------------------------------------------

enum class MatchReason : unsigned {
  PageOffByOne = 1u << 0,
  PageAbsent = 1u << 1,
  VolumeOnly = 1u << 2,
  HyphenationVariant = 1u << 3,
  UnpublishedForm = 1u << 4,
  SourceVariant = 1u << 5,
};

inline constexpr std::initializer_list<MatchReason> kAllMatchReasons{
    MatchReason::PageOffByOne,       MatchReason::PageAbsent,      MatchReason::VolumeOnly,
    MatchReason::HyphenationVariant, MatchReason::UnpublishedForm, MatchReason::SourceVariant};

inline std::string_view reason_name(MatchReason r) {
  switch (r) {
    case MatchReason::PageOffByOne: return "PAGE_OFF_BY_ONE";
    case MatchReason::PageAbsent: return "PAGE_ABSENT";
    case MatchReason::VolumeOnly: return "VOLUME_ONLY";
    case MatchReason::HyphenationVariant: return "HYPHENATION_VARIANT";
    case MatchReason::UnpublishedForm: return "UNPUBLISHED_FORM";
    case MatchReason::SourceVariant: return "SOURCE_VARIANT";
  }
  return "?";
}

class MatchReasons {
 public:
  constexpr MatchReasons() = default;
  constexpr MatchReasons(std::initializer_list<MatchReason> rs) {
    for (auto r : rs) set(r);
  }
  constexpr void set(MatchReason r) { bits_ |= static_cast<unsigned>(r); }
  constexpr bool has(MatchReason r) const { return (bits_ & static_cast<unsigned>(r)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const MatchReasons&) const = default;

  std::string to_string() const {
    std::vector<std::string> names;
    for (auto r : kAllMatchReasons)
      if (has(r)) names.emplace_back(reason_name(r));
    return text::join(names, ",");
  }

 private:
  unsigned bits_ = 0;
};

struct MissingLink {
  CitedRef cited_ref;
  NodeId citing_node = 0;
  NodeId candidate_node = 0;
  MatchReasons reasons;
  RefKey candidate_key;

  /// "MILLER MA, 1946, BIOL B, V90, P121 may refer to [69] MILLER-MA-1946-V90-P122"
  std::string render() const {
    return cited_ref.raw + " may refer to [" + std::to_string(candidate_node) + "] " +
           candidate_key.canonical;
  }
};

struct MissingLinkReport {
  std::vector<MissingLink> links;  // by citing node, then reference order
  std::size_t nodes_with_links = 0;
};

inline constexpr std::size_t kMaxCandidatesPerRef = 5;

namespace detail {

inline bool same_token(const std::optional<std::string>& x, const std::optional<std::string>& y) {
  return x && y && *x == *y;
}

inline bool same_or_both_absent(const std::optional<std::string>& x, const std::optional<std::string>& y) {
  return (!x && !y) || same_token(x, y);
}

inline bool pages_off_by_one(const std::optional<std::string>& x, const std::optional<std::string>& y) {
  if (!x || !y || !text::all_digits(*x) || !text::all_digits(*y) || x->size() > 17 || y->size() > 17)
    return false;
  return std::llabs(*text::parse_int<long long>(*x) - *text::parse_int<long long>(*y)) == 1;
}

}  // namespace detail

/// Tolerant comparison of an unresolved reference against a node whose
/// author key and year already agree with it.
inline MatchReasons tolerant_reasons(const CitedRef& ref, const CitedRef& node) {
  MatchReasons out;
  const bool volume_equal = detail::same_token(ref.volume, node.volume);
  const bool page_equal = detail::same_token(ref.page, node.page);
  const bool off_by_one = volume_equal && detail::pages_off_by_one(ref.page, node.page);

  if (off_by_one) out.set(MatchReason::PageOffByOne);
  if (ref.flags.has(RefFlag::NoPage) && volume_equal) out.set(MatchReason::PageAbsent);
  if (page_equal && (!ref.volume || !node.volume)) out.set(MatchReason::VolumeOnly);
  if ((ref.flags.has(RefFlag::Unpublished) || ref.flags.has(RefFlag::InPress)) && volume_equal)
    out.set(MatchReason::UnpublishedForm);
  if (detail::same_or_both_absent(ref.volume, node.volume) &&
      detail::same_or_both_absent(ref.page, node.page) &&
      !source_matches(ref.source_abbrev, node.source_abbrev))
    out.set(MatchReason::SourceVariant);

  const bool volume_compatible = volume_equal || !ref.volume || !node.volume;
  const bool page_compatible = page_equal || !ref.page || !node.page ||
                               detail::pages_off_by_one(ref.page, node.page);
  if (volume_compatible && page_compatible && ref.author != node.author)
    out.set(MatchReason::HyphenationVariant);
  return out;
}

inline MissingLinkReport missing_links(const CitationNetwork& net,
                                       std::size_t max_candidates = kMaxCandidatesPerRef) {
  std::map<std::pair<std::string, int>, std::vector<NodeId>> by_author_year;
  for (const auto& n : net.nodes)
    if (!n.self_ref.author_key.empty())
      by_author_year[{n.self_ref.author_key, n.record.pub_year}].push_back(n.id);

  MissingLinkReport report;
  std::set<NodeId> citing;
  for (const auto& occ : net.unresolved) {
    const auto& ref = occ.ref;
    if (!ref.year || ref.author_key.empty()) continue;
    auto it = by_author_year.find({ref.author_key, *ref.year});
    if (it == by_author_year.end()) continue;
    std::size_t emitted = 0;
    for (auto cand : it->second) {
      if (cand == occ.citing) continue;
      const auto& node = net.node(cand);
      auto reasons = tolerant_reasons(ref, node.self_ref);
      if (reasons.empty()) continue;
      report.links.push_back({ref, occ.citing, cand, reasons, ref_key(node.self_ref)});
      citing.insert(occ.citing);
      if (++emitted == max_candidates) break;
    }
  }
  report.nodes_with_links = citing.size();
  return report;
}

namespace detail {

// "1945 BIOLOGICAL BULLETIN 88(3):254-268"
inline std::string source_line(const BibRecord& r) {
  std::string out = std::to_string(r.pub_year) + " " + text::to_upper(r.source_title);
  if (r.volume) {
    out += " " + *r.volume;
    if (r.issue) out += "(" + *r.issue + ")";
  }
  if (r.begin_page) {
    out += ":" + *r.begin_page;
    if (r.end_page) out += "-" + *r.end_page;
  }
  return out;
}

}  // namespace detail

/// Plain-text report, one group per citing node.
inline std::string render_missing_links_text(const CitationNetwork& net, const MissingLinkReport& report) {
  std::string out = "Potentially missed citations...\n\n";
  out += std::to_string(report.nodes_with_links) +
         " nodes have citations that may potentially refer to other nodes.\n";
  std::size_t group = 0;
  NodeId current = 0;
  for (const auto& link : report.links) {
    if (link.citing_node != current) {
      current = link.citing_node;
      const auto& n = net.node(current);
      out += "\n" + std::to_string(++group) + " | [" + std::to_string(current) + "] " +
             detail::source_line(n.record) + "\n";
      out += text::to_upper(text::join(n.record.authors, "; ")) + "\n";
      out += text::to_upper(n.record.title) + "\n";
    }
    out += link.render() + "\n";
  }
  return out;
}

}  // namespace histograph

#endif  // HISTOGRAPH_COLLECTION_QC_HPP
