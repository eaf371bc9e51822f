#ifndef HISTOGRAPH_RANKINGS_HPP
#define HISTOGRAPH_RANKINGS_HPP

// Ranked all-author list (TGCS / TLCS / Pubs) and frequency tables over
// year, document type, country, institution and title words.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "histograph/citation_network.hpp"
#include "histograph/text.hpp"

namespace histograph {

struct AuthorRow {
  std::string name;  // display form
  std::string key;   // normalized author key
  std::int64_t tgcs = 0;
  std::int64_t tlcs = 0;
  std::int64_t pubs = 0;
  std::vector<NodeId> node_ids;
};

enum class AuthorSort { Pubs, Tlcs, Tgcs, Name };

inline AuthorSort parse_author_sort(std::string_view s) {
  if (s == "pubs") return AuthorSort::Pubs;
  if (s == "tlcs") return AuthorSort::Tlcs;
  if (s == "tgcs") return AuthorSort::Tgcs;
  if (s == "name") return AuthorSort::Name;
  throw std::invalid_argument("unknown author sort '" + std::string(s) + "'");
}

inline std::string_view to_string(AuthorSort s) {
  switch (s) {
    case AuthorSort::Pubs: return "pubs";
    case AuthorSort::Tlcs: return "tlcs";
    case AuthorSort::Tgcs: return "tgcs";
    case AuthorSort::Name: return "name";
  }
  return "?";
}

/// Distinct normalized authors of a record, in author order.
inline std::vector<std::string> author_keys(const BibRecord& rec) {
  std::vector<std::string> keys;
  for (const auto& a : rec.authors) {
    auto parts = detail::split_author(a);
    auto key = parts.surname + parts.initials;
    if (key.empty() || std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    keys.push_back(std::move(key));
  }
  return keys;
}

inline void sort_authors(std::vector<AuthorRow>& rows, AuthorSort sort) {
  auto metric = [sort](const AuthorRow& r) -> std::int64_t {
    switch (sort) {
      case AuthorSort::Pubs: return r.pubs;
      case AuthorSort::Tlcs: return r.tlcs;
      case AuthorSort::Tgcs: return r.tgcs;
      case AuthorSort::Name: return 0;
    }
    return 0;
  };
  std::sort(rows.begin(), rows.end(), [&](const AuthorRow& a, const AuthorRow& b) {
    if (auto ma = metric(a), mb = metric(b); ma != mb) return ma > mb;
    return a.key < b.key;
  });
}

/// One row per distinct author over every author position.
inline std::vector<AuthorRow> rank_authors(const CitationNetwork& net,
                                           AuthorSort sort = AuthorSort::Pubs) {
  std::map<std::string, AuthorRow> by_key;
  for (const auto& n : net.nodes) {
    for (const auto& a : n.record.authors) {
      auto parts = detail::split_author(a);
      auto key = parts.surname + parts.initials;
      if (key.empty()) continue;
      auto [it, fresh] = by_key.try_emplace(key);
      auto& row = it->second;
      if (fresh) {
        row.key = key;
        row.name = text::collapse_spaces(a);
      }
      if (!row.node_ids.empty() && row.node_ids.back() == n.id) continue;
      row.node_ids.push_back(n.id);
      row.pubs += 1;
      row.tgcs += n.gcs;
      row.tlcs += n.lcs;
    }
  }
  std::vector<AuthorRow> rows;
  rows.reserve(by_key.size());
  for (auto& [_, row] : by_key) rows.push_back(std::move(row));
  sort_authors(rows, sort);
  return rows;
}

inline std::string authors_csv(const std::vector<AuthorRow>& rows) {
  std::string out = text::csv_row({"rank", "name", "tgcs", "tlcs", "pubs", "nodes"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += text::csv_row({std::to_string(i + 1), r.name, std::to_string(r.tgcs),
                          std::to_string(r.tlcs), std::to_string(r.pubs),
                          text::join(r.node_ids, " ")});
  }
  return out;
}

// ---- frequency tables ------------------------------------------------------

enum class FrequencyField { Year, DocType, Country, Institution, Word };

inline FrequencyField parse_frequency_field(std::string_view s) {
  if (s == "year") return FrequencyField::Year;
  if (s == "doc_type") return FrequencyField::DocType;
  if (s == "country") return FrequencyField::Country;
  if (s == "institution") return FrequencyField::Institution;
  if (s == "word") return FrequencyField::Word;
  throw std::invalid_argument("unknown frequency field '" + std::string(s) + "'");
}

inline std::string_view to_string(FrequencyField f) {
  switch (f) {
    case FrequencyField::Year: return "year";
    case FrequencyField::DocType: return "doc_type";
    case FrequencyField::Country: return "country";
    case FrequencyField::Institution: return "institution";
    case FrequencyField::Word: return "word";
  }
  return "?";
}

inline constexpr std::string_view kUnknownKey = "UNKNOWN";

struct FrequencyRow {
  std::string key;
  std::int64_t count = 0;
  double share = 0.0;  // count / number of records
};

struct FrequencyTable {
  FrequencyField field = FrequencyField::Year;
  std::vector<FrequencyRow> rows;
  std::size_t records = 0;
  std::size_t records_without_data = 0;  // counted under UNKNOWN

  /// Fraction of records that carried data for the field.
  double coverage() const {
    return records == 0 ? 0.0
                        : 1.0 - static_cast<double>(records_without_data) / static_cast<double>(records);
  }
};

using StopwordSet = std::set<std::string, std::less<>>;

inline const StopwordSet& default_stopwords() {
  static const StopwordSet words{
      "a",     "about", "after",  "against", "all",   "also",  "among",   "an",    "and",
      "any",   "are",   "as",     "at",      "be",    "been",  "before",  "being", "between",
      "both",  "but",   "by",     "can",     "de",    "der",   "des",     "did",   "die",
      "do",    "does",  "during", "each",    "et",    "for",   "from",    "had",   "has",
      "have",  "he",    "her",    "his",     "how",   "i",     "if",      "in",    "into",
      "is",    "it",    "its",    "la",      "le",    "les",   "may",     "more",  "most",
      "new",   "no",    "not",    "of",      "on",    "one",   "or",      "other", "our",
      "over",  "some",  "such",   "than",    "that",  "the",   "their",   "them",  "then",
      "there", "these", "they",   "this",    "those", "through", "to",    "two",   "under",
      "und",   "upon",  "use",    "used",    "using", "via",   "was",     "we",    "were",
      "what",  "when",  "where",  "which",   "while", "who",   "why",     "will",  "with",
      "within", "without", "would"};
  return words;
}

/// One word per line; blank lines and lines starting with '#' are skipped.
inline StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read stopword file " + path);
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.insert(text::to_lower(t));
  }
  return words;
}

inline std::vector<std::string> title_words(std::string_view title, const StopwordSet& stopwords) {
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !text::all_digits(cur) && !stopwords.contains(cur) &&
        std::find(words.begin(), words.end(), cur) == words.end())
      words.push_back(cur);
    cur.clear();
  };
  for (char c : title) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) && u < 0x80) cur.push_back(static_cast<char>(std::tolower(u)));
    else flush();
  }
  flush();
  return words;
}

namespace detail {

// Strips a leading "[Author, A; Author, B]" group from newer address lines.
inline std::string_view address_body(std::string_view line) {
  line = text::trim(line);
  if (!line.empty() && line.front() == '[') {
    if (auto close = line.find(']'); close != std::string_view::npos) line = text::trim(line.substr(close + 1));
  }
  return line;
}

inline std::string address_country(std::string_view line) {
  auto parts = text::split(address_body(line), ',');
  auto last = text::collapse_spaces(parts.back());
  while (!last.empty() && (last.back() == '.' || last.back() == ';')) last.pop_back();
  // "MA 02543 USA" style endings
  auto words = text::split_words(last);
  if (!words.empty() && text::to_upper(words.back()) == "USA") return "USA";
  return text::to_upper(last);
}

inline std::string address_institution(std::string_view line) {
  auto parts = text::split(address_body(line), ',');
  return text::to_upper(text::collapse_spaces(parts.front()));
}

}  // namespace detail

/// Counts per key, most frequent first. Country and institution count each
/// record once per distinct value; records lacking the field go to UNKNOWN.
inline FrequencyTable frequency_table(const CitationNetwork& net, FrequencyField field,
                                      const StopwordSet& stopwords = default_stopwords()) {
  FrequencyTable table;
  table.field = field;
  table.records = net.size();
  std::map<std::string, std::int64_t> counts;
  for (const auto& n : net.nodes) {
    std::vector<std::string> keys;
    const auto& rec = n.record;
    switch (field) {
      case FrequencyField::Year: keys.push_back(std::to_string(rec.pub_year)); break;
      case FrequencyField::DocType:
        if (!rec.doc_type.empty()) keys.push_back(rec.doc_type);
        break;
      case FrequencyField::Country:
      case FrequencyField::Institution:
        for (const auto& a : rec.addresses) {
          auto k = field == FrequencyField::Country ? detail::address_country(a)
                                                    : detail::address_institution(a);
          if (!k.empty() && std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        }
        break;
      case FrequencyField::Word: keys = title_words(rec.title, stopwords); break;
    }
    if (keys.empty()) {
      ++table.records_without_data;
      keys.emplace_back(kUnknownKey);
    }
    for (const auto& k : keys) ++counts[k];
  }
  for (const auto& [k, c] : counts) {
    table.rows.push_back(
        {k, c, table.records ? static_cast<double>(c) / static_cast<double>(table.records) : 0.0});
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const FrequencyRow& a, const FrequencyRow& b) { return a.count > b.count; });
  return table;
}

inline std::string frequency_csv(const FrequencyTable& table) {
  std::string out = text::csv_row({std::string(to_string(table.field)), "count", "share"});
  for (const auto& r : table.rows) {
    char share[32];
    std::snprintf(share, sizeof share, "%.4f", r.share);
    out += text::csv_row({r.key, std::to_string(r.count), share});
  }
  return out;
}

}  // namespace histograph

#endif  // HISTOGRAPH_RANKINGS_HPP
