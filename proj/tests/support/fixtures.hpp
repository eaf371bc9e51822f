#ifndef HISTOGRAPH_TESTS_FIXTURES_HPP
#define HISTOGRAPH_TESTS_FIXTURES_HPP

// Corpora shared by the suites: fixed corpora with known node ids and
// counts, plus seeded random corpora for property checks.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "histograph/isi_ingest.hpp"

namespace fixtures {

using histograph::BibRecord;

inline const std::string kJournal = "BIOLOGICAL BULLETIN";

inline BibRecord make_record(std::vector<std::string> authors, int year, int volume, int page,
                             std::int64_t gcs = 0, std::string title = "") {
  BibRecord r;
  r.authors = std::move(authors);
  r.pub_year = year;
  r.volume = std::to_string(volume);
  r.begin_page = std::to_string(page);
  r.source_title = kJournal;
  r.doc_type = "Article";
  r.global_cites = gcs;
  r.title = title.empty() ? "STUDY " + std::to_string(year) + " " + std::to_string(volume) + " " +
                                std::to_string(page)
                          : std::move(title);
  r.record_id = "WOS:" + std::to_string(year) + "-" + std::to_string(volume) + "-" + std::to_string(page);
  return r;
}

/// "Miller, M.A." -> "Miller MA", the author form used in cited references.
inline std::string cr_author(const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '.') continue;
    if (name[i] == ',') {
      out += ' ';
      while (i + 1 < name.size() && name[i + 1] == ' ') ++i;
      continue;
    }
    out += name[i];
  }
  return out;
}

/// The way another record would cite this one.
inline std::string cite(const BibRecord& r, const std::string& source = "BIOL BULL") {
  return cr_author(r.authors.front()) + ", " + std::to_string(r.pub_year) + ", " + source + ", V" + *r.volume +
         ", P" + *r.begin_page;
}

inline std::string stub_author(int id) { return "STUB" + std::to_string(id) + " X"; }

// ---- citation matrix reconstruction ------------------------------------------

struct MatrixRowSpec {
  int id;
  std::string author;
  std::int64_t gcs;
  std::vector<int> cited;
  std::vector<int> citing;
};

inline const std::vector<MatrixRowSpec>& known_matrix_rows() {
  static const std::vector<MatrixRowSpec> rows{
      {1, "VONBONDE C", 3, {}, {17}},
      {4301, "ZEUTHEN E", 5, {1397}, {}},
      {4302, "ATWOOD DG", 20, {3309}, {4547, 4845, 5007, 5810, 7143, 7534}},
      {4303, "BRITZ SJ", 7, {1870}, {}},
      {4304, "BUCK J", 21, {3429}, {4581, 4842, 5169}},
      {4305, "ELDER HY", 33, {3452, 3483, 3874}, {4418}},
      {4306, "FRANCIS L", 111, {4307},
       {4307, 4538, 4717, 4840, 4903, 5002, 5214, 5377, 5380, 5610, 5746, 5782, 6196, 6208, 6213,
        6764, 6766, 6782, 6956, 7292, 7412, 8731}},
      {4307, "FRANCIS L", 140, {4306},
       {4306, 4717, 4840, 4842, 4903, 5002, 5214, 5377, 5380, 5610, 5746, 5782, 5948, 6003, 6142,
        6184, 6196, 6213, 6405, 6764, 6766, 6782, 6941, 6956, 6987, 7065, 7188, 7217, 7292, 8069, 8731}},
      {4308, "FRANZ DR", 14, {}, {6532, 7608, 8444}},
      {4309, "FRIESEN LJ", 19, {}, {}},
  };
  return rows;
}

inline constexpr int kMatrixNodes = 8884;

// Node i gets a year that never decreases with i and page == i, so the
// (year, journal, volume, page) order numbers the records 1..N exactly.
inline int matrix_year(int id) {
  if (id == 1) return 1945;
  if (id <= 4300) return 1945 + (id - 1) * 27 / 4300;
  if (id == 4301) return 1972;
  if (id <= 4309) return 1973;
  return 1973 + (id - 4310) * 31 / 4575;
}

/// 8884 records whose citation matrix reproduces the known rows.
inline std::vector<BibRecord> matrix_corpus() {
  std::map<int, const MatrixRowSpec*> known;
  for (const auto& row : known_matrix_rows()) known[row.id] = &row;

  std::vector<BibRecord> records;
  records.reserve(kMatrixNodes);
  for (int id = 1; id <= kMatrixNodes; ++id) {
    const int year = matrix_year(id);
    auto it = known.find(id);
    std::string author = it != known.end() ? it->second->author : stub_author(id);
    std::int64_t gcs = it != known.end() ? it->second->gcs : id % 47;
    records.push_back(make_record({author}, year, year - 1945 + 88, id, gcs));
  }
  std::map<int, std::set<int>> cites;  // citing -> cited
  for (const auto& row : known_matrix_rows()) {
    for (int c : row.cited) cites[row.id].insert(c);
    for (int c : row.citing) cites[c].insert(row.id);
  }
  for (const auto& [citing, cited] : cites)
    for (int c : cited) records[citing - 1].cited_refs.push_back(cite(records[c - 1]));
  // shuffle input order: numbering must not depend on it
  std::mt19937 rng(7);
  std::shuffle(records.begin(), records.end(), rng);
  return records;
}

// ---- missing-links reconstruction --------------------------------------------

/// 173 records; node 20 cites an unpublished form of node 28 and node 173
/// cites node 69 with the page off by one.
inline std::vector<BibRecord> missing_links_corpus() {
  std::vector<BibRecord> r;
  auto stub = [&](int id, int year, int volume, int page) {
    r.push_back(make_record({stub_author(id)}, year, volume, page));
  };
  for (int id = 1; id <= 19; ++id) stub(id, 1945, 88, 10 * id);
  {
    auto rec = make_record({"SPIEGELMAN S", "STEINBACH HB"}, 1945, 88, 254, 0,
                           "SUBSTRATE-ENZYME ORIENTATION DURING EMBRYONIC DEVELOPMENT");
    rec.issue = "3";
    rec.end_page = "268";
    rec.cited_refs = {"SPIEGELMAN S, 1945, UNPUB BIOL B, V89"};
    r.push_back(rec);
  }
  for (int id = 21; id <= 27; ++id) stub(id, 1945, 88, 300 + 10 * (id - 21));
  r.push_back(make_record({"SPIEGELMAN S"}, 1945, 89, 122));
  for (int id = 29; id <= 47; ++id) stub(id, 1945, 89, 130 + 10 * (id - 29));
  for (int id = 48; id <= 68; ++id) stub(id, 1946, 90, 5 * (id - 47));
  r.push_back(make_record({"MILLER MA"}, 1946, 90, 122));
  for (int id = 70; id <= 90; ++id) stub(id, 1946, 90, 130 + 5 * (id - 70));
  for (int id = 91; id <= 120; ++id) stub(id, 1946, 91, id);
  for (int id = 121; id <= 172; ++id) stub(id, 1947, 92, 2 * (id - 120));
  {
    auto rec = make_record({"LYNCH WF"}, 1947, 92, 115, 0,
                           "THE BEHAVIOR AND METAMORPHOSIS OF THE LARVA OF BUGULA-NERITINA (LINNAEUS)");
    rec.issue = "2";
    rec.end_page = "150";
    rec.cited_refs = {"MILLER MA, 1946, BIOL B, V90, P121"};
    r.push_back(rec);
  }
  std::reverse(r.begin(), r.end());
  return r;
}

// ---- reading-path example ----------------------------------------------------

/// origin 4555 cites {1246, 3281, 3342, 4167}; 4167 cites 3342; 3342 cites
/// 3281. Records are numbered by page as in matrix_corpus().
inline std::vector<BibRecord> reading_path_corpus() {
  constexpr int n = 4555;
  std::vector<BibRecord> records;
  records.reserve(n);
  for (int id = 1; id <= n; ++id) {
    std::string author = id == 4555   ? "WEBSTER SK"
                         : id == 4167 ? "ULBRICHT RJ"
                         : id == 3342 ? "JOHANSEN K"
                         : id == 3281 ? "GIESE AC"
                                      : stub_author(id);
    const int year = 1945 + (id - 1) * 31 / n;
    records.push_back(make_record({author}, year, year - 1945 + 88, id));
  }
  auto link = [&](int citing, int cited) {
    records[citing - 1].cited_refs.push_back(cite(records[cited - 1]));
  };
  for (int c : {1246, 3281, 3342, 4167}) link(4555, c);
  link(4167, 3342);
  link(3342, 3281);
  return records;
}

// ---- ranked author table -----------------------------------------------------

struct AuthorSpec {
  std::string name;
  std::int64_t tgcs;
  std::int64_t tlcs;
  std::int64_t pubs;
};

inline const std::vector<AuthorSpec>& known_author_rows() {
  static const std::vector<AuthorSpec> rows{
      {"Atema J", 612, 122, 68},     {"Inoue S", 221, 17, 63},  {"BROWN FA", 782, 135, 56},
      {"Valiela I", 127, 16, 53},    {"Zigman S", 70, 13, 53},  {"Barlow RB", 228, 41, 51},
      {"STUNKARD HW", 471, 82, 51},  {"KOIDE SS", 108, 11, 47}, {"METZ CB", 310, 39, 45},
      {"Armstrong PB", 75, 15, 43},
  };
  return rows;
}

/// Single-author records for the ten known authors, with GCS and local
/// citations spread so the per-author sums match, plus citing records by
/// one-off authors.
inline std::vector<BibRecord> author_table_corpus() {
  constexpr int kCiters = 8;
  std::vector<BibRecord> records;
  int page = 1;
  std::vector<std::pair<std::size_t, int>> targets;  // (record index, local cites wanted)
  for (const auto& a : known_author_rows()) {
    for (std::int64_t k = 0; k < a.pubs; ++k) {
      std::int64_t gcs = a.tgcs / a.pubs + (k < a.tgcs % a.pubs ? 1 : 0);
      int lcs = static_cast<int>(a.tlcs / a.pubs + (k < a.tlcs % a.pubs ? 1 : 0));
      records.push_back(make_record({a.name}, 1960, 118, page++, gcs));
      targets.emplace_back(records.size() - 1, lcs);
    }
  }
  std::vector<BibRecord> citers;
  for (int c = 0; c < kCiters; ++c)
    citers.push_back(make_record({"CITER" + std::to_string(c) + " Q"}, 1990, 178, c + 1, 0));
  for (auto [idx, lcs] : targets)
    for (int c = 0; c < lcs; ++c) citers[static_cast<std::size_t>(c)].cited_refs.push_back(cite(records[idx]));
  records.insert(records.end(), citers.begin(), citers.end());
  return records;
}

// ---- outer references --------------------------------------------------------

struct OuterSpec {
  std::string ref;
  int citers;
};

inline const std::vector<OuterSpec>& known_outer_rows() {
  static const std::vector<OuterSpec> rows{
      {"LOWRY OH, 1951, J BIOL CHEM, V193, P265", 103},
      {"SOKAL RR, 1981, BIOMETRY", 64},
      {"LAEMMLI UK, 1970, NATURE, V227, P680", 53},
      {"BRADFORD MM, 1976, ANAL BIOCHEM, V72, P248", 51},
      {"THORSON G, 1946, MEDD KOMM DAN FISK P, V4, P1", 51},
      {"LILLIE FR, 1915, BIOL BULL, V28, P22", 12},
  };
  return rows;
}

/// 120 records; row k of known_outer_rows() is cited by the first
/// `citers` of them, some with a second, differently spaced copy.
inline std::vector<BibRecord> outer_corpus() {
  std::vector<BibRecord> records;
  for (int i = 0; i < 120; ++i) {
    auto r = make_record({stub_author(i + 1)}, 1980 + i / 10, 150 + i / 10, i + 1);
    for (const auto& row : known_outer_rows()) {
      if (i >= row.citers) continue;
      r.cited_refs.push_back(row.ref);
      if (i % 7 == 0) r.cited_refs.push_back(" " + row.ref + " ");
    }
    records.push_back(std::move(r));
  }
  return records;
}

// ---- random corpora ----------------------------------------------------------

struct RandomCorpusOptions {
  std::size_t min_records = 1;
  std::size_t max_records = 50;
  bool allow_self_citation = true;
  bool allow_key_duplicates = true;  // same key cited twice by one record
  bool unique_node_keys = false;     // no two records share a strict key
  int max_refs = 8;
};

inline const std::vector<std::string>& author_pool() {
  static const std::vector<std::string> pool{
      "SMITH J",  "Smith, J",   "DOE A",   "VON BONDE C", "VONBONDE C", "MILLER MA", "Miller, M.A.",
      "GIESE AC", "FRANCIS L",  "LI X",    "OBRIEN P",    "O'BRIEN P",  "ZHANG Y",   "KATO T"};
  return pool;
}

inline const std::vector<std::string>& outer_pool() {
  static const std::vector<std::string> pool{
      "LOWRY OH, 1951, J BIOL CHEM, V193, P265", "SOKAL RR, 1981, BIOMETRY",
      "LAEMMLI UK, 1970, NATURE, V227, P680",    "BRADFORD MM, 1976, ANAL BIOCHEM, V72, P248",
      "THORSON G, 1946, MEDD KOMM DAN FISK P, V4, P1", "LILLIE FR, 1915, BIOL BULL, V28, P22",
      "TYLER A, 1941, BIOL BULL, V81, P190",     "SMITH J, 1930, UNPUBLISHED",
      "DOE A, IN PRESS, J EXP ZOOL"};
  return pool;
}

inline std::vector<BibRecord> random_corpus(std::mt19937& rng, const RandomCorpusOptions& opt = {}) {
  auto pick = [&rng](auto lo, auto hi) {
    return std::uniform_int_distribution<long long>(static_cast<long long>(lo), static_cast<long long>(hi))(rng);
  };
  const auto n = static_cast<std::size_t>(pick(opt.min_records, opt.max_records));
  std::vector<BibRecord> records;
  std::set<int> used_pages;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> authors;
    const auto n_auth = pick(1, 3);
    for (long long k = 0; k < n_auth; ++k)
      authors.push_back(author_pool()[static_cast<std::size_t>(pick(0, author_pool().size() - 1))]);
    const int year = static_cast<int>(pick(1945, 1952));
    int page = static_cast<int>(pick(1, 60));
    if (opt.unique_node_keys) {
      while (used_pages.contains(page)) ++page;
      used_pages.insert(page);
    }
    const std::string source = pick(0, 4) == 0 ? "JOURNAL OF EXPERIMENTAL ZOOLOGY" : kJournal;
    auto rec = make_record(authors, year, year - 1857, page, pick(0, 200));
    rec.source_title = source;
    if (pick(0, 9) == 0) rec.addresses.push_back("UNIV PALERMO, IST ZOOL, PALERMO, ITALY");
    if (pick(0, 9) == 0) rec.doc_type = "Meeting Abstract";
    records.push_back(std::move(rec));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::string> keys_used;
    const auto n_refs = pick(0, opt.max_refs);
    for (long long k = 0; k < n_refs; ++k) {
      std::size_t j = static_cast<std::size_t>(pick(0, n - 1));
      if (!opt.allow_self_citation && j == i) continue;
      const auto& t = records[j];
      std::string ref;
      std::string key_probe;
      switch (pick(0, 5)) {
        case 0:
        case 1:
          ref = cite(t);
          break;
        case 2:  // whitespace / source variant, same key
          ref = cr_author(t.authors.front()) + " ,  " + std::to_string(t.pub_year) + ", BIOL B,V" + *t.volume +
                ",  P" + *t.begin_page;
          if (!opt.allow_key_duplicates) ref = cite(t);
          break;
        case 3:  // page off by one
          ref = cr_author(t.authors.front()) + ", " + std::to_string(t.pub_year) + ", BIOL BULL, V" + *t.volume +
                ", P" + std::to_string(std::stoi(*t.begin_page) + 1);
          break;
        case 4:  // page missing
          ref = cr_author(t.authors.front()) + ", " + std::to_string(t.pub_year) + ", UNPUB BIOL B, V" + *t.volume;
          break;
        default:
          ref = outer_pool()[static_cast<std::size_t>(pick(0, outer_pool().size() - 1))];
      }
      auto key = histograph::ref_key(histograph::parse_cited_ref(ref)).canonical;
      if (!opt.allow_key_duplicates && !keys_used.insert(key).second) continue;
      if (!opt.allow_self_citation) {
        // a variant may still hit the citing record's own key
        auto self = histograph::ref_key(histograph::record_as_ref(records[i])).canonical;
        if (key == self) continue;
      }
      records[i].cited_refs.push_back(ref);
    }
    if (opt.allow_key_duplicates && !records[i].cited_refs.empty() && pick(0, 3) == 0)
      records[i].cited_refs.push_back(records[i].cited_refs.front());  // exact duplicate line
  }
  return records;
}

/// Exact duplicate CR lines collapse at parse time; random_corpus may add
/// some, so tests that bypass the parser normalize through it first.
inline std::vector<BibRecord> through_parser(const std::vector<BibRecord>& records) {
  return histograph::parse_export(histograph::write_export(records)).records;
}

}  // namespace fixtures

#endif  // HISTOGRAPH_TESTS_FIXTURES_HPP
