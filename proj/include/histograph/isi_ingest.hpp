#ifndef HISTOGRAPH_ISI_INGEST_HPP
#define HISTOGRAPH_ISI_INGEST_HPP

// Reader for tagged plain-text bibliographic exports (two-letter field tags
// at column 0, indented continuation lines, ER/EF terminators) and for the
// comma-separated cited-reference strings found in their CR fields.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "histograph/text.hpp"

namespace histograph {

struct BibRecord {
  std::string record_id;
  std::vector<std::string> authors;  // as printed, one per AU line
  std::string title;
  std::string source_title;
  std::string doc_type;
  int pub_year = 0;
  std::optional<std::string> volume;
  std::optional<std::string> issue;
  std::optional<std::string> begin_page;
  std::optional<std::string> end_page;
  std::vector<std::string> addresses;
  std::int64_t global_cites = 0;
  std::vector<std::string> cited_refs;
  // Tags the reader does not interpret, kept in file order for re-export.
  std::vector<std::pair<std::string, std::vector<std::string>>> extra_fields;

  auto operator<=>(const BibRecord&) const = default;
};

struct ParseWarning {
  std::size_t line = 0;
  std::string message;

  std::string to_string() const { return "WARN " + std::to_string(line) + ": " + message; }
  bool operator==(const ParseWarning&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParseResult {
  std::vector<BibRecord> records;
  std::vector<ParseWarning> warnings;
};

enum class RefFlag : unsigned {
  Unpublished = 1u << 0,
  InPress = 1u << 1,
  NoPage = 1u << 2,
  NoVolume = 1u << 3,
  NoYear = 1u << 4,
};

class RefFlags {
 public:
  constexpr RefFlags() = default;
  constexpr RefFlags(std::initializer_list<RefFlag> flags) {
    for (auto f : flags) set(f);
  }
  constexpr void set(RefFlag f) { bits_ |= static_cast<unsigned>(f); }
  constexpr bool has(RefFlag f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
  constexpr unsigned bits() const { return bits_; }
  constexpr bool operator==(const RefFlags&) const = default;

 private:
  unsigned bits_ = 0;
};

inline std::string flag_name(RefFlag f) {
  switch (f) {
    case RefFlag::Unpublished: return "UNPUBLISHED";
    case RefFlag::InPress: return "IN_PRESS";
    case RefFlag::NoPage: return "NO_PAGE";
    case RefFlag::NoVolume: return "NO_VOLUME";
    case RefFlag::NoYear: return "NO_YEAR";
  }
  return "?";
}

struct CitedRef {
  std::string raw;
  std::string author;      // printed form: upper-case, no commas/periods, single spaces
  std::string surname;     // [A-Z0-9]*
  std::string initials;    // [A-Z0-9]*
  std::string author_key;  // surname + initials
  std::optional<int> year;
  std::string source_abbrev;
  std::optional<std::string> volume;  // normalized, without the V prefix
  std::optional<std::string> page;    // normalized, without the P prefix
  RefFlags flags;

  bool operator==(const CitedRef&) const = default;
};

struct RefKey {
  std::string canonical;
  auto operator<=>(const RefKey&) const = default;
};

inline constexpr int kMinPlausibleYear = 1500;
inline constexpr int kMaxPlausibleYear = 2099;

namespace detail {

struct AuthorParts {
  std::string printed;
  std::string surname;
  std::string initials;
};

// "SURNAME INITIALS" or "Surname, Initials"; periods are dropped.
inline AuthorParts split_author(std::string_view name) {
  std::string cleaned;
  for (char c : name)
    if (c != '.') cleaned.push_back(c);
  AuthorParts parts;
  std::string surname;
  std::string initials;
  if (auto comma = cleaned.find(','); comma != std::string::npos) {
    surname = cleaned.substr(0, comma);
    initials = cleaned.substr(comma + 1);
  } else {
    auto words = text::split_words(cleaned);
    if (words.size() >= 2) {
      initials = words.back();
      words.pop_back();
    }
    surname = text::join(words, " ");
  }
  std::string printed = text::collapse_spaces(surname);
  if (auto ini = text::collapse_spaces(initials); !ini.empty()) printed += " " + ini;
  parts.printed = text::to_upper(printed);
  parts.surname = text::alnum_key(surname);
  parts.initials = text::alnum_key(initials);
  return parts;
}

inline bool is_plausible_year(std::string_view s) {
  if (s.size() != 4 || !text::all_digits(s)) return false;
  int y = *text::parse_int<int>(s);
  return y >= kMinPlausibleYear && y <= kMaxPlausibleYear;
}

// "V193", "V 12", "P265", "PA12": a prefix letter followed by one token
// containing a digit.
inline std::optional<std::string> prefixed_number(std::string_view seg, char prefix) {
  if (seg.size() < 2 || seg.front() != prefix) return std::nullopt;
  auto rest = text::trim(seg.substr(1));
  if (rest.empty() || rest.find(' ') != std::string_view::npos) return std::nullopt;
  if (std::none_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return text::normalize_number_token(rest);
}

inline const std::set<std::string, std::less<>>& known_tags() {
  static const std::set<std::string, std::less<>> tags{"UT", "AU", "TI", "SO", "DT", "PY", "VL",
                                                       "IS", "BP", "EP", "C1", "TC", "CR"};
  return tags;
}

inline bool valid_tag(std::string_view tag) {
  return tag.size() == 2 && std::all_of(tag.begin(), tag.end(), [](char c) {
           return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
         });
}

struct PendingRecord {
  std::size_t start_line = 0;
  std::vector<std::pair<std::string, std::vector<std::string>>> fields;

  std::vector<std::string>* find(std::string_view tag) {
    for (auto& [t, v] : fields)
      if (t == tag) return &v;
    return nullptr;
  }
};

inline std::string joined(const std::vector<std::string>* values) {
  return values ? text::collapse_spaces(text::join(*values, " ")) : std::string{};
}

inline std::optional<std::string> optional_field(PendingRecord& rec, std::string_view tag) {
  auto v = joined(rec.find(tag));
  if (v.empty()) return std::nullopt;
  return v;
}

inline std::optional<BibRecord> finish_record(PendingRecord& rec, std::size_t end_line,
                                              std::vector<ParseWarning>& warnings) {
  BibRecord out;
  auto py = joined(rec.find("PY"));
  if (py.empty()) {
    warnings.push_back({rec.start_line, "record ending at line " + std::to_string(end_line) +
                                            " has no PY field; skipped"});
    return std::nullopt;
  }
  if (py.size() != 4 || !text::all_digits(py)) {
    warnings.push_back({rec.start_line, "record has malformed PY '" + py + "'; skipped"});
    return std::nullopt;
  }
  out.pub_year = *text::parse_int<int>(py);

  out.record_id = joined(rec.find("UT"));
  if (auto* au = rec.find("AU"))
    for (auto& a : *au)
      if (auto t = text::collapse_spaces(a); !t.empty()) out.authors.push_back(std::move(t));
  out.title = joined(rec.find("TI"));
  out.source_title = joined(rec.find("SO"));
  out.doc_type = joined(rec.find("DT"));
  out.volume = optional_field(rec, "VL");
  out.issue = optional_field(rec, "IS");
  out.begin_page = optional_field(rec, "BP");
  out.end_page = optional_field(rec, "EP");
  if (auto* c1 = rec.find("C1"))
    for (auto& a : *c1)
      if (auto t = text::collapse_spaces(a); !t.empty()) out.addresses.push_back(std::move(t));
  if (auto tc = joined(rec.find("TC")); !tc.empty()) {
    auto n = text::parse_int<std::int64_t>(tc);
    if (n && *n >= 0) {
      out.global_cites = *n;
    } else {
      warnings.push_back({rec.start_line, "malformed TC '" + tc + "' treated as 0"});
    }
  }
  if (auto* cr = rec.find("CR")) {
    std::set<std::string, std::less<>> seen;
    for (auto& line : *cr) {
      auto t = std::string(text::trim(line));
      if (t.empty() || !seen.insert(t).second) continue;
      out.cited_refs.push_back(std::move(t));
    }
  }
  for (auto& [tag, values] : rec.fields)
    if (!known_tags().contains(tag)) out.extra_fields.emplace_back(tag, values);
  return out;
}

}  // namespace detail

/// Parses a tagged export. Structural problems throw ParseError; records
/// without a usable PY are dropped with a warning.
inline ParseResult parse_export(std::string_view input) {
  const std::string text = text::sanitize_utf8(input);
  std::string_view rest = text;
  if (text::starts_with(rest, "\xEF\xBB\xBF")) rest.remove_prefix(3);

  ParseResult result;
  std::optional<detail::PendingRecord> current;
  std::string last_tag;
  std::size_t line_no = 0;

  while (!rest.empty()) {
    auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;

    if (text::is_space(line.front())) {
      if (last_tag.empty()) throw ParseError(line_no, "continuation line before any field tag");
      if (current) current->find(last_tag)->emplace_back(text::trim(line));
      continue;
    }

    std::string_view tag = line.substr(0, 2);
    if (!detail::valid_tag(tag) || (line.size() > 2 && line[2] != ' '))
      throw ParseError(line_no, "malformed field tag");
    std::string_view value = line.size() > 3 ? text::trim(line.substr(3)) : std::string_view{};

    if (tag == "EF") {
      if (current) throw ParseError(line_no, "missing ER before EF");
      break;
    }
    if (tag == "ER") {
      if (!current) {
        result.warnings.push_back({line_no, "ER without an open record"});
      } else {
        if (auto rec = detail::finish_record(*current, line_no, result.warnings))
          result.records.push_back(std::move(*rec));
        current.reset();
      }
      last_tag.clear();
      continue;
    }
    if (!current && (tag == "FN" || tag == "VR")) {
      // file header; continuation lines of it are discarded
      last_tag = std::string(tag);
      continue;
    }
    if (!current) {
      current.emplace();
      current->start_line = line_no;
    }
    last_tag = std::string(tag);
    if (auto* values = current->find(tag)) {
      values->emplace_back(value);
    } else {
      current->fields.emplace_back(std::string(tag), std::vector<std::string>{std::string(value)});
    }
  }
  if (current) throw ParseError(line_no, "missing ER at end of input");
  return result;
}

/// Writes records back in the tagged format read by parse_export.
inline std::string write_export(const std::vector<BibRecord>& records) {
  std::string out = "FN Exported by histograph\nVR 1.0\n";
  auto field = [&out](std::string_view tag, const std::vector<std::string>& values) {
    bool first = true;
    for (const auto& v : values) {
      if (v.empty()) continue;
      out += first ? std::string(tag) + " " : std::string("   ");
      out += v;
      out += '\n';
      first = false;
    }
  };
  auto single = [&field](std::string_view tag, const std::string& v) { field(tag, {v}); };
  auto optional = [&single](std::string_view tag, const std::optional<std::string>& v) {
    if (v) single(tag, *v);
  };
  for (const auto& r : records) {
    field("AU", r.authors);
    single("TI", r.title);
    single("SO", r.source_title);
    single("DT", r.doc_type);
    field("C1", r.addresses);
    field("CR", r.cited_refs);
    single("TC", std::to_string(r.global_cites));
    single("PY", std::to_string(r.pub_year));
    optional("VL", r.volume);
    optional("IS", r.issue);
    optional("BP", r.begin_page);
    optional("EP", r.end_page);
    single("UT", r.record_id);
    for (const auto& [tag, values] : r.extra_fields) field(tag, values);
    out += "ER\n\n";
  }
  out += "EF\n";
  return out;
}

/// Normalized author match key: upper-case with everything but [A-Z0-9]
/// removed. Applying it twice changes nothing.
inline std::string normalize_author(std::string_view name) { return text::alnum_key(name); }

/// Total parse of one cited-reference string such as
/// "LOWRY OH, 1951, J BIOL CHEM, V193, P265". Missing components become flags.
inline CitedRef parse_cited_ref(std::string_view raw) {
  CitedRef ref;
  ref.raw = std::string(raw);
  auto segments = text::split(raw, ',');
  for (auto& s : segments) s = text::collapse_spaces(s);

  auto author = detail::split_author(segments.empty() ? std::string_view{} : segments.front());
  ref.author = author.printed;
  ref.surname = author.surname;
  ref.initials = author.initials;
  ref.author_key = author.surname + author.initials;

  std::vector<std::string> source_parts;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    std::string seg = text::to_upper(segments[i]);
    if (seg.empty()) continue;
    if (!ref.year && detail::is_plausible_year(seg)) {
      ref.year = *text::parse_int<int>(seg);
    } else if (auto v = ref.volume ? std::nullopt : detail::prefixed_number(seg, 'V')) {
      ref.volume = std::move(v);
    } else if (auto p = ref.page ? std::nullopt : detail::prefixed_number(seg, 'P')) {
      ref.page = std::move(p);
    } else if (text::starts_with(seg, "DOI ") || text::starts_with(seg, "DOI:") ||
               text::all_digits(seg)) {
      // identifiers and stray numbers carry no matching information
    } else {
      source_parts.push_back(std::move(seg));
    }
  }
  ref.source_abbrev = text::join(source_parts, ", ");

  for (const auto& w : text::split_words(ref.source_abbrev))
    if (text::starts_with(w, "UNPUB")) ref.flags.set(RefFlag::Unpublished);
  if (ref.source_abbrev.find("IN PRESS") != std::string::npos) ref.flags.set(RefFlag::InPress);
  if (!ref.year) ref.flags.set(RefFlag::NoYear);
  if (!ref.volume) ref.flags.set(RefFlag::NoVolume);
  if (!ref.page) ref.flags.set(RefFlag::NoPage);
  return ref;
}

/// The record itself, described as if it were cited: first author, year,
/// source, volume and begin page.
inline CitedRef record_as_ref(const BibRecord& rec) {
  CitedRef ref;
  auto author = detail::split_author(rec.authors.empty() ? std::string_view{} : rec.authors.front());
  ref.author = author.printed;
  ref.surname = author.surname;
  ref.initials = author.initials;
  ref.author_key = author.surname + author.initials;
  ref.year = rec.pub_year;
  ref.source_abbrev = text::to_upper(text::collapse_spaces(rec.source_title));
  if (rec.volume) {
    auto v = text::normalize_number_token(*rec.volume);
    if (!v.empty()) ref.volume = v;
  }
  if (rec.begin_page) {
    auto p = text::normalize_number_token(*rec.begin_page);
    if (!p.empty()) ref.page = p;
  }
  if (!ref.volume) ref.flags.set(RefFlag::NoVolume);
  if (!ref.page) ref.flags.set(RefFlag::NoPage);
  ref.raw = ref.author + ", " + std::to_string(rec.pub_year) + ", " + ref.source_abbrev;
  if (ref.volume) ref.raw += ", V" + *ref.volume;
  if (ref.page) ref.raw += ", P" + *ref.page;
  return ref;
}

/// SURNAME-INITIALS-YEAR-Vvolume-Ppage, absent parts omitted.
inline RefKey ref_key(const CitedRef& ref) {
  std::vector<std::string> parts;
  if (!ref.surname.empty()) parts.push_back(ref.surname);
  if (!ref.initials.empty()) parts.push_back(ref.initials);
  if (ref.year) parts.push_back(std::to_string(*ref.year));
  if (ref.volume) parts.push_back("V" + *ref.volume);
  if (ref.page) parts.push_back("P" + *ref.page);
  return RefKey{text::join(parts, "-")};
}

/// Display form rebuilt from parsed fields: "LOWRY OH, 1951, J BIOL CHEM, V193, P265".
inline std::string display_string(const CitedRef& ref) {
  std::vector<std::string> parts;
  if (!ref.author.empty()) parts.push_back(ref.author);
  if (ref.year) parts.push_back(std::to_string(*ref.year));
  if (!ref.source_abbrev.empty()) parts.push_back(ref.source_abbrev);
  if (ref.volume) parts.push_back("V" + *ref.volume);
  if (ref.page) parts.push_back("P" + *ref.page);
  return text::join(parts, ", ");
}

}  // namespace histograph

#endif  // HISTOGRAPH_ISI_INGEST_HPP
