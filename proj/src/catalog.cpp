#include "domecast/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "domecast/error.hpp"
#include "domecast/text.hpp"

namespace domecast {

namespace {

constexpr std::string_view kHeader = "volcano,start_year,duration_yr,status,class,silica_pct";
constexpr std::string_view kAsOfPrefix = "as_of_date:";

std::size_t count_completed(const std::vector<EruptionRecord>& records) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.censored; }));
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw DataError("catalog line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string_view to_string(CompositionClass c) {
  switch (c) {
    case CompositionClass::Mafic:
      return "mafic";
    case CompositionClass::Intermediate:
      return "intermediate";
    case CompositionClass::Evolved:
      return "evolved";
  }
  return "unknown";
}

std::optional<CompositionClass> parse_composition_class(std::string_view s) {
  const std::string lower = text::to_lower(text::trim(s));
  for (CompositionClass c : kAllClasses) {
    if (lower == to_string(c)) return c;
  }
  return std::nullopt;
}

void validate(const EruptionRecord& record) {
  if (!(record.duration > 0.0) || !std::isfinite(record.duration)) {
    throw DataError("duration must be a positive finite number of years");
  }
  if (!std::isfinite(record.start_year)) throw DataError("start_year must be finite");
  if (record.silica_pct) {
    const double x = *record.silica_pct;
    if (!(x >= kMinSilicaPct && x <= kMaxSilicaPct)) {
      throw DataError("silica_pct " + text::format_double(x) + " outside [30, 90]");
    }
  }
}

Catalog::Catalog(std::vector<EruptionRecord> records, std::string as_of_date)
    : records_(std::move(records)), as_of_date_(std::move(as_of_date)) {
  for (const auto& r : records_) validate(r);
  n_completed_ = count_completed(records_);
}

Catalog Catalog::filter(const std::function<bool(const EruptionRecord&)>& keep) const {
  std::vector<EruptionRecord> kept;
  std::copy_if(records_.begin(), records_.end(), std::back_inserter(kept), keep);
  return Catalog(std::move(kept), as_of_date_);
}

Catalog Catalog::of_class(CompositionClass c) const {
  return filter([c](const EruptionRecord& r) { return r.composition == c; });
}

Catalog Catalog::completed_only() const {
  return filter([](const EruptionRecord& r) { return !r.censored; });
}

Catalog Catalog::scaled(double factor) const {
  if (!(factor > 0.0)) throw DataError("duration scale factor must be positive");
  std::vector<EruptionRecord> out = records_;
  for (auto& r : out) r.duration *= factor;
  return Catalog(std::move(out), as_of_date_);
}

Catalog concatenate(const Catalog& a, const Catalog& b) {
  std::vector<EruptionRecord> all = a.records();
  all.insert(all.end(), b.records().begin(), b.records().end());
  return Catalog(std::move(all), a.as_of_date());
}

CatalogSummary summarize(const Catalog& catalog) {
  CatalogSummary s;
  for (const auto& r : catalog.records()) {
    auto& cls = s.by_class[static_cast<std::size_t>(r.composition)];
    ++s.all.total;
    ++cls.total;
    if (r.censored) {
      ++s.all.ongoing;
      ++cls.ongoing;
    } else {
      ++s.all.completed;
      ++cls.completed;
    }
  }
  return s;
}

Catalog parse_catalog(std::istream& in) {
  std::vector<EruptionRecord> records;
  std::string as_of;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const std::string_view view = text::trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      std::string_view body = text::trim(view.substr(1));
      if (body.starts_with(kAsOfPrefix)) as_of = std::string(text::trim(body.substr(kAsOfPrefix.size())));
      continue;
    }
    if (!seen_header) {
      if (text::to_lower(view) != kHeader) {
        fail_at(line_no, "expected header '" + std::string(kHeader) + "'");
      }
      seen_header = true;
      continue;
    }

    auto fields = text::split_csv_line(view);
    if (!fields) fail_at(line_no, "unterminated quoted field");
    if (fields->size() != 6) {
      fail_at(line_no, "expected 6 fields, found " + std::to_string(fields->size()));
    }
    const auto& f = *fields;

    EruptionRecord r;
    r.volcano_name = std::string(text::trim(f[0]));
    if (r.volcano_name.empty()) fail_at(line_no, "empty volcano name");

    auto start = text::parse_double(f[1]);
    if (!start) fail_at(line_no, "bad start_year '" + f[1] + "'");
    r.start_year = *start;

    auto duration = text::parse_double(f[2]);
    if (!duration) fail_at(line_no, "bad duration_yr '" + f[2] + "'");
    r.duration = *duration;

    const std::string status = text::to_lower(text::trim(f[3]));
    if (status == "completed") {
      r.censored = false;
    } else if (status == "ongoing") {
      r.censored = true;
    } else {
      fail_at(line_no, "status must be 'completed' or 'ongoing', got '" + f[3] + "'");
    }

    auto cls = parse_composition_class(f[4]);
    if (!cls) fail_at(line_no, "unknown composition class '" + f[4] + "'");
    r.composition = *cls;

    if (!text::trim(f[5]).empty()) {
      auto silica = text::parse_double(f[5]);
      if (!silica) fail_at(line_no, "bad silica_pct '" + f[5] + "'");
      r.silica_pct = *silica;
    }

    try {
      validate(r);
    } catch (const DataError& e) {
      fail_at(line_no, e.what());
    }
    records.push_back(std::move(r));
  }

  if (!seen_header) throw DataError("empty catalog: missing header");
  if (records.empty()) throw DataError("empty catalog");
  return Catalog(std::move(records), std::move(as_of));
}

Catalog parse_catalog(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_catalog(in);
}

Catalog read_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open catalog '" + path + "'");
  return parse_catalog(in);
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
  if (!catalog.as_of_date().empty()) out << "# " << kAsOfPrefix << ' ' << catalog.as_of_date() << '\n';
  out << kHeader << '\n';
  for (const auto& r : catalog.records()) {
    out << text::csv_field(r.volcano_name) << ',' << text::format_double(r.start_year) << ','
        << text::format_double(r.duration) << ',' << (r.censored ? "ongoing" : "completed") << ','
        << to_string(r.composition) << ',';
    if (r.silica_pct) out << text::format_double(*r.silica_pct);
    out << '\n';
  }
}

std::string serialize_catalog(const Catalog& catalog) {
  std::ostringstream out;
  write_catalog(out, catalog);
  return out.str();
}

namespace {

constexpr std::array<LongDurationEntry, 38> kLongDurations = {{
    {5.0, 1310, "OKATAINA", false},
    {5.4, 1970, "KARANGETANG [API SIAU]", false},
    {5.4, 1870, "CEBORUCO, VOLCAN", false},
    {5.4, 1991, "SOPUTAN", false},
    {5.4, 1944, "SHIVELUCH", false},
    {5.5, 1951, "LAMINGTON", false},
    {6.0, 1872, "SINARKA", false},
    {6.6, 1980, "ST. HELENS", false},
    {7.1, 1994, "ETNA", false},
    {8.6, 1984, "LASCAR", false},
    {8.7, 1897, "DONA JUANA", false},
    {10.2, 2005, "POPOCATEPETL", true},
    {10.3, 2004, "REVENTADOR", true},
    {11.3, 2000, "SOPUTAN", false},
    {12.4, 1970, "KARYMSKY", false},
    {13.0, 1973, "CHILLAN, NEVADOS DE", false},
    {13.2, 2002, "FUEGO", true},
    {13.3, 2001, "KARYMSKY", true},
    {15.4, 1999, "MAYON", false},
    {16.2, 1998, "IBU", true},
    {18.5, 1913, "COLIMA", false},
    {19.7, 1995, "SOUFRIERE HILLS", true},
    {23.0, 1972, "BAGANA", false},
    {23.7, 1991, "KARANGETANG [API SIAU]", true},
    {27.0, 1883, "BOGOSLOF", false},
    {27.1, 1796, "BOGOSLOF", false},
    {27.6, 1973, "LANGILA", false},
    {34.6, 1980, "SHIVELUCH", true},
    {40.0, 1869, "COLIMA", false},
    {42.5, 1968, "ARENAL", false},
    {45.0, 1890, "VICTORY", false},
    {57.8, 1957, "COLIMA", true},
    {59.4, 1955, "BEZYMIANNY", true},
    {68.4, 1946, "SEMERU", true},
    {78.8, 1934, "SANGAY", false},
    {92.7, 1922, "SANTA MARIA [SANTIAGUITO]", true},
    {187.7, 1728, "SANGAY", false},
    {246.6, 1768, "MERAPI", true},
}};

}  // namespace

std::span<const LongDurationEntry> long_duration_fixture() { return kLongDurations; }

}  // namespace domecast
