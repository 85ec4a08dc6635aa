#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace domecast {

enum class CompositionClass { Mafic, Intermediate, Evolved };

inline constexpr std::array<CompositionClass, 3> kAllClasses = {
    CompositionClass::Mafic, CompositionClass::Intermediate, CompositionClass::Evolved};

std::string_view to_string(CompositionClass c);
std::optional<CompositionClass> parse_composition_class(std::string_view s);

inline constexpr double kMinSilicaPct = 30.0;
inline constexpr double kMaxSilicaPct = 90.0;

// One eruption. `duration` is in years; a censored record is still ongoing
// and its duration is only a lower bound.
struct EruptionRecord {
  std::string volcano_name;
  double start_year = 0.0;
  double duration = 0.0;
  bool censored = false;
  CompositionClass composition = CompositionClass::Intermediate;
  std::optional<double> silica_pct;

  friend bool operator==(const EruptionRecord&, const EruptionRecord&) = default;
};

// Throws DataError when the record breaks a field invariant.
void validate(const EruptionRecord& record);

// Immutable ordered collection of eruptions. `as_of_date` is metadata only.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<EruptionRecord> records, std::string as_of_date = {});

  const std::vector<EruptionRecord>& records() const { return records_; }
  const std::string& as_of_date() const { return as_of_date_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t n_completed() const { return n_completed_; }
  std::size_t n_ongoing() const { return records_.size() - n_completed_; }

  Catalog filter(const std::function<bool(const EruptionRecord&)>& keep) const;
  Catalog of_class(CompositionClass c) const;
  Catalog completed_only() const;
  // Multiplies every duration by `factor` (e.g. 1/365.25 for day-valued input).
  Catalog scaled(double factor) const;

  friend bool operator==(const Catalog& a, const Catalog& b) {
    return a.records_ == b.records_ && a.as_of_date_ == b.as_of_date_;
  }

 private:
  std::vector<EruptionRecord> records_;
  std::string as_of_date_;
  std::size_t n_completed_ = 0;
};

Catalog concatenate(const Catalog& a, const Catalog& b);

struct ClassCounts {
  std::size_t total = 0;
  std::size_t completed = 0;
  std::size_t ongoing = 0;
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct CatalogSummary {
  ClassCounts all;
  std::array<ClassCounts, 3> by_class{};

  const ClassCounts& of(CompositionClass c) const {
    return by_class[static_cast<std::size_t>(c)];
  }
};

CatalogSummary summarize(const Catalog& catalog);

// CSV catalog with header `volcano,start_year,duration_yr,status,class,silica_pct`.
// Lines starting with '#' are comments; `# as_of_date: <date>` sets the date.
// Throws DataError naming the offending line.
Catalog parse_catalog(std::istream& in);
Catalog parse_catalog(std::string_view text);
Catalog read_catalog_file(const std::string& path);

void write_catalog(std::ostream& out, const Catalog& catalog);
std::string serialize_catalog(const Catalog& catalog);

// Lava dome eruptions lasting five years or more, by ascending duration.
struct LongDurationEntry {
  double duration;
  double start_year;
  std::string_view name;
  bool censored;
};

std::span<const LongDurationEntry> long_duration_fixture();

}  // namespace domecast
