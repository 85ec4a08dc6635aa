#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

#include "domecast/catalog.hpp"
#include "domecast/error.hpp"
#include "support.hpp"

using namespace domecast;

namespace {

constexpr const char* kHeader = "volcano,start_year,duration_yr,status,class,silica_pct\n";

}  // namespace

TEST_CASE("catalog round-trips through CSV") {
  const Catalog c = testing::shared_catalog();
  const std::string text = serialize_catalog(c);
  const Catalog back = parse_catalog(text);
  CHECK(back == c);
  CHECK(serialize_catalog(back) == text);
}

TEST_CASE("parse reads status, class, optional silica and the as-of comment") {
  const std::string text = std::string("# as_of_date: 2015-03-15\n") + kHeader +
                           "Soufriere Hills,1995.5,19.68,ongoing,intermediate,59\n"
                           "\"Mount St. Helens, 2004\",2004.7,3.4,completed,intermediate,\n"
                           "Kelud,2007.8,0.2,completed,MAFIC,52.5\n";
  const Catalog c = parse_catalog(text);
  REQUIRE(c.size() == 3);
  CHECK(c.as_of_date() == "2015-03-15");
  CHECK(c.n_ongoing() == 1);
  CHECK(c.n_completed() == 2);
  CHECK(c.records()[0].censored);
  CHECK(c.records()[1].volcano_name == "Mount St. Helens, 2004");
  CHECK_FALSE(c.records()[1].silica_pct.has_value());
  CHECK(c.records()[2].composition == CompositionClass::Mafic);
  CHECK(*c.records()[2].silica_pct == doctest::Approx(52.5));
}

TEST_CASE("bad rows are rejected with their line number") {
  auto fails_on_line = [](const std::string& row, const std::string& line_tag) {
    try {
      parse_catalog(std::string(kHeader) + row);
    } catch (const DataError& e) {
      return std::string(e.what()).find(line_tag) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_on_line("A,2000,-1,completed,mafic,50\n", "line 2"));
  CHECK(fails_on_line("A,2000,0,completed,mafic,50\n", "line 2"));
  CHECK(fails_on_line("A,2000,1,erupting,mafic,50\n", "line 2"));
  CHECK(fails_on_line("A,2000,1,completed,rhyolite,50\n", "line 2"));
  CHECK(fails_on_line("A,2000,1,completed,mafic,120\n", "line 2"));
  CHECK(fails_on_line("A,2000,1,completed,mafic\n", "line 2"));
  CHECK(fails_on_line("A,2000,1,completed,mafic,50\nB,x,1,completed,mafic,50\n", "line 3"));
  CHECK_THROWS_AS(parse_catalog(std::string(kHeader)), DataError);
  CHECK_THROWS_AS(parse_catalog(std::string("a,b\n1,2\n")), DataError);
}

TEST_CASE("summary counts by class and status") {
  const CatalogSummary s = summarize(testing::shared_catalog());
  CHECK(s.all.total == 12);
  CHECK(s.all.completed == 10);
  CHECK(s.all.ongoing == 2);
  std::size_t sum = 0;
  for (CompositionClass c : kAllClasses) sum += s.of(c).total;
  CHECK(sum == 12);
  CHECK(s.of(CompositionClass::Evolved).ongoing == 1);
}

TEST_CASE("filters keep record order and counts") {
  const Catalog c = testing::shared_catalog();
  const Catalog done = c.completed_only();
  CHECK(done.size() == 10);
  CHECK(done.n_ongoing() == 0);
  const Catalog scaled = c.scaled(365.25);
  CHECK(scaled.records()[3].duration == doctest::Approx(0.8 * 365.25));
  const Catalog both = concatenate(c.of_class(CompositionClass::Mafic), c.of_class(CompositionClass::Evolved));
  CHECK(both.size() == c.of_class(CompositionClass::Mafic).size() + c.of_class(CompositionClass::Evolved).size());
}

TEST_CASE("long-duration fixture is sorted with 13 ongoing eruptions") {
  const auto rows = long_duration_fixture();
  CHECK(rows.size() == 38);
  std::size_t ongoing = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].duration >= 5.0);
    if (i > 0) CHECK(rows[i].duration >= rows[i - 1].duration);
    ongoing += rows[i].censored ? 1 : 0;
  }
  CHECK(ongoing == 13);
}

TEST_CASE("file reader reports missing files") {
  CHECK_THROWS_AS(read_catalog_file("/nonexistent/catalog.csv"), DataError);
  const auto path = std::filesystem::temp_directory_path() / "domecast_catalog_test.csv";
  {
    std::ofstream out(path);
    out << serialize_catalog(testing::shared_catalog());
  }
  CHECK(read_catalog_file(path.string()) == testing::shared_catalog());
  std::filesystem::remove(path);
}
