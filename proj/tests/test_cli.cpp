#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>
#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "domecast/catalog.hpp"
#include "domecast/simulate.hpp"
#include "support.hpp"

using namespace domecast;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "domecast");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() / ("domecast_cli_" + std::to_string(::getpid()) + "_" +
                                                      std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

std::string write(const TempDir& dir, const std::string& name, const std::string& contents) {
  std::ofstream(dir.file(name)) << contents;
  return dir.file(name);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string synthetic_catalog(const TempDir& dir, std::size_t n = 400) {
  SimSpec spec;
  spec.model = GPaParams(0.65, 0.7);
  spec.n = n;
  spec.seed = 12;
  spec.censoring = FixedHorizon{80.0};
  return write(dir, "catalog.csv", serialize_catalog(generate(spec)));
}

bool is_error_line(const std::string& err, int code) {
  if (err.empty() || err.find('\n') != err.size() - 1) return false;
  const json e = json::parse(err);
  return e["error"]["code"] == code && e["error"]["message"].is_string();
}

}  // namespace

TEST_CASE("fit aggregate prints the documented fields") {
  TempDir dir;
  const auto r = call({"fit", "--model", "aggregate", synthetic_catalog(dir)});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  for (const char* key : {"alpha", "beta", "se_alpha", "se_beta", "nllh", "aic", "bic"}) CHECK(doc.contains(key));
  CHECK(doc["schema"] == "domecast/v1");
}

TEST_CASE("fit regression without silica exits 2 naming the record") {
  TempDir dir;
  const auto path = write(dir, "c.csv",
                          "volcano,start_year,duration_yr,status,class,silica_pct\n"
                          "A,2000,1,completed,mafic,50\nB,2001,2,completed,mafic,\nC,2002,3,completed,evolved,66\n"
                          "D,2003,4,completed,evolved,68\nE,2004,5,ongoing,mafic,52\n");
  const auto r = call({"fit", "--model", "regression", path});
  CHECK(r.code == 2);
  CHECK(is_error_line(r.err, 2));
  CHECK(r.err.find("(B)") != std::string::npos);
}

TEST_CASE("malformed catalogs exit 2") {
  TempDir dir;
  const auto path = write(dir, "bad.csv", "volcano,start_year,duration_yr,status,class,silica_pct\nA,2000,-3,completed,mafic,50\n");
  const auto r = call({"summary", path});
  CHECK(r.code == 2);
  CHECK(is_error_line(r.err, 2));
  CHECK(call({"summary", dir.file("missing.csv")}).code == 2);
}

TEST_CASE("usage errors exit 1") {
  CHECK(call({}).code == 1);
  CHECK(call({"fit"}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  TempDir dir;
  const auto r = call({"fit", "--model", "quadratic", synthetic_catalog(dir)});
  CHECK(r.code == 1);
  CHECK(is_error_line(r.err, 1));
}

TEST_CASE("grouped exponential fit of completed evolved eruptions") {
  TempDir dir;
  const auto r = call({"fit", "--model", "grouped", "--class", "evolved", "--family", "exponential",
                       "--completed-only", synthetic_catalog(dir)});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.contains("lambda"));
  CHECK(doc["class"] == "evolved");
  CHECK(doc["n"] == doc["n1"]);
}

TEST_CASE("gof degrees of freedom follow the fitted model") {
  TempDir dir;
  const auto catalog = synthetic_catalog(dir);
  REQUIRE(call({"fit", catalog, "--out", dir.file("gpa")}).code == 0);
  REQUIRE(call({"fit", catalog, "--model", "grouped", "--class", "intermediate", "--family", "exponential", "--out",
                dir.file("exp")})
              .code == 0);
  const json gpa = json::parse(call({"gof", catalog, "--fit", dir.file("gpa/fit.json")}).out);
  CHECK(gpa["dof"] == 13 - 3);
  const json ex = json::parse(call({"gof", catalog, "--fit", dir.file("exp/fit.json"), "--bins", "9"}).out);
  CHECK(ex["dof"] == 9 - 2);
  const auto zero = call({"gof", catalog, "--fit", dir.file("gpa/fit.json"), "--bins", "3"});
  CHECK(zero.code == 1);
  CHECK(is_error_line(zero.err, 1));
}

TEST_CASE("compare lists the three models") {
  TempDir dir;
  const json doc = json::parse(call({"compare", synthetic_catalog(dir)}).out);
  REQUIRE(doc["models"].size() == 3);
  CHECK(doc["models"][2]["name"] == "regression");
  CHECK(doc["models"][2]["nllh"].get<double>() <= doc["models"][0]["nllh"].get<double>() + 1e-6);
}

TEST_CASE("posterior writes a reproducible chain and provenance") {
  TempDir dir;
  const auto catalog = synthetic_catalog(dir);
  const std::vector<std::string> common{"posterior", catalog, "--burn-in", "1000", "--iters", "10000", "--thin", "10",
                                        "--seed", "5"};
  auto a = common;
  a.insert(a.end(), {"--out", dir.file("a")});
  auto b = common;
  b.insert(b.end(), {"--out", dir.file("b")});
  REQUIRE(call(a).code == 0);
  REQUIRE(call(b).code == 0);
  const std::string chain = slurp(dir.file("a/chain.csv"));
  CHECK(chain == slurp(dir.file("b/chain.csv")));
  CHECK(std::count(chain.begin(), chain.end(), '\n') == 1001);
  const json prov = json::parse(slurp(dir.file("a/chain.json")));
  CHECK(prov["seed"] == 5);
  CHECK(prov["thin"] == 10);
}

TEST_CASE("posterior help shows the default schedule") {
  const auto r = call({"posterior", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[10000]") != std::string::npos);
  CHECK(r.out.find("[1000000]") != std::string::npos);
  CHECK(r.out.find("[1000]") != std::string::npos);
  CHECK(call({"gof", "--help"}).out.find("[13]") != std::string::npos);
}

TEST_CASE("improper posterior exits 2 citing the condition") {
  TempDir dir;
  const auto path = write(dir, "c.csv",
                          "volcano,start_year,duration_yr,status,class,silica_pct\n"
                          "A,2000,1,completed,mafic,50\nB,2001,2,ongoing,mafic,51\n");
  const auto r = call({"posterior", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("propriety") != std::string::npos);
}

TEST_CASE("plug-in forecast quartiles from a fit document") {
  TempDir dir;
  const json fit = {{"schema", "domecast/v1"}, {"kind", "fit"},  {"model", "aggregate"},
                    {"estimates", {{"alpha", 0.6487}, {"beta", 0.7018}}}, {"nllh", 0.0},    {"n", 177},             {"n1", 163},
                    {"k", 2},                  {"converged", true}};
  const auto fit_path = write(dir, "fit.json", fit.dump());
  const json shv = json::parse(call({"forecast", "--fit", fit_path, "--age", "19.68", "--quartiles"}).out);
  CHECK(shv["q25"].get<double>() == doctest::Approx(11.36).epsilon(0.01));
  CHECK(shv["q50"].get<double>() == doctest::Approx(38.91).epsilon(0.01));
  CHECK(shv["q75"].get<double>() == doctest::Approx(152.18).epsilon(0.01));
  const json sin = json::parse(call({"forecast", "--fit", fit_path, "--age", "546", "--days", "--quartiles"}).out);
  CHECK(sin["q50"].get<double>() == doctest::Approx(4.20).epsilon(0.01));
}

TEST_CASE("forecast writes curve, header and draw files") {
  TempDir dir;
  const auto catalog = synthetic_catalog(dir);
  REQUIRE(call({"posterior", catalog, "--iters", "2000", "--thin", "10", "--burn-in", "500", "--out", dir.str()})
              .code == 0);
  const auto r = call({"forecast", "--chain", dir.file("chain.csv"), "--age", "1.49", "--grid", "0:20:11", "--out",
                       dir.file("fc")});
  REQUIRE(r.code == 0);
  const std::string curve = slurp(dir.file("fc/forecast.csv"));
  CHECK(curve.rfind("t,mean,low,high,plug_in\n", 0) == 0);
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 12);
  CHECK(std::filesystem::exists(dir.file("fc/forecast.json")));
  CHECK(std::filesystem::exists(dir.file("fc/draws.csv")));
}

TEST_CASE("regression chain without silica exits 1") {
  TempDir dir;
  const auto chain = write(dir, "chain.csv", "alpha,beta,gamma_alpha,gamma_beta\n0.65,0.7,0.04,0.13\n");
  const auto r = call({"forecast", "--chain", chain, "--age", "2"});
  CHECK(r.code == 1);
  CHECK(is_error_line(r.err, 1));
  CHECK(call({"forecast", "--chain", chain, "--age", "2", "--silica", "62"}).code == 0);
  const auto agg = write(dir, "agg.csv", "alpha,beta\n0.65,0.7\n");
  CHECK(call({"forecast", "--chain", agg, "--age", "2", "--silica", "62"}).code == 1);
}

TEST_CASE("simulate is deterministic and parses back") {
  const auto a = call({"simulate", "--alpha", "0.65", "--beta", "0.70", "--n", "1000", "--seed", "1"});
  const auto b = call({"simulate", "--alpha", "0.65", "--beta", "0.70", "--n", "1000", "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse_catalog(a.out).size() == 1000);
}

TEST_CASE("recovery reports bias, RMSE and coverage") {
  const auto r = call({"recovery", "--n", "5000", "--reps", "50"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  for (const auto& p : doc["parameters"]) {
    CHECK(p.contains("bias"));
    CHECK(p.contains("rmse"));
    CHECK(p.contains("wald95_coverage"));
  }
}

TEST_CASE("empirical emits exceedance fractions, model curves and median shifts") {
  TempDir dir;
  const auto r = call({"empirical", synthetic_catalog(dir)});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("empirical_all,all,") != std::string::npos);
  CHECK(r.out.find("model,evolved,") != std::string::npos);
  CHECK(r.out.find("median_shift,") != std::string::npos);
}
