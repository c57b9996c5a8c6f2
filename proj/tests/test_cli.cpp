#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohr/bounds.hpp"
#include "bohr/checks.hpp"
#include "bohr/error.hpp"
#include "bohr/estimator.hpp"
#include "bohr/families.hpp"
#include "bohr/poly_io.hpp"
#include "bohr/report_io.hpp"
#include "cli.hpp"

using namespace bohr;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run bohr_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("report_io") {

TEST_CASE("numbers and doubles") {
  CHECK(json_number(kInf) == "inf");
  CHECK(json_number(-kInf) == "-inf");
  CHECK(json_number(std::nan("")) == "nan");
  CHECK(json_number(0.5) == 0.5);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(kInf) == "inf");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("bound report schema") {
  BoundConstants k;
  k.set("E3", 0.5);
  const auto r = eval_thm12(PCase::p_ge_2, 8, 2, 2, 1, 1, k);
  const auto j = to_json(r);
  CHECK(j["formula_id"] == "thm12");
  CHECK(j["role"] == "lower");
  CHECK(j["value"].get<double>() == r.value);
  CHECK(j["certified"] == r.certified);
  CHECK(j["constants_used"]["E3"] == 0.5);
  CHECK(j.contains("default_constants"));
  CHECK(j["params"]["n"] == 8);
  const auto s = dump(j);
  CHECK(s.back() == '\n');
  CHECK(json::parse(s) == j);
}

TEST_CASE("estimate and check schemas") {
  const auto disc = SpaceDescriptor::polydisc(1);
  const auto est = estimate_radius(disc, mobius_members(disc, {0.5}),
                                   BoundedOperatorU::identity_scaled(), 1, 1, {}, "mobius");
  const auto j = to_json(est);
  for (auto key : {"lower_bracket", "upper_bracket", "family_id", "params", "per_function_margins",
                   "certified", "violation_found", "note", "homogeneous_degree"})
    CHECK(j.contains(key));
  CHECK(j["params"]["space"] == "lq:q=inf:n=1");
  CHECK(j["per_function_margins"].size() == 1);
  CHECK(j["homogeneous_degree"].is_null());

  const auto scan = counterexample_scan(disc, 0.1, 1, 1);
  const auto js = to_json(scan);
  CHECK(js["k"] == 6);
  CHECK(js["witness"][0][0].get<double>() == doctest::Approx(0.099));
  const auto none = to_json(counterexample_scan(disc, 0.1, 2, 1, 5));
  CHECK(none["k"].is_null());

  CheckReport rep;
  rep.name = "demo";
  rep.record(1.0, 0.0, json::object());
  rep.record(-0.5, 0.1, json{{"x", 1}});
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_margin == -0.5);
  CHECK(rep.witnesses.size() == 1);
  const auto jc = to_json(rep);
  CHECK(jc["pass"] == false);
  CHECK(jc["witnesses"][0]["x"] == 1);
  std::ostringstream table;
  write_check_table(table, {rep});
  const auto t = table.str();
  CHECK(t.find("name") < t.find("pass"));
  CHECK(t.find("worst_margin") < t.find("uncertainty"));
  CHECK(t.find("demo") != std::string::npos);
  CHECK(t.find("no") != std::string::npos);
}

TEST_CASE("sweep csv") {
  BoundConstants k;
  std::vector<SweepRow> rows;
  for (std::size_t n : {2, 4}) rows.push_back({n, eval_cor14(Cor14Regime::p_eq_1, kInf, 1, 2, n, k)});
  std::ostringstream out;
  write_sweep_csv(out, rows);
  const auto cells = csv_rows(out.str());
  REQUIRE(cells.size() == 3);
  CHECK(cells[0] == std::vector<std::string>{"n", "formula_id", "role", "value", "certified"});
  CHECK(cells[1][0] == "2");
  CHECK(cells[1][1] == "cor14");
  CHECK(std::stod(cells[2][3]) == rows[1].report.value);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("bounds matches the library call") {
  const auto r = bohr_run({"bounds", "--formula", "thm19", "--p", "1", "--lambda", "2", "--normU",
                           "1", "--space", "lq:q=2:n=4"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["value"].get<double>() == doctest::Approx(0.25).epsilon(1e-14));
  const auto lib = eval_thm11_family(Thm11Variant::holomorphic_C, 1, 2, 1,
                                     sup_pnorm_on_ball(SpaceDescriptor::parse("lq:q=2:n=4"), 1).value);
  CHECK(j[0] == to_json(lib));

  const auto c = bohr_run({"bounds", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf", "--n",
                           "100", "--lambda", "2"});
  REQUIRE(c.code == 0);
  const auto jc = json::parse(c.out);
  CHECK(std::abs(jc[0]["value"].get<double>() - 0.07153) <= 1e-5);
  CHECK(jc[0] == to_json(eval_cor14(Cor14Regime::p_eq_1, kInf, 1, 2, 100, BoundConstants{})));
}

TEST_CASE("constants: file and inline, inline wins") {
  const auto path = std::filesystem::temp_directory_path() / "bohr_cli_constants.txt";
  {
    std::ofstream f(path);
    f << "# calibration\nE3_prime = 0.25\nE1 = 3\n";
  }
  const auto r = bohr_run({"bounds", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf", "--n",
                           "100", "--lambda", "2", "--constants-file", path.string(), "--const",
                           "E3_prime=0.5"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j[0]["constants_used"]["E3_prime"] == 0.5);
  CHECK(j[0]["certified"] == true);
  CHECK(j[0]["value"].get<double>() == doctest::Approx(0.5 * 0.07153220087631157).epsilon(1e-12));
  CHECK(bohr_run({"bounds", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf", "--n", "10",
                  "--lambda", "2", "--const", "E9=1"})
            .code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("estimate matches the library call and is deterministic") {
  const std::vector<std::string> args{"estimate", "--space", "lq:q=inf:n=1", "--family", "mobius",
                                      "--lambda", "1", "--p", "1", "--tol", "1e-4"};
  const auto r = bohr_run(args);
  REQUIRE(r.code == 0);
  const auto disc = SpaceDescriptor::polydisc(1);
  EstimatorOptions opts;
  opts.tol = 1e-4;
  const auto lib = estimate_radius(disc, mobius_members(disc, default_mobius_parameters()),
                                   BoundedOperatorU::identity_scaled(), 1, 1, opts, "mobius");
  CHECK(json::parse(r.out) == to_json(lib));
  CHECK(lib.upper_bracket == doctest::Approx(0.3356).epsilon(1e-4));

  const std::vector<std::string> rnd{"estimate", "--space", "lq:q=2:n=2", "--family", "random",
                                     "--seed", "7", "--count", "3", "--degree", "2"};
  const auto a = bohr_run(rnd), b = bohr_run(rnd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("estimate reads a polynomial file") {
  const auto path = std::filesystem::temp_directory_path() / "bohr_cli_polys.txt";
  {
    std::ofstream f(path);
    f << format_family({mobius_lift(0.5, SpaceDescriptor::polydisc(1))});
  }
  const auto r = bohr_run({"estimate", "--space", "lq:q=inf:n=1", "--family", "file:" + path.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["upper_bracket"].get<double>() == doctest::Approx(0.5).epsilon(2e-4));
  std::filesystem::remove(path);
  CHECK(bohr_run({"estimate", "--space", "lq:q=inf:n=1", "--family", "file:/nonexistent/x"}).code == 2);
}

TEST_CASE("verify exit codes") {
  const auto ok = bohr_run({"verify", "--suite", "example11", "--r", "0.1", "--p", "1"});
  CHECK(ok.code == 0);
  const auto j = json::parse(ok.out);
  CHECK(j[0]["pass"] == true);
  CHECK(j[0]["details"]["scan"]["k"] == 6);
  // p = 2 admits no violating k below r = 1.
  const auto bad = bohr_run({"verify", "--suite", "example11", "--r", "0.5,0.1", "--p", "2",
                             "--k-max", "50"});
  CHECK(bad.code == cli::verification_exit_code(2));
  CHECK(bad.code >= 10);
  CHECK(cli::verification_exit_code(1000) == 125);
  CHECK(bohr_run({"verify", "--suite", "nope"}).code == 2);
  CHECK(bohr_run({"verify", "--suite", "schwarz_pick", "--seed", "1", "--count", "50"}).code == 0);
}

TEST_CASE("validation errors") {
  const auto unknown = bohr_run({"bounds", "--formula", "thm99"});
  CHECK(unknown.code == 2);
  for (auto id : {"thm11", "cor11", "thm19", "thm12", "thm12u", "cor14", "thm13a", "thm13", "sandwich"})
    CHECK(unknown.err.find(id) != std::string::npos);
  const auto u = bohr_run({"bounds", "--formula", "thm11", "--lambda", "2", "--normU", "3", "--space",
                           "lq:q=2:n=2"});
  CHECK(u.code == 2);
  CHECK(u.err.find("lambda") != std::string::npos);
  CHECK(bohr_run({"bounds", "--bogus"}).code == 2);
  CHECK(bohr_run({"frobnicate"}).code == 2);
  CHECK(bohr_run({"--help"}).code == 0);
  CHECK(bohr_run({"norms", "--space", "lq:q=0.5:n=2"}).code == 2);
}

TEST_CASE("norms") {
  const auto r = bohr_run({"norms", "--space", "lq:q=2:n=3", "--op", "norm", "--z", "1", "2", "2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(3.0));
  const auto e = bohr_run({"norms", "--space", "lq:q=1:n=4", "--op", "embed", "--to", "lq:q=2:n=4"});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["results"][0]["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("sweeps") {
  const auto r = bohr_run({"sweep", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf", "--lambda",
                           "2", "--n", "2..64:x2"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 7);
  const double ratio0 = [&] {
    const double n = std::stod(rows[1][0]);
    return std::stod(rows[1][3]) / std::sqrt(std::log(n) / n);
  }();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double n = std::stod(rows[i][0]);
    const double v = std::stod(rows[i][3]);
    CHECK(std::abs(v / std::sqrt(std::log(n) / n) / ratio0 - 1) <= 1e-12);
    const double direct =
        eval_cor14(Cor14Regime::p_eq_1, kInf, 1, 2, static_cast<std::size_t>(n), BoundConstants{}).value;
    CHECK(std::abs(v / direct - 1) <= 1e-12);
  }

  const auto psi = bohr_run({"sweep", "--formula", "thm13", "--cot", "2", "--q", "2", "--p", "2",
                             "--lambda", "2", "--n", "2..16:x2"});
  REQUIRE(psi.code == 0);
  const auto prow = csv_rows(psi.out);
  CHECK(prow.size() == 1 + 2 * 4);
  CHECK(prow[1][1] == "thm13_psi1");
  CHECK(prow[2][1] == "thm13_psi2");

  CHECK(bohr_run({"sweep", "--formula", "cor14", "--n", "8..4"}).code == 2);
  CHECK(bohr_run({"sweep", "--formula", "cor14", "--n", "2..x"}).code == 2);
  CHECK(bohr_run({"sweep", "--formula", "cor14", "--n", ""}).code == 2);
}

TEST_CASE("n ranges") {
  CHECK(cli::parse_n_range("2..64:x2") == std::vector<std::size_t>{2, 4, 8, 16, 32, 64});
  CHECK(cli::parse_n_range("2..8") == std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8});
  CHECK(cli::parse_n_range("2..8:3") == std::vector<std::size_t>{2, 5, 8});
  CHECK_THROWS_AS(cli::parse_n_range("5"), ValidationError);
  CHECK_THROWS_AS(cli::parse_n_range("8..2"), ValidationError);
  CHECK_THROWS_AS(cli::parse_n_range("2..8:x1"), ValidationError);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "bohr_cli_out.json";
  const auto r = bohr_run({"bounds", "--formula", "thm19", "--p", "1", "--lambda", "2", "--space",
                           "lq:q=inf:n=2", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const auto j = json::parse(f);
  CHECK(j[0]["formula_id"] == "thm19");
  std::filesystem::remove(path);
}

}  // TEST_SUITE
