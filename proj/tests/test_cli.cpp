// Copyright 2026 The twinhs developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "twinhs/bell.hpp"
#include "twinhs/json_io.hpp"

using namespace twinhs;
using namespace testutil;

namespace {

namespace fs = std::filesystem;

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(TWINHS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path fixture_dir() {
  const fs::path dir = fs::temp_directory_path() / "twinhs_cli_fixtures";
  fs::create_directories(dir);
  return dir;
}

std::string write_fixture(const std::string& name, const Json& j) {
  const fs::path p = fixture_dir() / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p.string();
}

std::string state_file(const std::string& name, const BipartiteState& s) {
  return write_fixture(name, state_to_json(s));
}

std::string op_file(const std::string& name, const CMatrix& m) {
  Json j;
  j["dim"] = m.rows();
  j["matrix"] = matrix_to_json(m);
  return write_fixture(name, j);
}

}  // namespace

TEST_CASE("cli osd: product state, hermitian Bell-diagonal, error paths") {
  std::mt19937_64 gen(81);
  const std::string prod = state_file(
      "prod.json",
      BipartiteState(2, 2,
                     tensor(random_density(gen, 2), random_density(gen, 2))));
  const CmdResult r1 = run_cli("osd --input " + prod);
  CHECK(r1.code == 0);
  const Json j1 = Json::parse(r1.out);
  CHECK(j1["terms"].size() == 1);
  CHECK(j1["command"] == "osd");

  const std::string bd =
      state_file("bd.json", state_from_t({1.0, 0.4, -0.4}));
  const CmdResult r2 = run_cli("osd --input " + bd + " --hermitian");
  CHECK(r2.code == 0);
  const Json j2 = Json::parse(r2.out);
  REQUIRE(j2["terms"].size() == 4);
  const double pref = 1.0 / std::sqrt(1.0 + 1.32);
  std::vector<double> coeffs;
  for (const auto& t : j2["terms"]) coeffs.push_back(t["coeff"].get<double>());
  CHECK(same_multiset(coeffs, {pref, pref, 0.4 * pref, 0.4 * pref}, 1e-10));
  CHECK(j2["reconstruction_residual"].get<double>() < 1e-9);

  // Non-positive matrix: numerical failure with an eigenvalue report.
  CMatrix neg = identity(4) / 2.0;
  neg(0, 0) = -0.25;
  neg(3, 3) = 0.75;
  Json bad;
  bad["d1"] = 2;
  bad["d2"] = 2;
  bad["matrix"] = matrix_to_json(neg);
  CHECK(run_cli("osd --input " + write_fixture("neg.json", bad)).code == 2);

  // Unreadable / malformed input.
  CHECK(run_cli("osd --input /nonexistent.json").code == 1);
  std::ofstream(fixture_dir() / "garbage.json") << "{not json";
  CHECK(run_cli("osd --input " + (fixture_dir() / "garbage.json").string())
            .code == 1);
}

TEST_CASE("cli twins: kernel dimensions") {
  std::mt19937_64 gen(82);
  const std::string bin =
      state_file("bin.json", BipartiteState(2, 2,
                                            0.3 * bell_state(2).rho() +
                                                0.7 * bell_state(3).rho()));
  const CmdResult r = run_cli("twins --input " + bin);
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["kernel_dim"] == 2);
  CHECK(j["nontrivial"] == true);
  CHECK(j["pairs"].size() == 2);
  const Json& gap = j["rank_decisions"][0];
  CHECK(gap["ratio"].get<double>() > 1e6);

  const std::string prod = state_file(
      "prod2.json",
      BipartiteState(2, 2,
                     tensor(random_density(gen, 2), random_density(gen, 2))));
  const Json jp = Json::parse(run_cli("twins --input " + prod).out);
  CHECK(jp["kernel_dim"] == 1);
  CHECK(jp["nontrivial"] == false);

  const std::string interior =
      state_file("interior.json", state_from_t({0.5, 0.1, 0.1}));
  CHECK(Json::parse(run_cli("twins --input " + interior).out)["kernel_dim"] ==
        1);
}

TEST_CASE("cli bell: classify, twins, schmidt, sweep") {
  const CmdResult rc = run_cli("bell classify --t 1,0.4,-0.4");
  CHECK(rc.code == 0);
  const Json jc = Json::parse(rc.out);
  CHECK(jc["classification"]["kind"] == "BinaryNonSinglet");
  CHECK(jc["classification"]["axis"] == 1);
  CHECK(jc["weights"][1].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(jc["weights"][2].get<double>() == doctest::Approx(0.7).epsilon(1e-12));

  const Json jt =
      Json::parse(run_cli("bell twins --weights 0,0,0,1").out);
  CHECK(jt["classification"]["kind"] == "PureBell");
  CHECK(jt["classification"]["bell_index"] == 0);
  CHECK(jt["twin_family"]["note"].is_string());
  CHECK(jt["twin_family"]["sample_residual"].get<double>() < 1e-12);
  CHECK(jt["kernel_dim"] == 4);

  const Json jb = Json::parse(run_cli("bell twins --t 1,0.4,-0.4").out);
  CHECK(jb["twin_family"]["axis"] == 1);
  CHECK(jb["twin_family"]["sign"] == 1);
  CHECK(jb["kernel_dim"] == 2);

  const Json js = Json::parse(run_cli("bell schmidt --t 0,0,0").out);
  CHECK(js["terms"].size() == 1);

  const Json jw = Json::parse(run_cli("bell sweep --grid 3").out);
  CHECK(jw["points"].size() == 20);
  CHECK(jw["table"]["rank_1_dim_4"] == 4);
  CHECK(jw["table"]["rank_2_dim_2"] == 12);
  CHECK(jw["table"]["rank_3_dim_1"] == 4);

  // Outside the tetrahedron: invalid input.
  CHECK(run_cli("bell classify --t 1,1,1").code == 1);
  CHECK(run_cli("bell classify --t 0.99,0.99,-0.5").code == 1);
}

TEST_CASE("cli info: twin pair on the singlet") {
  const std::string sing = state_file("singlet.json", bell_state(0));
  const std::string a = op_file("op_a.json", pauli(3));
  const std::string b = op_file("op_b.json", -pauli(3));
  const CmdResult r =
      run_cli("info --input " + sing + " --a " + a + " --b " + b);
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["C_bits"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j["H_bits"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["lindblad_ok"] == true);
  CHECK(j["twin"]["verified"] == true);
  CHECK(j["twin"]["H_pk"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  // Non-twin observables still yield the measures, without a bijection.
  const std::string b2 = op_file("op_b2.json", pauli(3));
  const Json j2 = Json::parse(
      run_cli("info --input " + sing + " --a " + a + " --b " + b2).out);
  CHECK(j2["twin"]["verified"] == false);
  CHECK(j2["lindblad_ok"] == true);
}

TEST_CASE("cli separable: grouping and invalid decompositions") {
  CMatrix up = CMatrix::Zero(2, 2), dn = CMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  dn(1, 1) = 1.0;
  Json term_up, term_dn;
  term_up["w"] = 0.5;
  term_up["rho1"] = matrix_to_json(up);
  term_up["rho2"] = matrix_to_json(up);
  term_dn["w"] = 0.5;
  term_dn["rho1"] = matrix_to_json(dn);
  term_dn["rho2"] = matrix_to_json(dn);

  const std::string two =
      write_fixture("sep2.json", Json::array({term_up, term_dn}));
  const Json j = Json::parse(run_cli("separable --input " + two).out);
  CHECK(j["components"].size() == 2);
  CHECK(j["nontrivial"] == true);
  CHECK(j["projectors"][0]["residual"].get<double>() < 1e-10);
  CHECK(j["projectors"][0]["strength"] == "Strong");

  Json single = Json::array({term_up});
  single[0]["w"] = 1.0;
  const std::string one = write_fixture("sep1.json", single);
  const Json j1 = Json::parse(run_cli("separable --input " + one).out);
  CHECK(j1["components"].size() == 1);
  CHECK(j1["nontrivial"] == false);

  Json bad = Json::array({term_up, term_dn});
  bad[1]["w"] = 0.7; // weights sum to 1.2
  CHECK(run_cli("separable --input " + write_fixture("sepbad.json", bad))
            .code == 1);
}

TEST_CASE("cli: usage errors and byte-identical reports") {
  CHECK(run_cli("unknown-subcommand").code == 3);
  CHECK(run_cli("osd").code == 3);        // missing --input
  CHECK(run_cli("bell classify").code == 1); // needs --weights or --t
  CHECK(run_cli("--help").code == 0);

  const CmdResult a = run_cli("bell classify --t 0.1,0.2,-0.3");
  const CmdResult b = run_cli("bell classify --t 0.1,0.2,-0.3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const std::string bd =
      state_file("bd_det.json", state_from_t({1.0, 0.25, -0.25}));
  CHECK(run_cli("osd --input " + bd + " --hermitian").out ==
        run_cli("osd --input " + bd + " --hermitian").out);
}
