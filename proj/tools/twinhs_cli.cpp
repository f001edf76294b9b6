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

//
// twinhs command-line front end.
//
//   twinhs osd       --input state.json [--hermitian] [--tol X]
//   twinhs twins     --input state.json [--tol X]
//   twinhs bell      classify|twins|schmidt (--weights w1,w2,w3,w0 | --t a,b,c)
//   twinhs bell      sweep --grid N
//   twinhs info      --input state.json --a op.json --b op.json
//   twinhs separable --input decomp.json
//
// Reports are JSON on stdout, diagnostics on stderr. Exit codes: 0 success,
// 1 invalid input, 2 numerical failure, 3 usage.
//

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twinhs/bell.hpp"
#include "twinhs/info.hpp"
#include "twinhs/json_io.hpp"
#include "twinhs/schmidt.hpp"
#include "twinhs/twins.hpp"

using namespace twinhs;

namespace {

constexpr double kCliDefaultTol = 1e-9;
constexpr double kStateParseTol = 1e-8;

Json rank_decision(const std::string& context, double kept, double cut) {
  Json j;
  j["context"] = context;
  if (std::isfinite(kept)) j["smallest_kept"] = kept;
  else j["smallest_kept"] = nullptr;
  j["largest_cut"] = cut;
  if (std::isfinite(kept) && cut > 0.0) j["ratio"] = kept / cut;
  else j["ratio"] = nullptr;
  return j;
}

Json decomp_to_json(const SchmidtDecomp& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) {
    Json jt;
    jt["coeff"] = t.coeff;
    jt["op_a"] = matrix_to_json(t.op_a);
    jt["op_b"] = matrix_to_json(t.op_b);
    terms.push_back(std::move(jt));
  }
  return terms;
}

Json report_head(const std::string& command, double tol,
                 const std::string& input_bytes) {
  Json j;
  j["command"] = command;
  j["tolerance"] = tol;
  j["inputs_digest"] = digest(input_bytes);
  return j;
}

std::vector<double> parse_csv(const std::string& text, size_t count,
                              const std::string& what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    vals.push_back(std::stod(item, &pos));
    if (pos != item.size())
      throw std::invalid_argument(what + ": malformed number '" + item + "'");
  }
  if (vals.size() != count)
    throw std::invalid_argument(what + ": expected " + std::to_string(count) +
                                " comma-separated values");
  return vals;
}

int run_osd(const std::string& path, bool hermitian, double tol) {
  const std::string bytes = read_file(path);
  const BipartiteState s = state_from_json(Json::parse(bytes), kStateParseTol);
  const SchmidtDecomp d = hermitian ? hermitian_osd(s, tol) : osd(s, tol);

  Json rep = report_head("osd", tol, bytes);
  rep["hermitian"] = hermitian;
  rep["hs_norm"] = hs_norm(s.rho());
  rep["terms"] = decomp_to_json(d);
  rep["reconstruction_residual"] =
      hs_norm(d.reconstruct() - s.rho() / hs_norm(s.rho()));
  const double smallest_kept =
      d.terms.empty() ? std::numeric_limits<double>::quiet_NaN()
                      : d.terms.back().coeff;
  // Largest dropped coefficient, from the full realignment spectrum.
  const SvdResult sv = svd(realign(s) / hs_norm(s.rho()));
  const double largest_cut =
      static_cast<Eigen::Index>(d.terms.size()) < sv.sigma.size()
          ? sv.sigma(static_cast<Eigen::Index>(d.terms.size()))
          : 0.0;
  rep["rank_decisions"] = Json::array(
      {rank_decision("schmidt rank cutoff", smallest_kept, largest_cut)});
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int run_twins(const std::string& path, double tol) {
  const std::string bytes = read_file(path);
  const BipartiteState s = state_from_json(Json::parse(bytes), kStateParseTol);
  const TwinBasis tb = twin_space(s, tol);

  Json rep = report_head("twins", tol, bytes);
  rep["kernel_dim"] = tb.dim;
  rep["nontrivial"] = tb.nontrivial;
  rep["rank_rho1"] = tb.rank1;
  rep["rank_rho2"] = tb.rank2;
  rep["singular_values"] = rvector_to_json(tb.singular_values);
  rep["rank_decisions"] = Json::array(
      {rank_decision("twin-space kernel cutoff", tb.sv_above_cutoff,
                     tb.sv_below_cutoff)});

  Json pairs = Json::array();
  for (const TwinPair& p : tb.pairs) {
    Json jp;
    jp["a1"] = matrix_to_json(p.a1.matrix());
    jp["a2"] = matrix_to_json(p.a2.matrix());
    jp["residual"] = p.residual;
    jp["comm_rho1"] = p.comm1;
    jp["comm_rho2"] = p.comm2;
    try {
      const TwinStrength st = classify_twin(s, p, std::max(tol, 1e-8));
      jp["strength"] = to_string(st.kind);
      Json spec = Json::array();
      for (const auto& [value, strong] : st.per_eigenvalue)
        spec.push_back(Json{{"value", value}, {"strong", strong}});
      jp["spectrum"] = std::move(spec);
    } catch (const NotATwinError& e) {
      jp["strength"] = nullptr;
      jp["classification_error"] = e.what();
    }
    pairs.push_back(std::move(jp));
  }
  rep["pairs"] = std::move(pairs);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

Json mixture_class_json(const MixtureClass& c) {
  Json j;
  switch (c.kind) {
    case MixtureClass::PureBell: j["kind"] = "PureBell"; break;
    case MixtureClass::BinaryNonSinglet: j["kind"] = "BinaryNonSinglet"; break;
    case MixtureClass::BinarySinglet: j["kind"] = "BinarySinglet"; break;
    case MixtureClass::HigherRank: j["kind"] = "HigherRank"; break;
  }
  if (c.kind == MixtureClass::PureBell) j["bell_index"] = c.bell_k;
  if (c.kind == MixtureClass::BinaryNonSinglet ||
      c.kind == MixtureClass::BinarySinglet)
    j["axis"] = c.axis;
  Json mix = Json::array();
  for (const auto& [w, k] : c.mixture)
    mix.push_back(Json{{"weight", w}, {"bell_index", k}});
  j["mixture"] = std::move(mix);
  return j;
}

Json bell_common(const BellMixture& m, double tol) {
  Json j;
  j["weights"] = Json::array(
      {m.weights(0), m.weights(1), m.weights(2), m.weights(3)});
  j["t"] = Json::array({m.t(0), m.t(1), m.t(2)});
  Json margins = Json::array();
  for (int i = 0; i < 3; ++i) margins.push_back(std::abs(m.t(i)) - 1.0);
  j["unit_margins"] = std::move(margins);
  j["classification"] = mixture_class_json(classify_mixture(m, tol));
  return j;
}

int run_bell(const std::string& sub, const BellMixture& m, double tol,
             const std::string& digest_src) {
  Json rep = report_head("bell " + sub, tol, digest_src);
  rep.update(bell_common(m, tol));

  if (sub == "twins") {
    const MixtureClass c = classify_mixture(m, tol);
    const BipartiteState s = m.state();
    if (const auto fam = theorem6_twins(c)) {
      Json jf;
      jf["axis"] = fam->axis;
      jf["sign"] = fam->sign;
      jf["family"] = "A1 = alpha I + beta s_i, A2 = alpha I + sign beta s_i";
      const TwinPair sample =
          verify_twin(s, fam->a1(0.0, 1.0), fam->a2(0.0, 1.0));
      jf["sample_a1"] = matrix_to_json(sample.a1.matrix());
      jf["sample_a2"] = matrix_to_json(sample.a2.matrix());
      jf["sample_residual"] = sample.residual;
      jf["sample_strength"] =
          to_string(classify_twin(s, sample, std::max(tol, 1e-8)).kind);
      rep["twin_family"] = std::move(jf);
    } else if (c.kind == MixtureClass::PureBell) {
      Json jf;
      jf["note"] =
          "pure Bell state: every Hermitian A1 commutes with rho_1 = I/2 "
          "and admits a twin partner";
      const HermOp a2 = bell_twin_partner(c.bell_k, {0.0, 0.0, 1.0}, 0.0);
      jf["sample_a1"] = matrix_to_json(pauli(3));
      jf["sample_a2"] = matrix_to_json(a2.matrix());
      jf["sample_residual"] = verify_twin(s, HermOp(pauli(3)), a2).residual;
      rep["twin_family"] = std::move(jf);
    } else {
      rep["twin_family"] = nullptr;
      rep["note"] = "higher-rank mixture: only trivial twins (alpha I pairs)";
    }
    // Numeric cross-check of the solution-space dimension.
    const TwinBasis tb = twin_space(s, tol);
    rep["kernel_dim"] = tb.dim;
    rep["nontrivial"] = tb.nontrivial;
    rep["rank_decisions"] = Json::array(
        {rank_decision("twin-space kernel cutoff", tb.sv_above_cutoff,
                       tb.sv_below_cutoff)});
  } else if (sub == "schmidt") {
    const SchmidtDecomp d = hermitian_schmidt_T(m);
    rep["hermitian"] = true;
    rep["terms"] = decomp_to_json(d);
    rep["reconstruction_residual"] =
        hs_norm(d.reconstruct() - m.state().rho() / hs_norm(m.state().rho()));
  }
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int run_bell_sweep(int grid, double tol) {
  if (grid < 1) throw std::invalid_argument("sweep: --grid must be >= 1");
  Json rep = report_head("bell sweep", tol, "grid=" + std::to_string(grid));
  rep["grid"] = grid;

  Json points = Json::array();
  std::map<std::pair<int, int>, int> table; // (rank, dim) -> count
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; i + j <= grid; ++j)
      for (int k = 0; i + j + k <= grid; ++k) {
        const int l = grid - i - j - k;
        const Eigen::Vector4d w(static_cast<double>(i) / grid,
                                static_cast<double>(j) / grid,
                                static_cast<double>(k) / grid,
                                static_cast<double>(l) / grid);
        const BellMixture m = BellMixture::from_weights(w);
        const int rank = static_cast<int>((w.array() > 1e-12).count());
        const TwinBasis tb = twin_space(m.state(), tol);
        Json jp;
        jp["index"] = Json::array({i, j, k, l});
        jp["weights"] = Json::array({w(0), w(1), w(2), w(3)});
        jp["t"] = Json::array({m.t(0), m.t(1), m.t(2)});
        jp["rank"] = rank;
        jp["twin_dim"] = tb.dim;
        jp["nontrivial"] = tb.nontrivial;
        jp["sv_gap"] = rank_decision("kernel cutoff", tb.sv_above_cutoff,
                                     tb.sv_below_cutoff);
        points.push_back(std::move(jp));
        ++table[{rank, tb.dim}];
      }
  rep["points"] = std::move(points);
  Json jt = Json::object();
  for (const auto& [key, count] : table)
    jt["rank_" + std::to_string(key.first) + "_dim_" +
       std::to_string(key.second)] = count;
  rep["table"] = std::move(jt);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int run_info(const std::string& state_path, const std::string& a_path,
             const std::string& b_path, double tol) {
  const std::string bytes =
      read_file(state_path) + read_file(a_path) + read_file(b_path);
  const BipartiteState s =
      state_from_json(Json::parse(read_file(state_path)), kStateParseTol);
  const HermOp a = hermop_from_json(Json::parse(read_file(a_path)));
  const HermOp b = hermop_from_json(Json::parse(read_file(b_path)));

  Json rep = report_head("info", tol, bytes);
  const LindbladResult lr = lindblad_check(s, a, b);
  rep["C_bits"] = lr.c;
  rep["H_bits"] = lr.h;
  rep["lindblad_ok"] = lr.ok;

  const JointDistribution jd = joint_distribution(s, a, b);
  Json jj;
  jj["values_a"] = jd.values_a;
  jj["values_b"] = jd.values_b;
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < jd.p.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < jd.p.cols(); ++c) row.push_back(jd.p(r, c));
    rows.push_back(std::move(row));
  }
  jj["p"] = std::move(rows);
  rep["joint"] = std::move(jj);

  const TwinPair pair = verify_twin(s, a, b);
  Json jt;
  jt["residual"] = pair.residual;
  const double twin_tol = std::max(tol, 1e-8);
  jt["verified"] = pair.residual <= twin_tol;
  if (pair.residual <= twin_tol) {
    const PerfectCorrelation pc = perfect_correlation(s, pair, twin_tol);
    jt["bijection"] = pc.bijection;
    jt["H_pk"] = pc.entropy;
  }
  rep["twin"] = std::move(jt);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int run_separable(const std::string& path, double tol) {
  const std::string bytes = read_file(path);
  const SeparableDecomp d = decomp_from_json(Json::parse(bytes));
  const BiorthoGroups g = biortho_groups(d, tol);
  const BipartiteState mix = d.mixture();

  Json rep = report_head("separable", tol, bytes);
  rep["term_count"] = d.terms.size();
  rep["components"] = g.components;
  rep["nontrivial"] = g.components.size() >= 2;

  Json edges = Json::array();
  for (size_t k = 0; k < d.terms.size(); ++k)
    for (size_t l = k + 1; l < d.terms.size(); ++l) {
      Json je;
      je["pair"] = Json::array({k, l});
      je["product_norm_1"] =
          svd(d.terms[k].rho1.matrix() * d.terms[l].rho1.matrix()).sigma(0);
      je["product_norm_2"] =
          svd(d.terms[k].rho2.matrix() * d.terms[l].rho2.matrix()).sigma(0);
      edges.push_back(std::move(je));
    }
  rep["pairwise_product_norms"] = std::move(edges);

  Json projs = Json::array();
  for (const auto& [p1, p2] : g.projectors) {
    const TwinPair pair = verify_twin(mix, p1, p2);
    Json jp;
    jp["p1"] = matrix_to_json(p1.matrix());
    jp["p2"] = matrix_to_json(p2.matrix());
    jp["residual"] = pair.residual;
    jp["strength"] =
        to_string(classify_twin(mix, pair, std::max(tol, 1e-8)).kind);
    projs.push_back(std::move(jp));
  }
  rep["projectors"] = std::move(projs);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian operator Schmidt decompositions and twin "
               "observables of bipartite states"};
  app.require_subcommand(1);

  std::string input, op_a, op_b, weights_csv, t_csv;
  double tol = kCliDefaultTol;
  bool hermitian = false;
  int grid = 6;

  CLI::App* osd_cmd =
      app.add_subcommand("osd", "operator Schmidt decomposition");
  osd_cmd->add_option("--input", input, "state JSON file")->required();
  osd_cmd->add_flag("--hermitian", hermitian, "all-Hermitian factors");
  osd_cmd->add_option("--tol", tol, "rank tolerance");

  CLI::App* twins_cmd = app.add_subcommand("twins", "solve the twin equation");
  twins_cmd->add_option("--input", input, "state JSON file")->required();
  twins_cmd->add_option("--tol", tol, "kernel tolerance");

  CLI::App* bell_cmd = app.add_subcommand("bell", "Bell-diagonal states");
  bell_cmd->require_subcommand(1);
  std::vector<CLI::App*> bell_subs;
  for (const char* name : {"classify", "twins", "schmidt"}) {
    CLI::App* sc = bell_cmd->add_subcommand(name, name);
    sc->add_option("--weights", weights_csv, "w1,w2,w3,w0");
    sc->add_option("--t", t_csv, "t1,t2,t3");
    sc->add_option("--tol", tol, "classification tolerance");
    bell_subs.push_back(sc);
  }
  CLI::App* sweep_cmd = bell_cmd->add_subcommand("sweep", "tetrahedron sweep");
  sweep_cmd->add_option("--grid", grid, "points per edge")->required();
  sweep_cmd->add_option("--tol", tol, "kernel tolerance");

  CLI::App* info_cmd = app.add_subcommand("info", "entropic measures");
  info_cmd->add_option("--input", input, "state JSON file")->required();
  info_cmd->add_option("--a", op_a, "factor-1 observable JSON file")
      ->required();
  info_cmd->add_option("--b", op_b, "factor-2 observable JSON file")
      ->required();
  info_cmd->add_option("--tol", tol, "twin tolerance");

  CLI::App* sep_cmd = app.add_subcommand("separable", "biorthogonal grouping");
  sep_cmd->add_option("--input", input, "decomposition JSON file")->required();
  sep_cmd->add_option("--tol", tol, "orthogonality tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  const bool bell_active = bell_cmd->parsed();
  try {
    if (osd_cmd->parsed()) return run_osd(input, hermitian, tol);
    if (twins_cmd->parsed()) return run_twins(input, tol);
    if (bell_active) {
      if (sweep_cmd->parsed()) return run_bell_sweep(grid, tol);
      for (CLI::App* sc : bell_subs) {
        if (!sc->parsed()) continue;
        if (!weights_csv.empty() && !t_csv.empty())
          throw std::invalid_argument(
              "give either --weights or --t, not both");
        BellMixture m{Eigen::Vector4d::Zero(), Eigen::Vector3d::Zero()};
        std::string src;
        if (!weights_csv.empty()) {
          const auto w = parse_csv(weights_csv, 4, "--weights");
          m = BellMixture::from_weights({w[0], w[1], w[2], w[3]});
          src = "weights=" + weights_csv;
        } else if (!t_csv.empty()) {
          const auto t = parse_csv(t_csv, 3, "--t");
          m = BellMixture::from_t({t[0], t[1], t[2]});
          src = "t=" + t_csv;
        } else {
          throw std::invalid_argument("need --weights or --t");
        }
        return run_bell(sc->get_name(), m, tol, src);
      }
    }
    if (info_cmd->parsed()) return run_info(input, op_a, op_b, tol);
    if (sep_cmd->parsed()) return run_separable(input, tol);
  } catch (const NotAStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.diagnostics.empty()) {
      std::cerr << (bell_active ? "weights:" : "eigenvalues:");
      for (double v : e.diagnostics) std::cerr << " " << v;
      std::cerr << "\n";
    }
    // A t outside the tetrahedron or a bad decomposition is an input error;
    // a state file failing positivity is reported as a numerical failure
    // with its spectrum.
    return (bell_active || sep_cmd->parsed()) ? 1 : 2;
  } catch (const Json::parse_error& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
