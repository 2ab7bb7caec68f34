// Copyright 2026 The qgraph Authors
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

// qgraph command line front end.
//
// Exit codes: 0 all checks pass, 1 input or validation error, 2 a residual
// exceeds the tolerance.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgraph/correspondence.hpp"
#include "qgraph/fock.hpp"
#include "qgraph/graph_families.hpp"
#include "qgraph/io.hpp"
#include "qgraph/qck.hpp"

namespace {

using namespace qgraph;
using Report = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kResidual = 2;

struct Output {
  bool json = false;
  std::string report_path;
  std::optional<double> tol;
};

/// Precedence: --tol, then the file's "tol", then QGRAPH_TOL, then 1e-9.
double env_tolerance() {
  if (const char* env = std::getenv("QGRAPH_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw Error(ErrorCode::ParseError, "QGRAPH_TOL must be a positive number");
    return v;
  }
  return kDefaultTolerance;
}

QuantumGraph load_graph(const std::string& path, const Output& out) {
  const auto file = parse_graph(read_json(path));
  const double tol = out.tol ? *out.tol : file.tol.value_or(env_tolerance());
  return to_graph(file, tol);
}

void print_human(const Report& r, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : r.items()) {
    if (value.is_object()) {
      std::cout << pad << key << ":\n";
      print_human(value, indent + 2);
    } else if (value.is_string()) {
      std::cout << pad << key << ": " << value.get<std::string>() << "\n";
    } else {
      std::cout << pad << key << ": " << value.dump() << "\n";
    }
  }
}

int emit(Report r, const Output& out, bool pass) {
  r["status"] = pass ? "pass" : "residual above tolerance";
  if (out.json)
    std::cout << r.dump(2) << "\n";
  else
    print_human(r);
  if (!out.report_path.empty()) {
    std::ofstream f(out.report_path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + out.report_path);
    f << r.dump(2) << "\n";
  }
  return pass ? kOk : kResidual;
}

Report blocks_of(const std::vector<int>& v) {
  Report a = Report::array();
  for (int b : v) a.push_back(b);
  return a;
}

int run_inspect(const std::string& path, const Output& out) {
  const auto g = load_graph(path, out);
  const double tol = g.tolerance();
  bool pass = true;
  auto track = [&](double residual) {
    if (!(residual <= tol)) pass = false;
    return residual;
  };

  Report r;
  r["graph"] = path;
  r["tolerance"] = tol;
  r["delta_sq"] = g.psi().delta_sq();
  r["schur_residual"] = track(g.schur_residual());
  const auto props = indicator_properties(g);
  const auto choi = is_completely_positive(g.psi(), g.adjacency());
  r["indicator"] = {{"action", track(props.action)}, {"idempotency", track(props.idempotency)},
                    {"modular", props.modular}};
  const bool modular_cp = props.modular <= tol;
  r["completely_positive"] = {{"choi", choi.completely_positive},
                              {"choi_min_eigenvalue", choi.min_eigenvalue},
                              {"modular", modular_cp},
                              {"agree", choi.completely_positive == modular_cp}};
  if (choi.completely_positive != modular_cp) pass = false;

  const auto ss = quantum_sources_sinks(g);
  r["sources"] = blocks_of(ss.sources);
  r["sinks"] = blocks_of(ss.sinks);

  if (choi.completely_positive) {
    const auto e = build_edge_correspondence(g);
    const auto kernel = left_kernel(g, e);
    const auto full = fullness_ideal(g);
    const bool faithful = kernel.kernel_dim == 0;
    r["faithful"] = faithful;
    r["full"] = full.full;
    r["left_kernel"] = {{"dim", kernel.kernel_dim},
                        {"complement_dim", kernel.complement_dim},
                        {"distance", track(kernel.distance)}};
    r["edge_dim"] = e.dim();
    const auto h = homomorphism_check(g);
    r["homomorphism"] = {{"multiplicativity", h.multiplicativity}, {"indicator_shift", h.indicator_shift}};
    // the compact decomposition is only claimed for faithful E_G
    const double compact = compact_decomposition_residual(g, e);
    r["compact_residual"] = faithful ? track(compact) : compact;
    const auto model = cp_correspondence(g);
    r["cp_model"] = {{"dim", model.model_dim}, {"residual", track(model.residual)}};
    if (model.model_dim != model.edge_dim) pass = false;
  }
  return emit(std::move(r), out, pass);
}

Report lqck_json(const LqckReport& l) {
  return {{"lqck1", l.lqck1}, {"lqck2", l.lqck2}, {"lqck3", l.lqck3}, {"agreement", l.agreement}};
}

Report qck_json(const QckReport& q) { return {{"qck1", q.qck1}, {"qck2", q.qck2}, {"qck3", q.qck3}}; }

int run_fock(const std::string& path, int levels, const Output& out) {
  const auto g = load_graph(path, out);
  const double tol = g.tolerance();
  const auto f = build_fock(g, levels);
  const auto rep = representation_residuals(f);
  const auto lq = lqck_fock_residuals(f);

  Report r;
  r["graph"] = path;
  r["tolerance"] = tol;
  r["levels"] = levels;
  Report dims = Report::array();
  for (auto d : f.level_dims()) dims.push_back(d);
  r["level_dims"] = dims;
  r["total_dim"] = f.total_dim();
  r["representation"] = {{"inner", rep.inner},
                         {"covariance", rep.covariance},
                         {"expansion", rep.expansion},
                         {"unital", rep.unital},
                         {"multiplicativity", rep.multiplicativity},
                         {"vacuum_defect", rep.vacuum_defect}};
  r["lqck_interior"] = lqck_json(lq.interior);
  r["lqck_with_vacuum"] = lqck_json(lq.with_vacuum);
  r["qck_interior"] = qck_json(lq.qck_interior);
  r["toeplitz"] = {{"inner", lq.toeplitz_inner}, {"compact", lq.toeplitz_compact}};

  const double worst = std::max({rep.inner, rep.covariance, rep.expansion, rep.unital, rep.multiplicativity,
                                 lq.interior.max(), lq.interior.agreement, lq.toeplitz_inner, lq.toeplitz_compact});
  const bool global_ok = lq.qck_interior.max() <= g.psi().delta_sq() * tol;
  return emit(std::move(r), out, worst <= tol && global_ok);
}

int run_check(const std::string& graph_path, const std::string& family_path, const std::string& mode,
              const Output& out) {
  const auto g = load_graph(graph_path, out);
  const double tol = g.tolerance();
  const auto s = to_family(parse_family(read_json(family_path)), g.structure());
  Report r;
  r["graph"] = graph_path;
  r["family"] = family_path;
  r["mode"] = mode;
  r["tolerance"] = tol;
  bool pass = true;
  if (mode == "qck") {
    const auto q = qck_residuals(s, g);
    r["residuals"] = qck_json(q);
    pass = q.max() <= tol;
  } else if (mode == "lqck") {
    const auto l = lqck_residuals(s, g);
    r["residuals"] = lqck_json(l);
    pass = l.max() <= tol;
  } else {
    const auto c = classical_reduction(g, s, {}, tol);
    r["residuals"] = {{"partial_isometry", c.partial_isometry},
                      {"cuntz_krieger", c.cuntz_krieger},
                      {"range_sum", c.range_sum}};
    r["qck"] = qck_json(c.qck);
    r["consistent"] = c.consistent;
    pass = std::max({c.partial_isometry, c.cuntz_krieger, c.range_sum}) <= tol && c.consistent;
  }
  return emit(std::move(r), out, pass);
}

Eigen::MatrixXd classical_of(const char* pattern, int n) {
  Eigen::MatrixXd adj(n, n);
  for (int i = 0; i < n * n; ++i) adj(i / n, i % n) = pattern[i] - '0';
  return adj;
}

AlgebraElement diag_sqrt2(const BlockStructure& s) {
  AlgebraElement t = AlgebraElement::zero(s);
  t.block(0)(0, 0) = std::sqrt(2.0);
  return t;
}

/// s(x) = c x T^* on C^2 for M_2.
CKFamily m2_family(const DeltaState& psi, const Matrix& t_adj) {
  std::vector<Matrix> images;
  for (Eigen::Index p = 0; p < psi.structure().dim(); ++p) {
    Matrix e = Matrix::Zero(2, 2);
    e(psi.structure().unit(p).row, psi.structure().unit(p).col) = 1.0 / psi.delta_sq();
    images.push_back(e * t_adj);
  }
  return CKFamily(psi.structure(), 2, images);
}

using Example = std::function<nlohmann::json()>;

const std::map<std::string, std::pair<std::string, Example>>& examples() {
  static const std::map<std::string, std::pair<std::string, Example>> table = [] {
    const auto tr = DeltaState(BlockStructure({2}), {{0.5, 0.5}});
    const auto skew = DeltaState(BlockStructure({2}), {{1.0 / 3, 2.0 / 3}});
    const auto c2 = tracial_delta_form(BlockStructure({1, 1}));
    const auto m2m2 = DeltaState(BlockStructure({2, 2}), {{0.25, 0.25}, {0.25, 0.25}});
    auto graph = [](QuantumGraph g) { return [g] { return to_json(graph_file_of(g)); }; };
    auto family = [](CKFamily s) { return [s] { return to_json(family_file_of(s)); }; };
    Matrix swap_u = Matrix::Identity(2, 2);
    swap_u(1, 1) = -1.0;
    std::map<std::string, std::pair<std::string, Example>> t;
    t["complete-c2"] = {"complete graph over C^2", graph(complete_graph(c2))};
    t["complete-m2"] = {"complete graph over tracial M_2", graph(complete_graph(tr))};
    t["trivial-m2"] = {"trivial graph over tracial M_2", graph(trivial_graph(tr))};
    t["trivial-skew-m2"] = {"trivial graph over M_2 with rho = diag(1/3, 2/3)", graph(trivial_graph(skew))};
    t["rank-one-m2"] = {"A(x) = T x T^* with T = diag(sqrt 2, 0) on tracial M_2",
                        graph(rank_one_graph(tr, diag_sqrt2(tr.structure())))};
    t["cycle3"] = {"directed 3-cycle", graph(classical_graph(classical_of("010001100", 3)))};
    t["cycle2"] = {"directed 2-cycle", graph(classical_graph(classical_of("0110", 2)))};
    t["source-sink"] = {"classical graph with one edge 0 -> 1", graph(classical_graph(classical_of("0100", 2)))};
    t["swap-m2m2"] = {"block swap automorphism on M_2 (+) M_2",
                      graph(automorphism_graph(m2m2, AutomorphismSpec{{1, 0}, {swap_u, Matrix::Identity(2, 2)}}).graph)};
    t["family-trivial-m2"] = {"s(x) = x / delta^2 on C^2 over M_2", family(m2_family(tr, Matrix::Identity(2, 2)))};
    t["family-rank-one-m2"] = {"s(x) = x T^* / delta^2 on C^2, T = diag(sqrt 2, 0)",
                               family(m2_family(tr, diag_sqrt2(tr.structure()).block(0).adjoint()))};
    t["family-zero-m2"] = {"s = 0 with k = 1 over M_2", family(CKFamily::zero(tr.structure(), 1))};
    t["family-cycle2"] = {"Cuntz-Krieger family of the directed 2-cycle",
                          [] {
                            const auto g = classical_graph(classical_of("0110", 2));
                            Matrix s0 = Matrix::Zero(2, 2), s1 = Matrix::Zero(2, 2);
                            s0(0, 1) = 1.0;
                            s1(1, 0) = 1.0;
                            return to_json(family_file_of(family_from_ck(g, {s0, s1})));
                          }};
    return t;
  }();
  return table;
}

int run_example(const std::string& name, const std::string& path, bool list) {
  if (list || name.empty()) {
    for (const auto& [key, entry] : examples()) std::cout << key << "  " << entry.first << "\n";
    return kOk;
  }
  const auto it = examples().find(name);
  if (it == examples().end()) throw Error(ErrorCode::ParseError, "unknown example \"" + name + "\" (see --list)");
  const auto doc = it->second.second();
  if (path.empty() || path == "-")
    std::cout << doc.dump(2) << "\n";
  else
    write_json(path, doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum graph correspondences and Cuntz-Krieger relations"};
  app.require_subcommand(1);
  Output out;
  double tol_flag = 0;
  app.add_flag("--json", out.json, "print the report as JSON");
  app.add_option("--report", out.report_path, "also write the JSON report to a file");
  auto* tol_opt = app.add_option("--tol", tol_flag, "tolerance, overriding the file and QGRAPH_TOL")
                      ->check(CLI::PositiveNumber);

  std::string graph, family, mode = "lqck", name, dest;
  int levels = 3;
  bool list = false;

  auto* inspect = app.add_subcommand("inspect", "validate and analyse a graph file");
  inspect->add_option("graph", graph, "graph file")->required();

  auto* fock = app.add_subcommand("fock", "truncated Fock model residuals");
  fock->add_option("graph", graph, "graph file")->required();
  fock->add_option("--levels,-N", levels, "top level N")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "evaluate relations for an operator family");
  check->add_option("graph", graph, "graph file")->required();
  check->add_option("--family", family, "family file")->required();
  check->add_option("--mode", mode, "qck, lqck or classical")->check(CLI::IsMember({"qck", "lqck", "classical"}));

  auto* example = app.add_subcommand("example", "write a built-in graph or family file");
  example->add_option("name", name, "example name");
  example->add_option("--out,-o", dest, "destination (stdout when omitted)");
  example->add_flag("--list", list, "list example names");

  for (auto* sub : {inspect, fock, check, example}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }
  if (*tol_opt) out.tol = tol_flag;

  try {
    if (*inspect) return run_inspect(graph, out);
    if (*fock) return run_fock(graph, levels, out);
    if (*check) return run_check(graph, family, mode, out);
    return run_example(name, dest, list);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
