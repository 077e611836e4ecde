// Copyright 2026 The stochlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "stochlift/cli.hpp"
#include "stochlift/division.hpp"
#include "stochlift/linalg.hpp"
#include "stochlift/memory.hpp"
#include "stochlift/random.hpp"

namespace stochlift::cli {

namespace {

const std::vector<std::string> kDemos = {"theta-triviality", "scaling", "phase-memory",
                                         "ctmc-embedding", "ck-checklist"};

class Report {
 public:
  Report(const std::string& command, std::uint64_t seed) {
    doc_ = {{"command", command},
            {"inputs", json::array()},
            {"verdicts", json::array()},
            {"tables", json::object()},
            {"seed", seed},
            {"rng", "mt19937_64"},
            {"tool_version", kToolVersion},
            {"data", json::object()}};
  }

  void input(const LoadedFile& f) { doc_["inputs"].push_back({{"path", f.path}, {"digest", f.digest}}); }

  void verdict(const std::string& name, bool pass, std::optional<double> residual = std::nullopt,
               const std::string& detail = "") {
    json v = {{"name", name}, {"pass", pass}};
    if (residual) v["residual"] = *residual;
    if (!detail.empty()) v["detail"] = detail;
    doc_["verdicts"].push_back(std::move(v));
    all_pass_ = all_pass_ && pass;
  }

  void table(const std::string& name, std::vector<std::string> columns, json rows) {
    doc_["tables"][name] = {{"columns", std::move(columns)}, {"rows", std::move(rows)}};
  }

  json& data() { return doc_["data"]; }
  json& doc() { return doc_; }
  const json& doc() const { return doc_; }
  bool all_pass() const { return all_pass_; }
  int exit_code() const { return all_pass_ ? 0 : 1; }

 private:
  json doc_;
  bool all_pass_ = true;
};

struct Context {
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::ostream* err = nullptr;

  Tolerances tolerances() const { return tol ? Tolerances::uniform(*tol) : Tolerances{}; }
  double decision(double fallback) const { return tol.value_or(fallback); }
};

class Params {
 public:
  explicit Params(const std::vector<std::string>& items) {
    for (const std::string& item : items) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got " + item);
      values_[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  double number(const std::string& key, double fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    used_.push_back(key);
    return to_double(key, it->second);
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    used_.push_back(key);
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(to_double(key, piece));
    if (out.empty()) throw UsageError("--param " + key + " is empty");
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, value] : values_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw UsageError("unknown --param " + key);
      }
    }
  }

 private:
  static double to_double(const std::string& key, const std::string& text) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw UsageError("--param " + key + ": not a number: " + text);
    }
  }

  std::map<std::string, std::string> values_;
  std::vector<std::string> used_;
};

CMat pauli_x() {
  CMat x = CMat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

CMat hadamard() {
  CMat h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

std::optional<double> optional_number(const json& doc, const char* key) {
  if (doc.is_object() && doc.contains(key)) {
    if (!doc.at(key).is_number()) throw UsageError(std::string("\"") + key + "\" must be a number");
    return doc.at(key).get<double>();
  }
  return std::nullopt;
}

StochasticKernel load_kernel(const LoadedFile& f, const Context& ctx) {
  return StochasticKernel(parse_real_matrix(f.doc), optional_number(f.doc, "from_t"),
                          optional_number(f.doc, "to_t"), ctx.tolerances());
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, Report& report, const Context& ctx) {
  const LoadedFile f = load_json(path);
  report.input(f);
  const Tolerances tol = ctx.tolerances();
  const json& doc = f.doc;

  if (doc.is_object() && doc.contains("ops")) {
    const KrausMap k = parse_kraus(doc);
    const CptpReport r = check_cptp(k, tol);
    report.data()["type"] = "kraus";
    report.data()["kraus_rank"] = k.rank();
    report.verdict("trace_preserving", r.trace_preserving, r.tp_residual);
    report.verdict("completely_positive", r.completely_positive, r.min_choi_eigenvalue);
  } else if (doc.is_object() && doc.contains("h")) {
    report.data()["type"] = "generator";
    try {
      const GkslGenerator gen = parse_generator(doc);
      report.verdict("hermitian_hamiltonian", true, hermiticity_residual(gen.hamiltonian()));
      report.data()["jump_count"] = gen.jump_ops().size();
      report.data()["diagonal_preserving"] =
          diagonal_preservation_check(gen, 8, ctx.decision(1e-10), ctx.seed);
    } catch (const ValidationError& e) {
      report.verdict("hermitian_hamiltonian", false, e.residual(), e.what());
    }
  } else if (has_complex_entries(doc)) {
    const SuperOperator s = parse_map(doc);
    const CptpReport r = check_cptp(s, tol);
    report.data()["type"] = "superoperator";
    report.verdict("trace_preserving", r.trace_preserving, r.tp_residual);
    report.verdict("completely_positive", r.completely_positive, r.min_choi_eigenvalue);
  } else {
    const RMat m = parse_real_matrix(doc);
    if (m.cols() == 1 && m.rows() > 1) {
      report.data()["type"] = "vector";
      const double negative = std::max(0.0, -m.minCoeff());
      const double sum_residual = std::abs(m.sum() - 1.0);
      report.verdict("non_negative", negative <= tol.prob, negative);
      report.verdict("normalized", sum_residual <= tol.prob, sum_residual);
    } else {
      if (m.rows() != m.cols()) throw UsageError("kernel matrix must be square");
      report.data()["type"] = "kernel";
      const KernelValidation v = validate_kernel(m, tol);
      report.verdict("non_negative", v.max_negative <= tol.prob, v.max_negative);
      report.verdict("column_stochastic", v.max_column_residual <= tol.stoch, v.max_column_residual);
    }
  }
  return report.exit_code();
}

// -------------------------------------------------------------------- lift

int cmd_lift(const std::string& kernel_path, const std::string& method,
             const std::string& theta_path, const std::string& kraus_out, Report& report,
             const Context& ctx) {
  const LoadedFile kf = load_json(kernel_path);
  report.input(kf);
  const StochasticKernel gamma = load_kernel(kf, ctx);
  const Tolerances tol = ctx.tolerances();
  const double compat_tol = ctx.decision(1e-10);
  report.data()["method"] = method;

  std::optional<CMat> theta;
  if (method != "canonical") {
    if (theta_path.empty()) throw UsageError("--method " + method + " requires --theta");
    const LoadedFile tf = load_json(theta_path);
    report.input(tf);
    theta = parse_complex_matrix(tf.doc);
    if (theta->rows() != gamma.dim() || theta->cols() != gamma.dim()) {
      throw UsageError("theta and kernel dimensions differ");
    }
  }

  std::optional<KrausMap> kraus;
  std::optional<CompatibilityReport> compat;
  if (method == "canonical") {
    kraus = canonical_lift(gamma);
    compat = compatibility_check(*kraus, gamma, {}, compat_tol);
  } else if (method == "barandes") {
    kraus = barandes_column_lift(*theta, tol);
    compat = compatibility_check(*kraus, gamma, {}, compat_tol);
  } else {
    const ThetaLift lift = theta_conjugation_lift(*theta, tol);
    report.data()["trace_preserving"] = lift.trace_preserving;
    report.data()["tp_residual"] = lift.tp_residual;
    kraus = KrausMap({*theta});
    compat = compatibility_check(lift.map, gamma, {}, compat_tol);
  }
  report.data()["kraus"] = to_json(*kraus);
  report.data()["kraus_rank"] = kraus->rank();
  report.data()["induced_kernel"] = to_json(induced_kernel(*kraus, tol).kernel);
  json probes = json::array();
  for (std::size_t i = 0; i < compat->probes.size(); ++i) {
    probes.push_back({static_cast<double>(i), compat->probes[i].residual});
  }
  report.table("compatibility", {"probe", "residual"}, std::move(probes));
  report.verdict("compatibility", compat->pass, compat->max_residual);

  if (!kraus_out.empty()) {
    std::ofstream out(kraus_out);
    if (!out) throw UsageError("cannot write " + kraus_out);
    out << to_json(*kraus).dump(2) << "\n";
  }
  return report.exit_code();
}

// ------------------------------------------------------------ divisibility

json violations_json(const std::vector<ConstraintViolation>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    out.push_back({{"kind", v.kind}, {"row", v.row}, {"col", v.col}, {"value", v.value}});
  }
  return out;
}

int divisibility_classical(const std::vector<LoadedFile>& files, Report& report, const Context& ctx) {
  if (files.size() != 2) throw UsageError("classical mode takes two kernel files: G20 G10");
  const StochasticKernel g20 = load_kernel(files[0], ctx);
  const StochasticKernel g10 = load_kernel(files[1], ctx);
  const CDivisibility c = c_divisibility_check(g20, g10, ctx.decision(1e-9));
  if (const auto* d = std::get_if<CDivisible>(&c)) {
    report.data()["verdict"] = "Divisible";
    report.data()["route"] = d->route;
    report.data()["witness"] = to_json(d->witness);
    report.verdict("c_divisible", true, d->factorization_residual);
  } else {
    const auto& ind = std::get<CIndivisible>(c);
    report.data()["verdict"] = "Indivisible";
    report.data()["route"] = ind.route;
    report.data()["violations"] = violations_json(ind.violations);
    report.verdict("c_divisible", false, ind.infeasibility);
  }
  return report.exit_code();
}

int divisibility_quantum(const std::vector<LoadedFile>& files, Report& report, const Context& ctx) {
  if (files.size() != 2) throw UsageError("quantum mode takes two map files: E20 E10");
  const SuperOperator e20 = parse_map(files[0].doc);
  const SuperOperator e10 = parse_map(files[1].doc);
  const QDivisibility q = q_divisibility_check(e20, e10, ctx.decision(1e-9), ctx.tolerances());
  if (const auto* d = std::get_if<QDivisible>(&q)) {
    report.data()["verdict"] = "Divisible";
    report.data()["route"] = d->route;
    report.data()["witness"] = to_json(d->witness.matrix());
    report.data()["min_choi_eigenvalue"] = d->cptp.min_choi_eigenvalue;
    report.verdict("q_divisible", true, d->factorization_residual);
  } else if (const auto* ind = std::get_if<QIndivisible>(&q)) {
    report.data()["verdict"] = "Indivisible";
    report.verdict("q_divisible", false, std::nullopt, ind->reason);
  } else {
    const auto& inc = std::get<QInconclusive>(q);
    report.data()["verdict"] = "Inconclusive";
    report.data()["candidate"] = to_json(inc.candidate.matrix());
    report.data()["choi_spectrum"] = to_json(inc.choi_spectrum);
    report.verdict("q_divisible", false, std::nullopt, inc.reason);
  }
  return report.exit_code();
}

int divisibility_theorem1(const std::vector<LoadedFile>& files, Report& report, const Context& ctx) {
  if (files.size() != 2) throw UsageError("theorem1 mode takes two map files: E20 E10");
  const SuperOperator e20 = parse_map(files[0].doc);
  const SuperOperator e10 = parse_map(files[1].doc);
  const DivisionVerdict v = theorem1_check(e10, e20, ctx.decision(1e-9), ctx.tolerances());
  report.data()["q_detail"] = v.q_detail;
  report.data()["c_detail"] = v.c_detail;
  report.data()["gamma_10"] = to_json(v.gamma_10);
  report.data()["gamma_20"] = to_json(v.gamma_20);
  if (v.c_witness) report.data()["c_witness"] = to_json(*v.c_witness);
  if (v.q_witness) report.data()["q_witness"] = to_json(v.q_witness->matrix());
  report.verdict("q_divisible", v.q_divisible);
  report.verdict("diagonal_at_t1", v.all_diagonal_at_t1, v.max_off_diagonal_mass);
  report.verdict("c_divisible", v.c_divisible);
  if (v.theorem_applies) {
    report.verdict("theorem_applies", true, v.factorization_residual);
  } else {
    report.verdict("theorem_applies", false);
  }
  return v.theorem_applies ? 0 : 1;
}

int divisibility_environment(const std::vector<LoadedFile>& files, Report& report,
                             const Context& ctx) {
  if (files.size() != 1) throw UsageError("environment mode takes one scenario file");
  const json& doc = files[0].doc;
  for (const char* key : {"n_sys", "n_env", "p_env", "interaction", "post_sys", "post_env"}) {
    if (!doc.is_object() || !doc.contains(key)) throw UsageError(std::string("scenario needs \"") + key + "\"");
  }
  const RVec p = parse_real_vector(doc.at("p_env"));
  const auto n_sys = doc.at("n_sys").get<Eigen::Index>();
  const auto n_env = doc.at("n_env").get<Eigen::Index>();
  if (p.size() != n_env) throw UsageError("p_env length differs from n_env");
  const SuperOperator interaction = parse_map(doc.at("interaction"));
  if (interaction.dim() != n_sys * n_env) throw UsageError("interaction dimension differs from n_sys*n_env");
  const EnvironmentScenarioReport r = environment_division_scenario(
      ProbabilityVector(p, ctx.tolerances()), interaction, parse_map(doc.at("post_sys")),
      parse_map(doc.at("post_env")), ctx.decision(1e-9), ctx.tolerances());
  json rows = json::array();
  for (const auto& e : r.records) {
    rows.push_back({static_cast<double>(e.system_state), e.reduced_off_diagonal, e.block_off_diagonal});
  }
  report.table("record_form", {"system_state", "reduced_off_diagonal", "block_off_diagonal"},
               std::move(rows));
  report.data()["gamma_10"] = to_json(r.gamma_10);
  report.data()["gamma_20"] = to_json(r.gamma_20);
  report.data()["c_detail"] = r.c_detail;
  report.data()["partial_trace_residual"] = r.partial_trace_residual;
  report.data()["min_reduced_eigenvalue"] = r.min_reduced_eigenvalue;
  if (r.c_witness) report.data()["c_witness"] = to_json(*r.c_witness);
  report.verdict("record_form", r.record_form);
  report.verdict("c_divisible", r.c_divisible);
  return r.c_divisible ? 0 : 1;
}

// -------------------------------------------------------------------- demo

int demo_theta_triviality(Params& params, const std::string& input, Report& report,
                          const Context& ctx) {
  CMat h = pauli_x();
  if (!input.empty()) {
    const LoadedFile f = load_json(input);
    report.input(f);
    h = parse_complex_matrix(f.doc);
  }
  const double span = params.number("t", 1.0);
  std::vector<std::uint64_t> ns;
  for (double n : params.list("n", {10, 100, 1000, 10000})) {
    if (n < 1 || n != std::floor(n)) throw UsageError("--param n must list positive integers");
    ns.push_back(static_cast<std::uint64_t>(n));
  }
  params.reject_unused();
  const cplx i_unit(0.0, 1.0);
  const auto rows = theta_markov_triviality_demo(
      [&](double step) { return expm(CMat(-i_unit * step * h)); }, span, ns, ctx.tolerances());

  json table = json::array();
  bool within = true;
  double worst_excess = -1.0;
  for (const auto& r : rows) {
    table.push_back({static_cast<double>(r.n), r.h, r.alpha, r.bound, r.product_distance});
    worst_excess = std::max(worst_excess, r.product_distance - r.bound);
    within = within && r.product_distance <= r.bound + 1e-12;
  }
  report.table("triviality", {"n", "h", "alpha", "bound", "product_distance"}, std::move(table));
  report.verdict("product_within_bound", within, worst_excess);

  json factors = json::array();
  bool decade_ok = rows.size() >= 2;
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double decades = std::log10(static_cast<double>(rows[k + 1].n) / rows[k].n);
    const double f = std::pow(rows[k].bound / rows[k + 1].bound, 1.0 / decades);
    factors.push_back(f);
    decade_ok = decade_ok && f >= 9.0 && f <= 11.0;
  }
  report.data()["bound_factor_per_decade"] = std::move(factors);
  report.verdict("bound_decreases_tenfold_per_decade", decade_ok);
  return report.exit_code();
}

int demo_scaling(Params& params, const std::string& input, Report& report, const Context& ctx) {
  RMat r(2, 2);
  r << -1.0, 1.0, 1.0, -1.0;
  if (!input.empty()) {
    const LoadedFile f = load_json(input);
    report.input(f);
    r = parse_real_matrix(f.doc);
  }
  const double t_star = params.number("t_star", 1.0);
  const double t = params.number("t", 1.0);
  const std::vector<double> eps = params.list("epsilon", {0.1, 0.05, 0.025});
  params.reject_unused();
  const ScalingTable st = dtmc_to_ctmc_scaling(RateMatrix(r, ctx.tolerances()), t_star, t, eps,
                                               ctx.tolerances());
  json table = json::array();
  bool ratios_ok = st.rows.size() >= 2;
  for (std::size_t k = 0; k < st.rows.size(); ++k) {
    const auto& row = st.rows[k];
    json line = {row.epsilon, static_cast<double>(row.n_steps), row.error};
    if (k == 0) {
      line.push_back(nullptr);
    } else {
      const double ratio = st.rows[k - 1].error / row.error;
      line.push_back(ratio);
      ratios_ok = ratios_ok && ratio >= 2.5 && ratio <= 5.5;
    }
    table.push_back(std::move(line));
  }
  report.table("scaling", {"epsilon", "n_steps", "error", "ratio"}, std::move(table));
  report.verdict("error_monotone", st.monotone);
  report.verdict("second_order_ratio", ratios_ok);
  return report.exit_code();
}

int demo_phase_memory(Params& params, const std::string& input, Report& report,
                      const Context& ctx) {
  params.reject_unused();
  CMat d = CMat::Identity(2, 2);
  d(1, 1) = cplx(0.0, 1.0);
  CMat u_x = hadamard();
  CMat u_y = d * hadamard();
  CMat v = hadamard();
  if (!input.empty()) {
    const LoadedFile f = load_json(input);
    report.input(f);
    for (const char* key : {"u_x", "u_y", "v"}) {
      if (!f.doc.is_object() || !f.doc.contains(key)) throw UsageError(std::string("scenario needs \"") + key + "\"");
    }
    u_x = parse_complex_matrix(f.doc.at("u_x"));
    u_y = parse_complex_matrix(f.doc.at("u_y"));
    v = parse_complex_matrix(f.doc.at("v"));
  }
  const double tol = ctx.decision(1e-12);
  const bool same = one_step_indistinguishable(u_x, u_y, tol);
  report.verdict("one_step_indistinguishable", same,
                 max_abs(RMat(mod_square(u_x) - mod_square(u_y))));
  report.data()["gamma_1_x"] = to_json(mod_square(u_x));
  report.data()["gamma_1_y"] = to_json(mod_square(u_y));
  const RMat two_x = two_step_kernel(v, u_x);
  const RMat two_y = two_step_kernel(v, u_y);
  report.data()["gamma_2_x"] = to_json(two_x);
  report.data()["gamma_2_y"] = to_json(two_y);
  if (!same) return report.exit_code();

  json table = json::array();
  double largest = 0.0;
  for (Eigen::Index x0 = 0; x0 < u_x.rows(); ++x0) {
    const RVec diff = two_step_difference(v, u_x, u_y, x0, tol);
    for (Eigen::Index x2 = 0; x2 < diff.size(); ++x2) {
      table.push_back({static_cast<double>(x0), static_cast<double>(x2), diff(x2)});
      largest = std::max(largest, std::abs(diff(x2)));
    }
  }
  report.table("two_step_difference", {"x0", "x2", "difference"}, std::move(table));
  report.verdict("two_step_distinguishable", largest > tol, largest);
  return report.exit_code();
}

int demo_ctmc_embedding(Params& params, const std::string& input, Report& report,
                        const Context& ctx) {
  const double t = params.number("t", 1.0);
  const auto n = static_cast<Eigen::Index>(params.number("n", 3));
  const int instances = static_cast<int>(params.number("instances", 10));
  const double scale = params.number("scale", 1.0);
  params.reject_unused();
  if (n < 1 || instances < 1) throw UsageError("n and instances must be >= 1");
  std::optional<RMat> given;
  if (!input.empty()) {
    const LoadedFile f = load_json(input);
    report.input(f);
    given = parse_real_matrix(f.doc);
  }
  const double tol = ctx.decision(1e-10);
  Rng rng(ctx.seed);
  json table = json::array();
  double worst = 0.0;
  bool all_diag = true;
  const int count = given ? 1 : instances;
  for (int k = 0; k < count; ++k) {
    const RateMatrix rates = given ? RateMatrix(*given, ctx.tolerances())
                                   : random_rate_matrix(n, scale, rng);
    const Eigen::Index dim = rates.dim();
    const ProbabilityVector p0(random_stochastic(dim, rng).col(0));
    const GkslGenerator gen = ctmc_embedding(rates);
    all_diag = all_diag && diagonal_preservation_check(gen, 4, 1e-12, ctx.seed);
    const DensityOperator rho = propagate(gen, embed_diagonal(p0), t);
    const double leakage = off_diagonal_sum(rho.matrix());
    const ProbabilityVector lifted = readout(rho, false);
    const ProbabilityVector direct = ctmc_propagate(rates, p0, t);
    const double residual = max_abs(RVec(lifted.entries() - direct.entries()));
    worst = std::max(worst, residual);
    table.push_back({static_cast<double>(k), t, residual, leakage});
  }
  report.table("ctmc_embedding", {"instance", "t", "residual", "off_diagonal_mass"}, std::move(table));
  report.verdict("diagonal_preserving", all_diag);
  report.verdict("readout_matches_ctmc", worst <= tol, worst);
  return report.exit_code();
}

int demo_ck_checklist(Params& params, const std::string& input, const std::string& family,
                      const std::string& lift, Report& report, const Context& ctx) {
  const double fd_step = params.number("fd_step", kDefaultFdStep);
  const double tolerance = params.number("tolerance", ctx.decision(kDefaultChecklistTolerance));
  const std::vector<double> grid = params.list("grid", {0.0, 0.4, 1.0});
  params.reject_unused();
  std::optional<LoadedFile> f;
  if (!input.empty()) {
    f = load_json(input);
    report.input(*f);
  }
  SuperOperatorFamily fam;
  if (family == "gksl") {
    if (f) {
      fam = gksl_family(parse_generator(f->doc), grid);
    } else {
      CMat decay = CMat::Zero(2, 2);
      decay(0, 1) = std::sqrt(0.5);
      fam = gksl_family(GkslGenerator(0.5 * pauli_x(), {decay}), grid);
    }
  } else if (family == "unitary") {
    fam = unitary_family(f ? parse_complex_matrix(f->doc) : pauli_x(), grid);
  } else {
    CMat h = pauli_x();
    if (f) {
      if (!f->doc.is_object() || !f->doc.contains("hamiltonian")) {
        throw UsageError("kernel-family file needs \"hamiltonian\"");
      }
      h = parse_complex_matrix(f->doc.at("hamiltonian"));
    }
    fam = pairwise_lift_family(h, lift == "barandes" ? PairwiseLift::kBarandes : PairwiseLift::kCanonical,
                               grid);
    report.data()["lift"] = lift;
  }
  report.data()["family"] = family;
  report.data()["fd_step"] = fd_step;
  const CkChecklistReport r = ck_checklist(fam, fd_step, tolerance);
  auto entries = [](const std::vector<ChecklistEntry>& es) {
    json rows = json::array();
    for (const auto& e : es) rows.push_back({e.t, e.s, e.residual});
    return rows;
  };
  report.table("check_a", {"t", "s", "residual"}, entries(r.check_a));
  report.table("check_c", {"t", "s", "residual"}, entries(r.check_c));
  report.data()["stencil_error_estimate"] = r.stencil_error_estimate;
  report.verdict("check_a", r.max_check_a <= tolerance, r.max_check_a);
  report.verdict("check_c", r.max_check_c <= tolerance, r.max_check_c);
  return report.exit_code();
}

void emit(Report& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.doc().dump(2) + "\n";
  out << text;
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
    file << text;
  }
}

void summarize(const Report& report, std::ostream& err) {
  const json& doc = report.doc();
  err << doc.at("command").get<std::string>() << ":";
  for (const json& v : doc.at("verdicts")) {
    err << " " << v.at("name").get<std::string>() << "=" << (v.at("pass").get<bool>() ? "pass" : "FAIL");
  }
  if (doc.contains("error")) err << " error: " << doc.at("error").get<std::string>();
  err << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic kernels, their quantum lifts, and divisibility checks", "stochlift"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  ctx.err = &err;
  std::string out_path;
  app.add_option("--seed", ctx.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--tol", ctx.tol, "Override every numerical tolerance");
  app.add_option("--out", out_path, "Also write the report to this path");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Validate a kernel, vector, map or generator file");
  validate->add_option("file", validate_file)->required();

  std::string lift_file, method = "canonical", theta_file, kraus_out;
  auto* lift = app.add_subcommand("lift", "Lift a kernel to an operator map");
  lift->add_option("kernel", lift_file)->required();
  lift->add_option("--method", method)->check(CLI::IsMember({"canonical", "theta", "barandes"}));
  lift->add_option("--theta", theta_file, "Complex matrix file for theta and barandes");
  lift->add_option("--kraus-out", kraus_out, "Write the Kraus operators here");

  std::string mode;
  std::vector<std::string> div_files;
  auto* div = app.add_subcommand("divisibility", "Classical, quantum or combined divisibility");
  div->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"classical", "quantum", "theorem1", "environment"}));
  div->add_option("files", div_files, "Later map first: G20 G10 or E20 E10; one scenario file")
      ->required();

  std::string demo_name, demo_input, family = "gksl", pair_lift = "canonical";
  std::vector<std::string> demo_params;
  auto* demo = app.add_subcommand("demo", "Run a named demonstration");
  demo->add_option("name", demo_name)->required();
  demo->add_option("--param", demo_params, "key=value, repeatable");
  demo->add_option("--input", demo_input, "Optional input file for the demo");
  demo->add_option("--family", family)->check(CLI::IsMember({"gksl", "unitary", "pairwise-lift"}));
  demo->add_option("--lift", pair_lift)->check(CLI::IsMember({"canonical", "barandes"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::string command;
  if (validate->parsed()) command = "validate";
  if (lift->parsed()) command = "lift";
  if (div->parsed()) command = "divisibility";
  if (demo->parsed()) command = "demo";
  Report report(command, ctx.seed);
  if (ctx.tol) report.doc()["tol"] = *ctx.tol;

  int code = 0;
  try {
    if (command == "validate") {
      code = cmd_validate(validate_file, report, ctx);
    } else if (command == "lift") {
      code = cmd_lift(lift_file, method, theta_file, kraus_out, report, ctx);
    } else if (command == "divisibility") {
      report.doc()["mode"] = mode;
      std::vector<LoadedFile> files;
      for (const auto& p : div_files) {
        files.push_back(load_json(p));
        report.input(files.back());
      }
      if (mode == "classical") code = divisibility_classical(files, report, ctx);
      if (mode == "quantum") code = divisibility_quantum(files, report, ctx);
      if (mode == "theorem1") code = divisibility_theorem1(files, report, ctx);
      if (mode == "environment") code = divisibility_environment(files, report, ctx);
    } else {
      if (std::find(kDemos.begin(), kDemos.end(), demo_name) == kDemos.end()) {
        throw UsageError("unknown demo " + demo_name);
      }
      report.doc()["demo"] = demo_name;
      Params params(demo_params);
      if (demo_name == "theta-triviality") code = demo_theta_triviality(params, demo_input, report, ctx);
      if (demo_name == "scaling") code = demo_scaling(params, demo_input, report, ctx);
      if (demo_name == "phase-memory") code = demo_phase_memory(params, demo_input, report, ctx);
      if (demo_name == "ctmc-embedding") code = demo_ctmc_embedding(params, demo_input, report, ctx);
      if (demo_name == "ck-checklist") {
        code = demo_ck_checklist(params, demo_input, family, pair_lift, report, ctx);
      }
    }
  } catch (const UsageError& e) {
    err << "stochlift: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << "stochlift: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "stochlift: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    report.doc()["error"] = e.what();
    report.verdict("completed", false);
    code = 1;
  }

  try {
    emit(report, out_path, out);
  } catch (const UsageError& e) {
    err << "stochlift: " << e.what() << "\n";
    return 2;
  }
  summarize(report, err);
  return code;
}

}  // namespace stochlift::cli
