#pragma once

// Command dispatch for the qbcurv tool. Argument parsing lives in the
// executable; everything here is a pure function of RunConfig.

#include "curvature.hpp"
#include "qb_reduction.hpp"
#include "qb_search.hpp"
#include "report.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace qbcurv {

enum class Command { kTable, kRicci, kVerifyExact, kGramPsd, kVerifySample, kMinimize, kAll };
enum class Format { kJson, kCsv };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"table", Command::kTable},           {"ricci", Command::kRicci},
      {"verify-exact", Command::kVerifyExact}, {"gram-psd", Command::kGramPsd},
      {"verify-sample", Command::kVerifySample}, {"minimize", Command::kMinimize},
      {"all", Command::kAll}};
  return names;
}

inline std::string command_name(Command c) {
  for (const auto& [n, v] : command_names())
    if (v == c) return n;
  return "?";
}

struct RunConfig {
  Command command = Command::kAll;
  Format format = Format::kJson;
  std::uint64_t seed = 0;
  std::uint64_t count = 100000;
  std::optional<std::string> out;
  int steps = 5000;  // minimize
  int starts = 20;   // minimize
  int workers = 1;   // verify-sample
};

/// Number of random rational inputs replayed through the exact proof.
inline constexpr int kExactDraws = 100;
/// |min eigenvalue| bound for the float image of the Gram operator.
inline constexpr double kMinEigTol = 1e-9;
/// Distance from 0 that descent must reach.
inline constexpr double kDescentTol = 1e-8;
/// Relative agreement of analytic and finite-difference gradients.
inline constexpr double kGradientTol = 1e-6;

inline Json tolerances_json() {
  Json t;
  t["unitary"] = kUnitaryTol;
  t["imaginary"] = kImagTol;
  t["identity"] = kIdentityTol;
  t["chain"] = kChainTol;
  t["sample_floor"] = kSampleFloor;
  t["min_eig"] = kMinEigTol;
  t["descent"] = kDescentTol;
  t["gradient_rel"] = kGradientTol;
  return t;
}

struct Outcome {
  Json report;
  bool pass = true;
};

// ---------------------------------------------------------------------------

inline std::string table_csv(const CurvTensor& t) {
  std::ostringstream os;
  os << "i,j,k,l,num,den\n";
  for (int p = 0; p < 7; ++p)
    for (int q = 0; q < 7; ++q)
      for (int r = 0; r < 7; ++r)
        for (int s = 0; s < 7; ++s) {
          const Rational& v = t(p, q, r, s);
          os << p + 1 << ',' << q + 1 << ',' << r + 1 << ',' << s + 1 << ',' << numerator(v) << ','
             << denominator(v) << '\n';
        }
  return os.str();
}

inline Outcome table_report(const CurvTensor& t) {
  Outcome o;
  Json rows = Json::array();
  for (int p = 0; p < 7; ++p)
    for (int q = 0; q < 7; ++q)
      for (int r = 0; r < 7; ++r)
        for (int s = 0; s < 7; ++s) rows.push_back(Json{{"i", p + 1}, {"j", q + 1}, {"k", r + 1}, {"l", s + 1}, {"value", to_string(t(p, q, r, s))}});
  o.report["command"] = "table";
  o.report["entries"] = std::move(rows);
  o.report["tolerances"] = tolerances_json();
  return o;
}

inline Outcome cross_validation_report(const CurvTensor& t) {
  const auto cv = cross_validate(t);
  Outcome o;
  o.report["cases"] = cv.cases;
  o.report["mismatches"] = cv.mismatches;
  o.report["kaehler_symmetry_violations"] = kaehler_symmetry_violations(t);
  o.pass = cv.ok() && cv.cases == 2401 && o.report["kaehler_symmetry_violations"] == 0;
  o.report["pass"] = o.pass;
  return o;
}

inline Outcome ricci_report(const CurvTensor& t) {
  const auto ric = ricci(t);
  Rational scalar = 0;
  bool einstein = true;
  const Rational c = ric[0][0];
  Json rows = Json::array();
  for (int p = 0; p < 7; ++p) {
    rows.push_back(rational_array(ric[p]));
    scalar += ric[p][p];
    for (int q = 0; q < 7; ++q)
      if (ric[p][q] != (p == q ? c : Rational(0))) einstein = false;
  }
  Outcome o;
  o.report["command"] = "ricci";
  o.report["ricci_constant"] = einstein ? Json(to_string(c)) : Json(nullptr);
  o.report["einstein"] = einstein;
  o.report["scalar_curvature"] = to_string(scalar);
  o.report["matrix"] = std::move(rows);
  o.report["tolerances"] = tolerances_json();
  o.pass = einstein && c == 4;
  o.report["pass"] = o.pass;
  return o;
}

inline Outcome verify_exact_report(std::uint64_t seed) {
  const SchurCertificate schur = schur_certificate();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  auto rq = [&] { return Rational(num(rng), den(rng)); };

  // Per link: the draw with the smallest margin lhs - rhs.
  std::vector<std::optional<Link>> worst(4);
  bool all_pass = true;
  int passed = 0;
  for (int n = 0; n < kExactDraws; ++n) {
    Herm6<ExactComplex> pp;
    for (int i = 0; i < 6; ++i) {
      pp(i, i) = ExactComplex(rq());
      for (int j = i + 1; j < 6; ++j) {
        pp(i, j) = ExactComplex(rq(), rq());
        pp(j, i) = conj(pp(i, j));
      }
    }
    const auto r = exact_nonneg_proof(pp, schur);
    all_pass = all_pass && r.overall;
    passed += r.overall ? 1 : 0;
    const auto links = r.links();
    for (std::size_t k = 0; k < links.size(); ++k) {
      const Link& l = *links[k];
      if (!worst[k] || l.lhs - l.rhs < worst[k]->lhs - worst[k]->rhs || (worst[k]->pass && !l.pass)) worst[k] = l;
    }
  }

  const auto structural = structural_certificate();
  bool structural_ok = true;
  Json st = Json::array();
  for (const auto& c : structural) {
    structural_ok = structural_ok && c.result.psd;
    st.push_back(Json{{"name", c.name}, {"psd", c.result.psd}, {"rank", c.result.rank}, {"kernel_dim", c.result.kernel_dim}});
  }

  Outcome o;
  o.report["command"] = "verify-exact";
  o.report["schur_diag"] = rational_array(schur.schur_diag);
  o.report["d_eigen"] = rational_array(schur.d_eigen);
  o.report["t3_conjugates"] = Json{{"G", rational_array(schur.t_g)},
                                   {"H", rational_array(schur.t_h)},
                                   {"L", rational_array(schur.t_l)},
                                   {"J", rational_array(schur.t_j)}};
  Json links = Json::array();
  for (const auto& l : worst)
    links.push_back(Json{{"name", l->name}, {"lhs", to_string(l->lhs)}, {"rhs", to_string(l->rhs)}, {"pass", l->pass}});
  o.report["links"] = std::move(links);
  o.report["draws"] = kExactDraws;
  o.report["draws_passed"] = passed;
  o.report["seed"] = seed;
  o.report["structural"] = std::move(st);
  o.pass = all_pass && schur.psd && structural_ok;
  o.report["overall"] = o.pass;
  o.report["tolerances"] = tolerances_json();
  return o;
}

inline Outcome gram_psd_report(const CurvTensor& t) {
  const GramOperator g = gram_operator(t);
  const PsdResult r = psd_certify_exact(g);
  const double lo = min_eig_float(g);
  const auto id = coords_from_hermitian(Herm7<ExactComplex>::identity());
  bool identity_in_kernel = true;
  for (int i = 0; i < kHermDim && identity_in_kernel; ++i) {
    Rational s = 0;
    for (int j = 0; j < kHermDim; ++j) s += g.m(i, j) * id[j];
    identity_in_kernel = is_zero(s);
  }
  Outcome o;
  o.report["command"] = "gram-psd";
  o.report["psd"] = r.psd;
  o.report["rank"] = r.rank;
  o.report["kernel_dim"] = r.kernel_dim;
  o.report["identity_in_kernel"] = identity_in_kernel;
  o.report["min_eig_float"] = lo;
  o.report["pivots"] = rational_array(r.pivots);
  if (r.witness) {
    o.report["witness"] = rational_array(*r.witness);
    o.report["witness_value"] = to_string(*r.witness_value);
  }
  o.report["tolerances"] = tolerances_json();
  // A nontrivial exact kernel pins the float minimum to 0.
  o.pass = r.psd && identity_in_kernel && std::abs(lo) <= kMinEigTol;
  o.report["pass"] = o.pass;
  return o;
}

inline Json vec_json(const Vec7d& x) {
  Json a = Json::array();
  for (int i = 0; i < 7; ++i) a.push_back(x(i));
  return a;
}

inline Outcome verify_sample_report(const CurvTensor& t, std::uint64_t count, std::uint64_t seed, int workers) {
  SampleConfig cfg;
  cfg.count = count;
  cfg.seed = seed;
  cfg.workers = workers;
  const SampleResult r = sample_scan(cfg, t);
  Outcome o;
  o.report["command"] = "verify-sample";
  o.report["count"] = r.count;
  o.report["seed"] = seed;
  o.report["min_value"] = r.min_value;
  o.report["argmin_x"] = vec_json(r.argmin.x);
  Json worst = Json::array();
  for (const auto& p : r.worst) worst.push_back(Json{{"value", p.value}, {"x", vec_json(p.x)}});
  o.report["worst"] = std::move(worst);
  o.report["tolerances"] = tolerances_json();
  o.pass = r.min_value >= kSampleFloor;
  o.report["pass"] = o.pass;
  return o;
}

/// Largest relative gap between the analytic gradient and central differences.
inline double gradient_check(const Eigen::MatrixXd& m, Rng& rng, int points = 10) {
  double worst = 0;
  for (int n = 0; n < points; ++n) {
    const Eigen::VectorXd v = random_start(rng, static_cast<int>(m.rows())).normalized();
    const Eigen::VectorXd g = rayleigh_gradient(m, v);
    Eigen::VectorXd fd(v.size());
    const double h = 1e-5;
    for (int i = 0; i < v.size(); ++i) {
      Eigen::VectorXd up = v, dn = v;
      up(i) += h;
      dn(i) -= h;
      fd(i) = (rayleigh(m, up) - rayleigh(m, dn)) / (2 * h);
    }
    worst = std::max(worst, (g - fd).norm() / std::max(g.norm(), 1e-300));
  }
  return worst;
}

inline Outcome minimize_report(const CurvTensor& t, int steps, int starts, std::uint64_t seed) {
  const Eigen::MatrixXd m = gram_operator(t).to_float();
  Rng rng = block_rng(seed, 0);
  DescentOptions opt;
  opt.steps = steps;
  Json runs = Json::array();
  double best = 0, worst_final = 0, lowest = 0;
  bool monotone = true;
  for (int s = 0; s < starts; ++s) {
    const auto d = descend(m, random_start(rng), opt);
    runs.push_back(Json{{"initial_value", d.initial_value},
                        {"final_value", d.final_value},
                        {"min_value", d.min_value},
                        {"steps_taken", d.steps_taken},
                        {"monotone", d.monotone}});
    if (s == 0 || d.final_value < best) best = d.final_value;
    if (s == 0 || std::abs(d.final_value) > worst_final) worst_final = std::abs(d.final_value);
    if (s == 0 || d.min_value < lowest) lowest = d.min_value;
    monotone = monotone && d.monotone;
  }
  Rng grng = block_rng(seed, 1);
  const double grad_err = gradient_check(m, grng);

  Outcome o;
  o.report["command"] = "minimize";
  o.report["seed"] = seed;
  o.report["steps"] = steps;
  o.report["starts"] = starts;
  o.report["best_final"] = best;
  o.report["max_abs_final"] = worst_final;
  o.report["lowest_value"] = lowest;
  o.report["monotone"] = monotone;
  o.report["gradient_rel_error"] = grad_err;
  o.report["runs"] = std::move(runs);
  o.report["tolerances"] = tolerances_json();
  o.pass = starts > 0 && lowest >= kSampleFloor && worst_final <= kDescentTol && monotone && grad_err <= kGradientTol;
  o.report["pass"] = o.pass;
  return o;
}

inline Outcome all_report(const CurvTensor& t, const RunConfig& cfg) {
  Outcome o;
  o.report["command"] = "all";
  auto add = [&o](const char* key, Outcome part) {
    part.report.erase("tolerances");
    part.report.erase("command");
    o.pass = o.pass && part.pass;
    o.report[key] = std::move(part.report);
  };
  add("cross_validation", cross_validation_report(t));
  add("ricci", ricci_report(t));
  add("verify_exact", verify_exact_report(cfg.seed));
  add("gram_psd", gram_psd_report(t));
  add("verify_sample", verify_sample_report(t, cfg.count, cfg.seed, cfg.workers));
  o.report["overall"] = o.pass;
  o.report["tolerances"] = tolerances_json();
  return o;
}

/// Runs one command and writes its report to `out`. Returns 0 when every
/// check passed, 1 otherwise. Throws std::invalid_argument on configurations
/// that are not runnable (callers map that to a usage error).
inline int run(const RunConfig& cfg, std::ostream& out) {
  if (cfg.count < 1) throw std::invalid_argument("--count must be at least 1");
  if (cfg.steps < 0 || cfg.starts < 1) throw std::invalid_argument("--steps must be >= 0 and --starts >= 1");
  if (cfg.format == Format::kCsv && cfg.command != Command::kTable)
    throw std::invalid_argument("csv output is only available for table");

  const CurvTensor t = assemble_tensor();
  if (cfg.command == Command::kTable && cfg.format == Format::kCsv) {
    out << table_csv(t);
    return 0;
  }
  Outcome o;
  switch (cfg.command) {
    case Command::kTable:
      o = table_report(t);
      break;
    case Command::kRicci:
      o = ricci_report(t);
      break;
    case Command::kVerifyExact:
      o = verify_exact_report(cfg.seed);
      break;
    case Command::kGramPsd:
      o = gram_psd_report(t);
      break;
    case Command::kVerifySample:
      o = verify_sample_report(t, cfg.count, cfg.seed, cfg.workers);
      break;
    case Command::kMinimize:
      o = minimize_report(t, cfg.steps, cfg.starts, cfg.seed);
      break;
    case Command::kAll:
      o = all_report(t, cfg);
      break;
  }
  write_json(out, o.report);
  return o.pass ? 0 : 1;
}

}  // namespace qbcurv
