// ggmtree: boundary-law branches, GGM counts and gradient marginals of the
// alternating-sign SOS model on Cayley trees.
//
// Exit codes are part of the contract:
//   0 ok, 1 verify failure, 2 bad parameters, 3 oracle disagreement
//   (--with-oracle --strict), 4 I/O failure, 5 unknown branch label,
//   6 enumeration size cap exceeded.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ggm/branches.hpp"
#include "ggm/measure.hpp"
#include "ggm/model.hpp"
#include "ggm/oracle.hpp"
#include "verify.hpp"

namespace {

using namespace ggm;

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

enum ExitCode {
  kOk = 0,
  kVerifyFailed = 1,
  kBadParams = 2,
  kOracleDisagreement = 3,
  kIoError = 4,
  kUnknownBranch = 5,
  kSizeCap = 6,
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_or_null(const std::optional<double>& v) {
  return v ? fmt17(*v) : "null";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << content;
  if (!out.good()) throw std::ios_base::failure("write failed: " + path);
}

// --- constants ---------------------------------------------------------

int cmd_constants(int k, const std::string& format) {
  const CriticalConstants cc = critical_constants(k);
  std::ostringstream out;
  if (format == "json") {
    out << "{\"schema_version\": " << kSchemaVersion << ", \"k\": " << k
        << ", \"theta_0\": " << fmt17(cc.theta_0) << ", \"theta_cr\": " << fmt17(cc.theta_cr)
        << ", \"theta_c\": " << fmt17(cc.theta_c) << ", \"theta_c3\": " << json_or_null(cc.theta_c3)
        << ", \"theta_star2\": " << json_or_null(cc.theta_star2) << "}\n";
  } else {
    out << "k            " << k << "\n";
    out << "theta_0      " << fmt17(cc.theta_0) << "\n";
    out << "theta_cr     " << fmt17(cc.theta_cr) << "\n";
    out << "theta_c      " << fmt17(cc.theta_c) << "\n";
    if (cc.theta_c3) out << "theta_c3     " << fmt17(*cc.theta_c3) << "\n";
    if (cc.theta_star2) out << "theta_star2  " << fmt17(*cc.theta_star2) << "\n";
  }
  std::cout << out.str();
  return kOk;
}

// --- solve -------------------------------------------------------------

std::string branch_json(const branches::SolutionBranch& b, const std::string& label) {
  std::ostringstream out;
  out << "{\"label\": \"" << label << "\", \"tag\": \"" << branches::to_string(b.tag)
      << "\", \"x\": " << fmt17(b.x) << ", \"y\": " << fmt17(b.y) << ", \"law\": [";
  for (size_t i = 0; i < b.law.values.size(); ++i) {
    if (i) out << ", ";
    out << fmt17(b.law.values[i]);
  }
  out << "], \"residual\": " << fmt17(b.residual) << "}";
  return out.str();
}

std::string oracle_json(const oracle::Report& rep) {
  std::ostringstream out;
  out << "{\"solutions\": [";
  for (size_t i = 0; i < rep.solutions.size(); ++i) {
    const PeriodicLaw& law = rep.solutions[i];
    if (i) out << ", ";
    // Pattern coordinates: q=2 -> classes (0,1), q=3 -> (1,2), q=4 -> (1,3).
    const double px = law.q == 2 ? law.values[0] : law.values[1];
    const double py = law.values[static_cast<size_t>(law.q - 1)];
    out << "{\"x\": " << fmt17(px) << ", \"y\": " << fmt17(py) << ", \"law\": [";
    for (size_t c = 0; c < law.values.size(); ++c) {
      if (c) out << ", ";
      out << fmt17(law.values[c]);
    }
    out << "], \"oracle\": true}";
  }
  out << "], \"starts\": " << rep.starts << ", \"converged\": " << rep.converged
      << ", \"discarded\": " << rep.discarded
      << ", \"max_residual\": " << fmt17(rep.max_residual) << ", \"agreement\": "
      << (rep.agreement ? (*rep.agreement ? "true" : "false") : "null") << "}";
  return out.str();
}

int cmd_solve(int q, int k, double theta, const std::string& format, bool with_oracle,
              bool strict) {
  const ModelParams params(k, theta);
  const auto cs = branches::census(q, params);
  const auto labels = branches::census_labels(cs);
  bool lower_bound = false;
  const int nu = q == 4 ? branches::p4_count(params, &lower_bound) : branches::count(q, params);

  std::optional<oracle::Report> rep;
  if (with_oracle) {
    rep = oracle::solve(q, params);
    std::vector<PeriodicLaw> laws;
    for (const auto& b : cs) laws.push_back(b.law);
    oracle::compare(*rep, laws);
  }

  std::ostringstream out;
  if (format == "json") {
    out << "{\"schema_version\": " << kSchemaVersion << ", \"q\": " << q << ", \"k\": " << k
        << ", \"theta\": " << fmt17(theta) << ", \"branches\": [";
    for (size_t i = 0; i < cs.size(); ++i) {
      if (i) out << ", ";
      out << branch_json(cs[i], labels[i]);
    }
    out << "], \"raw\": " << cs.size() << ", \"nu\": " << nu
        << ", \"nu_lower_bound\": " << (lower_bound ? "true" : "false");
    if (rep) out << ", \"oracle\": " << oracle_json(*rep);
    out << "}\n";
  } else {
    out << "q=" << q << " k=" << k << " theta=" << fmt17(theta) << "\n";
    for (size_t i = 0; i < cs.size(); ++i) {
      char line[256];
      std::snprintf(line, sizeof line, "  %-16s %-13s x=%-22.17g y=%-22.17g residual=%.3g\n",
                    labels[i].c_str(), branches::to_string(cs[i].tag), cs[i].x, cs[i].y,
                    cs[i].residual);
      out << line;
    }
    out << "raw census: " << cs.size() << "\n";
    out << "nu_" << q << ": " << nu << (lower_bound ? " (lower bound)" : "") << "\n";
    if (rep)
      out << "oracle: " << rep->solutions.size() << " solutions from " << rep->starts
          << " starts, agreement=" << (*rep->agreement ? "yes" : "no") << "\n";
  }
  std::cout << out.str();
  if (rep && strict && !*rep->agreement) return kOracleDisagreement;
  return kOk;
}

// --- sweep -------------------------------------------------------------

const std::vector<std::string>& sweep_columns(int q) {
  static const std::map<int, std::vector<std::string>> cols{
      {2, {"trivial", "x_eq_1_0", "x_eq_1_1", "diagonal", "offdiag_tau1", "offdiag_tau2"}},
      {3,
       {"trivial", "diagonal_0", "diagonal_1", "x_eq_1_0", "x_eq_1_1", "y_eq_1_0",
        "y_eq_1_1"}},
      {4,
       {"trivial", "diagonal_0", "diagonal_1", "asym_phi1_0", "asym_phi1_1", "asym_phi2_0",
        "asym_phi2_1"}},
  };
  return cols.at(q);
}

/// Map a census onto columns keyed by the branch labels (ordinals by
/// ascending y within a repeated tag, same convention as the headers).
std::map<std::string, double> census_by_column(const std::vector<branches::SolutionBranch>& cs) {
  const auto labels = branches::census_labels(cs);
  std::map<std::string, double> out;
  for (size_t i = 0; i < cs.size(); ++i) out[labels[i]] = cs[i].y;
  return out;
}

int cmd_sweep(int q, int k, double min, double max, int steps, const std::string& path,
              bool stamp) {
  if (!(min > 0.0) || !(max > min) || steps < 2)
    throw domain_error("sweep: need 0 < min < max and steps >= 2");
  const auto& cols = sweep_columns(q);
  std::ostringstream out;
  out << "# ggmtree sweep, schema " << kSchemaVersion << "\n";
  if (stamp) out << "# version " << kVersion << "\n";
  out << "# q=" << q << " k=" << k << " theta in [" << fmt17(min) << ", " << fmt17(max)
      << "], " << steps << " steps (closed grid, theta_i = min + i*(max-min)/(steps-1))\n";
  out << "# columns: theta, then the second coordinate of each branch by case label\n";
  out << "# (empty cell = branch absent at this theta), then nu_" << q << " and the raw census\n";
  out << "theta";
  for (const auto& c : cols) out << "," << c;
  out << ",nu" << q << ",raw" << q << "\n";

  for (int i = 0; i < steps; ++i) {
    const double theta = min + i * (max - min) / (steps - 1);
    const ModelParams params(k, theta);
    const auto cs = branches::census(q, params);
    const auto by_col = census_by_column(cs);
    out << fmt17(theta);
    for (const auto& c : cols) {
      out << ",";
      const auto it = by_col.find(c);
      if (it != by_col.end()) out << fmt17(it->second);
    }
    out << "," << branches::count(q, params) << "," << cs.size() << "\n";
  }
  write_output(path, out.str());
  return kOk;
}

// --- measure -----------------------------------------------------------

int cmd_measure(int q, int k, double theta, const std::string& branch_label, int depth,
                const std::string& pin_arg, const std::string& path,
                std::int64_t cap) {
  const ModelParams params(k, theta);
  const auto cs = branches::census(q, params);
  const auto labels = branches::census_labels(cs);
  int idx = -1;
  for (size_t i = 0; i < cs.size(); ++i)
    if (labels[i] == branch_label) idx = static_cast<int>(i);
  if (idx < 0) {
    std::cerr << "unknown branch label '" << branch_label << "'; available:";
    for (const auto& l : labels) std::cerr << " " << l;
    std::cerr << "\n";
    return kUnknownBranch;
  }
  const PeriodicLaw& law = cs[static_cast<size_t>(idx)].law;

  std::optional<int> pin;
  if (pin_arg != "mixed") {
    try {
      pin = std::stoi(pin_arg);
    } catch (const std::exception&) {
      throw domain_error("--pin must be 'mixed' or a residue class");
    }
  }

  const auto tree = measure::FiniteSubtree::build(k, depth);
  const auto marginal = pin ? measure::pinned_marginal(law, tree, *pin, params, cap)
                            : measure::mixed_marginal(law, tree, params, cap);
  const auto edist = measure::edge_gradient_distribution(marginal);

  std::optional<double> consistency;
  if (depth >= 2) {
    const auto smaller = measure::FiniteSubtree::build(k, depth - 1);
    consistency = measure::check_consistency(law, smaller, tree, params, pin, cap);
  }

  std::ostringstream out;
  out << "{\"schema_version\": " << kSchemaVersion << ", \"k\": " << k << ", \"branch\": \""
      << branch_label << "\", \"marginal\": " << measure::to_json(marginal)
      << ", \"edge_distributions\": [";
  for (size_t e = 0; e < edist.size(); ++e) {
    if (e) out << ", ";
    out << "[" << fmt17(edist[e][0]) << ", " << fmt17(edist[e][1]) << ", "
        << fmt17(edist[e][2]) << "]";
  }
  out << "], \"consistency_vs_depth_minus_1\": ";
  out << (consistency ? fmt17(*consistency) : "null");
  out << "}\n";
  write_output(path, out.str());
  return kOk;
}

// --- verify ------------------------------------------------------------

int cmd_verify(const ggmtree_cli::VerifyOptions& opt, const std::string& format) {
  const auto results = ggmtree_cli::run_verify(opt);
  bool all_pass = true;
  std::ostringstream out;
  if (format == "json") {
    out << "{\"schema_version\": " << kSchemaVersion << ", \"k\": " << opt.k
        << ", \"level\": \"" << (opt.full ? "full" : "quick") << "\", \"suites\": [";
    for (size_t i = 0; i < results.size(); ++i) {
      if (i) out << ", ";
      out << "{\"name\": \"" << results[i].name << "\", \"pass\": "
          << (results[i].pass ? "true" : "false")
          << ", \"skipped\": " << (results[i].skipped ? "true" : "false") << ", \"detail\": \""
          << results[i].detail << "\"}";
      all_pass = all_pass && results[i].pass;
    }
    out << "], \"pass\": ";
    for (const auto& r : results) all_pass = all_pass && r.pass;
    out << (all_pass ? "true" : "false") << "}\n";
  } else {
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      out << (r.pass ? (r.skipped ? "[SKIP]" : "[PASS]") : "[FAIL]") << " " << r.name << ": "
          << r.detail << "\n";
    }
    out << (all_pass ? "verify: all suites passed\n" : "verify: FAILURES\n");
  }
  std::cout << out.str();
  return all_pass ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-law branches, GGM counts and gradient marginals of an "
               "alternating-sign SOS model on Cayley trees"};
  app.require_subcommand(1);

  // constants
  auto* constants = app.add_subcommand("constants", "critical activities for a branching number");
  int c_k = 2;
  std::string c_format = "table";
  constants->add_option("--k", c_k, "branching number (k >= 2)")->required();
  constants->add_option("--format", c_format)->check(CLI::IsMember({"table", "json"}));

  // solve
  auto* solve = app.add_subcommand("solve", "all period-q branches at one activity");
  int s_q = 2, s_k = 2;
  double s_theta = 1.0;
  std::string s_format = "table";
  bool s_oracle = false, s_strict = false;
  solve->add_option("--q", s_q)->required()->check(CLI::IsMember({2, 3, 4}));
  solve->add_option("--k", s_k)->required();
  solve->add_option("--theta", s_theta)->required();
  solve->add_option("--format", s_format)->check(CLI::IsMember({"table", "json"}));
  solve->add_flag("--with-oracle", s_oracle, "cross-check against the multistart oracle");
  solve->add_flag("--strict", s_strict, "exit 3 on oracle disagreement");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bifurcation data over a theta grid (CSV)");
  int w_q = 2, w_k = 2, w_steps = 100;
  double w_min = 0.5, w_max = 10.0;
  std::string w_out;
  bool w_stamp = false;
  sweep->add_option("--q", w_q)->required()->check(CLI::IsMember({2, 3, 4}));
  sweep->add_option("--k", w_k)->required();
  sweep->add_option("--min", w_min)->required();
  sweep->add_option("--max", w_max)->required();
  sweep->add_option("--steps", w_steps)->required();
  sweep->add_option("--out", w_out, "output path (default: stdout)");
  sweep->add_flag("--stamp", w_stamp, "stamp the version in a comment line");

  // measure
  auto* meas = app.add_subcommand("measure", "gradient marginal of a branch on a finite subtree");
  int m_q = 2, m_k = 2, m_depth = 1;
  double m_theta = 1.0;
  std::string m_branch, m_pin = "mixed", m_out;
  std::int64_t m_cap = measure::kDefaultEnumerationCap;
  meas->add_option("--q", m_q)->required()->check(CLI::IsMember({2, 3, 4}));
  meas->add_option("--k", m_k)->required();
  meas->add_option("--theta", m_theta)->required();
  meas->add_option("--branch", m_branch, "branch label (see `solve`)")->required();
  meas->add_option("--depth", m_depth, "subtree depth (root has k+1 children)");
  meas->add_option("--pin", m_pin, "'mixed' or a pin class 0..q-1");
  meas->add_option("--out", m_out, "output path (default: stdout)");
  meas->add_option("--cap", m_cap, "enumeration cap (configurations)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  ggmtree_cli::VerifyOptions v_opt;
  std::string v_level = "quick", v_format = "table";
  verify->add_option("--k", v_opt.k)->required();
  verify->add_option("--level", v_level)->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--format", v_format)->check(CLI::IsMember({"table", "json"}));
  verify->add_flag("--inject-fault", v_opt.inject_fault)->group("");  // tests the tester

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) return cmd_constants(c_k, c_format);
    if (*solve) return cmd_solve(s_q, s_k, s_theta, s_format, s_oracle, s_strict);
    if (*sweep) return cmd_sweep(w_q, w_k, w_min, w_max, w_steps, w_out, w_stamp);
    if (*meas) return cmd_measure(m_q, m_k, m_theta, m_branch, m_depth, m_pin, m_out, m_cap);
    if (*verify) {
      v_opt.full = v_level == "full";
      return cmd_verify(v_opt, v_format);
    }
  } catch (const ggm::size_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSizeCap;
  } catch (const ggm::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadParams;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadParams;
  }
  return kOk;
}
