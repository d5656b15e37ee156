// Command-line front end: evaluate exponential sums, oscillatory integrals,
// arc classifications, singular series, exact counts, and the verification
// suite. Output goes to stdout as aligned text, or to --out as CSV/JSON
// chosen by file extension. Exact counts are printed as decimal strings.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "waring/waring.hpp"

using namespace waring;
using nlohmann::json;

namespace {

struct OutputTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int write_output(const OutputTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    for (std::size_t c = 0; c < table.header.size(); ++c)
      std::printf("%s%s", table.header[c].c_str(), c + 1 < table.header.size() ? "\t" : "\n");
    for (const auto& row : table.rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        std::printf("%s%s", row[c].c_str(), c + 1 < row.size() ? "\t" : "\n");
    return 0;
  }
  std::ofstream os(out_path);
  if (!os) {
    std::fprintf(stderr, "cannot open %s\n", out_path.c_str());
    return 1;
  }
  if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json") {
    json arr = json::array();
    for (const auto& row : table.rows) {
      json obj;
      for (std::size_t c = 0; c < table.header.size() && c < row.size(); ++c)
        obj[table.header[c]] = row[c];
      arr.push_back(obj);
    }
    os << arr.dump(2) << "\n";
  } else {
    for (std::size_t c = 0; c < table.header.size(); ++c)
      os << table.header[c] << (c + 1 < table.header.size() ? "," : "\n");
    for (const auto& row : table.rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        os << row[c] << (c + 1 < row.size() ? "," : "\n");
  }
  return 0;
}

std::vector<double> resolve_weights(int r, std::vector<double> mu) {
  if (mu.empty()) return std::vector<double>(static_cast<std::size_t>(r), 1.0 / r);
  return mu;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windowed Waring representation counts and circle-method diagnostics"};
  app.require_subcommand(1);

  std::string out_path;
  u64 seed = 20240901;
  std::size_t budget_mb = 2048;
  int threads = 1;
  app.add_option("--out", out_path, "output file; .csv or .json by extension");
  app.add_option("--seed", seed, "sampling seed");
  app.add_option("--budget-mem", budget_mb, "memory budget in MB");
  app.add_option("--threads", threads, "worker threads");

  // tables
  auto* cmd_tables = app.add_subcommand("tables", "exponent tables as exact rationals");

  // gamma
  auto* cmd_gamma = app.add_subcommand("gamma", "archimedean constant with oracle comparison");
  int gamma_r = 9;
  int gamma_rmax = 0;
  cmd_gamma->add_option("-r,--r", gamma_r, "summand count");
  cmd_gamma->add_option("--rmax", gamma_rmax, "scan r..rmax");

  // csum
  auto* cmd_csum = app.add_subcommand("csum", "complete rational sums and bound ratios");
  int cs_n = 3;
  i64 cs_a = 1, cs_q = 1, cs_b = 0, cs_scan = 0;
  bool cs_hua = false;
  cmd_csum->add_option("-n,--n", cs_n, "degree");
  cmd_csum->add_option("-a,--a", cs_a, "numerator");
  cmd_csum->add_option("-q,--q", cs_q, "modulus");
  cmd_csum->add_option("-b,--b", cs_b, "linear twist");
  cmd_csum->add_option("--scan", cs_scan, "emit bound ratios for q = 1..scan");
  cmd_csum->add_flag("--hua", cs_hua, "scan the twisted (Hua) ratio instead of the untwisted one");

  // weyl
  auto* cmd_weyl = app.add_subcommand("weyl", "short Weyl sums against their bounds");
  int wy_n = 3;
  i64 wy_x = 10000, wy_y = 100, wy_a = 0, wy_q = 0;
  double wy_lambda = 0.0;
  std::vector<double> wy_alpha;
  double wy_tau = 0.0;
  cmd_weyl->add_option("-n,--n", wy_n, "degree");
  cmd_weyl->add_option("-x,--x", wy_x, "window top");
  cmd_weyl->add_option("-y,--y", wy_y, "window length");
  cmd_weyl->add_option("-a,--a", wy_a, "arc numerator");
  cmd_weyl->add_option("-q,--q", wy_q, "arc denominator");
  cmd_weyl->add_option("--lambda", wy_lambda, "arc offset");
  cmd_weyl->add_option("--alpha", wy_alpha, "raw alpha values (repeatable)");
  cmd_weyl->add_option("--tau", wy_tau, "Dirichlet scale for raw alphas (default 2n(n-1)x^{n-2}y)");

  // arcs
  auto* cmd_arcs = app.add_subcommand("arcs", "classify alphas into M1/M2/minor");
  int ar_n = 3, ar_r = 0;
  i64 ar_N = 1000000;
  double ar_H = 10000.0;
  std::vector<double> ar_mu, ar_alpha;
  cmd_arcs->add_option("-n,--n", ar_n, "degree");
  cmd_arcs->add_option("-r,--r", ar_r, "summand count (default 2^n+1)");
  cmd_arcs->add_option("-N,--N", ar_N, "target");
  cmd_arcs->add_option("-H,--H", ar_H, "window half-width");
  cmd_arcs->add_option("--mu", ar_mu, "weights (repeatable; default equal)");
  cmd_arcs->add_option("--alpha", ar_alpha, "alphas to classify (repeatable)")->required();

  // singular
  auto* cmd_sing = app.add_subcommand("singular", "local factors and truncated singular series");
  int sg_n = 3, sg_r = 9;
  i64 sg_N = 1000000, sg_Q = 1000;
  cmd_sing->add_option("-n,--n", sg_n, "degree");
  cmd_sing->add_option("-r,--r", sg_r, "summand count");
  cmd_sing->add_option("-N,--N", sg_N, "target");
  cmd_sing->add_option("-Q,--Q", sg_Q, "truncation");

  // moments
  auto* cmd_mom = app.add_subcommand("moments", "exact even moments of short Weyl sums");
  int mo_n = 3, mo_k = 2;
  i64 mo_x = 4097, mo_y = 64;
  cmd_mom->add_option("-n,--n", mo_n, "degree");
  cmd_mom->add_option("-x,--x", mo_x, "window top");
  cmd_mom->add_option("-y,--y", mo_y, "window length");
  cmd_mom->add_option("-k,--k", mo_k, "moment depth (integrates |T|^{2^k})");

  // count
  auto* cmd_count = app.add_subcommand("count", "exact windowed representation count");
  int ct_n = 3, ct_r = 9;
  i64 ct_N = 1000000;
  double ct_H = 0.0;
  double ct_hexp = 0.97;
  std::vector<double> ct_mu;
  bool ct_naive = false;
  cmd_count->add_option("-n,--n", ct_n, "degree");
  cmd_count->add_option("-r,--r", ct_r, "summand count");
  cmd_count->add_option("-N,--N", ct_N, "target");
  cmd_count->add_option("-H,--H", ct_H, "window half-width (overrides --h-exp)");
  cmd_count->add_option("--h-exp", ct_hexp, "H = N^exp when --H not given");
  cmd_count->add_option("--mu", ct_mu, "weights (repeatable; default equal)");
  cmd_count->add_flag("--naive", ct_naive, "also run the DFS oracle and compare");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::vector<std::string> vf_criteria;
  cmd_verify->add_option("--criteria", vf_criteria, "subset to run, e.g. A1 A4 A7");

  // report
  auto* cmd_report = app.add_subcommand("report", "end-to-end count vs main-term report");
  int rp_n = 3, rp_r = 9;
  std::vector<i64> rp_N{100000, 1000000};
  double rp_hexp = 0.97;
  i64 rp_Q = 1000;
  std::vector<double> rp_mu;
  cmd_report->add_option("-n,--n", rp_n, "degree");
  cmd_report->add_option("-r,--r", rp_r, "summand count");
  cmd_report->add_option("-N,--N", rp_N, "targets (repeatable)");
  cmd_report->add_option("--h-exp", rp_hexp, "H-rule exponent");
  cmd_report->add_option("-Q,--Q", rp_Q, "singular series truncation");
  cmd_report->add_option("--mu", rp_mu, "weights (repeatable; default equal)");

  // global options may appear after the subcommand name
  for (auto* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_tables) {
      OutputTable t;
      t.header = {"n", "r_wright", "wright_theta", "r", "theta"};
      for (int n = 3; n <= 10; ++n) {
        int rw = (n - 2) * (1 << (n - 1)) + 5;
        int rt = (1 << n) + 1;
        t.rows.push_back({std::to_string(n), std::to_string(rw),
                          verify::wright_theta(n, rw).get_str(), std::to_string(rt),
                          verify::theta(n, rt).get_str()});
      }
      return write_output(t, out_path);
    }

    if (*cmd_gamma) {
      OutputTable t;
      t.header = {"r", "exact", "decimal", "oracle", "abs_diff"};
      int hi = gamma_rmax > 0 ? gamma_rmax : gamma_r;
      for (int r = gamma_r; r <= hi; ++r) {
        auto g = oscillatory::gamma_constant(static_cast<unsigned>(r));
        double oracle = oscillatory::gamma_oracle(static_cast<unsigned>(r));
        t.rows.push_back({std::to_string(r), g.exact.get_str(), fmt_double(g.real_value),
                          fmt_double(oracle), fmt_double(std::fabs(g.real_value - oracle))});
      }
      return write_output(t, out_path);
    }

    if (*cmd_csum) {
      OutputTable t;
      if (cs_scan > 0) {
        t.header = {"q", cs_hua ? "hua_ratio" : "weyl_ratio"};
        for (i64 q = 1; q <= cs_scan; ++q)
          t.rows.push_back({std::to_string(q),
                            fmt_double(cs_hua ? exp_sums::hua_bound_ratio(cs_n, q, threads)
                                              : exp_sums::weyl_complete_ratio(cs_n, q))});
      } else {
        auto s = exp_sums::complete_sum({cs_n, cs_a, cs_q, cs_b});
        t.header = {"n", "a", "q", "b", "re", "im", "abs"};
        t.rows.push_back({std::to_string(cs_n), std::to_string(cs_a), std::to_string(cs_q),
                          std::to_string(cs_b), fmt_double(s.real()), fmt_double(s.imag()),
                          fmt_double(std::abs(s))});
      }
      return write_output(t, out_path);
    }

    if (*cmd_weyl) {
      OutputTable t;
      t.header = {"alpha", "a", "q", "lambda", "abs_T", "minor_bound", "expansion_bound"};
      WindowSpec w{wy_n, wy_x, wy_y};
      double tau = wy_tau > 0.0 ? wy_tau
                                : 2.0 * wy_n * (wy_n - 1) *
                                      dpow(static_cast<double>(wy_x), static_cast<unsigned>(wy_n - 2)) *
                                      static_cast<double>(wy_y);
      std::vector<ArcPoint> points;
      if (wy_q > 0) points.push_back(ArcPoint{wy_a, wy_q, wy_lambda});
      for (double alpha : wy_alpha) points.push_back(arcs::dirichlet_approx(alpha, tau));
      if (points.empty()) {
        std::fprintf(stderr, "weyl: give either --a/--q/--lambda or --alpha\n");
        return 1;
      }
      for (const auto& arc : points) {
        double t_abs = std::abs(weyl::short_weyl_sum(w, arc));
        auto mb = weyl::minor_arc_bound(w, arc);
        double q = static_cast<double>(arc.q);
        double cb = std::pow(q, 1.0 - 1.0 / wy_n) * std::log(std::max(q, 2.0)) +
                    std::min(static_cast<double>(wy_y) * std::pow(q, -1.0 / wy_n),
                             std::sqrt(static_cast<double>(wy_x)) * std::pow(q, 0.5 - 1.0 / wy_n));
        t.rows.push_back({fmt_double(arc.alpha()), std::to_string(arc.a), std::to_string(arc.q),
                          fmt_double(arc.lambda), fmt_double(t_abs), fmt_double(mb.bound),
                          fmt_double(cb)});
      }
      return write_output(t, out_path);
    }

    if (*cmd_arcs) {
      int r = ar_r > 0 ? ar_r : ProblemInstance::default_r(ar_n);
      ProblemInstance p;
      p.n = ar_n;
      p.r = r;
      p.N = ar_N;
      p.H = ar_H;
      p.mu = resolve_weights(r, ar_mu);
      auto wp = arcs::window_params(p);
      OutputTable t;
      t.header = {"alpha", "a", "q", "lambda", "label"};
      for (double alpha : ar_alpha) {
        auto arc = arcs::dirichlet_approx(alpha, wp.tau);
        t.rows.push_back({fmt_double(alpha), std::to_string(arc.a), std::to_string(arc.q),
                          fmt_double(arc.lambda), arcs::to_string(arcs::classify(arc, wp))});
      }
      return write_output(t, out_path);
    }

    if (*cmd_sing) {
      singular::SeriesTable table(sg_n, sg_r, sg_Q);
      OutputTable t;
      t.header = {"q", "A_re", "A_im", "partial_sum"};
      double partial = 0.0;
      for (i64 q = 1; q <= sg_Q; ++q) {
        auto a = table.local_sum(q, sg_N);
        partial += a.value.real();
        t.rows.push_back({std::to_string(q), fmt_double(a.value.real()),
                          fmt_double(a.value.imag()), fmt_double(partial)});
      }
      auto s = singular::singular_series(table, sg_N, sg_Q);
      std::fprintf(stderr, "singular_series(N=%lld, Q=%lld) = %.12g  tail <= %.3g%s\n",
                   static_cast<long long>(sg_N), static_cast<long long>(sg_Q), s.value,
                   s.tail_estimate, s.tail_divergent_warning ? "  [tail divergent: r/n <= 2]" : "");
      return write_output(t, out_path);
    }

    if (*cmd_mom) {
      auto m = counting::moment_integral(WindowSpec{mo_n, mo_x, mo_y}, mo_k, budget_mb);
      json rep{{"n", mo_n},
               {"x", mo_x},
               {"y", mo_y},
               {"k", mo_k},
               {"count", m.count.get_str()},
               {"base_counter_size", m.base_counter_size},
               {"window_hypothesis_ok", m.window_hypothesis_ok},
               {"seconds", m.seconds}};
      if (!m.window_hypothesis_ok)
        std::fprintf(stderr, "warning: sqrt(x) < y <= x/ln x does not hold for this window\n");
      if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << rep.dump(2) << "\n";
      } else {
        std::cout << rep.dump(2) << "\n";
      }
      return 0;
    }

    if (*cmd_count) {
      ProblemInstance p;
      p.n = ct_n;
      p.r = ct_r;
      p.N = ct_N;
      p.H = ct_H > 0.0 ? ct_H : std::pow(static_cast<double>(ct_N), ct_hexp);
      p.mu = resolve_weights(ct_r, ct_mu);
      if (p.non_default_r())
        std::fprintf(stderr, "warning: r=%d differs from the default 2^n+1=%d\n", p.r,
                     ProblemInstance::default_r(p.n));
      counting::CountStats st;
      auto J = counting::count_representations(p, budget_mb, &st);
      json rep{{"n", p.n},         {"r", p.r},
               {"N", p.N},         {"H", p.H},
               {"J", J.get_str()}, {"window_sizes", st.window_sizes},
               {"left_counter", st.left_counter_size},
               {"right_counter", st.right_counter_size},
               {"seconds", st.seconds}};
      if (ct_naive) {
        auto Jn = counting::count_representations_naive(p);
        rep["J_naive"] = Jn.get_str();
        rep["oracle_match"] = (J == Jn);
      }
      if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << rep.dump(2) << "\n";
      } else {
        std::cout << rep.dump(2) << "\n";
      }
      return 0;
    }

    if (*cmd_verify) {
      acceptance::Config cfg;
      cfg.seed = seed;
      cfg.mem_budget_mb = budget_mb;
      cfg.threads = threads;
      auto results = acceptance::run_all(cfg, vf_criteria);
      int failures = acceptance::report(results);
      return failures > 0 ? 2 : 0;
    }

    if (*cmd_report) {
      auto rep = verify::end_to_end_report(rp_n, rp_N, rp_hexp, resolve_weights(rp_r, rp_mu),
                                           rp_Q, budget_mb);
      OutputTable t;
      t.header = {"N", "H", "J_exact", "J_predicted", "ratio", "singular_value",
                  "singular_tail", "runtime_s"};
      for (const auto& row : rep.rows)
        t.rows.push_back({std::to_string(row.N), fmt_double(row.H), row.j_exact.get_str(),
                          fmt_double(row.j_predicted), fmt_double(row.ratio),
                          fmt_double(row.singular_value), fmt_double(row.singular_tail),
                          fmt_double(row.runtime_s)});
      return write_output(t, out_path);
    }
  } catch (const counting::BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
