#include "lcmsum/coprimality.hpp"
#include "lcmsum/eulerprod.hpp"
#include "lcmsum/oracle.hpp"
#include "lcmsum/polytope.hpp"
#include "lcmsum/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace lcmsum;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;  // objects keyed by column
  std::string raw_text;    // used verbatim by the text format when set
  bool listing = false;    // always render as rows, even with a single row
};

std::string cell_text(const json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_null()) return "";
  return cell.dump();
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render(const Table& table, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    if (table.rows.size() == 1 && !table.listing) {
      out << table.rows.front().dump(2) << '\n';
    } else {
      out << json(table.rows).dump(2) << '\n';
    }
  } else if (format == "csv") {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << csv_escape(cell_text(row.value(table.columns[c], json())));
      }
      out << '\n';
    }
  } else if (!table.raw_text.empty()) {
    out << table.raw_text;
    if (table.raw_text.back() != '\n') out << '\n';
  } else if (table.rows.size() == 1 && !table.listing) {
    std::size_t width = 0;
    for (const auto& c : table.columns) width = std::max(width, c.size());
    for (const auto& c : table.columns) {
      out << c << std::string(width - c.size(), ' ') << " : " << cell_text(table.rows.front().value(c, json())) << '\n';
    }
  } else {
    // one line per row; long multi-line cells are shortened
    auto table_cell = [](const json& value) {
      std::string text = cell_text(value);
      std::replace(text.begin(), text.end(), '\n', ' ');
      constexpr std::size_t kMaxCell = 60;
      if (text.size() > kMaxCell) text = text.substr(0, kMaxCell - 3) + "...";
      return text;
    };
    std::vector<std::size_t> widths;
    for (const auto& c : table.columns) widths.push_back(c.size());
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        widths[c] = std::max(widths[c], table_cell(row.value(table.columns[c], json())).size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << cells[c];
        if (c + 1 < cells.size()) out << std::string(widths[c] - cells[c].size() + 2, ' ');
      }
      out << '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      for (const auto& c : table.columns) cells.push_back(table_cell(row.value(c, json())));
      line(cells);
    }
  }
  return out.str();
}

std::string interval_text(const BoundedReal& value, int digits) { return value.value().to_string(digits); }
std::string error_text(const BoundedReal& value) { return value.abs_error().to_string(3); }

Table single(std::vector<std::pair<std::string, json>> fields) {
  Table table;
  json row = json::object();
  for (auto& [key, value] : fields) {
    table.columns.push_back(key);
    row[key] = std::move(value);
  }
  table.rows.push_back(std::move(row));
  return table;
}

json edges_json(const coprimality::GenericGraph& g) {
  json edges = json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return edges;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reciprocal lcm sums: coprimality graphs, Euler products, polytope volumes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  int k = 3;
  std::uint64_t x = 10;
  std::uint64_t n = 1;
  std::string kind_name = "D";
  int digits = 20;
  std::string format = "text";
  std::string out_path;
  std::uint64_t budget = 0;
  std::string suite = "all";
  std::string sum_kind = "S";
  bool fix_last = false;
  int series_n = 30;
  int accel = 12;
  std::uint64_t prime_limit = 1'000'000;
  double target = 1e-15;
  std::vector<std::uint64_t> xs;
  unsigned threads = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", out_path, "Write output to this file");
    sub->add_option("--digits", digits, "Significant digits for real values")->check(CLI::Range(1, 60));
  };
  auto with_k = [&](CLI::App* sub, int lo, int hi) {
    sub->add_option("--k", k, "Number of variables")->check(CLI::Range(lo, hi));
  };
  auto with_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", kind_name, "Polytope: D, D_star, D_star2, D_star3, T")
        ->check(CLI::IsMember({"D", "D_star", "D_star2", "D_star3", "T"}));
  };

  auto* graph_cmd = app.add_subcommand("graph", "Coprimality graph G_k and its constraint sets");
  with_k(graph_cmd, 2, 5);
  common(graph_cmd);
  auto* qpoly_cmd = app.add_subcommand("qpoly", "Polynomial Q_{G_k}");
  with_k(qpoly_cmd, 2, 4);
  common(qpoly_cmd);
  auto* ism_cmd = app.add_subcommand("ism", "Independent-set counts of G_k");
  with_k(ism_cmd, 2, 4);
  common(ism_cmd);
  auto* volume_cmd = app.add_subcommand("volume", "Exact polytope volume");
  with_k(volume_cmd, 2, 4);
  with_kind(volume_cmd);
  volume_cmd->add_option("--budget", budget, "Lattice DP cell budget");
  common(volume_cmd);
  auto* export_cmd = app.add_subcommand("export-ieqs", "Inequality worksheet for a polytope");
  with_k(export_cmd, 2, 4);
  with_kind(export_cmd);
  common(export_cmd);
  auto* rho_cmd = app.add_subcommand("rho", "Certified Euler product rho(G_k)");
  with_k(rho_cmd, 2, 4);
  rho_cmd->add_option("--target", target, "Target absolute error")->check(CLI::PositiveNumber);
  rho_cmd->add_option("--order", accel, "Acceleration order J")->check(CLI::Range(2, 40));
  rho_cmd->add_option("--primes", prime_limit, "Largest prime multiplied directly")->check(CLI::Range(2ULL, 400'000'000ULL));
  common(rho_cmd);
  auto* constants_cmd = app.add_subcommand("constants", "Leading constants c, c2, c3 and error exponents");
  with_k(constants_cmd, 2, 4);
  common(constants_cmd);
  auto* theta_cmd = app.add_subcommand("theta", "Error exponents (k >= 3)");
  with_k(theta_cmd, 2, 30);
  common(theta_cmd);
  auto* brute_cmd = app.add_subcommand("brute", "Exact brute-force S_k, U_k or V_k");
  with_k(brute_cmd, 1, 16);
  brute_cmd->add_option("--x", x, "Upper bound")->check(CLI::PositiveNumber);
  brute_cmd->add_option("--sum", sum_kind, "Which sum")->check(CLI::IsMember({"S", "U", "V"}));
  brute_cmd->add_option("--budget", budget, "Tuple budget (x^k)");
  common(brute_cmd);
  auto* gwise_cmd = app.add_subcommand("gwise", "Sum over G_k-wise coprime tuples under hyperbolic constraints");
  with_k(gwise_cmd, 2, 4);
  gwise_cmd->add_option("--x", x, "Upper bound")->check(CLI::PositiveNumber);
  gwise_cmd->add_flag("--fix-last", fix_last, "Restrict the all-ones coordinate to 1");
  gwise_cmd->add_option("--budget", budget, "Node budget");
  common(gwise_cmd);
  auto* alpha_cmd = app.add_subcommand("alpha", "alpha_k(n), or the sum of alpha_k(n)/n up to x");
  with_k(alpha_cmd, 1, 64);
  auto* alpha_n = alpha_cmd->add_option("--n", n, "Argument of alpha_k")->check(CLI::PositiveNumber);
  auto* alpha_x = alpha_cmd->add_option("--x", x, "Sum bound")->check(CLI::PositiveNumber);
  alpha_n->excludes(alpha_x);
  common(alpha_cmd);
  auto* identity_cmd = app.add_subcommand("identity", "Exact power-series identities for Q_{G_k}");
  with_k(identity_cmd, 2, 4);
  identity_cmd->add_option("--N", series_n, "Highest coefficient compared")->check(CLI::Range(4, 2000));
  common(identity_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification battery");
  verify_cmd->add_option("--suite", suite, "Suite")->check(CLI::IsMember({"quick", "all"}));
  verify_cmd->add_option("--threads", threads, "Worker threads (default LCMSUM_THREADS or hardware)");
  common(verify_cmd);
  auto* report_cmd = app.add_subcommand("report", "S_k(x) against c_k log^(2^k-1) x");
  with_k(report_cmd, 2, 4);
  report_cmd->add_option("--xs", xs, "Values of x, comma separated")->delimiter(',')->required()->check(CLI::PositiveNumber);
  common(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  int status = kExitOk;
  Table table;
  try {
    if (graph_cmd->parsed()) {
      const auto g = coprimality::build_coprimality_graph(k);
      table = single({{"k", k}, {"v", g.vertex_count()}, {"edges", edges_json(g.graph)}, {"constraints", g.constraints}});
      table.raw_text = coprimality::dump(g);
    } else if (qpoly_cmd->parsed()) {
      const auto q = coprimality::q_polynomial(coprimality::build_coprimality_graph(k).graph);
      table = single({{"k", k}, {"polynomial", q.to_string()}, {"coefficients", q.coefficients}});
    } else if (ism_cmd->parsed()) {
      const auto g = coprimality::build_coprimality_graph(k);
      const auto counts = coprimality::independent_set_counts(g.graph).counts;
      const auto stirling = coprimality::stirling_ism_counts(k).counts;
      table.columns = {"m", "i_m", "stirling"};
      table.listing = true;
      for (std::size_t m = 0; m < counts.size(); ++m) {
        table.rows.push_back({{"m", m}, {"i_m", counts[m]}, {"stirling", m < stirling.size() ? stirling[m] : 0}});
      }
      if (counts != stirling) status = kExitFailed;
    } else if (volume_cmd->parsed()) {
      const auto kind = polytope::parse_kind(kind_name);
      polytope::EhrhartOptions options;
      if (budget) options.lattice.state_budget = budget;
      const auto result = polytope::ehrhart_volume_detailed(polytope::build_polytope(kind, k), options);
      table = single({{"kind", kind_name}, {"k", k}, {"volume", to_string(result.volume)}, {"period", result.samples.period}});
      table.raw_text = to_string(result.volume);
    } else if (export_cmd->parsed()) {
      const auto p = polytope::build_polytope(polytope::parse_kind(kind_name), k);
      table = single({{"kind", kind_name}, {"k", k}, {"ieqs", polytope::ieqs_rows(p)}});
      table.raw_text = polytope::export_ieqs(p);
    } else if (rho_cmd->parsed()) {
      eulerprod::EulerOptions options;
      options.acceleration_order = accel;
      options.prime_limit = prime_limit;
      const auto g = coprimality::build_coprimality_graph(k);
      const auto result = eulerprod::rho(g.graph, target, options);
      table = single({{"value", interval_text(result.value, digits)},
                      {"abs_error", error_text(result.value)},
                      {"primes_used", result.primes_used},
                      {"acceleration_order", result.acceleration_order}});
    } else if (constants_cmd->parsed()) {
      const auto lc = oracle::leading_constants(k);
      std::vector<std::pair<std::string, json>> fields{
          {"k", k},
          {"c", interval_text(lc.c, digits)},
          {"c_abs_error", error_text(lc.c)},
          {"c2", interval_text(lc.c2, digits)},
          {"c2_abs_error", error_text(lc.c2)},
          {"c3", interval_text(lc.c3, digits)},
          {"c3_abs_error", error_text(lc.c3)},
          {"vol_D", to_string(lc.vol_d)},
          {"vol_D_star", to_string(lc.vol_d_star)},
          {"vol_D_star2", to_string(lc.vol_d_star2)},
          {"c2_consistent", lc.c2_consistent}};
      if (lc.theta) {
        fields.emplace_back("theta1", lc.theta->theta1.to_string());
        fields.emplace_back("theta2", lc.theta->theta2.to_string());
        fields.emplace_back("theta3", lc.theta->theta3.to_string());
      } else {
        fields.emplace_back("theta", "not stated for k = 2 (error term O(log^2 x / sqrt x))");
      }
      table = single(std::move(fields));
      if (!lc.c2_consistent) status = kExitFailed;
    } else if (theta_cmd->parsed()) {
      if (k < 3) {
        table = single({{"k", k}, {"theta", "not stated for k = 2 (error term O(log^2 x / sqrt x))"}});
      } else {
        const auto theta = oracle::theta_exponents(k);
        table = single({{"k", k},
                        {"theta1", theta.theta1.to_string()},
                        {"theta2", theta.theta2.to_string()},
                        {"theta3", theta.theta3.to_string()},
                        {"theta1_approx", theta.theta1.to_double()},
                        {"theta2_approx", theta.theta2.to_double()}});
      }
    } else if (brute_cmd->parsed()) {
      oracle::BruteOptions options;
      if (budget) options.budget = budget;
      const auto report = sum_kind == "S"   ? oracle::brute_S(k, x, options)
                          : sum_kind == "U" ? oracle::brute_U(k, x, options)
                                            : oracle::brute_V(k, x, options);
      table = single({{"sum", sum_kind},
                      {"k", k},
                      {"x", x},
                      {"value", to_string(report.value)},
                      {"tuple_count", report.tuple_count}});
    } else if (gwise_cmd->parsed()) {
      oracle::BruteOptions options;
      if (budget) options.budget = budget;
      const auto report = oracle::gwise_constrained_sum(k, x, fix_last, options);
      table = single({{"k", k}, {"x", x}, {"fix_last", fix_last}, {"value", to_string(report.value)},
                      {"tuple_count", report.tuple_count}});
    } else if (alpha_cmd->parsed()) {
      if (alpha_x->count()) {
        const auto report = oracle::alpha_sum(k, x);
        table = single({{"k", k}, {"x", x}, {"alpha_sum", to_string(report.value)}});
      } else {
        table = single({{"k", k}, {"n", n}, {"alpha", oracle::alpha_k(k, n).str()}});
      }
    } else if (identity_cmd->parsed()) {
      if (series_n < (1 << k)) throw DomainError("identity: --N must be at least 2^k");
      const auto result = eulerprod::series_identity_check(k, series_n);
      table = single({{"k", k}, {"N", series_n}, {"ok", result.ok}, {"detail", result.detail}});
      if (!result.ok) status = kExitFailed;
    } else if (verify_cmd->parsed()) {
      const auto rows = verify::run_suite(suite, threads);
      table.columns = {"check_name", "status", "expected", "actual", "tolerance", "runtime_ms"};
      for (const auto& row : rows) {
        table.rows.push_back({{"check_name", row.check_name},
                              {"status", verify::to_string(row.status)},
                              {"expected", row.expected},
                              {"actual", row.actual},
                              {"tolerance", row.tolerance},
                              {"runtime_ms", std::round(row.runtime_ms * 10) / 10}});
      }
      table.listing = true;
      status = verify::exit_status(rows);
    } else if (report_cmd->parsed()) {
      const auto rows = oracle::convergence_report(k, xs);
      table.columns = {"x", "S", "S_over_log_power", "c", "ratio"};
      table.listing = true;
      for (const auto& row : rows) {
        table.rows.push_back({{"x", row.x},
                              {"S", row.exact && row.x <= 100 ? to_string(*row.exact) : interval_text(row.sum, digits)},
                              {"S_over_log_power", row.normalized ? interval_text(*row.normalized, digits) : "undefined"},
                              {"c", interval_text(row.c, digits)},
                              {"ratio", row.ratio ? interval_text(*row.ratio, digits) : "undefined"}});
      }
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << '\n';
    return kExitResource;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "precision not reached: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }

  const std::string text = render(table, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << out_path << '\n';
      return kExitUsage;
    }
    file << text;
  }
  return status;
}
