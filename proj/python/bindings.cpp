#include "lcmsum/coprimality.hpp"
#include "lcmsum/eulerprod.hpp"
#include "lcmsum/oracle.hpp"
#include "lcmsum/polytope.hpp"
#include "lcmsum/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace lcmsum;

namespace {

// Rationals cross the boundary as (numerator, denominator) decimal strings.
std::pair<std::string, std::string> rational_parts(const ExactRational& q) {
  return {numerator_of(q).str(), denominator_of(q).str()};
}

py::dict interval(const BoundedReal& value, int digits) {
  py::dict out;
  out["value"] = value.value_double();
  out["text"] = value.value().to_string(digits);
  out["abs_error"] = value.error_double();
  out["lower"] = value.lower().to_double();
  out["upper"] = value.upper().to_double();
  return out;
}

py::dict graph_dict(const coprimality::CoprimalityGraph& g) {
  py::dict out;
  out["k"] = g.k;
  out["v"] = g.vertex_count();
  out["edges"] = g.graph.edges();
  out["constraints"] = g.constraints;
  return out;
}

py::dict euler_dict(const eulerprod::EulerProductResult& r, int digits) {
  py::dict out = interval(r.value, digits);
  out["primes_used"] = r.primes_used;
  out["acceleration_order"] = r.acceleration_order;
  out["tail_bound"] = r.tail_bound;
  return out;
}

py::dict surd_dict(const oracle::QuadraticSurd& s) {
  py::dict out;
  out["coefficient"] = rational_parts(s.coefficient);
  out["radicand"] = s.radicand;
  out["text"] = s.to_string();
  out["value"] = s.to_double();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coprimality graphs, certified Euler products, exact polytope volumes and brute-force lcm sums";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_ArithmeticError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

  m.def("coprimality_graph", [](int k) { return graph_dict(coprimality::build_coprimality_graph(k)); }, py::arg("k"));
  m.def("graph_dump", [](int k) { return coprimality::dump(coprimality::build_coprimality_graph(k)); }, py::arg("k"));
  m.def("edge_count_formula", &coprimality::edge_count_formula, py::arg("k"));
  m.def(
      "q_polynomial",
      [](int k) { return coprimality::q_polynomial(coprimality::build_coprimality_graph(k).graph).coefficients; },
      py::arg("k"));
  m.def(
      "q_polynomial_of_graph",
      [](int v, std::vector<std::pair<int, int>> edges) {
        return coprimality::q_polynomial(coprimality::GenericGraph(v, std::move(edges))).coefficients;
      },
      py::arg("v"), py::arg("edges"));
  m.def(
      "q_polynomial_by_edge_subsets",
      [](int v, std::vector<std::pair<int, int>> edges) {
        return coprimality::q_polynomial_by_edge_subsets(coprimality::GenericGraph(v, std::move(edges))).coefficients;
      },
      py::arg("v"), py::arg("edges"));
  m.def(
      "independent_set_counts",
      [](int v, std::vector<std::pair<int, int>> edges) {
        return coprimality::independent_set_counts(coprimality::GenericGraph(v, std::move(edges))).counts;
      },
      py::arg("v"), py::arg("edges"));
  m.def("stirling_ism_counts", [](int k) { return coprimality::stirling_ism_counts(k).counts; }, py::arg("k"));
  m.def(
      "decompose_tuple",
      [](int k, std::vector<std::uint64_t> n) { return coprimality::decompose_tuple(k, n); }, py::arg("k"),
      py::arg("n"));

  m.def(
      "volume",
      [](const std::string& kind, int k) {
        ExactRational vol;
        {
          py::gil_scoped_release release;
          vol = polytope::cached_volume(polytope::parse_kind(kind), k);
        }
        return rational_parts(vol);
      },
      py::arg("kind"), py::arg("k"));
  m.def(
      "lattice_counts",
      [](const std::string& kind, int k, int max_dilation) {
        std::vector<std::string> out;
        for (const auto& c : polytope::lattice_counts(polytope::build_polytope(polytope::parse_kind(kind), k),
                                                      max_dilation)) {
          out.push_back(c.str());
        }
        return out;
      },
      py::arg("kind"), py::arg("k"), py::arg("max_dilation"));
  m.def(
      "export_ieqs",
      [](const std::string& kind, int k) {
        return polytope::export_ieqs(polytope::build_polytope(polytope::parse_kind(kind), k));
      },
      py::arg("kind"), py::arg("k"));

  m.def(
      "rho",
      [](int k, double target, int digits) {
        std::optional<eulerprod::EulerProductResult> result;
        {
          py::gil_scoped_release release;
          result = eulerprod::rho(coprimality::build_coprimality_graph(k).graph, target);
        }
        return euler_dict(*result, digits);
      },
      py::arg("k"), py::arg("target") = 1e-15, py::arg("digits") = 20);
  m.def(
      "rho_of_graph",
      [](int v, std::vector<std::pair<int, int>> edges, double target, int digits) {
        const coprimality::GenericGraph g(v, std::move(edges));
        return euler_dict(eulerprod::rho(g, target), digits);
      },
      py::arg("v"), py::arg("edges"), py::arg("target") = 1e-15, py::arg("digits") = 20);
  m.def(
      "c_k_expression",
      [](int k, double target, int digits) {
        std::optional<eulerprod::EulerProductResult> result;
        {
          py::gil_scoped_release release;
          result = eulerprod::c_k_expression(k, target);
        }
        return euler_dict(*result, digits);
      },
      py::arg("k"), py::arg("target") = 1e-15, py::arg("digits") = 20);
  m.def(
      "series_identity_check",
      [](int k, int n) {
        const auto r = eulerprod::series_identity_check(k, n);
        return std::make_pair(r.ok, r.detail);
      },
      py::arg("k"), py::arg("N"));
  m.def(
      "hadamard_constants",
      [](int k) {
        const auto h = eulerprod::hadamard_constants(k);
        return std::make_pair(h.C_bound, h.c_bound);
      },
      py::arg("k"));

  m.def("brute_S", [](int k, std::uint64_t x) { return rational_parts(oracle::brute_S(k, x).value); }, py::arg("k"),
        py::arg("x"));
  m.def("brute_U", [](int k, std::uint64_t x) { return rational_parts(oracle::brute_U(k, x).value); }, py::arg("k"),
        py::arg("x"));
  m.def("brute_V", [](int k, std::uint64_t x) { return rational_parts(oracle::brute_V(k, x).value); }, py::arg("k"),
        py::arg("x"));
  m.def(
      "fast_S2",
      [](std::uint64_t x) -> py::object {
        const auto r = oracle::fast_S2(x);
        if (r.exact) return py::cast(rational_parts(*r.exact));
        return interval(r.value, 20);
      },
      py::arg("x"));
  m.def(
      "gwise_constrained_sum",
      [](int k, std::uint64_t x, bool fix_last) {
        return rational_parts(oracle::gwise_constrained_sum(k, x, fix_last).value);
      },
      py::arg("k"), py::arg("x"), py::arg("fix_last_to_one") = false);
  m.def("alpha_k", [](int k, std::uint64_t n) { return oracle::alpha_k(k, n).str(); }, py::arg("k"), py::arg("n"));
  m.def("alpha_sum", [](int k, std::uint64_t x) { return rational_parts(oracle::alpha_sum(k, x).value); },
        py::arg("k"), py::arg("x"));
  m.def(
      "theta_exponents",
      [](int k) {
        const auto t = oracle::theta_exponents(k);
        py::dict out;
        out["theta1"] = surd_dict(t.theta1);
        out["theta2"] = surd_dict(t.theta2);
        out["theta3"] = surd_dict(t.theta3);
        return out;
      },
      py::arg("k"));
  m.def(
      "leading_constants",
      [](int k, int digits) {
        oracle::LeadingConstants lc;
        {
          py::gil_scoped_release release;
          lc = oracle::leading_constants(k);
        }
        py::dict out;
        out["k"] = lc.k;
        out["rho"] = interval(lc.rho, digits);
        out["c"] = interval(lc.c, digits);
        out["c2"] = interval(lc.c2, digits);
        out["c3"] = interval(lc.c3, digits);
        out["vol_D"] = rational_parts(lc.vol_d);
        out["vol_D_star"] = rational_parts(lc.vol_d_star);
        out["vol_D_star2"] = rational_parts(lc.vol_d_star2);
        out["c2_consistent"] = lc.c2_consistent;
        return out;
      },
      py::arg("k"), py::arg("digits") = 20);

  m.def(
      "verify",
      [](const std::string& suite) {
        std::vector<verify::CheckRow> rows;
        {
          py::gil_scoped_release release;
          rows = verify::run_suite(suite);
        }
        py::list out;
        for (const auto& row : rows) {
          py::dict d;
          d["check_name"] = row.check_name;
          d["status"] = verify::to_string(row.status);
          d["expected"] = row.expected;
          d["actual"] = row.actual;
          d["tolerance"] = row.tolerance;
          d["runtime_ms"] = row.runtime_ms;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "quick");
}
