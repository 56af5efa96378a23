#include "dualspace/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

namespace py = pybind11;
using namespace dualspace;

namespace {

Matrix to_matrix(const SpaceDescriptor& space, const CMatrix& data) {
  if (space.field == Field::Real && data.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("complex entries given for a real space");
  }
  return Matrix(data, space.field);
}

SubspacePoint to_point(const SpaceDescriptor& space, const CMatrix& rep) {
  if (rep.rows() != space.dim() || rep.cols() != space.n) {
    throw std::invalid_argument("point representative must be (n+m) x n");
  }
  return {to_matrix(space, rep), space.oriented ? 1 : 0};
}

Embedding embedding_arg(const std::string& method) {
  const auto e = parse_embedding(method);
  if (!e) throw std::invalid_argument("unknown embedding '" + method + "'");
  return *e;
}

GroupElement coset(const SpaceDescriptor& space, const CMatrix& y) {
  return {Side::Noncompact, transitivity_element(space, to_matrix(space, y))};
}

py::dict report_dict(const PropertyReport& r) {
  py::dict details;
  for (const auto& [name, value] : r.details) details[py::str(name)] = value;
  py::dict d;
  d["property"] = r.property_name;
  d["samples"] = r.samples;
  d["failures"] = r.failures;
  d["worst_residual"] = r.worst_residual;
  d["seed"] = r.seed;
  d["tolerance"] = r.tolerance;
  d["passed"] = r.passed();
  d["details"] = details;
  return d;
}

py::dict flat_dict(const SpaceDescriptor& space, const FlatDecomposition& d) {
  py::dict out;
  out["k"] = d.k.data();
  out["cartan"] = d.cartan_coords;
  out["lattice"] = d.h.coords;
  out["length"] = space.metric_scale * d.cartan_coords.norm();
  return out;
}

py::list verify(const SpaceDescriptor& space, const std::string& property,
                const std::string& method, std::size_t samples, std::uint64_t seed, double tol) {
  auto t = [&](double fallback) { return tol > 0.0 ? tol : fallback; };
  py::list out;
  if (property == "all") {
    for (const auto& r : run_space_suite(space, samples, seed, tol)) out.append(report_dict(r));
  } else if (property == "triple") {
    out.append(report_dict(check_triple_equality(space, samples, seed, t(1e-9))));
  } else if (property == "equivariance") {
    out.append(report_dict(check_equivariance(space, embedding_arg(method), samples, seed, t(1e-9))));
  } else if (property == "image-region") {
    const Embedding e = embedding_arg(method);
    out.append(report_dict(check_image_region(space, e, samples, seed, 1.0 - 1e-6,
                                              default_approach_tol(space, e))));
  } else if (property == "cut-loci") {
    out.append(report_dict(check_cut_loci_grassmannian(space, samples, seed, t(1e-9))));
  } else if (property == "cut-radius") {
    out.append(report_dict(check_cut_radius(space, samples, seed, t(1e-12))));
  } else if (property == "restriction") {
    out.append(report_dict(check_restriction(space.n, space.m, samples, seed, t(1e-9))));
  } else if (property == "round-trip") {
    out.append(report_dict(check_round_trip(space, samples, seed, t(1e-9))));
  } else if (property == "h-independence") {
    out.append(report_dict(check_h_independence(space, samples, seed, t(1e-9))));
  } else if (property == "trig") {
    out.append(report_dict(check_trig_suite(samples, seed, t(1e-8))));
  } else {
    throw std::invalid_argument("unknown property '" + property + "'");
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_dualspace, mod) {
  mod.doc() = "Embeddings of noncompact symmetric spaces into their compact duals.";
  mod.attr("__version__") = "0.1.0";

  static py::exception<DomainError> domain_error(mod, "DomainError", PyExc_ValueError);
  static py::exception<NumericalError> numerical_error(mod, "NumericalError",
                                                       PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  py::class_<SpaceDescriptor>(mod, "Space")
      .def(py::init([](const std::string& family, Eigen::Index n, Eigen::Index m) {
             const auto f = parse_family(family);
             if (!f) throw std::invalid_argument("unknown space family '" + family + "'");
             return make_space(*f, n, m);
           }),
           py::arg("family"), py::arg("n"), py::arg("m"))
      .def_property_readonly("family", [](const SpaceDescriptor& s) { return to_string(s.family); })
      .def_property_readonly("field", [](const SpaceDescriptor& s) { return to_string(s.field); })
      .def_readonly("n", &SpaceDescriptor::n)
      .def_readonly("m", &SpaceDescriptor::m)
      .def_readonly("rank", &SpaceDescriptor::rank)
      .def_readonly("oriented", &SpaceDescriptor::oriented)
      .def_readonly("metric_scale", &SpaceDescriptor::metric_scale)
      .def_property_readonly("form_j", [](const SpaceDescriptor& s) { return s.form_j.data(); })
      .def("__repr__", [](const SpaceDescriptor& s) { return "Space(" + s.label() + ")"; });

  mod.def("base_point", [](const SpaceDescriptor& s) { return base_point(s).rep.data(); },
          py::arg("space"));
  mod.def(
      "transitivity_element",
      [](const SpaceDescriptor& s, const CMatrix& y) {
        return transitivity_element(s, to_matrix(s, y)).data();
      },
      py::arg("space"), py::arg("y"), "Group element carrying the base point to span [I; Y].");
  mod.def(
      "embed",
      [](const SpaceDescriptor& s, const CMatrix& y, const std::string& method) {
        const GroupElement a = coset(s, y);
        switch (embedding_arg(method)) {
          case Embedding::P: return p_embed(s, a).rep.data();
          case Embedding::G: return g_embed_point(s, a).rep.data();
          case Embedding::F: return f_embed(s, a).rep.data();
          case Embedding::B: return b_embed(s, p_embed(s, a)).rep.data();
        }
        throw std::logic_error("unreachable");
      },
      py::arg("space"), py::arg("y"), py::arg("method") = "f",
      "Image in the compact dual of the coset of transitivity_element(Y), as an (n+m) x n "
      "representative.");
  mod.def(
      "b_embed",
      [](const SpaceDescriptor& s, const CMatrix& rep) {
        return b_embed(s, to_point(s, rep)).rep.data();
      },
      py::arg("space"), py::arg("point"));
  mod.def("b_angle", &b_embed_rank1, py::arg("t"));
  mod.def("h_coordinate", &h_coordinate, py::arg("x"));
  mod.def(
      "space_like",
      [](const SpaceDescriptor& s, const CMatrix& rep) { return space_like(s, to_point(s, rep)); },
      py::arg("space"), py::arg("point"));
  mod.def(
      "point_distance",
      [](const SpaceDescriptor& s, const CMatrix& a, const CMatrix& b) {
        return point_distance(to_point(s, a), to_point(s, b));
      },
      py::arg("space"), py::arg("a"), py::arg("b"));
  mod.def(
      "log_noncompact",
      [](const SpaceDescriptor& s, const CMatrix& rep) {
        const TangentVector x = log_noncompact(s, to_point(s, rep));
        return flat_dict(s, flat_decompose(s, x));
      },
      py::arg("space"), py::arg("point"));
  mod.def(
      "log_compact",
      [](const SpaceDescriptor& s, const CMatrix& rep) {
        return flat_dict(s, log_compact(s, to_point(s, rep)));
      },
      py::arg("space"), py::arg("point"));

  mod.def("lattice_generators", [](const SpaceDescriptor& s) { return s.lattice.generators(); },
          py::arg("space"));
  mod.def("su3_lattice_generators", [] { return su3_integral_lattice().generators(); });
  mod.def(
      "cut_radius",
      [](const RMatrix& generators, const RVector& direction, bool brute) {
        const LatticeBasis basis(generators);
        const FlatCoordinates unit{basis.to_lattice(direction)};
        const CutRadiusResult r = brute ? cut_radius_brute(basis, unit) : cut_radius(basis, unit);
        py::dict d;
        d["radius"] = r.radius;
        d["minimizer"] = r.minimizer;
        d["closed_form_used"] = r.used_closed_form;
        return d;
      },
      py::arg("generators"), py::arg("direction"), py::arg("brute") = false,
      "Cut radius along a unit metric direction of the flat spanned by `generators`.");
  mod.def(
      "naive_cut_radius",
      [](const RMatrix& generators, const RVector& direction) {
        const LatticeBasis basis(generators);
        return naive_cut_radius(basis, {basis.to_lattice(direction)});
      },
      py::arg("generators"), py::arg("direction"));

  mod.def("verify", &verify, py::arg("space"), py::arg("property") = "all",
          py::arg("method") = "f", py::arg("samples") = 200,
          py::arg("seed") = kDefaultSeed, py::arg("tol") = 0.0,
          "Run property checks; returns one report dict per check.");
}
