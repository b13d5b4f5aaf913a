#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lagcorr/correspondence.hpp"
#include "lagcorr/dsl.hpp"
#include "lagcorr/grading.hpp"
#include "lagcorr/linalg.hpp"
#include "lagcorr/sequence.hpp"
#include "lagcorr/symplectic.hpp"

namespace py = pybind11;
using namespace lagcorr;

namespace {

py::object to_fraction(const Scalar& s) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(s.get_num().get_str())), py::int_(py::str(s.get_den().get_str())));
}

Scalar from_python(const py::handle& h) { return parse_scalar(py::str(h).cast<std::string>()); }

py::list vector_to_list(const Vector& v) {
    py::list out;
    for (const auto& x : v) out.append(to_fraction(x));
    return out;
}

py::list matrix_to_list(const Matrix& m) {
    py::list out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.append(vector_to_list(m.row(r)));
    return out;
}

Matrix matrix_from(const py::sequence& rows) {
    std::vector<Vector> vs;
    std::size_t cols = 0;
    for (const auto& row : rows) {
        Vector v;
        for (const auto& x : row.cast<py::sequence>()) v.push_back(from_python(x));
        if (vs.empty()) cols = v.size();
        vs.push_back(std::move(v));
    }
    return Matrix::from_rows(vs, cols);
}

py::list basis_list(const Subspace& s) {
    py::list out;
    for (const auto& v : s.basis_vectors()) out.append(vector_to_list(v));
    return out;
}

Subspace span_of(const py::sequence& vectors, std::size_t ambient) {
    std::vector<Vector> vs;
    for (const auto& row : vectors) {
        Vector v;
        for (const auto& x : row.cast<py::sequence>()) v.push_back(from_python(x));
        vs.push_back(std::move(v));
    }
    return Subspace::span(vs, ambient);
}

}  // namespace

PYBIND11_MODULE(_lagcorr, m) {
    m.doc() = "Exact linear Lagrangian correspondences";

    static py::exception<Error> error(m, "LagcorrError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<Subspace>(m, "Subspace")
        .def_static("span", &span_of, py::arg("vectors"), py::arg("ambient_dim"))
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
        .def_property_readonly("basis", &basis_list)
        .def(py::self == py::self)
        .def("__repr__", [](const Subspace& s) { return "Subspace(" + format_basis(s) + ")"; });

    py::class_<SymplecticSpace>(m, "SymplecticSpace")
        .def(py::init([](std::string name, const py::sequence& form) {
                 return SymplecticSpace(std::move(name), matrix_from(form));
             }),
             py::arg("name"), py::arg("form"))
        .def_property_readonly("name", &SymplecticSpace::name)
        .def_property_readonly("dim", &SymplecticSpace::dim)
        .def_property_readonly("form", [](const SymplecticSpace& s) { return matrix_to_list(s.form()); })
        .def(py::self == py::self)
        .def("__repr__", [](const SymplecticSpace& s) {
            return "SymplecticSpace('" + s.name() + "', dim=" + std::to_string(s.dim()) + ")";
        });

    m.def("standard_space", &standard_space, py::arg("n"), py::arg("name"));
    m.def("dual", &dual);
    m.def("product", &product);

    py::class_<LagrangianCorrespondence>(m, "LagrangianCorrespondence")
        .def(py::init([](const SymplecticSpace& a, const SymplecticSpace& b, const py::sequence& vectors,
                         std::string name) {
                 return LagrangianCorrespondence(a, b, span_of(vectors, a.dim() + b.dim()), std::move(name));
             }),
             py::arg("source"), py::arg("target"), py::arg("vectors"), py::arg("name") = "")
        .def_property_readonly("source", &LagrangianCorrespondence::source)
        .def_property_readonly("target", &LagrangianCorrespondence::target)
        .def_property_readonly("subspace", &LagrangianCorrespondence::subspace)
        .def_property_readonly("name", &LagrangianCorrespondence::name)
        .def(py::self == py::self);

    m.def("diagonal", &diagonal);
    m.def(
        "graph",
        [](const SymplecticSpace& a, const SymplecticSpace& b, const py::sequence& psi, std::string name) {
            return graph(a, b, matrix_from(psi), std::move(name));
        },
        py::arg("a"), py::arg("b"), py::arg("psi"), py::arg("name") = "");
    m.def("transpose", py::overload_cast<const LagrangianCorrespondence&>(&transpose));

    py::class_<CompositionReport>(m, "CompositionReport")
        .def_readonly("transverse", &CompositionReport::transverse)
        .def_readonly("middle_rank", &CompositionReport::middle_rank)
        .def_readonly("fiber", &CompositionReport::fiber)
        .def_readonly("projection_kernel_dim", &CompositionReport::projection_kernel_dim)
        .def_readonly("injective", &CompositionReport::injective)
        .def_readonly("composed", &CompositionReport::composed)
        .def_readonly("composed_is_lagrangian", &CompositionReport::composed_is_lagrangian)
        .def_property_readonly("embedded", &CompositionReport::embedded);

    m.def("geometric_compose", &geometric_compose);
    m.def("relation_compose", &relation_compose);
    m.def("is_embedded", &is_embedded);
    m.def("compose_embedded", &compose_embedded);

    py::class_<GeneralizedCorrespondence>(m, "GeneralizedCorrespondence")
        .def(py::init<std::vector<LagrangianCorrespondence>>(), py::arg("steps"))
        .def_static("identity", &GeneralizedCorrespondence::identity)
        .def_property_readonly("source", &GeneralizedCorrespondence::source)
        .def_property_readonly("target", &GeneralizedCorrespondence::target)
        .def_property_readonly("steps", &GeneralizedCorrespondence::steps)
        .def("__len__", &GeneralizedCorrespondence::length)
        .def(py::self == py::self);

    m.def("normalize", [](const GeneralizedCorrespondence& s) {
        NormalForm nf = normalize(s);
        std::vector<std::size_t> trace;
        for (const auto& step : nf.trace) trace.push_back(step.index);
        return py::make_tuple(nf.reduced, trace);
    });
    m.def("pi_invariant", &pi_invariant);
    m.def("equivalent", [](const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t) {
        return to_string(equivalent(s, t).verdict);
    });
    m.def("degree_shift", &degree_shift);
    m.def("koszul_sign", [](std::int64_t a, std::int64_t b, std::int64_t modulus) {
        GradingContext ctx(modulus);
        return koszul_sign(Degree(a, ctx), Degree(b, ctx));
    }, py::arg("a"), py::arg("b"), py::arg("modulus") = 2);

    m.def(
        "run_script",
        [](const std::string& text, const std::string& format, std::uint64_t seed, std::int64_t modulus) {
            Report r = run_script(text, RunOptions{seed, modulus});
            return py::make_tuple(format == "machine" ? render_machine(r) : render_text(r), r.exit_code());
        },
        py::arg("text"), py::arg("format") = "machine", py::arg("seed") = 0, py::arg("modulus") = 2);
}
