#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "randbound/ell2.hpp"
#include "randbound/family_io.hpp"
#include "randbound/gaussian.hpp"
#include "randbound/quadrature.hpp"
#include "randbound/rademacher.hpp"
#include "randbound/spaces.hpp"
#include "randbound/suites.hpp"
#include "randbound/summing.hpp"

namespace py = pybind11;
using namespace randbound;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ShapeError("matrix needs at least one row");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r) {
        if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != m.cols)
            throw ShapeError("ragged matrix rows");
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
    return m;
}

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows));
    for (int r = 0; r < m.rows; ++r) {
        rows[static_cast<size_t>(r)].resize(static_cast<size_t>(m.cols));
        for (int c = 0; c < m.cols; ++c) rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = m.at(r, c);
    }
    return rows;
}

const char* upper_source_name(UpperSource s) {
    switch (s) {
        case UpperSource::Analytic: return "analytic";
        case UpperSource::Exhaustive: return "exhaustive";
        default: return "none";
    }
}

} // namespace

PYBIND11_MODULE(_randbound, m) {
    m.doc() = "Randomized operator-bound estimators: R-, gamma-, and l2-bound "
              "brackets on finite-dimensional sequence spaces";

    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<DegenerateWitnessError>(m, "DegenerateWitnessError", PyExc_ValueError);

    m.attr("INF_P") = kInfExponent;
    m.attr("GROTHENDIECK_UPPER") = kGrothendieckUpper;
    m.attr("THETA_RATIO_CONSTANT") = kThetaRatioConstant;
    m.attr("SIGN_ENUMERATION_CAP") = kSignEnumerationCap;

    py::class_<SeqSpace>(m, "SeqSpace")
        .def(py::init(&make_space), py::arg("dim"), py::arg("p"))
        .def_readonly("dim", &SeqSpace::dim)
        .def_readonly("p", &SeqSpace::p)
        .def("__repr__", [](const SeqSpace& s) {
            return "SeqSpace(dim=" + std::to_string(s.dim) +
                   (is_inf_exponent(s.p) ? ", p=inf)" : ", p=" + std::to_string(s.p) + ")");
        });
    m.def("linf", &linf, py::arg("dim"));
    m.def("l1", &l1, py::arg("dim"));
    m.def("l2", &l2, py::arg("dim"));
    m.def("scalar_space", &scalar_space);
    m.def("dual_exponent", &dual_exponent, py::arg("p"));

    py::class_<Matrix>(m, "Matrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def_readonly("rows", &Matrix::rows)
        .def_readonly("cols", &Matrix::cols)
        .def("to_rows", &matrix_rows)
        .def_static("identity", &Matrix::identity, py::arg("n"));

    py::class_<OperatorFamily>(m, "OperatorFamily")
        .def(py::init([](const SeqSpace& dom, const SeqSpace& cod,
                         const std::vector<std::vector<std::vector<double>>>& members) {
                 OperatorFamily f;
                 f.domain = dom;
                 f.codomain = cod;
                 for (const auto& rows : members) f.members.push_back(matrix_from_rows(rows));
                 f.validate();
                 return f;
             }),
             py::arg("domain"), py::arg("codomain"), py::arg("members"))
        .def_readonly("domain", &OperatorFamily::domain)
        .def_readonly("codomain", &OperatorFamily::codomain)
        .def_property_readonly("members",
                               [](const OperatorFamily& f) {
                                   std::vector<std::vector<std::vector<double>>> out;
                                   for (const Matrix& mm : f.members) out.push_back(matrix_rows(mm));
                                   return out;
                               })
        .def("__len__", &OperatorFamily::size);

    py::class_<Witness>(m, "Witness")
        .def(py::init([](const std::vector<int>& ops, const std::vector<Vector>& vecs) {
                 Witness w;
                 w.opIndices = ops;
                 w.vectors = vecs;
                 return w;
             }),
             py::arg("op_indices"), py::arg("vectors"))
        .def_readonly("op_indices", &Witness::opIndices)
        .def_readonly("vectors", &Witness::vectors);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init([](long long samples, uint64_t seed, double level) {
                 McConfig c;
                 c.samples = samples;
                 c.seed = seed;
                 c.level = level;
                 c.validate();
                 return c;
             }),
             py::arg("samples") = 100000, py::arg("seed") = 42, py::arg("level") = 0.99)
        .def_readonly("samples", &McConfig::samples)
        .def_readonly("seed", &McConfig::seed)
        .def_readonly("level", &McConfig::level);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("half_width", &McEstimate::halfWidth)
        .def_readonly("samples", &McEstimate::samples)
        .def_readonly("seed", &McEstimate::seed)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) +
                   ", half_width=" + std::to_string(e.halfWidth) + ")";
        });

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init([](int restarts, int ascentSteps, uint64_t seed, int gridLevels) {
                 SearchConfig c;
                 c.restarts = restarts;
                 c.ascentSteps = ascentSteps;
                 c.seed = seed;
                 c.gridLevels = gridLevels;
                 c.validate();
                 return c;
             }),
             py::arg("restarts") = 64, py::arg("ascent_steps") = 2, py::arg("seed") = 42,
             py::arg("grid_levels") = 3)
        .def_readonly("restarts", &SearchConfig::restarts)
        .def_readonly("ascent_steps", &SearchConfig::ascentSteps)
        .def_readonly("seed", &SearchConfig::seed)
        .def_readonly("grid_levels", &SearchConfig::gridLevels);

    py::class_<BoundEstimate>(m, "BoundEstimate")
        .def_readonly("lower", &BoundEstimate::lower)
        .def_readonly("upper", &BoundEstimate::upper)
        .def_readonly("lower_certificate", &BoundEstimate::lowerCertificate)
        .def_property_readonly(
            "upper_source",
            [](const BoundEstimate& e) { return std::string(upper_source_name(e.upperSource)); })
        .def_readonly("upper_formula", &BoundEstimate::upperFormula)
        .def_property_readonly("ci",
                               [](const BoundEstimate& e) -> py::object {
                                   if (!e.ci) return py::none();
                                   return py::make_tuple(e.ci->halfWidth, e.ci->level);
                               })
        .def_property_readonly("degenerate",
                               [](const BoundEstimate& e) { return e.meta.degenerate; })
        .def("__repr__", [](const BoundEstimate& e) {
            return "BoundEstimate(lower=" + std::to_string(e.lower) +
                   ", upper=" + std::to_string(e.upper) + ")";
        });

    // spaces-core
    m.def("norm", &norm, py::arg("space"), py::arg("v"));
    m.def("square_function_norm", &square_function_norm, py::arg("space"), py::arg("vectors"));
    m.def("apply", &apply, py::arg("family"), py::arg("index"), py::arg("v"));
    m.def("adjoint_family", &adjoint_family, py::arg("family"));
    m.def("diagonal_functional_family", &diagonal_functional_family, py::arg("a"));
    m.def("coordinate_functional_family", &coordinate_functional_family, py::arg("n"));
    m.def("coordinate_embedding_family", &coordinate_embedding_family, py::arg("n"));
    m.def("stack_family", &stack_family, py::arg("functionals"));
    m.def("compose_families", &compose_families, py::arg("s"), py::arg("t"));

    // rademacher engine
    m.def("rademacher_moment", &rademacher_moment, py::arg("space"), py::arg("vectors"),
          py::arg("q") = 2.0);
    m.def("r_ratio", &r_ratio, py::arg("family"), py::arg("witness"));
    m.def("diag_c0_rbound", &diag_c0_rbound, py::arg("a"));
    m.def("r_bound_search", &r_bound_search, py::arg("family"), py::arg("config"));
    m.def("cotype2_search", &cotype2_search, py::arg("family"), py::arg("config"));

    // gaussian engine
    m.def("gaussian_moment_mc", &gaussian_moment_mc, py::arg("space"), py::arg("vectors"),
          py::arg("q"), py::arg("config"));
    m.def("expected_sup_mc", &expected_sup_mc, py::arg("x"), py::arg("config"));
    m.def(
        "sudakov_check",
        [](const Vector& x, const McConfig& cfg) {
            const SudakovResult r = sudakov_check(x, cfg);
            return py::make_tuple(r.lhs, r.rhs, r.holds);
        },
        py::arg("x"), py::arg("config"));
    m.def("komatsu_lower_tail", &komatsu_lower_tail, py::arg("s"));
    m.def("theta", &theta, py::arg("y"));
    m.def("theta_floor", &theta_floor, py::arg("y"));
    m.def("expsup_gamma_sq_bound", &expsup_gamma_sq_bound, py::arg("n"));
    m.def("expsup_gamma_sq_mc", &expsup_gamma_sq_mc, py::arg("n"), py::arg("config"));
    m.def("gamma_ratio_mc", &gamma_ratio_mc, py::arg("family"), py::arg("witness"),
          py::arg("config"));
    m.def("coord_gamma_bracket", &coord_gamma_bracket, py::arg("n"));
    m.def("gamma_bound_search", &gamma_bound_search, py::arg("family"), py::arg("config"),
          py::arg("mc"));
    m.def("gaussian_tail_integral", &gaussian_tail_integral, py::arg("s"));
    m.def("expected_sup_quadrature", &expected_sup_quadrature, py::arg("x"));

    // l2 engine
    m.def("ell2_ratio", &ell2_ratio, py::arg("family"), py::arg("witness"));
    m.def("ell2_bound_search", &ell2_bound_search, py::arg("family"), py::arg("config"));
    m.def(
        "ell2_duality_check",
        [](const OperatorFamily& f, const SearchConfig& cfg) {
            const DualityResult r = ell2_duality_check(f, cfg);
            return py::make_tuple(r.primal, r.dual, r.consistent);
        },
        py::arg("family"), py::arg("config"));
    m.def("ell2_product_check", &ell2_product_check, py::arg("s"), py::arg("t"), py::arg("config"));

    // summing norms
    m.def("weak_lq_norm", &weak_lq_norm, py::arg("space"), py::arg("vectors"), py::arg("q"));
    m.def("pi2_search", &pi2_search, py::arg("family"), py::arg("config"));
    m.def("pi21_search", &pi21_search, py::arg("family"), py::arg("config"));
    m.def("gaussian_cotype2_search", &gaussian_cotype2_search, py::arg("family"), py::arg("config"),
          py::arg("mc"));
    m.def("cotype_ratio_bracket", &cotype_ratio_bracket, py::arg("n"));

    // family interchange
    m.def(
        "load_family_json",
        [](const std::string& text) {
            const NamedFamily nf = parse_family_json(text);
            return py::make_tuple(nf.name, nf.family);
        },
        py::arg("text"));
    m.def(
        "family_to_json",
        [](const std::string& name, const OperatorFamily& fam, int indent) {
            return family_to_json(NamedFamily{name, fam}, indent);
        },
        py::arg("name"), py::arg("family"), py::arg("indent") = 2);
}
