#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "finosc/generators.hpp"
#include "finosc/orbits.hpp"
#include "finosc/qcomb.hpp"
#include "finosc/star.hpp"
#include "finosc/suites.hpp"

namespace py = pybind11;
using namespace finosc;

namespace {

FieldPtr field_for_q(std::uint32_t q) {
    for (std::uint32_t p = 3; p <= q; p += 2) {
        if (!is_prime(p)) continue;
        std::uint64_t v = p;
        for (std::uint32_t e = 1; v <= q; ++e, v *= p)
            if (v == q) return FieldCtx::make(p, e);
    }
    throw std::invalid_argument("q must be an odd prime power");
}

SymmetricForm form_from_spec(FieldPtr F, const std::string& spec) {
    return SymmetricForm::parse_spec(std::move(F), spec);
}

py::object big_to_py(const BigInt& v) {
    std::ostringstream os;
    os << v;
    return py::int_(py::str(os.str()));
}

GroupKind kind_from_name(const std::string& name) {
    if (name == "sp") return GroupKind::Sp;
    if (name == "odd") return GroupKind::OddO;
    if (name == "plus") return GroupKind::PlusO;
    if (name == "minus") return GroupKind::MinusO;
    throw std::invalid_argument("kind must be sp|odd|plus|minus");
}

// pybind-side handle (the core passes immutable shared contexts around)
struct PyField {
    FieldPtr f;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact finite oscillator star-algebra toolkit (C++ core)";

    py::register_exception<SizeLimitError>(m, "SizeLimitError");

    py::class_<PyField>(m, "Field")
        .def_static("make",
                    [](std::uint32_t p, std::uint32_t ell) {
                        return PyField{FieldCtx::make(p, ell)};
                    },
                    py::arg("p"), py::arg("ell"))
        .def_property_readonly("p", [](const PyField& x) { return x.f->p(); })
        .def_property_readonly("ell", [](const PyField& x) { return x.f->ell(); })
        .def_property_readonly("q", [](const PyField& x) { return x.f->q(); })
        .def("modulus_string", [](const PyField& x) { return x.f->modulus_string(); })
        .def("add", [](const PyField& x, Fq a, Fq b) { return x.f->add(a, b); })
        .def("sub", [](const PyField& x, Fq a, Fq b) { return x.f->sub(a, b); })
        .def("mul", [](const PyField& x, Fq a, Fq b) { return x.f->mul(a, b); })
        .def("neg", [](const PyField& x, Fq a) { return x.f->neg(a); })
        .def("inv", [](const PyField& x, Fq a) { return x.f->inv(a); })
        .def("half", [](const PyField& x, Fq a) { return x.f->half(a); })
        .def("trace", [](const PyField& x, Fq a) { return x.f->trace(a); })
        .def("norm", [](const PyField& x, Fq a) { return x.f->norm(a); })
        .def("quad_char", [](const PyField& x, Fq a) { return x.f->quad_char(a); })
        .def("generator", [](const PyField& x) { return x.f->generator(); })
        .def("__repr__", [](const PyField& x) {
            return "Field(q=" + std::to_string(x.f->q()) + ", modulus=" +
                   x.f->modulus_string() + ")";
        });

    m.def("field", [](std::uint32_t q) { return PyField{field_for_q(q)}; }, py::arg("q"),
          "Field for an odd prime power q");

    m.def(
        "gauss_sum",
        [](std::uint32_t q, std::int64_t c) {
            auto F = field_for_q(q);
            return gauss_sum(*F, F->from_int(c)).to_string();
        },
        py::arg("q"), py::arg("c") = 1,
        "Quadratic Gauss sum sum_x psi(c x^2), rendered exactly");

    m.def(
        "k_constant",
        [](std::uint32_t q, const std::string& form, std::int64_t c) {
            auto F = field_for_q(q);
            auto W = form_from_spec(F, form);
            Fq cc = c >= 0 && c < static_cast<std::int64_t>(q) ? static_cast<Fq>(c)
                                                               : F->from_int(c);
            auto K = k_constant(*F, W, cc);
            auto closed = k_constant_closed(*F, W, cc);
            return py::make_tuple(K.value.to_string(), closed.to_string(),
                                  K.value == closed);
        },
        py::arg("q"), py::arg("form"), py::arg("c"),
        "(K(c), closed form, match) for the given W");

    m.def(
        "form_invariants",
        [](std::uint32_t q, const std::string& form) {
            auto F = field_for_q(q);
            auto W = form_from_spec(F, form);
            py::dict d;
            d["n"] = W.n();
            d["witt_index"] = W.witt_index();
            d["aniso_dim"] = W.aniso_dim();
            d["type"] = form_type_name(W.type());
            d["disc"] = W.disc();
            return d;
        },
        py::arg("q"), py::arg("form"));

    m.def(
        "orbit_census",
        [](const std::string& side, std::uint32_t q, std::uint32_t N, std::uint32_t n,
           const std::string& form, bool oracle) {
            auto F = field_for_q(q);
            OrbitSide os = side == "sp" ? OrbitSide::Sp : OrbitSide::O;
            std::optional<SymmetricForm> W;
            if (!form.empty()) W = form_from_spec(F, form);
            if (os == OrbitSide::O && !W)
                W = form_from_spec(F, (n % 2 ? "odd:" : "plus:") + std::to_string(n));
            auto census = orbit_census(os, F, N, n, W, oracle);
            py::dict d;
            d["descriptor_count"] = big_to_py(census.descriptor_count);
            if (census.closed_form) d["closed_form"] = big_to_py(*census.closed_form);
            if (census.burnside) d["burnside"] = big_to_py(*census.burnside);
            return d;
        },
        py::arg("side"), py::arg("q"), py::arg("N"), py::arg("n"), py::arg("form") = "",
        py::arg("oracle") = false);

    m.def(
        "group_order",
        [](const std::string& kind, std::uint32_t size, std::uint32_t q) {
            return big_to_py(group_order(kind_from_name(kind), size).eval(q));
        },
        py::arg("kind"), py::arg("size"), py::arg("q"));

    m.def(
        "gaussian_binomial",
        [](std::uint32_t a, std::uint32_t b, std::uint32_t q) {
            return big_to_py(gaussian_binomial(a, b).eval(q));
        },
        py::arg("a"), py::arg("b"), py::arg("q"));

    m.def("product_identity_check", &lemma_identity_check, py::arg("p"), py::arg("r"),
          py::arg("b"));
    m.def("tranche_identity_check", &tranche_identity_check, py::arg("k"), py::arg("p"),
          py::arg("b"), py::arg("r"));

    m.def(
        "end_dimension_identity",
        [](const std::string& kind, std::uint32_t n, std::uint32_t ell, std::uint32_t q) {
            auto r = hom_dimension_identity(kind_from_name(kind), n, ell, q);
            py::dict d;
            d["lhs"] = big_to_py(r.lhs_at_q);
            d["rhs"] = big_to_py(r.rhs_at_q);
            d["pass"] = r.pass;
            return d;
        },
        py::arg("kind"), py::arg("n"), py::arg("ell"), py::arg("q"));

    m.def(
        "appendix_identity_check",
        [](std::uint32_t q, const std::string& form, std::int64_t t) {
            auto F = field_for_q(q);
            auto W = form_from_spec(F, form);
            auto T = TensorSpace::make(F, 1, W);
            auto res = appendix_check(T, F->from_int(t));
            return py::make_tuple(res.star_identity, res.constants_identity);
        },
        py::arg("q"), py::arg("form"), py::arg("t"));

    m.def(
        "act",
        [](std::uint32_t q, std::uint32_t N, const std::string& form,
           const std::string& element, std::uint64_t model_code) {
            auto F = field_for_q(q);
            auto W = form_from_spec(F, form);
            auto T = TensorSpace::make(F, N, W);
            StarElement elt = StarElement::zero(T, 1);
            auto colon = element.find(':');
            std::string kind = element.substr(0, colon);
            std::string arg = colon == std::string::npos ? "" : element.substr(colon + 1);
            if (kind == "f")
                elt = f_lambda(T, std::stoull(arg));
            else if (kind == "g")
                elt = g_t(T, static_cast<Fq>(std::stoul(arg)));
            else if (kind == "alpha")
                elt = alpha_t(T, static_cast<Fq>(std::stoul(arg)));
            else if (kind == "beta")
                elt = beta_element(T);
            else if (kind == "gamma")
                elt = gamma_s(T, static_cast<Fq>(std::stoul(arg)));
            else
                throw std::invalid_argument("unknown element '" + element + "'");
            py::list out;
            for (auto& [code, coeff] : elt.apply(model_code))
                out.append(py::make_tuple(code, coeff.to_string()));
            return out;
        },
        py::arg("q"), py::arg("N"), py::arg("form"), py::arg("element"),
        py::arg("model_code"),
        "Image of a model basis vector under a named element (list of (code, coeff))");

    m.def(
        "run_suite",
        [](const std::string& name, std::vector<std::uint32_t> qs, int jobs) {
            SuiteOptions o;
            o.qs = std::move(qs);
            o.jobs = jobs;
            auto reps = run_suite(name, o);
            py::list out;
            for (auto& r : reps) {
                py::dict d;
                d["suite"] = r.suite;
                d["pass"] = r.pass();
                py::list results;
                for (auto& c : r.results) {
                    py::dict cd;
                    cd["name"] = c.name;
                    cd["params"] = c.params;
                    cd["pass"] = c.pass;
                    results.append(cd);
                }
                d["results"] = results;
                out.append(d);
            }
            return out;
        },
        py::arg("name"), py::arg("qs") = std::vector<std::uint32_t>{}, py::arg("jobs") = 1);
}
