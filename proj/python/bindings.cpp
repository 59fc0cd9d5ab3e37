#include "maysseq/cli.hpp"
#include "maysseq/collapse.hpp"
#include "maysseq/emit.hpp"
#include "maysseq/error.hpp"
#include "maysseq/homology.hpp"
#include "maysseq/hopf_oracle.hpp"
#include "maysseq/msq.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace maysseq;

namespace {

PresentationPtr s_presentation(int p, int n, int k)
{
    return build_presentation(Params::make(p, n, k), Flavor::S);
}

py::tuple cli(const std::vector<std::string>& args)
{
    std::vector<const char*> argv{"maysseq"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_maysseq, m)
{
    m.doc() = "May spectral sequence engine for the Morava stabilizer algebras S(n,k)";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParams>(m, "InvalidParams", PyExc_ValueError);
    py::register_exception<IncompleteTable>(m, "IncompleteTable", PyExc_RuntimeError);

    m.def("s0", [](int p, int n, int k) { return compute_s0(Params::make(p, n, k)); }, py::arg("p"), py::arg("n"),
          py::arg("k"));
    m.def(
        "may_filtration", [](int p, int n, int k, int s) { return may_filtration_ts(Params::make(p, n, k), s); },
        py::arg("p"), py::arg("n"), py::arg("k"), py::arg("s"));
    m.def(
        "generators",
        [](int p, int n, int k) {
            std::vector<std::string> out;
            auto pres = s_presentation(p, n, k);
            for (const auto& g : pres->algebra->generators())
                out.push_back(render_label(g.label));
            return out;
        },
        py::arg("p"), py::arg("n"), py::arg("k"));
    m.def(
        "poincare",
        [](int p, int n, int k, int s_max, int threads) {
            auto pres = s_presentation(p, n, k);
            py::gil_scoped_release release;
            return poincare(pres, s_max, threads).coefficients;
        },
        py::arg("p"), py::arg("n"), py::arg("k"), py::arg("s_max"), py::arg("threads") = 1);
    m.def(
        "d1",
        [](int p, int n, int k, const std::string& element) {
            auto pres = s_presentation(p, n, k);
            return render(d1_element(*pres, parse_element(pres->algebra, element)));
        },
        py::arg("p"), py::arg("n"), py::arg("k"), py::arg("element"));
    m.def(
        "is_nonzero_class",
        [](int p, int n, int k, const std::string& element) {
            auto pres = s_presentation(p, n, k);
            CochainComplex complex(pres);
            return check_class(complex, parse_element(pres->algebra, element)).nonzero();
        },
        py::arg("p"), py::arg("n"), py::arg("k"), py::arg("element"));
    m.def(
        "collapse_status",
        [](int p, int n, int k, int s_max) {
            auto pres = s_presentation(p, n, k);
            py::gil_scoped_release release;
            auto table = compute_page_table(pres, s_max);
            return std::string(status_name(prove_collapse(table).status));
        },
        py::arg("p"), py::arg("n"), py::arg("k"), py::arg("s_max"));
    m.def("cli", &cli, py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
