#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stardisc/dem.hpp"
#include "stardisc/experiment.hpp"
#include "stardisc/oracle.hpp"
#include "stardisc/samplers.hpp"
#include "stardisc/ta.hpp"

namespace py = pybind11;
using namespace stardisc;

PYBIND11_MODULE(_stardisc, m) {
    m.doc() = "Exact and heuristic L-infinity star discrepancy computation";

    py::class_<PointSet>(m, "PointSet")
        .def(py::init<int, std::vector<std::vector<double>>>(), py::arg("dim"), py::arg("points"))
        .def_static("load", &PointSet::load)
        .def("save", &PointSet::save)
        .def_property_readonly("dim", &PointSet::dim)
        .def("__len__", &PointSet::size)
        .def("point", &PointSet::point)
        .def("grid", [](const PointSet& p, int j) { return p.grid(j); });

    py::enum_<Sampler>(m, "Sampler")
        .value("uniform", Sampler::Uniform)
        .value("sobol", Sampler::Sobol)
        .value("halton", Sampler::Halton);

    py::class_<SuiteProblem>(m, "SuiteProblem")
        .def_readonly("problem_id", &SuiteProblem::problem_id)
        .def_readonly("sampler", &SuiteProblem::sampler)
        .def_readonly("n", &SuiteProblem::n)
        .def_readonly("dim", &SuiteProblem::dim)
        .def_readonly("instance", &SuiteProblem::instance);

    m.def("suite_problem", &suite_problem, py::arg("problem_id"), py::arg("dim"),
          py::arg("instance"));
    m.def("generate", py::overload_cast<Sampler, int, int, int>(&generate), py::arg("sampler"),
          py::arg("n"), py::arg("dim"), py::arg("instance") = 1);
    m.def("generate", py::overload_cast<const SuiteProblem&>(&generate));

    m.def("volume", &volume);
    m.def("count_open", &count_open);
    m.def("count_closed", &count_closed);
    m.def("delta", &delta);
    m.def("bar_delta", &bar_delta);
    m.def("local_disc_abs", &local_disc_abs);
    m.def("local_disc_two_sided", &local_disc_two_sided);
    m.def("decode_grid", &decode_grid);
    m.def("snap_down", &snap_down);
    m.def("snap_up", &snap_up);

    py::enum_<BoxSide>(m, "BoxSide").value("open", BoxSide::Open).value("closed", BoxSide::Closed);

    py::class_<DiscResult>(m, "DiscResult")
        .def_readonly("value", &DiscResult::value)
        .def_readonly("argmax", &DiscResult::argmax)
        .def_readonly("side", &DiscResult::side);
    m.def(
        "brute_force_disc",
        [](const PointSet& p, std::uint64_t guard, int threads, bool prune) {
            return brute_force_disc(p, {guard, threads, prune});
        },
        py::arg("points"), py::arg("guard") = 100000000ull, py::arg("threads") = 1,
        py::arg("prune") = false);

    py::class_<DemResult>(m, "DemResult")
        .def_readonly("value", &DemResult::value)
        .def_readonly("argmax", &DemResult::argmax)
        .def_readonly("side", &DemResult::side)
        .def_readonly("cells", &DemResult::cells);
    m.def(
        "dem_disc",
        [](const PointSet& p, int threads, double cutoff) {
            return dem_disc(p, {threads, cutoff});
        },
        py::arg("points"), py::arg("threads") = 1, py::arg("cutoff") = 1e8,
        py::call_guard<py::gil_scoped_release>());

    py::class_<TaResult>(m, "TaResult")
        .def_readonly("value", &TaResult::value)
        .def_readonly("argmax", &TaResult::argmax)
        .def_readonly("evaluations", &TaResult::evaluations);
    m.def("ta_lower_bound", &ta_lower_bound, py::arg("points"), py::arg("budget"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<Trajectory>(m, "Trajectory").def_readonly("records", &Trajectory::records);
    py::class_<OptResult>(m, "OptResult")
        .def_readonly("best", &OptResult::best)
        .def_readonly("best_x", &OptResult::best_x)
        .def_readonly("trajectory", &OptResult::trajectory)
        .def_readonly("evaluations", &OptResult::evaluations);
    m.def("optimize", &optimize, py::arg("optimizer"), py::arg("objective"), py::arg("dim"),
          py::arg("budget"), py::arg("seed"));
    m.def("optimizer_ids", &optimizer_ids);
    m.def("ert", &ert, py::arg("runs"), py::arg("target"), py::arg("budget"));

    py::enum_<BoundSource>(m, "BoundSource")
        .value("dem", BoundSource::Dem)
        .value("ta", BoundSource::Ta);
    m.def("relative_gap", &relative_gap, py::arg("opt_bound"), py::arg("final_value"),
          py::arg("source"));
}
