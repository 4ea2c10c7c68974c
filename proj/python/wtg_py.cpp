#include "wtg/errors.hpp"
#include "wtg/gadget.hpp"
#include "wtg/oracle.hpp"
#include "wtg/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace wtg;

namespace {

int location(const Game& g, const std::string& name) {
    int l = g.location_index(name);
    if (l < 0) throw InputError("unknown location '" + name + "'");
    return l;
}

Valuation valuation(const Game& g, const std::map<std::string, std::string>& values) {
    Valuation v(g.clocks.size(), Rational(0));
    std::vector<bool> seen(g.clocks.size(), false);
    for (const auto& [name, text] : values) {
        int x = g.clock_index(name);
        if (x < 0) throw InputError("unknown clock '" + name + "'");
        v[x] = parse_rational(text);
        if (sgn(v[x]) < 0) throw InputError("negative clock value");
        seen[x] = true;
    }
    for (size_t x = 0; x < seen.size(); ++x)
        if (!seen[x]) throw InputError("missing value for clock '" + g.clocks[x] + "'");
    return v;
}

struct Solution {
    Game game;
    SolveReport report;
};

}  // namespace

PYBIND11_MODULE(_wtg, m) {
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NotAcyclic>(m, "NotAcyclic", PyExc_RuntimeError);
    py::register_exception<NonConvergent>(m, "NonConvergent", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
    py::register_exception<PerturbationTooLarge>(m, "PerturbationTooLarge", PyExc_ValueError);

    py::class_<Game>(m, "Game")
        .def_property_readonly("clocks", [](const Game& g) { return g.clocks; })
        .def_property_readonly("bound", [](const Game& g) { return g.M; })
        .def_property_readonly("locations", [](const Game& g) {
            std::vector<std::string> names;
            for (const auto& l : g.locations) names.push_back(l.name);
            return names;
        })
        .def_property_readonly("num_transitions", [](const Game& g) { return g.transitions.size(); })
        .def("text", &print_game);

    m.def("parse_game", &parse_game, py::arg("text"));
    m.def("load_game", &load_game_file, py::arg("path"));

    py::class_<Solution>(m, "Solution")
        .def_property_readonly("mode", [](const Solution& s) { return s.report.mode; })
        .def_property_readonly("eta", [](const Solution& s) { return s.report.eta.str(); })
        .def_property_readonly("eta_open", [](const Solution& s) { return s.report.eta.open; })
        .def_property_readonly("iterations", [](const Solution& s) { return s.report.iterations; })
        .def_property_readonly("converged", [](const Solution& s) { return s.report.converged; })
        .def("json", [](const Solution& s) { return report_json(s.game, s.report); })
        .def(
            "value",
            [](const Solution& s, const std::string& loc, const std::map<std::string, std::string>& v, const std::string& p) {
                Rational pv = parse_rational(p);
                if (!s.report.eta.admits(pv)) throw PerturbationTooLarge(p, s.report.eta.str());
                return eval_pvf(s.report.values.values[location(s.game, loc)], valuation(s.game, v), pv).str();
            },
            py::arg("location"), py::arg("valuation"), py::arg("p"))
        .def(
            "limit",
            [](const Solution& s, const std::string& loc, const std::map<std::string, std::string>& v) {
                return limit_value(s.report.values.values[location(s.game, loc)], valuation(s.game, v)).str();
            },
            py::arg("location"), py::arg("valuation"));

    m.def(
        "solve",
        [](const Game& g, const std::string& mode, std::optional<int> max_iters) {
            return Solution{g, solve(g, mode, max_iters)};
        },
        py::arg("game"), py::arg("mode") = "auto", py::arg("max_iters") = py::none());

    m.def(
        "check",
        [](const Game& g) {
            DivergenceReport d = check_divergent(g);
            return py::make_tuple(d.divergent, d.summary(g, build_region_game(g)));
        },
        py::arg("game"));

    m.def(
        "to_excessive",
        [](const Game& g) {
            GadgetMap gm = to_excessive(g);
            return py::make_tuple(gm.game, gadget_map_json(gm), gadget_wellformed(gm));
        },
        py::arg("game"));

    m.def(
        "oracle",
        [](const Game& g, const std::string& p, const std::string& grid, const std::string& convention, bool qualitative,
           std::optional<int> horizon) {
            OracleConfig cfg;
            cfg.p = parse_rational(p);
            cfg.grid = parse_rational(grid);
            cfg.convention = parse_convention(convention);
            cfg.horizon = horizon;
            OracleResult r = qualitative ? oracle_reach(g, cfg) : oracle_value(g, cfg);
            return r.csv(g.clocks);
        },
        py::arg("game"), py::arg("p"), py::arg("grid"), py::arg("convention") = "shifted", py::arg("qualitative") = false,
        py::arg("horizon") = py::none());
}
