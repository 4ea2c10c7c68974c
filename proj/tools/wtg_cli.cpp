#include "wtg/errors.hpp"
#include "wtg/gadget.hpp"
#include "wtg/oracle.hpp"
#include "wtg/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace wtg;

namespace {

Valuation parse_valuation(const Game& g, const std::string& text) {
    Valuation v(g.num_clocks());
    std::vector<bool> seen(g.num_clocks(), false);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("expected clock=value in '" + item + "'");
        int x = g.clock_index(item.substr(0, eq));
        if (x < 0) throw InputError("unknown clock '" + item.substr(0, eq) + "'");
        v[x] = parse_rational(item.substr(eq + 1));
        if (sgn(v[x]) < 0) throw InputError("negative clock value");
        seen[x] = true;
    }
    for (int x = 0; x < g.num_clocks(); ++x)
        if (!seen[x]) throw InputError("missing value for clock '" + g.clocks[x] + "'");
    return v;
}

int location(const Game& g, const std::string& name) {
    int l = g.location_index(name);
    if (l < 0) throw InputError("unknown location '" + name + "'");
    return l;
}

Rational positive(const std::string& s, const char* what) {
    Rational r = parse_rational(s);
    if (sgn(r) <= 0) throw InputError(std::string(what) + " must be positive");
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

// Samples every location on a grid of step h over [0, M]^n, at p or at the limit.
std::string plot(const Game& g, const SolveReport& r, const Rational& h, const std::optional<Rational>& p) {
    std::ostringstream os;
    os << "location";
    for (const auto& c : g.clocks) os << ',' << c;
    os << ",value\n";
    const int n = g.num_clocks();
    Rational span = Rational(g.M) / h;
    mpz_class steps_z = span.get_num() / span.get_den();
    long steps = steps_z.get_si();
    for (size_t l = 0; l < g.locations.size(); ++l) {
        std::vector<long> k(n, 0);
        LimitFunction lim;
        if (!p) lim = limit_of(r.values.values[l]);
        while (true) {
            Valuation v(n);
            for (int x = 0; x < n; ++x) v[x] = h * k[x];
            ExtRational val = p ? eval_pvf(r.values.values[l], v, *p) : lim.eval(v);
            os << g.locations[l].name;
            for (const auto& x : v) os << ',' << x.get_d();
            os << ',';
            if (val.finite()) os << val.value().get_d();
            else os << (val.is_pos_inf() ? "inf" : "-inf");
            os << '\n';
            int x = 0;
            while (x < n && ++k[x] > steps) k[x++] = 0;
            if (x == n) break;
        }
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust values of weighted timed games under perturbation"};
    app.require_subcommand(1);

    std::string file, mode = "auto", out, p_str, grid_str, loc, val, conv = "shifted", plot_str;
    int max_iters = 0, horizon = -1;
    bool qualitative = false;

    auto* solve_cmd = app.add_subcommand("solve", "Compute parametric value functions");
    solve_cmd->add_option("file", file)->required();
    solve_cmd->add_option("--mode", mode)->check(CLI::IsMember({"auto", "acyclic", "divergent"}));
    solve_cmd->add_option("--max-iters", max_iters)->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", out);
    solve_cmd->add_option("--plot", plot_str, "Grid step n/d for a float-sampled CSV of every location");
    solve_cmd->add_option("--p", p_str, "Perturbation for --plot (default: the p -> 0 limit)");

    auto* eval_cmd = app.add_subcommand("eval", "Value at a configuration for a fixed perturbation");
    eval_cmd->add_option("file", file)->required();
    eval_cmd->add_option("--p", p_str)->required();
    eval_cmd->add_option("--loc", loc)->required();
    eval_cmd->add_option("--val", val)->required();

    auto* limit_cmd = app.add_subcommand("limit", "Limit value as the perturbation vanishes");
    limit_cmd->add_option("file", file)->required();
    limit_cmd->add_option("--loc", loc)->required();
    limit_cmd->add_option("--val", val)->required();

    auto* check_cmd = app.add_subcommand("check", "Divergence check with SCC signs");
    check_cmd->add_option("file", file)->required();

    auto* gadget_cmd = app.add_subcommand("gadget", "Reduction to the excessive semantics");
    gadget_cmd->add_option("file", file)->required();
    gadget_cmd->add_option("--out", out);

    auto* oracle_cmd = app.add_subcommand("oracle", "Discretized value iteration on a grid");
    oracle_cmd->add_option("file", file)->required();
    oracle_cmd->add_option("--p", p_str)->required();
    oracle_cmd->add_option("--grid", grid_str)->required();
    oracle_cmd->add_option("--convention", conv)->check(CLI::IsMember({"shifted", "centered", "excessive"}));
    oracle_cmd->add_option("--horizon", horizon)->check(CLI::NonNegativeNumber);
    oracle_cmd->add_flag("--qualitative", qualitative);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Game g = load_game_file(file);
        if (*solve_cmd) {
            std::optional<int> cap;
            if (max_iters > 0) cap = max_iters;
            SolveReport r = solve(g, mode, cap);
            std::string json = report_json(g, r) + "\n";
            if (!out.empty()) write_file(out, json);
            if (!plot_str.empty()) {
                std::optional<Rational> p;
                if (!p_str.empty()) {
                    p = positive(p_str, "--p");
                    if (!r.eta.admits(*p)) throw PerturbationTooLarge(to_string(*p), r.eta.str());
                }
                std::cout << plot(g, r, positive(plot_str, "--plot"), p);
            } else if (out.empty()) {
                std::cout << json;
            }
        } else if (*eval_cmd) {
            Rational p = positive(p_str, "--p");
            int l = location(g, loc);
            Valuation v = parse_valuation(g, val);
            SolveReport r = solve(g);
            if (!r.eta.admits(p)) throw PerturbationTooLarge(to_string(p), r.eta.str());
            std::cout << eval_pvf(r.values.values[l], v, p).str() << "\n";
        } else if (*limit_cmd) {
            int l = location(g, loc);
            Valuation v = parse_valuation(g, val);
            SolveReport r = solve(g);
            std::cout << limit_value(r.values.values[l], v).str() << "\n";
        } else if (*check_cmd) {
            validate(g);
            RegionGame rg = build_region_game(g);
            DivergenceReport d = check_divergent(g);
            std::cout << d.summary(g, rg);
        } else if (*gadget_cmd) {
            validate(g);
            GadgetMap m = to_excessive(g);
            std::string text = print_game(m.game);
            if (out.empty()) {
                std::cout << text;
            } else {
                write_file(out, text);
                write_file(out + ".map.json", gadget_map_json(m) + "\n");
            }
        } else if (*oracle_cmd) {
            OracleConfig cfg;
            cfg.p = positive(p_str, "--p");
            cfg.grid = positive(grid_str, "--grid");
            cfg.convention = parse_convention(conv);
            if (horizon >= 0) cfg.horizon = horizon;
            cfg.mode = qualitative ? OracleMode::Qualitative : OracleMode::Quantitative;
            std::cout << oracle_value(g, cfg).csv(g.clocks);
        }
        return 0;
    } catch (const NonConvergent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotAcyclic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PerturbationTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DiagonalInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
