#include "sshc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <fstream>
#include <limits>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sshc/dynamics.hpp"
#include "sshc/edge.hpp"
#include "sshc/errors.hpp"
#include "sshc/linalg.hpp"
#include "sshc/model.hpp"
#include "sshc/topology.hpp"

namespace sshc::cli {

namespace {

// ---------------------------------------------------------------------------
// Small parsing/formatting utilities

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> linspace(double a, double b, std::size_t count) {
    if (count < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Output table: resolved-config preamble, column names, typed cells.

using Cell = std::variant<double, long long, std::string>;

Cell num(double v) { return Cell(v); }
Cell integer(long long v) { return Cell(v); }
Cell text(std::string v) { return Cell(std::move(v)); }

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(const std::string& key, const std::string& value) {
        meta.emplace_back(key, value);
    }
    void add_meta(const std::string& key, double value) {
        meta.emplace_back(key, format_double(value));
    }
    void add_meta(const std::string& key, std::size_t value) {
        meta.emplace_back(key, std::to_string(value));
    }
};

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.meta) os << "# " << k << " = " << v << "\n";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        os << t.columns[j] << (j + 1 < t.columns.size() ? "," : "");
    }
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << cell_to_string(row[j]) << (j + 1 < row.size() ? "," : "");
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json j;
    auto& cfg = j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) cfg[k] = v;
    j["columns"] = t.columns;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const Cell& c : row) {
            if (std::holds_alternative<double>(c)) {
                jr.push_back(std::get<double>(c));  // non-finite serialize as null
            } else if (std::holds_alternative<long long>(c)) {
                jr.push_back(std::get<long long>(c));
            } else {
                jr.push_back(std::get<std::string>(c));
            }
        }
        rows.push_back(std::move(jr));
    }
    os << j.dump(2) << "\n";
}

void emit(const Table& t, const std::string& out_path, const std::string& format) {
    std::ostringstream body;
    if (format == "json") {
        write_json(body, t);
    } else {
        write_csv(body, t);
    }
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
        f << body.str();
    }
}

// ---------------------------------------------------------------------------
// Worker pool: rows are computed index-addressed (any completion order, same
// result) and emitted in grid order by the caller.

template <typename Fn>
void for_each_index(std::size_t count, Fn fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Shared options

struct SharedOpts {
    std::size_t n = 20;
    double t0 = 1.0;
    std::string phi = "0.4pi";
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double tau = 2.0;
    std::string onsite = "none";
    std::size_t kpoints = 401;
    std::string out;
    std::string format = "csv";
};

ChainParams resolve_params(const SharedOpts& o) {
    ChainParams p;
    p.n_cells = o.n;
    p.t0 = o.t0;
    p.phi = parse_angle(o.phi);
    p.gamma1 = o.gamma1;
    p.gamma2 = o.gamma2;
    p.tau = o.tau;
    p.onsite = parse_onsite(o.onsite);
    p.validate();
    return p;
}

std::string onsite_to_string(const OnSitePotential& o) {
    switch (o.kind) {
        case OnSiteKind::none: return "none";
        case OnSiteKind::uniform_loss: return "uniform:" + format_double(o.strength);
        case OnSiteKind::staggered_gain_loss: return "staggered:" + format_double(o.strength);
        case OnSiteKind::endpoints_only: return "endpoints:" + format_double(o.strength);
    }
    return "none";
}

Table make_table(const std::string& command, const SharedOpts& o, const ChainParams& p) {
    Table t;
    t.add_meta("command", command);
    t.add_meta("version", kVersion);
    t.add_meta("n", p.n_cells);
    t.add_meta("t0", p.t0);
    t.add_meta("phi", p.phi);
    t.add_meta("gamma1", p.gamma1);
    t.add_meta("gamma2", p.gamma2);
    t.add_meta("tau", p.tau);
    t.add_meta("onsite", onsite_to_string(p.onsite));
    t.add_meta("format", o.format);
    return t;
}

const char* flag_name(RowFlag f) {
    switch (f) {
        case RowFlag::ok: return "ok";
        case RowFlag::no_edge_pair: return "no-edge-pair";
        case RowFlag::degenerate: return "degenerate";
    }
    return "ok";
}

// ---------------------------------------------------------------------------
// Subcommand option blocks

struct PhaseDiagramOpts {
    std::string axes = "phi-gamma2";
    std::string phi_start = "0";
    std::string phi_stop = "pi";
    std::size_t phi_points = 101;
    double gamma1_start = 0.0, gamma1_stop = 2.0;
    std::size_t gamma1_points = 101;
    double gamma2_start = 0.0, gamma2_stop = 2.0;
    std::size_t gamma2_points = 101;
};

struct PhiGridOpts {
    std::string start;
    std::string stop;
    std::size_t points = 0;
};

struct OscillationOpts {
    std::string sweep = "phi";
    PhiGridOpts grid{"0.02pi", "0.45pi", 100};
    std::string n_list = "10:40";
};

struct DynamicsOpts {
    double tmax = 10.0;
    std::size_t tpoints = 201;
    std::size_t init = 1;
};

// ---------------------------------------------------------------------------
// Commands

void run_phase_diagram(const SharedOpts& shared, const PhaseDiagramOpts& o) {
    const ChainParams base = resolve_params(shared);
    const bool phi_axis = (o.axes == "phi-gamma2");

    std::vector<double> x1 =
        phi_axis ? linspace(parse_angle(o.phi_start), parse_angle(o.phi_stop), o.phi_points)
                 : linspace(o.gamma1_start, o.gamma1_stop, o.gamma1_points);
    std::vector<double> x2 = linspace(o.gamma2_start, o.gamma2_stop, o.gamma2_points);

    Table t = make_table("phase-diagram", shared, base);
    t.add_meta("axes", o.axes);
    if (phi_axis) {
        t.add_meta("phi-start", x1.front());
        t.add_meta("phi-stop", x1.back());
        t.add_meta("phi-points", x1.size());
    } else {
        t.add_meta("gamma1-start", x1.front());
        t.add_meta("gamma1-stop", x1.back());
        t.add_meta("gamma1-points", x1.size());
    }
    t.add_meta("gamma2-start", x2.front());
    t.add_meta("gamma2-stop", x2.back());
    t.add_meta("gamma2-points", x2.size());
    t.columns = {phi_axis ? "phi" : "gamma1", "gamma2", "lhs", "rhs", "phase", "winding"};

    const std::size_t count = x1.size() * x2.size();
    t.rows.resize(count);
    for_each_index(count, [&](std::size_t idx) {
        ChainParams p = base;
        const double a = x1[idx / x2.size()];
        const double b = x2[idx % x2.size()];
        if (phi_axis) {
            p.phi = a;
        } else {
            p.gamma1 = a;
        }
        p.gamma2 = b;

        const PhaseReport rep = topology::classify_phase(p);
        Cell winding = text("boundary");
        if (rep.phase != Phase::boundary) {
            try {
                winding = integer(topology::winding_number(p));
            } catch (const GapClosure&) {
                winding = text("gap-closure");
            }
        }
        const char* phase = rep.phase == Phase::topological ? "topological"
                            : rep.phase == Phase::trivial   ? "trivial"
                                                            : "boundary";
        t.rows[idx] = {num(a), num(b), num(rep.lhs), num(rep.rhs), text(phase), winding};
    });
    emit(t, shared.out, shared.format);
}

void run_dispersion(const SharedOpts& shared) {
    const ChainParams p = resolve_params(shared);
    if (shared.kpoints < 2) throw std::invalid_argument("--kpoints must be at least 2");
    const DispersionCurve disp = topology::dispersion(p, shared.kpoints);

    Table t = make_table("dispersion", shared, p);
    t.add_meta("kpoints", shared.kpoints);
    t.columns = {"k", "re_E_plus", "im_E_plus", "re_E_minus", "im_E_minus"};
    t.rows.reserve(disp.k_grid.size());
    for (std::size_t i = 0; i < disp.k_grid.size(); ++i) {
        t.rows.push_back({num(disp.k_grid[i]), num(disp.E_plus[i].real()),
                          num(disp.E_plus[i].imag()), num(disp.E_minus[i].real()),
                          num(disp.E_minus[i].imag())});
    }
    emit(t, shared.out, shared.format);
}

void run_spectrum(const SharedOpts& shared, const PhiGridOpts& o) {
    const ChainParams base = resolve_params(shared);
    const std::vector<double> grid =
        linspace(parse_angle(o.start), parse_angle(o.stop), o.points);
    const std::size_t dim = 2 * base.n_cells;

    Table t = make_table("spectrum", shared, base);
    t.add_meta("phi-start", grid.front());
    t.add_meta("phi-stop", grid.back());
    t.add_meta("phi-points", grid.size());
    t.columns = {"phi", "index", "re_E", "im_E", "edge_flag"};

    t.rows.resize(grid.size() * dim);
    for_each_index(grid.size(), [&](std::size_t gi) {
        ChainParams p = base;
        p.phi = grid[gi];
        const ComplexMatrix H = model::build_open_chain(p);
        const auto d = linalg::eig(H);
        std::size_t edge_plus = dim, edge_minus = dim;  // sentinel: none
        try {
            const auto pair = edge::find_edge_pair(H, d);
            edge_plus = pair.first;
            edge_minus = pair.second;
        } catch (const NoEdgePair&) {
        }
        for (std::size_t idx = 0; idx < dim; ++idx) {
            const bool flagged = (idx == edge_plus || idx == edge_minus);
            t.rows[gi * dim + idx] = {num(grid[gi]), integer(static_cast<long long>(idx)),
                                      num(d.eigenvalues[idx].real()),
                                      num(d.eigenvalues[idx].imag()),
                                      integer(flagged ? 1 : 0)};
        }
    });
    emit(t, shared.out, shared.format);
}

void run_oscillation(const SharedOpts& shared, const OscillationOpts& o) {
    const ChainParams base = resolve_params(shared);

    std::vector<double> grid;
    SweepVariable var = SweepVariable::phi;
    if (o.sweep == "phi") {
        grid = linspace(parse_angle(o.grid.start), parse_angle(o.grid.stop), o.grid.points);
    } else if (o.sweep == "n") {
        var = SweepVariable::n_cells;
        for (const std::size_t n : parse_int_list(o.n_list)) {
            grid.push_back(static_cast<double>(n));
        }
        if (grid.size() < 2) throw std::invalid_argument("--n-list needs at least 2 entries");
    } else {
        throw std::invalid_argument("--sweep must be phi or n");
    }

    Table t = make_table("oscillation", shared, base);
    t.add_meta("sweep", o.sweep);
    if (var == SweepVariable::phi) {
        t.add_meta("phi-start", grid.front());
        t.add_meta("phi-stop", grid.back());
        t.add_meta("phi-points", grid.size());
    } else {
        std::string joined;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            joined += std::to_string(static_cast<long long>(grid[i]));
            if (i + 1 < grid.size()) joined += ",";
        }
        t.add_meta("n-list", joined);
    }
    t.columns = {"x",
                 "re_E_plus_num", "im_E_plus_num", "re_E_minus_num", "im_E_minus_num",
                 "re_E_plus_ana", "im_E_plus_ana", "re_E_minus_ana", "im_E_minus_ana",
                 "re_delta_E_num", "im_delta_E_num", "re_delta_E_ana", "im_delta_E_ana",
                 "A_T", "theta_T", "re_xi_T", "im_xi_T", "flag"};

    t.rows.resize(grid.size());
    for_each_index(grid.size(), [&](std::size_t i) {
        // Rows are independent, so each worker runs a one-point sweep.
        const auto rows = edge::oscillation_sweep(base, var, {grid[i]});
        const OscillationRow& r = rows.front();
        t.rows[i] = {num(r.x),
                     num(r.E_plus_num.real()), num(r.E_plus_num.imag()),
                     num(r.E_minus_num.real()), num(r.E_minus_num.imag()),
                     num(r.E_plus_ana.real()), num(r.E_plus_ana.imag()),
                     num(r.E_minus_ana.real()), num(r.E_minus_ana.imag()),
                     num(r.delta_E_num.real()), num(r.delta_E_num.imag()),
                     num(r.delta_E_ana.real()), num(r.delta_E_ana.imag()),
                     num(r.A_T), num(r.theta_T),
                     num(r.xi_T.real()), num(r.xi_T.imag()),
                     text(flag_name(r.flag))};
    });
    emit(t, shared.out, shared.format);
}

void run_edge_coupling(const SharedOpts& shared, const PhiGridOpts& o) {
    const ChainParams base = resolve_params(shared);
    const std::vector<double> grid =
        linspace(parse_angle(o.start), parse_angle(o.stop), o.points);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    Table t = make_table("edge-coupling", shared, base);
    t.add_meta("phi-start", grid.front());
    t.add_meta("phi-stop", grid.back());
    t.add_meta("phi-points", grid.size());
    t.columns = {"phi", "delta_g", "delta_gamma", "re_E_prime_plus", "im_E_prime_plus",
                 "re_E_plus", "im_E_plus", "abs_diff", "flag"};

    t.rows.resize(grid.size());
    for_each_index(grid.size(), [&](std::size_t i) {
        ChainParams p = base;
        p.phi = grid[i];
        std::string flag = "ok";

        cdouble eprime(nan, nan);
        double dg = nan, dgam = nan;
        try {
            const auto coupling =
                dynamics::adiabatic_edge_coupling(dynamics::build_liouvillian(p));
            eprime = coupling.E_prime_plus;
            dg = coupling.delta_g;
            dgam = coupling.delta_gamma;
        } catch (const SingularMiddleBlock&) {
            flag = "singular-middle";
        }

        cdouble eplus(nan, nan);
        try {
            eplus = edge::analytic_splitting(p).E_plus;
        } catch (const DegenerateCoupling&) {
            flag = "degenerate";
        }

        const double diff = std::abs(eprime - eplus);
        t.rows[i] = {num(grid[i]), num(dg), num(dgam),
                     num(eprime.real()), num(eprime.imag()),
                     num(eplus.real()), num(eplus.imag()),
                     num(diff), text(flag)};
    });
    emit(t, shared.out, shared.format);
}

void run_dynamics(const SharedOpts& shared, const DynamicsOpts& o) {
    const ChainParams p = resolve_params(shared);
    const std::size_t dim = 2 * p.n_cells;
    if (o.init < 1 || o.init > dim) {
        throw std::invalid_argument("--init must name a site between 1 and 2N");
    }
    if (o.tpoints < 2) throw std::invalid_argument("--tpoints must be at least 2");
    if (!(o.tmax > 0.0)) throw std::invalid_argument("--tmax must be positive");

    const auto open_model = dynamics::build_liouvillian(p);
    cvector psi0(dim, cdouble(0.0, 0.0));
    psi0[o.init - 1] = 1.0;
    const std::vector<double> grid = linspace(0.0, o.tmax, o.tpoints);
    const auto traj = dynamics::evolve_single_excitation(open_model, psi0, grid);

    // Effective edge description for the header: the eliminated coupling and
    // the transfer rate read back from its own two-level dynamics.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double dg = nan, dgam = nan, fitted = nan;
    if (p.n_cells >= 2) {
        try {
            const auto coupling = dynamics::adiabatic_edge_coupling(open_model);
            dg = coupling.delta_g;
            dgam = coupling.delta_gamma;
            const cdouble c = coupling.E_prime_plus;
            if (std::abs(c) > 0.0) {
                ComplexMatrix Hedge{{0.0, c}, {c, 0.0}};
                const double tfit = 0.5 / std::abs(c);
                const auto states = linalg::evolve(Hedge, {1.0, 0.0}, {0.0, tfit});
                const cdouble ratio = states.back()[1] / states.back()[0];
                fitted = std::abs((std::atan(cdouble(0.0, 1.0) * ratio) / tfit).real());
            }
        } catch (const SingularMiddleBlock&) {
        }
    }

    Table t = make_table("dynamics", shared, p);
    t.add_meta("tmax", o.tmax);
    t.add_meta("tpoints", o.tpoints);
    t.add_meta("init", o.init);
    t.add_meta("delta_g", dg);
    t.add_meta("delta_gamma", dgam);
    t.add_meta("fitted_transfer_rate", fitted);
    t.add_meta("beat_period_predicted", std::abs(dg) > 0.0 ? M_PI / std::abs(dg) : nan);

    t.columns = {"t"};
    for (std::size_t s = 1; s <= dim; ++s) t.columns.push_back("pop_" + std::to_string(s));
    t.columns.push_back("excited");
    t.columns.push_back("ground");

    t.rows.reserve(traj.size());
    for (const TrajectoryPoint& pt : traj) {
        std::vector<Cell> row;
        row.reserve(dim + 3);
        row.push_back(num(pt.t));
        for (const double pop : pt.populations) row.push_back(num(pop));
        row.push_back(num(pt.excited));
        row.push_back(num(pt.ground));
        t.rows.push_back(std::move(row));
    }
    emit(t, shared.out, shared.format);
}

int run_selftest(const SharedOpts& shared, unsigned long seed) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::uniform_real_distribution<double> u(0.0, 1.0);

    Table t;
    t.add_meta("command", "selftest");
    t.add_meta("version", kVersion);
    t.add_meta("seed", std::to_string(seed));
    t.add_meta("format", shared.format);
    t.columns = {"check", "status", "measured"};

    bool all_ok = true;
    const auto report = [&](const char* name, bool ok, double measured) {
        all_ok = all_ok && ok;
        t.rows.push_back({text(name), text(ok ? "pass" : "fail"), num(measured)});
    };

    // Residuals and pairing quality of the eigensolver on random chains.
    double worst_resid = 0.0, worst_pairing = 0.0, worst_chiral = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        ChainParams p;
        p.n_cells = 4 + static_cast<std::size_t>(rng() % 7);
        p.phi = (0.05 + 0.9 * u(rng)) * M_PI;
        p.gamma1 = 2.0 * u(rng);
        p.gamma2 = 2.0 * u(rng);
        const ComplexMatrix H = model::build_open_chain(p);
        const auto d = linalg::eig(H);
        worst_resid = std::max(worst_resid, d.residual_max / H.frobenius_norm());

        const std::size_t dim = d.eigenvalues.size();
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                const cdouble overlap = inner(d.left_vectors.column(i), d.right_vectors.column(j));
                const double target = (i == j) ? 1.0 : 0.0;
                worst_pairing = std::max(worst_pairing, std::abs(overlap - target));
            }
        }

        // spectrum symmetric under E -> -E: greedy-match the negated multiset
        std::vector<cdouble> neg(d.eigenvalues);
        for (auto& z : neg) z = -z;
        std::vector<bool> used(dim, false);
        for (const cdouble& z : d.eigenvalues) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t j = 0; j < dim; ++j) {
                if (!used[j] && std::abs(z - neg[j]) < best) {
                    best = std::abs(z - neg[j]);
                    arg = j;
                }
            }
            used[arg] = true;
            worst_chiral = std::max(worst_chiral, best);
        }
    }
    report("eig-relative-residual", worst_resid <= 1e-10, worst_resid);
    report("eig-biorthogonality", worst_pairing <= 1e-8, worst_pairing);
    report("spectral-mirror-symmetry", worst_chiral <= 1e-9, worst_chiral);

    // Linear solve on a well-conditioned shifted random matrix.
    double worst_solve = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 12;
        ComplexMatrix A(n, n);
        cvector x_true(n);
        for (std::size_t j = 0; j < n; ++j) {
            x_true[j] = cdouble(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                A(i, j) = cdouble(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0);
            }
            A(j, j) += 6.0;
        }
        const cvector x = linalg::solve(A, A * x_true);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - x_true[i]));
        worst_solve = std::max(worst_solve, err);
    }
    report("solve-roundtrip", worst_solve <= 1e-9, worst_solve);

    // Norm conservation of Hermitian evolution.
    {
        const std::size_t n = 8;
        ComplexMatrix H(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const cdouble z(2.0 * u(rng) - 1.0, i == j ? 0.0 : 2.0 * u(rng) - 1.0);
                H(i, j) = z;
                H(j, i) = std::conj(z);
            }
        }
        cvector psi(n);
        for (auto& a : psi) a = cdouble(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0);
        const double nrm = norm2(psi);
        for (auto& a : psi) a /= nrm;
        const auto states = linalg::evolve(H, psi, {0.0, 2.5, 5.0});
        const double drift = std::abs(norm2(states.back()) - 1.0);
        report("unitary-norm-drift", drift <= 1e-8, drift);
    }

    emit(t, shared.out, shared.format);
    return all_ok ? 0 : 2;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public parsing helpers

double parse_angle(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty angle");

    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        scale = M_PI;
        s.erase(s.size() - 2);
        if (s.empty()) return M_PI;
        if (s == "-") return -M_PI;
        if (s == "+") return M_PI;
    }
    double value = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw std::invalid_argument("cannot parse angle '" + text +
                                    "' (use radians or a multiple of pi like 0.4pi)");
    }
    return value * scale;
}

OnSitePotential parse_onsite(const std::string& text) {
    if (text == "none") return {};
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        const std::string amount = text.substr(colon + 1);
        double g = 0.0;
        const auto res = std::from_chars(amount.data(), amount.data() + amount.size(), g);
        if (res.ec == std::errc() && res.ptr == amount.data() + amount.size()) {
            if (kind == "uniform") return {OnSiteKind::uniform_loss, g};
            if (kind == "staggered") return {OnSiteKind::staggered_gain_loss, g};
            if (kind == "endpoints") return {OnSiteKind::endpoints_only, g};
        }
    }
    throw std::invalid_argument(
        "cannot parse onsite '" + text +
        "' (use none, uniform:<g>, staggered:<g>, or endpoints:<g>)");
}

std::vector<std::size_t> parse_int_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string piece;
    const auto parse_one = [&](const std::string& part) {
        std::size_t v = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
            throw std::invalid_argument("cannot parse integer '" + part + "' in list");
        }
        return v;
    };
    while (std::getline(ss, piece, ',')) {
        if (piece.empty()) throw std::invalid_argument("empty entry in integer list");
        const auto colon = piece.find(':');
        if (colon == std::string::npos) {
            out.push_back(parse_one(piece));
        } else {
            const std::size_t lo = parse_one(piece.substr(0, colon));
            const std::size_t hi = parse_one(piece.substr(colon + 1));
            if (hi < lo) throw std::invalid_argument("descending range in integer list");
            for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Dissipative two-band chain toolkit: phases, spectra, edge "
                 "oscillations, and open-system dynamics"};
    app.require_subcommand(1);
    app.set_config("--config")->description("flat key=value file mirroring the flag names");

    SharedOpts shared;
    app.add_option("--n", shared.n, "number of unit cells")->capture_default_str();
    app.add_option("--t0", shared.t0, "hopping scale")->capture_default_str();
    app.add_option("--phi", shared.phi, "control angle (radians or e.g. 0.4pi)")
        ->capture_default_str();
    app.add_option("--gamma1", shared.gamma1, "intracell dissipative coupling")
        ->capture_default_str();
    app.add_option("--gamma2", shared.gamma2, "intercell dissipative coupling")
        ->capture_default_str();
    app.add_option("--tau", shared.tau, "collective decay rate")->capture_default_str();
    app.add_option("--onsite", shared.onsite,
                   "on-site variant: none|uniform:<g>|staggered:<g>|endpoints:<g>")
        ->capture_default_str();
    app.add_option("--kpoints", shared.kpoints, "dispersion k-grid size")
        ->capture_default_str();
    app.add_option("--out", shared.out, "output path (default stdout)");
    app.add_option("--format", shared.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    PhaseDiagramOpts pd;
    auto* sub_pd = app.add_subcommand("phase-diagram", "classify a 2-D parameter grid");
    sub_pd->fallthrough();
    sub_pd->add_option("--axes", pd.axes, "grid axes")
        ->check(CLI::IsMember({"phi-gamma2", "gamma1-gamma2"}))
        ->capture_default_str();
    sub_pd->add_option("--phi-start", pd.phi_start)->capture_default_str();
    sub_pd->add_option("--phi-stop", pd.phi_stop)->capture_default_str();
    sub_pd->add_option("--phi-points", pd.phi_points)->capture_default_str();
    sub_pd->add_option("--gamma1-start", pd.gamma1_start)->capture_default_str();
    sub_pd->add_option("--gamma1-stop", pd.gamma1_stop)->capture_default_str();
    sub_pd->add_option("--gamma1-points", pd.gamma1_points)->capture_default_str();
    sub_pd->add_option("--gamma2-start", pd.gamma2_start)->capture_default_str();
    sub_pd->add_option("--gamma2-stop", pd.gamma2_stop)->capture_default_str();
    sub_pd->add_option("--gamma2-points", pd.gamma2_points)->capture_default_str();

    auto* sub_disp = app.add_subcommand("dispersion", "band energies across the zone");
    sub_disp->fallthrough();

    PhiGridOpts spec_grid{"0", "0.49pi", 200};
    auto* sub_spec = app.add_subcommand("spectrum", "all eigenvalues along a phi sweep");
    sub_spec->fallthrough();
    sub_spec->add_option("--phi-start", spec_grid.start)->capture_default_str();
    sub_spec->add_option("--phi-stop", spec_grid.stop)->capture_default_str();
    sub_spec->add_option("--phi-points", spec_grid.points)->capture_default_str();

    OscillationOpts osc;
    auto* sub_osc = app.add_subcommand("oscillation",
                                       "edge-pair splitting: numerics vs closed form");
    sub_osc->fallthrough();
    sub_osc->add_option("--sweep", osc.sweep, "sweep variable")
        ->check(CLI::IsMember({"phi", "n"}))
        ->capture_default_str();
    sub_osc->add_option("--phi-start", osc.grid.start)->capture_default_str();
    sub_osc->add_option("--phi-stop", osc.grid.stop)->capture_default_str();
    sub_osc->add_option("--phi-points", osc.grid.points)->capture_default_str();
    sub_osc->add_option("--n-list", osc.n_list, "cell counts, e.g. 10,12,20:24")
        ->capture_default_str();

    PhiGridOpts ec_grid{"0.05pi", "0.45pi", 100};
    auto* sub_ec = app.add_subcommand("edge-coupling",
                                      "adiabatically eliminated coupling vs edge theory");
    sub_ec->fallthrough();
    sub_ec->add_option("--phi-start", ec_grid.start)->capture_default_str();
    sub_ec->add_option("--phi-stop", ec_grid.stop)->capture_default_str();
    sub_ec->add_option("--phi-points", ec_grid.points)->capture_default_str();

    DynamicsOpts dyn;
    auto* sub_dyn = app.add_subcommand("dynamics", "single-excitation open dynamics");
    sub_dyn->fallthrough();
    sub_dyn->add_option("--tmax", dyn.tmax)->capture_default_str();
    sub_dyn->add_option("--tpoints", dyn.tpoints)->capture_default_str();
    sub_dyn->add_option("--init", dyn.init, "initially excited site (1-based)")
        ->capture_default_str();

    unsigned long seed = 12345;
    auto* sub_self = app.add_subcommand("selftest", "quick numerical property checks");
    sub_self->fallthrough();
    sub_self->add_option("--seed", seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sub_pd->parsed()) {
            run_phase_diagram(shared, pd);
        } else if (sub_disp->parsed()) {
            run_dispersion(shared);
        } else if (sub_spec->parsed()) {
            run_spectrum(shared, spec_grid);
        } else if (sub_osc->parsed()) {
            run_oscillation(shared, osc);
        } else if (sub_ec->parsed()) {
            run_edge_coupling(shared, ec_grid);
        } else if (sub_dyn->parsed()) {
            run_dynamics(shared, dyn);
        } else if (sub_self->parsed()) {
            return run_selftest(shared, seed);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace sshc::cli
