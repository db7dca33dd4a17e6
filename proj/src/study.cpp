#include "ife/study.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ife/assembly.hpp"

namespace ife {

void validate(const StudyConfig& cfg) {
    if (cfg.levels.empty()) throw std::invalid_argument("config: levels must not be empty");
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        if (cfg.levels[i] < 2) throw std::invalid_argument("config: every level N must be >= 2");
        if (i > 0 && cfg.levels[i] != 2 * cfg.levels[i - 1])
            throw std::invalid_argument("config: levels must double at each step");
    }
    if (!(cfg.beta_minus > 0.0) || !(cfg.beta_plus > 0.0))
        throw std::invalid_argument("config: coefficients must be positive");
    if (!(cfg.r0 > 0.0) || !(cfg.r0 < 1.0))
        throw std::invalid_argument("config: circle radius must lie in (0,1)");
    if (!(cfg.a > 2.0)) throw std::invalid_argument("config: exponent a must exceed 2");
    if (!(cfg.solver_tol > 0.0)) throw std::invalid_argument("config: solver tolerance must be positive");
}

StudyResult run_study(const StudyConfig& cfg) {
    validate(cfg);
    StudyResult res;
    res.config = cfg;

    const Coefficient beta{cfg.beta_minus, cfg.beta_plus};
    const CircleLevelSet ls(cfg.r0);
    const ExactSolution es{cfg.r0, cfg.a, beta};

    std::vector<ErrorRow> rows;
    for (int N : cfg.levels) {
        const auto t0 = std::chrono::steady_clock::now();
        const CartesianMesh mesh = build_mesh({-1.0, -1.0, 1.0, 1.0}, N);

        InterfaceTags tags;
        try {
            tags = tag_interface(mesh, ls);
        } catch (const HypothesisViolation& e) {
            throw HypothesisViolation("level N=" + std::to_string(N) + ": " + e.what());
        }

        DofVector dofs;
        LevelStats stats;
        if (cfg.mode == StudyMode::Interp) {
            dofs = interpolate(mesh, tags, cfg.kind,
                               [&](int, Point p) { return es.u(p); });
        } else {
            ProblemSpec spec;
            spec.beta = beta;
            spec.f = [&](Point p) { return es.f(p); };
            spec.g = [&](Point p) { return es.g(p); };
            spec.ls = &ls;
            spec.kind = cfg.kind;
            SparseSystem sys = assemble(mesh, tags, spec);
            apply_dirichlet(sys, mesh, spec.g, cfg.kind);
            SolveInfo info;
            dofs.kind = cfg.kind;
            dofs.values = solve(sys, cfg.solver_tol, &info);
            stats.solve_iters = info.iterations;
        }

        const IfeField field(mesh, tags, beta, std::move(dofs));
        ErrorRow row;
        row.N = N;
        row.linf = linf_error(field, es);
        const L2H1 eh = l2_h1_error(field, es);
        row.l2 = eh.l2;
        row.h1 = eh.h1;
        rows.push_back(row);

        stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.stats.push_back(stats);
    }
    res.report = make_error_report(rows);
    return res;
}

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

std::string rate_cell(const std::vector<std::optional<double>>& r, std::size_t row) {
    if (row == 0) return "";
    const auto& v = r[row - 1];
    return v ? sci(*v) : "";
}

}  // namespace

std::string csv_string(const StudyResult& res) {
    const StudyConfig& cfg = res.config;
    std::ostringstream os;
    os << "# mode=" << (cfg.mode == StudyMode::Interp ? "interp" : "galerkin") << "\n";
    os << "# kind=" << (cfg.kind == DofKind::Midpoint ? "midpoint" : "integral") << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.beta_minus);
    os << "# beta_minus=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.beta_plus);
    os << "# beta_plus=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.r0);
    os << "# r0=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.a);
    os << "# a=" << buf << "\n";
    os << "# levels=";
    for (std::size_t i = 0; i < cfg.levels.size(); ++i)
        os << (i ? "," : "") << cfg.levels[i];
    os << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.solver_tol);
    os << "# solver_tol=" << buf << "\n";
    os << "# seed=" << cfg.seed << "\n";

    os << "N,linf,linf_rate,l2,l2_rate,h1,h1_rate,solve_iters,seconds\n";
    const ErrorReport& rep = res.report;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ErrorRow& r = rep.rows[i];
        os << r.N << "," << sci(r.linf) << "," << rate_cell(rep.linf_rates, i) << ","
           << sci(r.l2) << "," << rate_cell(rep.l2_rates, i) << "," << sci(r.h1) << ","
           << rate_cell(rep.h1_rates, i) << "," << res.stats[i].solve_iters << ","
           << sci(res.stats[i].seconds) << "\n";
    }
    return os.str();
}

void emit_csv(const StudyResult& res, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    out << csv_string(res);
    out.close();
    if (!out) throw std::runtime_error("emit_csv: error writing '" + path + "'");
}

}  // namespace ife
