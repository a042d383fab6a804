#include "varrob/regret.hpp"

#include <algorithm>
#include <cstdio>

namespace varrob {

PwlFunction PwlFunction::upper_envelope(std::vector<std::pair<double, double>> lines) {
    if (lines.empty()) throw Error("upper_envelope: no lines");
    // Merge coincident slopes, keeping the highest intercept.
    std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    std::vector<std::pair<double, double>> merged; // (intercept, slope), slope asc
    for (const auto& [a, b] : lines) {
        if (!merged.empty() && std::fabs(merged.back().second - b) <= 1e-12) {
            merged.back().first = std::max(merged.back().first, a);
        } else {
            merged.push_back({a, b});
        }
    }
    // Upper envelope over the whole axis: lines enter in slope order; a
    // stacked line is popped when the newcomer overtakes it before the
    // point where that line itself took over.
    struct Seg {
        double a, b;     // line
        double start;    // x where this line becomes the envelope
    };
    std::vector<Seg> stack;
    for (const auto& [a, b] : merged) {
        double start = -kInf;
        while (!stack.empty()) {
            const Seg& top = stack.back();
            // Overtake point of (a, b) versus top: equal slopes cannot
            // occur after merging.
            double x = (top.a - a) / (b - top.b);
            if (x <= top.start + 1e-15) {
                stack.pop_back();
                continue;
            }
            start = x;
            break;
        }
        stack.push_back({a, b, start});
    }
    // Clip to [0,1]; zero-width overlaps are covered by their neighbours.
    PwlFunction f;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        double lo = std::max(0.0, stack[i].start);
        double hi = i + 1 < stack.size() ? std::min(1.0, stack[i + 1].start) : 1.0;
        if (hi <= lo) continue;
        Piece p;
        p.lo = lo;
        p.hi = hi;
        p.intercept = stack[i].a;
        p.slope = stack[i].b;
        f.pieces_.push_back(p);
    }
    if (f.pieces_.empty()) {
        // Every overtake point sits outside [0,1]; the envelope on [0,1]
        // is the single line active at 0.
        std::size_t active = 0;
        for (std::size_t i = 0; i < stack.size(); ++i)
            if (stack[i].start <= 0.0) active = i;
        f.pieces_.push_back({0.0, 1.0, stack[active].a, stack[active].b});
    }
    f.pieces_.front().lo = 0.0;
    f.pieces_.back().hi = 1.0;
    return f;
}

double PwlFunction::value(double lambda) const {
    if (lambda < -kTol || lambda > 1.0 + kTol)
        throw Error("PwlFunction::value: lambda outside [0,1]");
    lambda = std::clamp(lambda, 0.0, 1.0);
    for (const auto& p : pieces_)
        if (lambda <= p.hi + kTol) return p.intercept + p.slope * lambda;
    const auto& p = pieces_.back();
    return p.intercept + p.slope * lambda;
}

std::vector<double> PwlFunction::breakpoints() const {
    std::vector<double> bp;
    bp.push_back(0.0);
    for (const auto& p : pieces_)
        if (p.hi < 1.0 - 1e-15) bp.push_back(p.hi);
    bp.push_back(1.0);
    return bp;
}

Vec scenario_regular(const Instance& inst, const BinVec& x, double lambda) {
    Vec c(inst.n());
    for (int i = 0; i < inst.n(); ++i)
        c[i] = inst.c_hat()[i] * (1.0 - lambda + 2.0 * lambda * (x[i] ? 1.0 : 0.0));
    return c;
}

Vec scenario_general(const Instance& inst, const BinVec& x, const Vec& d_plus,
                     const Vec& d_minus) {
    Vec c(inst.n());
    for (int i = 0; i < inst.n(); ++i)
        c[i] = inst.c_hat()[i] + (x[i] ? d_plus[i] : -d_minus[i]);
    return c;
}

namespace {

void check_regular_inputs(const Instance& inst, const Solution& x, double lambda) {
    if (!inst.nonnegative_costs())
        throw Error("regret_regular: proportional intervals need c_hat >= 0");
    if (lambda < -kTol || lambda > 1.0 + kTol)
        throw Error("regret_regular: lambda must lie in [0,1]");
    if (!inst.is_feasible(x.x)) throw Error("regret: infeasible solution");
}

double clamp_regret(double v) {
    if (v < -1e-6) throw Error("regret: negative value indicates an internal error");
    return std::max(0.0, v);
}

} // namespace

double regret_regular(const Instance& inst, const Solution& x, double lambda) {
    check_regular_inputs(inst, x, lambda);
    Vec scenario = scenario_regular(inst, x.x, std::clamp(lambda, 0.0, 1.0));
    Solution opt = solve_scenario_min(inst, scenario);
    double own = (1.0 + lambda) * dot(inst.c_hat(), x.x);
    return clamp_regret(own - dot(scenario, opt.x));
}

double regret_general(const Instance& inst, const Solution& x, const GeneralInterval& gi) {
    gi.validate();
    if (static_cast<int>(gi.d_plus.size()) != inst.n())
        throw Error("regret_general: interval dimension mismatch");
    if (!inst.is_feasible(x.x)) throw Error("regret: infeasible solution");
    Vec scenario = scenario_general(inst, x.x, gi.d_plus, gi.d_minus);
    Solution opt = solve_scenario_min(inst, scenario);
    return clamp_regret(dot(scenario, x.x) - dot(scenario, opt.x));
}

namespace {

// Line of reg(x, .) contributed by competitor y:
//   intercept = c_hat^t x - c_hat^t y
//   slope     = c_hat^t x + c_hat^t y - 2 c_hat^t (x and y)
std::pair<double, double> regret_line(const Instance& inst, const BinVec& x,
                                      const BinVec& y) {
    double cx = dot(inst.c_hat(), x);
    double cy = dot(inst.c_hat(), y);
    double cboth = 0.0;
    for (int i = 0; i < inst.n(); ++i)
        if (x[i] && y[i]) cboth += inst.c_hat()[i];
    return {cx - cy, cx + cy - 2.0 * cboth};
}

std::vector<PwlFunction> all_regret_pwls(const Instance& inst,
                                         const std::vector<Solution>& feasible) {
    std::vector<PwlFunction> out;
    out.reserve(feasible.size());
    for (const auto& x : feasible) {
        std::vector<std::pair<double, double>> lines;
        lines.reserve(feasible.size());
        for (const auto& y : feasible) lines.push_back(regret_line(inst, x.x, y.x));
        out.push_back(PwlFunction::upper_envelope(std::move(lines)));
    }
    return out;
}

// Crossing candidates between two piecewise-linear curves (g shifted by
// `shift`), restricted to the overlap of each piece pair.
void add_crossings(const PwlFunction& f, const PwlFunction& g, double shift,
                   std::vector<double>* grid) {
    for (const auto& pf : f.pieces())
        for (const auto& pg : g.pieces()) {
            double lo = std::max(pf.lo, pg.lo), hi = std::min(pf.hi, pg.hi);
            if (lo > hi + 1e-12) continue;
            double db = pf.slope - pg.slope;
            double da = (pg.intercept + shift) - pf.intercept;
            if (std::fabs(db) < 1e-12) continue;
            double x = da / db;
            if (x >= lo - 1e-9 && x <= hi + 1e-9)
                grid->push_back(std::clamp(x, 0.0, 1.0));
        }
}

} // namespace

PwlFunction regret_pwl(const Instance& inst, const Solution& x, std::size_t enum_limit) {
    if (!inst.nonnegative_costs())
        throw Error("regret_pwl: proportional intervals need c_hat >= 0");
    if (!inst.is_feasible(x.x)) throw Error("regret: infeasible solution");
    auto feasible = enumerate_feasible(inst, enum_limit);
    std::vector<std::pair<double, double>> lines;
    lines.reserve(feasible.size());
    for (const auto& y : feasible) lines.push_back(regret_line(inst, x.x, y.x));
    return PwlFunction::upper_envelope(std::move(lines));
}

BestCaseResult best_case_lambda(const Instance& inst, const Solution& x_hat,
                                std::size_t enum_limit) {
    if (!inst.nonnegative_costs())
        throw Error("best_case_lambda: proportional intervals need c_hat >= 0");
    if (!inst.is_feasible(x_hat.x)) throw Error("best_case_lambda: infeasible solution");
    auto feasible = enumerate_feasible(inst, enum_limit);
    auto pwls = all_regret_pwls(inst, feasible);
    PwlFunction own = regret_pwl(inst, x_hat, enum_limit);

    std::vector<double> grid = {0.0, 1.0};
    for (const auto& f : pwls) {
        for (double b : f.breakpoints()) grid.push_back(b);
        add_crossings(own, f, 0.0, &grid);
    }
    for (double b : own.breakpoints()) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::fabs(a - b) <= 1e-12; }),
               grid.end());

    auto feasible_at = [&](double lambda) {
        double mn = kInf;
        for (const auto& f : pwls) mn = std::min(mn, f.value(lambda));
        return own.value(lambda) <= mn + 1e-9;
    };

    std::vector<char> point_ok(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) point_ok[i] = feasible_at(grid[i]);
    std::vector<char> seg_ok(grid.size() ? grid.size() - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        seg_ok[i] = feasible_at(0.5 * (grid[i] + grid[i + 1]));

    BestCaseResult res;
    std::size_t i = 0;
    while (i < grid.size()) {
        if (!point_ok[i]) {
            ++i;
            continue;
        }
        double lo = grid[i];
        std::size_t j = i;
        while (j + 1 < grid.size() && seg_ok[j] && point_ok[j + 1]) ++j;
        res.intervals.push_back({lo, grid[j]});
        i = j + 1;
    }
    if (!res.intervals.empty()) res.lambda_star = res.intervals.back().second;
    return res;
}

std::optional<double> worst_case_lambda(const Instance& inst, const Solution& x_hat,
                                        double eps, std::size_t enum_limit) {
    if (eps <= 0.0) throw Error("worst_case_lambda: eps must be > 0");
    if (!inst.nonnegative_costs())
        throw Error("worst_case_lambda: proportional intervals need c_hat >= 0");
    if (!inst.is_feasible(x_hat.x)) throw Error("worst_case_lambda: infeasible solution");
    auto feasible = enumerate_feasible(inst, enum_limit);
    auto pwls = all_regret_pwls(inst, feasible);
    PwlFunction own = regret_pwl(inst, x_hat, enum_limit);

    std::vector<double> grid = {0.0, 1.0};
    for (const auto& f : pwls) {
        for (double b : f.breakpoints()) grid.push_back(b);
        add_crossings(own, f, eps, &grid);
        add_crossings(own, f, 0.0, &grid);
    }
    for (double b : own.breakpoints()) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::fabs(a - b) <= 1e-12; }),
               grid.end());

    // Some alternative beats x_hat by eps exactly when
    // min_y reg(y, lambda) + eps <= reg(x_hat, lambda); x_hat's own curve
    // can never satisfy it, so the minimum may range over everything.
    for (double g : grid) {
        double mn = kInf;
        for (const auto& f : pwls) mn = std::min(mn, f.value(g));
        if (mn + eps <= own.value(g) + 1e-9) return g;
    }
    return std::nullopt;
}

std::string regret_curve_csv(const PwlFunction& curve, const std::string& solution_id) {
    std::string out = "lambda,regret,solution_id\n";
    for (double b : curve.breakpoints()) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%s\n", b, curve.value(b),
                      solution_id.c_str());
        out += buf;
    }
    return out;
}

} // namespace varrob
