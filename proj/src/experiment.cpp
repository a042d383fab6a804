#include "varrob/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include "varrob/generators.hpp"
#include "varrob/inverse.hpp"

namespace varrob {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

InstanceRecord run_instance(const ExperimentConfig& cfg, int id) {
    InstanceRecord rec;
    rec.instance_id = id;
    // Decorrelate instance streams deterministically.
    std::uint64_t inst_seed = cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(id);
    Instance inst = gen_assignment(cfg.p, cfg.c_max, inst_seed);
    Solution x_hat = solve_nominal(inst, inst.c_hat());

    Vec cap_plus(inst.n(), cfg.cap), cap_minus(inst.n(), cfg.cap);

    auto t0 = std::chrono::steady_clock::now();
    GeneralInverseResult wc = solve_worstcase_general(inst, x_hat, cap_plus, cap_minus,
                                                      cfg.eps, /*symmetric=*/true);
    rec.wc_time = seconds_since(t0);
    if (!wc.feasible)
        throw Error("experiment: worst-case inverse infeasible on instance " +
                    std::to_string(id));
    rec.wc = wc.objective;

    t0 = std::chrono::steady_clock::now();
    GeneralInverseResult bc = solve_bestcase_general(inst, x_hat, cap_plus, cap_minus,
                                                     /*symmetric=*/true);
    rec.bc_time = seconds_since(t0);
    rec.bc = bc.objective;

    // Random symmetric-interval regret problems, solved exactly by
    // enumeration over the matchings.
    auto feasible = enumerate_feasible(inst, 1000000);
    Rng rng(inst_seed ^ 0xabcdef1234567890ULL);
    t0 = std::chrono::steady_clock::now();
    double reg_sum = 0.0, nomreg_sum = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
        Vec d(inst.n());
        for (auto& v : d) v = rng.uniform_int(0, static_cast<int>(cfg.cap));
        double best = kInf, nom = 0.0;
        for (const auto& sol : feasible) {
            Vec scen = scenario_general(inst, sol.x, d, d);
            Solution opt = solve_scenario_min(inst, scen);
            double reg = dot(scen, sol.x) - dot(scen, opt.x);
            best = std::min(best, reg);
            if (sol.x == x_hat.x) nom = reg;
        }
        reg_sum += best;
        nomreg_sum += nom;
    }
    rec.reg_time = seconds_since(t0);
    rec.reg_mean = reg_sum / cfg.samples;
    rec.nomreg_mean = nomreg_sum / cfg.samples;
    if (rec.nomreg_mean < rec.reg_mean - 1e-9)
        throw Error("experiment: nominal regret below optimal regret");
    return rec;
}

} // namespace

ExperimentResult run_wc_experiment(const ExperimentConfig& cfg) {
    if (cfg.p < 2 || cfg.instances < 1 || cfg.samples < 1)
        throw Error("experiment: counts must be >= 1 and p >= 2");
    ExperimentResult result;
    result.records.assign(cfg.instances, {});
    result.bc_max = 2.0 * cfg.p * cfg.p * cfg.cap;

    int workers = std::max(1, cfg.workers);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            int id = next.fetch_add(1);
            if (id >= cfg.instances || failed.load()) return;
            try {
                result.records[id] = run_instance(cfg, id);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                error_message = e.what();
                return;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw Error("experiment aborted: " + error_message);

    if (!cfg.emit_timing)
        for (auto& rec : result.records) rec.wc_time = rec.bc_time = rec.reg_time = 0.0;

    // Aggregate by observed WC value (rounded to the 1e-6 grid to absorb
    // solver noise on integral optima).
    std::map<long long, std::vector<const InstanceRecord*>> classes;
    for (const auto& rec : result.records)
        classes[llround(rec.wc * 1e6)].push_back(&rec);
    for (const auto& [key, members] : classes) {
        StatsRow row;
        row.wc_class = static_cast<double>(key) / 1e6;
        row.freq = static_cast<int>(members.size());
        for (const auto* rec : members) {
            row.reg += rec->reg_mean;
            row.nomreg += rec->nomreg_mean;
            row.bc += rec->bc - result.bc_max;
            row.wct += rec->wc_time;
            row.bct += rec->bc_time;
            row.regt += rec->reg_time;
        }
        row.reg /= row.freq;
        row.nomreg /= row.freq;
        row.bc /= row.freq;
        row.wct /= row.freq;
        row.bct /= row.freq;
        row.regt /= row.freq;
        row.ratio = row.reg > kTol ? row.nomreg / row.reg : 1.0;
        result.stats.push_back(row);
    }
    return result;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string experiment_raw_csv(const ExperimentResult& result) {
    std::string out =
        "instance_id,wc,bc,reg_mean,nomreg_mean,wc_time,bc_time,reg_time\n";
    for (const auto& r : result.records) {
        out += std::to_string(r.instance_id);
        out += ',';
        out += fmt(r.wc);
        out += ',';
        out += fmt(r.bc);
        out += ',';
        out += fmt(r.reg_mean);
        out += ',';
        out += fmt(r.nomreg_mean);
        out += ',';
        out += fmt(r.wc_time);
        out += ',';
        out += fmt(r.bc_time);
        out += ',';
        out += fmt(r.reg_time);
        out += '\n';
    }
    return out;
}

std::string experiment_stats_csv(const ExperimentResult& result) {
    std::string out = "WC,Freq,Reg,NomReg,Ratio,BC,WCT,BCT,RegT\n";
    for (const auto& s : result.stats) {
        out += fmt(s.wc_class);
        out += ',';
        out += std::to_string(s.freq);
        out += ',';
        out += fmt(s.reg);
        out += ',';
        out += fmt(s.nomreg);
        out += ',';
        out += fmt(s.ratio);
        out += ',';
        out += fmt(s.bc);
        out += ',';
        out += fmt(s.wct);
        out += ',';
        out += fmt(s.bct);
        out += ',';
        out += fmt(s.regt);
        out += '\n';
    }
    return out;
}

double spearman(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw Error("spearman: need two equal-length series");
    auto ranks = [](const Vec& v) {
        std::vector<std::size_t> order(v.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
        Vec r(v.size(), 0.0);
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
            double avg = 0.5 * (i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    Vec ra = ranks(a), rb = ranks(b);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= ra.size();
    mb /= rb.size();
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    if (da <= 0.0 || db <= 0.0) return 0.0;
    return num / std::sqrt(da * db);
}

} // namespace varrob
