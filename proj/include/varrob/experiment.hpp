#ifndef VARROB_EXPERIMENT_HPP
#define VARROB_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "varrob/instance.hpp"

namespace varrob {

struct ExperimentConfig {
    int p = 5;
    int instances = 200;
    int samples = 100; // regret problems per instance
    int c_max = 20;
    double cap = 20.0; // symmetric deviation cap
    double eps = 1.0;
    std::uint64_t seed = 1;
    int workers = 1;
    bool emit_timing = true; // false pins the timing columns to 0 for
                             // byte-identical reruns
};

struct InstanceRecord {
    int instance_id = 0;
    double wc = 0.0;      // worst-case inverse objective
    double bc = 0.0;      // best-case inverse objective
    double reg_mean = 0.0;
    double nomreg_mean = 0.0;
    double wc_time = 0.0;
    double bc_time = 0.0;
    double reg_time = 0.0;
};

struct StatsRow {
    double wc_class = 0.0;
    int freq = 0;
    double reg = 0.0;     // mean optimal regret
    double nomreg = 0.0;  // mean nominal-solution regret
    double ratio = 0.0;   // nomreg / reg
    double bc = 0.0;      // mean (bc - max), a nonpositive gap
    double wct = 0.0, bct = 0.0, regt = 0.0;
};

struct ExperimentResult {
    std::vector<InstanceRecord> records; // sorted by instance_id
    std::vector<StatsRow> stats;         // keyed by observed WC value
    double bc_max = 0.0;                 // 2 * n * cap
};

/// Per instance: worst-case and best-case general inverse (symmetric
/// deviations), then `samples` random symmetric-interval regret problems
/// solved by enumeration. Instances run on a worker pool; aggregation is
/// ordered by instance id, so results are deterministic for a fixed seed.
ExperimentResult run_wc_experiment(const ExperimentConfig& config);

std::string experiment_raw_csv(const ExperimentResult& result);
std::string experiment_stats_csv(const ExperimentResult& result);

/// Spearman rank correlation with tie-averaged ranks.
double spearman(const Vec& a, const Vec& b);

} // namespace varrob

#endif // VARROB_EXPERIMENT_HPP
