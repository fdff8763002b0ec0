#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "qrobust/qstate.h"

namespace qrobust {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char *kToolVersion = "0.1.0";

/// Runs body(i) for i in [0, count) on a bounded pool of worker threads (0 means hardware concurrency).
/// The first exception thrown by any call is rethrown after all workers stop.
template <typename F>
void parallel_for(size_t count, F &&body, size_t workers = 0) {
    if (workers == 0) {
        workers = std::max<size_t>(1, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) {
                        err = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

/// start, start + step, ... up to stop (inclusive, with 1e-9 step slack).
std::vector<double> linear_grid(double start, double stop, double step);

struct DickeRow {
    size_t n = 0;
    size_t k = 0;
    double u = 0;
    double a = 0;
    double det_pt = 0;
    double negativity = 0;
    std::optional<double> oracle_max_diff;  // closed form vs placement-sum partial trace
};

/// Rows nested N, then k, then u, each in the order given. Pairs with k >= N are skipped. `verify` needs N <= 10.
std::vector<DickeRow> dicke_sweep(
    const std::vector<size_t> &ns, const std::vector<size_t> &ks, const std::vector<double> &us, bool verify);

struct MuRow {
    double re = 0;
    double im = 0;
    bool in_s = false;
    double negativity = 0;
    bool fragile_predicted = false;
    bool fragile_observed = false;
    double boundary_distance = 0;
};

struct MuScan {
    size_t t = 0;
    double threshold = 0;
    double step = 0;  // larger of the two grid steps
    std::vector<MuRow> rows;
    size_t in_s_points = 0;
    size_t compared = 0;  // in S and farther than one step from the boundary curve (t = 2)
    size_t agreeing = 0;
    double agreement() const { return compared ? static_cast<double>(agreeing) / compared : 1.0; }
};

/// Grid over Re in [0, sqrt 6] x Im in [0, 2.5], rows ordered by Re then Im. For t = 2 the prediction is
/// mu_fragility_region; for t = 1 it is mu == 0.
MuScan mu_scan(size_t t, size_t re_points = 201, size_t im_points = 201, double threshold = 1e-9);

struct RandomSample {
    size_t index = 0;
    size_t t = 0;
    double max_negativity = 0;
    bool certified_robust = false;
};

struct RandomSweep {
    size_t n = 0;
    uint64_t seed = 0;
    double threshold = 0;
    std::vector<size_t> ts;
    std::vector<RandomSample> samples;  // ordered by t, then sample index
    std::vector<double> certified_fraction;  // one per entry of ts
};

/// Haar-random N-qubit states; sample i draws from mt19937_64 seeded with seed_seq{seed, i}. The same state
/// is used for every t; the last t qubits are lost.
RandomSweep random_sweep(size_t n, const std::vector<size_t> &ts, size_t samples, uint64_t seed, double threshold = 1e-9);

std::string format_double(double x);

void write_dicke_csv(std::ostream &out, const std::vector<DickeRow> &rows, bool verify);
void write_mu_csv(std::ostream &out, const MuScan &scan);
void write_random_csv(std::ostream &out, const RandomSweep &sweep);

}  // namespace qrobust
