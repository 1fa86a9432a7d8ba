#include "msgvm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "msgvm/vm.hpp"

namespace msgvm {

RunSummary run_msg_vm(const Graph& g, const MsgConfig& cfg, bool refine) {
    RunSummary out;
    const auto start = std::chrono::steady_clock::now();
    MsgEngine engine(g, cfg);
    while (engine.iterate()) {
    }
    out.work = engine.work();
    Partition p = renumber(engine.partition());
    out.q_msg = p.modularity;
    if (refine) {
        VertexMover mover(g, std::move(p));
        p = mover.finish();
        out.work += mover.work();
    }
    out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.q_msg_vm = p.modularity;
    out.communities = p.community_count;
    out.trace = engine.trace();
    out.depth = out.trace.depth();
    out.partition = std::move(p);
    return out;
}

int default_sweep_max(const Graph& g) {
    const auto edges = static_cast<long long>(g.edge_count());
    return static_cast<int>(std::max(1LL, std::min(5000LL, edges - 1)));
}

SweepResult run_sweep(const Graph& g, int l_min, int l_max, unsigned jobs, double level_tolerance) {
    if (l_min < 1 || l_min > l_max) throw std::invalid_argument("invalid level range");
    SweepResult result;
    result.records.resize(static_cast<std::size_t>(l_max - l_min + 1));

    std::atomic<int> next{l_min};
    auto worker = [&]() {
        for (;;) {
            const int level = next.fetch_add(1);
            if (level > l_max) break;
            const RunSummary rs = run_msg_vm(g, MsgConfig{level, level_tolerance});
            result.records[static_cast<std::size_t>(level - l_min)] =
                SweepRecord{level, rs.q_msg, rs.q_msg_vm, rs.communities, rs.depth, rs.millis};
        }
    };

    const unsigned worker_count =
        std::min<unsigned>(std::max(1u, jobs), static_cast<unsigned>(result.records.size()));
    if (worker_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.best_index = 0;
    for (std::size_t r = 1; r < result.records.size(); ++r)
        if (result.records[r].q_msg_vm > result.records[result.best_index].q_msg_vm)
            result.best_index = r;
    return result;
}

void write_sweep_report(const SweepResult& result, std::ostream& out) {
    out << "l\tq_msg\tq_msgvm\tn_c\tdepth\tms\n";
    char line[160];
    for (const auto& r : result.records) {
        std::snprintf(line, sizeof(line), "%d\t%.6f\t%.6f\t%zu\t%zu\t%.3f\n", r.level, r.q_msg,
                      r.q_msg_vm, r.communities, r.depth, r.millis);
        out << line;
    }
}

PermutationStudy permutation_study(const Graph& g, const MsgConfig& cfg, std::size_t count,
                                   std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("permutation study needs at least one run");
    PermutationStudy study;
    study.runs = count;
    study.base_q = run_msg_vm(g, cfg).q_msg_vm;
    study.q_min = std::numeric_limits<double>::infinity();
    study.q_max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        const Graph permuted = permute_labels(g, seed + t);
        const double q = run_msg_vm(permuted, cfg).q_msg_vm;
        study.q_min = std::min(study.q_min, q);
        study.q_max = std::max(study.q_max, q);
        sum += q;
    }
    study.q_mean = sum / static_cast<double>(count);
    const double denom = std::fabs(study.base_q);
    study.max_relative_improvement =
        denom > 1e-15 ? (study.q_max - study.base_q) / denom : study.q_max - study.base_q;
    return study;
}

}  // namespace msgvm
