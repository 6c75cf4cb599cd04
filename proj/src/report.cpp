#include "polsar/report.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

namespace polsar {

void write_fk_csv(std::ostream& out, const ExperimentReport& report) {
    out << "detector,k,f_k,level\n";
    for (const auto& r : report.rows)
        for (int k = 1; k <= kMaxErrorK; ++k) out << fmt::format("{},{},{},{}\n", r.detector, k, r.f_at(k), r.level);
}

void write_summary_csv(std::ostream& out, const ExperimentReport& report) {
    out << "detector,bias,sd,cv,mse,time_s,mean,hit_rate,reps,level\n";
    for (const auto& r : report.rows) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.detector, r.bias, r.sd, r.cv, r.mse,
                           r.mean_time, r.mean, r.hit_rate, report.reps, r.level);
    }
}

void write_curve_csv(std::ostream& out, const DetectionResult& result) {
    out << "j,value,selected\n";
    for (const auto& p : result.objective_values) {
        out << fmt::format("{},{},{}\n", p.j, p.value, p.j == result.j_hat ? 1 : 0);
    }
}

void rank_timings(std::vector<TimingRow>& rows) {
    std::size_t b = 0;
    while (b < rows.size()) {
        std::size_t e = b;
        while (e < rows.size() && rows[e].label == rows[b].label) ++e;
        std::vector<std::size_t> idx(e - b);
        std::iota(idx.begin(), idx.end(), b);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t x, std::size_t y) { return rows[x].time_s > rows[y].time_s; });
        for (std::size_t i = 0; i < idx.size(); ++i) rows[idx[i]].rank = static_cast<int>(i) + 1;
        b = e;
    }
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
    out << "case,k,v,detector,time_s,rank\n";
    for (const auto& r : rows) {
        out << fmt::format("{},{},{},{},{},{}\n", r.label, r.k, r.v, r.detector, r.time_s, r.rank);
    }
}

}  // namespace polsar
