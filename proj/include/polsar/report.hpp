#pragma once

// Plot-ready CSV output. Numbers use the shortest round-trip decimal form and
// never depend on the process locale.

#include <iosfwd>
#include <string>
#include <vector>

#include "polsar/detect.hpp"
#include "polsar/simulate.hpp"

namespace polsar {

/// detector,k,f_k,level
void write_fk_csv(std::ostream& out, const ExperimentReport& report);

/// detector,bias,sd,cv,mse,time_s,mean,hit_rate,reps,level
void write_summary_csv(std::ostream& out, const ExperimentReport& report);

/// j,value for every admissible candidate, plus the chosen index.
void write_curve_csv(std::ostream& out, const DetectionResult& result);

struct TimingRow {
    int label = 0;
    double k = 0.0;
    double v = 0.0;
    std::string detector;
    double time_s = 0.0;
    int rank = 0;  // 1 = slowest within the case
};

/// case,k,v,detector,time_s,rank
void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

/// Fills `rank` within each case label (ties share the order of appearance).
void rank_timings(std::vector<TimingRow>& rows);

}  // namespace polsar
