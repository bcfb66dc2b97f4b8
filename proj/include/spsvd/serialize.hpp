#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spsvd/breakdown.hpp"
#include "spsvd/elsvd.hpp"
#include "spsvd/simulate.hpp"
#include "spsvd/spsvd.hpp"
#include "spsvd/truncated_svd.hpp"

namespace spsvd {

// JSON documents for decomposition results. No timing or environment data
// goes in: rerunning the same command must produce byte-identical output.
std::string to_json(const SvdFactorization& fac, const std::string& method);
std::string to_json(const SpsvdResult& result);
std::string to_json(const ElsvdResult& result);

std::string to_json(const BoundResult& result);
std::string to_json(const ProbeReport& report);

// Accuracy-study cells as a JSON array of {n, epsilon, reps, mean_error}.
std::string to_json(const std::vector<AccuracyCell>& cells);

inline constexpr const char* kSweepCsvHeader =
    "method,eta,left_angle_deg,right_angle_deg,d1_ratio,wall_time_s,seed,rep,"
    "failed";

// CSV with the header above, one row per record, deterministic order. On
// failed records the three metric fields are left empty.
void write_sweep_csv(std::ostream& out,
                     const std::vector<ExperimentRecord>& records);
std::string sweep_csv(const std::vector<ExperimentRecord>& records);

}  // namespace spsvd
