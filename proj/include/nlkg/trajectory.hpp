#pragma once

#include <vector>

namespace nlkg {

enum class Outcome { completed, blowup_detected, numerical_failure };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::completed: return "completed";
        case Outcome::blowup_detected: return "blowup_detected";
        default: return "numerical_failure";
    }
}

/// Per-record diagnostics along a trajectory. I_rho is NaN when no cutoff
/// radius was configured.
struct TrajectoryRecord {
    double t;
    double E, Q, H, P_omega, S_omega;
    double xnorm;
    double I_rho;
};

struct EvolveResult {
    std::vector<TrajectoryRecord> records;
    Outcome outcome = Outcome::completed;
    double t_final = 0.0;
};

} // namespace nlkg
