#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nlkg {

/// Physical parameters of the coupled Klein-Gordon system
///   d_t^2 u1 - lap u1 + m1^2 u1 = 2 conj(u1) u2
///   d_t^2 u2 - lap u2 + m2^2 u2 = u1^2
/// together with the standing-wave frequency omega.
struct Params {
    double m1 = 1.0;
    double m2 = 2.0;
    double omega = 0.5;
    int dim = 2;   // N in {2,3}

    double mu1() const { return m1 * m1 - omega * omega; }
    double mu2() const { return m2 * m2 - 4.0 * omega * omega; }
    double alpha() const { return 4.0 - dim; }

    /// omega^2 < min(m1^2, m2^2/4): the standing-wave admissibility window.
    bool admissible() const {
        return m1 > 0.0 && m2 > 0.0 && (dim == 2 || dim == 3) &&
               omega * omega < std::min(m1 * m1, m2 * m2 / 4.0);
    }

    /// (5-N) omega^2 <= min(m1^2, m2^2/4): sufficient condition for strong instability.
    bool sc1() const {
        return (5.0 - dim) * omega * omega <= std::min(m1 * m1, m2 * m2 / 4.0);
    }

    void validate() const {
        if (m1 <= 0.0 || m2 <= 0.0)
            throw std::domain_error("params: masses must be positive");
        if (dim != 2 && dim != 3)
            throw std::domain_error("params: dim must be 2 or 3");
        if (!(omega * omega < std::min(m1 * m1, m2 * m2 / 4.0)))
            throw std::domain_error(
                "params: omega^2 < min(m1^2, m2^2/4) required for standing waves "
                "(omega=" + std::to_string(omega) + ", m1=" + std::to_string(m1) +
                ", m2=" + std::to_string(m2) + ")");
    }
};

} // namespace nlkg
