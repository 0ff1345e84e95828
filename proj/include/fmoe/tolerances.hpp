#pragma once

namespace fmoe {

// Numerical tolerances shared by the concrete spaces.
struct Tolerances {
    // ‖m − mᵀ‖_F allowed relative to ‖m‖_F before a matrix is rejected as asymmetric.
    double symmetry = 1e-10;
    // Eigenvalues above −psd_slack·max|λ| are treated as zero when a PSD input is accepted.
    double psd_slack = 1e-12;
    // Sphere points must satisfy |‖v‖ − 1| ≤ unit_norm.
    double unit_norm = 1e-12;
    // Geodesics between sphere points closer than π − antipodal_margin are accepted as unique.
    double antipodal_margin = 1e-9;
};

inline constexpr Tolerances tolerances{};

}  // namespace fmoe
