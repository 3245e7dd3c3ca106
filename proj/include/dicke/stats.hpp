#pragma once
#include <Eigen/Dense>

#include <vector>

namespace dicke {

// consecutive-spacing ratio statistic <min(s,s')/max(s,s')>
inline constexpr double kRTildeChaotic = 0.5359;   // random-matrix value
inline constexpr double kRTildeRegular = 0.38629;  // 2 ln2 - 1

double mean_spacing_ratio(const Eigen::VectorXd& energies);
double mean_spacing_ratio(const std::vector<Eigen::VectorXd>& sequences);

// spectral form factor |sum_k exp(-i E_k t)|^2 / d^2
Eigen::VectorXd form_factor(const Eigen::VectorXd& energies,
                            const Eigen::VectorXd& times);

// connected two-level form factor of the orthogonal ensemble
double b2_orthogonal(double t);

}  // namespace dicke
