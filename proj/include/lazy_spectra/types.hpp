#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace lazy_spectra {

using Index = std::int64_t;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

// Which side of the spectrum a shift-and-invert solve targets.
// plus: lambda*I - M (positive eigenvalues), minus: lambda*I + M.
enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline const char* sign_name(Sign s) { return s == Sign::plus ? "+" : "-"; }

}  // namespace lazy_spectra
