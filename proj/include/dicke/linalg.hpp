#pragma once
#include <Eigen/Dense>

namespace dicke {

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, empty when not requested
};

// dense symmetric solve; the input matrix is consumed as workspace
EigenSystem eigh(Eigen::MatrixXd A, bool want_vectors = true);
Eigen::VectorXd eigh_values(Eigen::MatrixXd A);

// symmetric tridiagonal (diag d, off-diagonal e, e.size() == d.size()-1)
EigenSystem eigh_tridiag(Eigen::VectorXd d, Eigen::VectorXd e,
                         bool want_vectors = true);

}  // namespace dicke
