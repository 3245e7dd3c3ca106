#pragma once
#include <Eigen/Dense>

namespace dicke {

// <np|D(dx)|n> for real displacement dx, D(dx) = exp(dx (a' - a)).
// Closed Laguerre form evaluated in log domain with explicit sign tracking;
// safe for quantum numbers in the thousands.
double displaced_fock_overlap(int np, int n, double dx);

// Full matrix D_{q,N} = <q|D(beta)|N>, 0<=q<rows, 0<=N<cols, by stable
// two-term recurrences seeded from the coherent column/row. All entries of a
// unitary matrix, so bounded by 1.
Eigen::MatrixXd displacement_matrix(double beta, int rows, int cols);

}  // namespace dicke
