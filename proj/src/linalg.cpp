#include <dicke/linalg.hpp>
#include <dicke/params.hpp>

#include <lapacke.h>

#include <string>

namespace dicke {

EigenSystem eigh(Eigen::MatrixXd A, bool want_vectors) {
  if (A.rows() != A.cols()) throw std::logic_error("eigh: square input only");
  lapack_int n = lapack_int(A.rows());
  EigenSystem out;
  out.values.resize(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N',
                                   'L', n, A.data(), n, out.values.data());
  if (info != 0)
    throw NumericalError("symmetric eigensolver failed, info=" +
                         std::to_string(info));
  if (want_vectors) out.vectors = std::move(A);
  return out;
}

Eigen::VectorXd eigh_values(Eigen::MatrixXd A) {
  return eigh(std::move(A), false).values;
}

EigenSystem eigh_tridiag(Eigen::VectorXd d, Eigen::VectorXd e,
                         bool want_vectors) {
  lapack_int n = lapack_int(d.size());
  if (e.size() != n - 1) throw std::logic_error("eigh_tridiag: size mismatch");
  EigenSystem out;
  Eigen::MatrixXd z;
  if (want_vectors) z.resize(n, n);
  lapack_int info =
      LAPACKE_dstev(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', n, d.data(),
                    e.data(), want_vectors ? z.data() : nullptr, n);
  if (info != 0)
    throw NumericalError("tridiagonal eigensolver failed, info=" +
                         std::to_string(info));
  out.values = std::move(d);
  if (want_vectors) out.vectors = std::move(z);
  return out;
}

}  // namespace dicke
