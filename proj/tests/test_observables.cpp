#include "test_util.hpp"

#include <dicke/observables.hpp>

#include <cmath>
#include <complex>
#include <random>

using namespace dicke;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

TEST_CASE("shannon entropy hand values") {
  VectorXd single(1);
  single << 1.0;
  check_close(shannon_entropy(single), 0.0, 1e-15, "pure");

  VectorXd uniform = VectorXd::Constant(7, 1.0 / 7.0);
  check_close(shannon_entropy(uniform), std::log(7.0), 1e-14, "uniform");

  VectorXd mixed(3);
  mixed << 0.5, 0.25, 0.25;
  check_close(shannon_entropy(mixed), 1.5 * std::log(2.0), 1e-14, "half-quarter");
}

TEST_CASE("entanglement entropy anchors") {
  int two_j = 4, n_max = 10;
  // product state: zero entropy
  MatrixXcd C = MatrixXcd::Zero(n_max + 1, two_j + 1);
  C(3, 2) = 1.0;
  Entanglement e = atomic_entanglement(C);
  check_close(e.von_neumann, 0.0, 1e-12, "product");
  check_close(e.linear, 0.0, 1e-12, "product linear");

  // Bell-like pair across the two subsystems
  C.setZero();
  C(0, 0) = std::sqrt(0.5);
  C(1, 1) = std::sqrt(0.5);
  e = atomic_entanglement(C);
  check_close(e.von_neumann, std::log(2.0), 1e-12, "bell");
  check_close(e.linear, 0.5, 1e-12, "bell linear");

  // maximally mixed reduced state
  C.setZero();
  for (int m = 0; m <= two_j; ++m) C(m, m) = 1.0 / std::sqrt(two_j + 1.0);
  e = atomic_entanglement(C);
  check_close(e.von_neumann, std::log(two_j + 1.0), 1e-12, "maximal");
  check_close(e.linear, 1.0 - 1.0 / (two_j + 1.0), 1e-12, "maximal linear");

  // norm off by more than 1e-6 is rejected
  C(0, 0) += 1e-4;
  CHECK_THROWS_AS((void)atomic_entanglement(C), NumericalError);
}

TEST_CASE("microcanonical deviation hand values") {
  MicDeviation d = microcanonical_deviation({1.0, 3.0});
  check_close(d.mean_dev, 0.5, 1e-15, "mean dev");
  check_close(d.extremal, 1.0, 1e-15, "extremal");

  d = microcanonical_deviation({2.0, 2.0, 2.0});
  check_close(d.mean_dev, 0.0, 1e-15, "constant");
  check_close(d.extremal, 0.0, 1e-15, "constant extremal");

  d = microcanonical_deviation({-1.0, 1.0});
  CHECK(std::isnan(d.mean_dev));
  CHECK(std::isnan(d.extremal));
}

TEST_CASE("participation ratio") {
  VectorXcd c = VectorXcd::Zero(8);
  c(2) = 1.0;
  check_close(participation_ratio(c), 1.0, 1e-14, "basis state");
  c.setConstant(std::complex<double>(std::sqrt(1.0 / 8.0), 0.0));
  check_close(participation_ratio(c), 8.0, 1e-12, "uniform");
}

TEST_CASE("appliers agree with sector matrices") {
  Params p = Params::isotropic_coupling(1.0, 1.0, 1.0, 3.0);
  int N_max = 40;
  ParityBasis sec = ParityBasis::make(p, N_max, +1);
  EffBasis full(p.two_j(), N_max);
  EffOperators ops(p, N_max);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(sec.dim());
  for (int i = 0; i < v.size(); ++i) v(i) = nd(rng);
  v.normalize();
  VectorXcd psi = sector_to_full(sec, full, v.cast<std::complex<double>>());

  Eigen::MatrixXd H = build_hamiltonian(p, sec);
  Eigen::MatrixXd Jz = build_jz(p, sec);
  Eigen::MatrixXd Num = build_num(p, sec);
  check_close(psi.dot(ops.h(psi)).real(), v.dot(H * v), 1e-10, "<H>");
  check_close(psi.dot(ops.jz(psi)).real(), v.dot(Jz * v), 1e-10, "<Jz>");
  check_close(psi.dot(ops.num(psi)).real(), v.dot(Num * v), 1e-10, "<n>");

  VectorXd jx2d = jx_diagonal(sec).array().square();
  check_close(psi.dot(ops.jx2(psi)).real(), v.cwiseAbs2().dot(jx2d), 1e-10,
              "<Jx2>");

  // parity-odd quadrature couples the sectors
  ParityBasis secm = ParityBasis::make(p, N_max, -1);
  Eigen::VectorXd w(secm.dim());
  for (int i = 0; i < w.size(); ++i) w(i) = nd(rng);
  w.normalize();
  VectorXcd phi = sector_to_full(secm, full, w.cast<std::complex<double>>());
  Eigen::MatrixXd Q = build_q_cross(p, sec, secm);
  check_close(psi.dot(ops.q(phi)).real(), v.dot(Q * w), 1e-10, "<+|q|->");
  // same-sector expectation of an odd operator vanishes
  check_close(psi.dot(ops.q(psi)).real(), 0.0, 1e-12, "<+|q|+>");
  check_close(psi.dot(ops.p(psi)).real(), 0.0, 1e-12, "<+|p|+>");
  check_close(psi.dot(ops.jy(psi)).real(), 0.0, 1e-12, "<+|Jy|+>");
}

TEST_CASE("applier algebra on a converged state") {
  Params p = Params::isotropic_coupling(1.0, 1.0, 1.0, 3.0);
  int N_max = 60;
  Spectrum s = diagonalize_sector(p, N_max, +1);
  REQUIRE(s.converged[0]);
  ParityBasis sec = ParityBasis::make(p, N_max, +1);
  EffBasis full(p.two_j(), N_max);
  EffOperators ops(p, N_max);
  VectorXcd psi = sector_to_full(
      sec, full, VectorXcd(s.vectors.col(0).cast<std::complex<double>>()));

  // energy through the applier
  check_close(psi.dot(ops.h(psi)).real(), s.energies(0), 1e-9, "energy");

  // canonical commutator [q, p] = i
  std::complex<double> comm =
      psi.dot(ops.q(ops.p(psi))) - psi.dot(ops.p(ops.q(psi)));
  check_close(comm.real(), 0.0, 1e-9, "Re[q,p]");
  check_close(comm.imag(), 1.0, 1e-9, "Im[q,p]");

  // spin casimir from the three components
  double j = p.j;
  double cas = (psi.dot(ops.jx2(psi)) + psi.dot(ops.jy(ops.jy(psi))) +
                psi.dot(ops.jz(ops.jz(psi))))
                   .real();
  check_close(cas, j * (j + 1.0), 1e-8, "J^2");
}

TEST_CASE("reduced spin state: conversion route vs direct route") {
  Params p = Params::isotropic_coupling(1.0, 1.0, 1.0, 3.0);
  int N_max = 60;
  Spectrum s = diagonalize_sector(p, N_max, +1);
  ParityBasis sec = ParityBasis::make(p, N_max, +1);
  EffBasis full(p.two_j(), N_max);
  VectorXcd psi = sector_to_full(
      sec, full, VectorXcd(s.vectors.col(0).cast<std::complex<double>>()));

  int n_max = conversion_n_max(p, N_max);
  MatrixXcd C = efficient_to_fock(p, full, psi, n_max);
  MatrixXcd rho_fock = atom_reduced_fock(C);
  MatrixXcd rho_x = atom_reduced_direct(p, full, psi);

  check_close(rho_fock.trace().real(), 1.0, 1e-9, "trace (fock route)");
  check_close(rho_x.trace().real(), 1.0, 1e-10, "trace (direct route)");
  CHECK((rho_x - rho_x.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);

  // entropies match between routes (basis independent)
  check_close(entropy_of_density(rho_fock), entropy_of_density(rho_x), 1e-8,
              "entropy");
  check_close(linear_entropy(rho_fock), linear_entropy(rho_x), 1e-8,
              "linear entropy");

  // full matrix agreement after rotating the direct route into the z frame
  MatrixXcd rho_z = rotate_x_to_z(rho_x);
  CHECK((rho_z - rho_fock).cwiseAbs().maxCoeff() <= 1e-8);

  // superradiant ground state is strongly entangled with the field
  CHECK(entropy_of_density(rho_x) > 0.3);
}

TEST_CASE("peres values: decoupled limit and bounds") {
  Params p = Params::isotropic_coupling(1.0, 1.0, 0.0, 2.0);
  Spectrum s = diagonalize_sector(p, 20, +1);
  auto jz = peres_values(s, NamedObservable::Jz);
  auto n = peres_values(s, NamedObservable::PhotonNumber);
  auto nex = peres_values(s, NamedObservable::ExcitedAtoms);
  auto jx2 = peres_values(s, NamedObservable::Jx2);
  REQUIRE(jz.size() > 10);
  // ground state of the decoupled model: all spins down, empty mode
  check_close(jz[0].second, -2.0, 1e-10, "<Jz> ground");
  check_close(n[0].second, 0.0, 1e-10, "<n> ground");
  check_close(nex[0].second, 0.0, 1e-10, "<n_ex> ground");
  for (auto& [eps, val] : jz) {
    CHECK(val >= -2.0 - 1e-9);
    CHECK(val <= 2.0 + 1e-9);
  }
  for (auto& [eps, val] : jx2) CHECK(val >= -1e-12);

  // coupled case: values still bounded, energies ascending
  Params pc = Params::isotropic_coupling(1.0, 1.0, 1.0, 3.0);
  Spectrum sc = diagonalize_sector(pc, 40, +1);
  auto jzc = peres_values(sc, NamedObservable::Jz);
  for (std::size_t i = 1; i < jzc.size(); ++i)
    CHECK(jzc[i].first >= jzc[i - 1].first);
  for (auto& [eps, val] : jzc) CHECK(std::abs(val) <= 3.0 + 1e-9);
}
