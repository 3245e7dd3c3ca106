#include <dicke/otoc.hpp>

#include <dicke/model.hpp>
#include <dicke/observables.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

namespace dicke {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

namespace {

void check_pair(const Spectrum& row, const Spectrum& col) {
    const Params& a = row.params;
    const Params& b = col.params;
    if (a.omega != b.omega || a.omega0 != b.omega0 || a.gminus != b.gminus ||
        a.gplus != b.gplus || a.j != b.j || row.N_max != col.N_max)
        throw ConfigError("sector pair built from different models");
    if (row.parity != -col.parity)
        throw ConfigError("sector pair must have opposite parities");
    if (row.vectors.cols() < row.converged_prefix ||
        col.vectors.cols() < col.converged_prefix)
        throw ConfigError("eigenvectors required for matrix elements");
}

}  // namespace

MatrixXd q_matrix_cross(const Spectrum& row, const Spectrum& col) {
    check_pair(row, col);
    const ParityBasis br = ParityBasis::make(row.params, row.N_max, row.parity);
    const ParityBasis bc = ParityBasis::make(col.params, col.N_max, col.parity);
    const MatrixXd q = build_q_cross(row.params, br, bc);
    return row.vectors.leftCols(row.converged_prefix).transpose() *
           (q * col.vectors.leftCols(col.converged_prefix));
}

LyapunovFit otoc_growth_rate(const VectorXd& ts, const VectorXd& c,
                             double saturation, double omega0) {
    LyapunovFit fit;
    const int n = static_cast<int>(ts.size());
    if (n != c.size()) throw ConfigError("time grid and curve sizes differ");

    const double t_start = M_PI / omega0;
    int i0 = 0;
    while (i0 < n && ts(i0) <= t_start) ++i0;
    int i1 = i0;
    while (i1 < n && c(i1) < 0.8 * saturation) ++i1;

    // least squares on ln c over [i0, i1)
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int m = 0;
    for (int i = i0; i < i1; ++i) {
        if (!(c(i) > 0.0)) continue;
        const double x = ts(i), y = std::log(c(i));
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        if (m == 0) fit.t_lo = x;
        fit.t_hi = x;
        ++m;
    }
    if (m < 3) return fit;

    const double det = m * sxx - sx * sx;
    if (det <= 0.0) return fit;
    const double slope = (m * sxy - sx * sy) / det;
    fit.lambda_q = 0.5 * slope;

    const double ss_tot = syy - sy * sy / m;
    double ss_res = 0.0;
    const double intercept = (sy - slope * sx) / m;
    for (int i = i0; i < i1; ++i) {
        if (!(c(i) > 0.0)) continue;
        const double r = std::log(c(i)) - (intercept + slope * ts(i));
        ss_res += r * r;
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    // the window must span at least one e-fold of growth under the fit
    fit.reliable = slope * (fit.t_hi - fit.t_lo) >= 1.0;
    return fit;
}

OtocCurve otoc(const Spectrum& plus, const Spectrum& minus, int parity, int k,
               const VectorXd& ts) {
    const Spectrum& self = parity > 0 ? plus : minus;
    const Spectrum& other = parity > 0 ? minus : plus;
    if (self.parity != (parity > 0 ? +1 : -1) ||
        other.parity != (parity > 0 ? -1 : +1))
        throw ConfigError("sector arguments carry unexpected parities");
    if (k < 0 || k >= self.converged_prefix)
        throw ConfigError("eigenstate index outside the converged prefix");

    const MatrixXd Q = q_matrix_cross(self, other);
    const int Ks = static_cast<int>(Q.rows());
    const int Ko = static_cast<int>(Q.cols());
    const VectorXd Es = self.energies.head(Ks);
    const VectorXd Eo = other.energies.head(Ko);
    const double Ek = Es(k);
    const double w = self.params.omega;

    OtocCurve out;
    out.ts = ts;
    const int nt = static_cast<int>(ts.size());
    out.c.resize(nt);
    out.diag2.resize(nt);

    const VectorXd qk = Q.row(k).transpose();
    const VectorXd sk = qk.cwiseAbs2();

    // infinite-time average: valid when the level differences entering b are
    // nondegenerate, so that cross terms dephase
    {
        const VectorXd colw = Q.cwiseAbs2().colwise().sum().transpose();
        const VectorXd se = Q.cwiseAbs2().transpose() * Es;
        const VectorXd se2 = Q.cwiseAbs2().transpose() * Es.cwiseAbs2();
        double acc = 0.0;
        for (int l = 0; l < Ko; ++l) {
            const double wkl = Ek - Eo(l);
            const double d = colw(l) * Eo(l) * Eo(l) - 2.0 * Eo(l) * se(l) + se2(l);
            acc += sk(l) * (wkl * wkl * colw(l) + d);
        }
        out.asymptote = acc / (w * w);
    }

    // b_kk'(t) = (1/w) sum_l q_kl q_k'l [(E_l - E_k') e^{i(E_k-E_l)t}
    //                                    - (E_k - E_l) e^{i(E_l-E_k')t}];
    // both sums reduce to products of Q with phase-modulated copies of row k
    const VectorXd dcoef = (2.0 / w) * sk.cwiseProduct(Eo.array() - Ek).matrix();
    const int chunk = 256;
    MatrixXd W(Ko, 0), G(Ks, 0);
    for (int base = 0; base < nt; base += chunk) {
        const int nb = std::min(chunk, nt - base);
        W.resize(Ko, 4 * nb);
        for (int i = 0; i < nb; ++i) {
            const double t = ts(base + i);
            for (int l = 0; l < Ko; ++l) {
                const double cl = std::cos(Eo(l) * t), sl = std::sin(Eo(l) * t);
                W(l, 4 * i + 0) = qk(l) * cl;
                W(l, 4 * i + 1) = -qk(l) * sl;
                W(l, 4 * i + 2) = Eo(l) * qk(l) * cl;
                W(l, 4 * i + 3) = -Eo(l) * qk(l) * sl;
            }
        }
        G.resize(Ks, 4 * nb);
        G.noalias() = Q * W;
        for (int i = 0; i < nb; ++i) {
            const double t = ts(base + i);
            const complex<double> phk(std::cos(Ek * t), std::sin(Ek * t));
            double acc = 0.0;
            for (int kp = 0; kp < Ks; ++kp) {
                const complex<double> g1(G(kp, 4 * i + 0), G(kp, 4 * i + 1));
                const complex<double> g2(G(kp, 4 * i + 2), G(kp, 4 * i + 3));
                const complex<double> t1 = phk * (g2 - Es(kp) * g1);
                const complex<double> ph2(std::cos(Es(kp) * t),
                                          -std::sin(Es(kp) * t));
                const complex<double> t2 = ph2 * (Ek * std::conj(g1) - std::conj(g2));
                acc += std::norm(t1 - t2);
            }
            out.c(base + i) = acc / (w * w);

            double bkk = 0.0;
            for (int l = 0; l < Ko; ++l)
                bkk += dcoef(l) * std::cos((Ek - Eo(l)) * t);
            out.diag2(base + i) = bkk * bkk;
        }
    }

    out.fit = otoc_growth_rate(ts, out.c, out.asymptote, self.params.omega0);
    return out;
}

FotocCurves fotoc_qfi(const Spectrum& plus, const Spectrum& minus,
                      const EigenState& st, const VectorXd& ts,
                      bool direction_search) {
    check_pair(plus, minus);
    if (plus.parity != +1) throw ConfigError("sectors must be passed plus first");
    const int Kp = static_cast<int>(st.c_plus.size());
    const int Km = static_cast<int>(st.c_minus.size());
    if (Kp > plus.converged_prefix || Km > minus.converged_prefix)
        throw ConfigError("state amplitudes exceed the converged prefix");
    if (st.e_plus.size() != Kp || st.e_minus.size() != Km)
        throw ConfigError("state amplitudes and energies differ in length");
    const double nrm = st.norm2();
    if (!(nrm > 0.0)) throw ConfigError("state has zero norm");
    const double scale = 1.0 / std::sqrt(nrm);

    const Params& p = plus.params;
    const double j = p.j;
    EffOperators ops(p, plus.N_max);
    const EffBasis& full = ops.basis();

    // eigenvectors embedded in the full adapted basis, built once
    const ParityBasis bp = ParityBasis::make(p, plus.N_max, +1);
    const ParityBasis bm = ParityBasis::make(p, plus.N_max, -1);
    MatrixXd Vp(full.dim(), Kp), Vm(full.dim(), Km);
    for (int k = 0; k < Kp; ++k)
        Vp.col(k) =
            sector_to_full(bp, full, plus.vectors.col(k).cast<complex<double>>())
                .real();
    for (int k = 0; k < Km; ++k)
        Vm.col(k) =
            sector_to_full(bm, full, minus.vectors.col(k).cast<complex<double>>())
                .real();

    const int nt = static_cast<int>(ts.size());
    FotocCurves out;
    out.ts = ts;
    out.variance_sum.resize(nt);
    out.f_max.resize(nt);

    VectorXd re(full.dim()), im(full.dim());
    for (int i = 0; i < nt; ++i) {
        const double t = ts(i);
        VectorXcd fp(Kp), fm(Km);
        for (int k = 0; k < Kp; ++k) {
            const double ph = st.e_plus(k) * t;
            fp(k) = st.c_plus(k) * complex<double>(std::cos(ph), -std::sin(ph)) *
                    scale;
        }
        for (int k = 0; k < Km; ++k) {
            const double ph = st.e_minus(k) * t;
            fm(k) = st.c_minus(k) * complex<double>(std::cos(ph), -std::sin(ph)) *
                    scale;
        }
        // materialized copies: GEMV over a real()/imag() view misassembles
        const VectorXd fpr = fp.real(), fpi = fp.imag();
        const VectorXd fmr = fm.real(), fmi = fm.imag();
        re.noalias() = Vp * fpr;
        re.noalias() += Vm * fmr;
        im.noalias() = Vp * fpi;
        im.noalias() += Vm * fmi;
        VectorXcd psi(full.dim());
        psi.real() = re;
        psi.imag() = im;

        const VectorXcd uq = ops.q(psi), up = ops.p(psi);
        const VectorXcd ux = ops.jx(psi), uy = ops.jy(psi), uz = ops.jz(psi);
        const double mq = psi.dot(uq).real(), mp = psi.dot(up).real();
        const double mx = psi.dot(ux).real(), my = psi.dot(uy).real(),
                     mz = psi.dot(uz).real();
        const double vq = uq.squaredNorm() - mq * mq;
        const double vp = up.squaredNorm() - mp * mp;

        Eigen::Matrix3d cov;
        cov(0, 0) = ux.squaredNorm() - mx * mx;
        cov(1, 1) = uy.squaredNorm() - my * my;
        cov(2, 2) = uz.squaredNorm() - mz * mz;
        cov(0, 1) = cov(1, 0) = ux.dot(uy).real() - mx * my;
        cov(0, 2) = cov(2, 0) = ux.dot(uz).real() - mx * mz;
        cov(1, 2) = cov(2, 1) = uy.dot(uz).real() - my * mz;

        // classical units: q, p carry 1/sqrt(j), the Bloch pair 1/j
        out.variance_sum(i) = (vq + vp) / j + (cov(0, 0) + cov(1, 1)) / (j * j);

        double vn = cov(2, 2);
        if (direction_search) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
            vn = es.eigenvalues().maxCoeff();
        }
        out.f_max(i) = 2.0 * vn / j;  // 4 <Delta J_n^2> / (2j)
    }

    out.f_max_running = running_time_average(ts, out.f_max);

    const int tail = std::max(1, nt / 5);
    const double sat = out.variance_sum.tail(tail).mean();
    out.fit = otoc_growth_rate(ts, out.variance_sum, sat, p.omega0);
    return out;
}

}  // namespace dicke
