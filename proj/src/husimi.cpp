#include <dicke/husimi.hpp>

#include <dicke/observables.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace dicke {

using cplx = std::complex<double>;

PhaseState PhaseState::pure(const Params& p, int N_max,
                            const Eigen::VectorXcd& psi_p,
                            const Eigen::VectorXcd& psi_m)
{
    PhaseState st{p, N_max, ParityBasis::make(p, N_max, +1),
                  ParityBasis::make(p, N_max, -1), {}, {}, {}};
    st.comp_p = Eigen::MatrixXcd::Zero(st.bp.dim(), 1);
    st.comp_m = Eigen::MatrixXcd::Zero(st.bm.dim(), 1);
    if (psi_p.size()) st.comp_p.col(0) = psi_p;
    if (psi_m.size()) st.comp_m.col(0) = psi_m;
    st.weights = Eigen::VectorXd::Ones(1);
    return st;
}

PhaseState PhaseState::eigenstate(const Spectrum& s, int k)
{
    Eigen::VectorXcd v = s.vectors.col(k).cast<cplx>();
    if (s.parity > 0) return pure(s.params, s.N_max, v, {});
    return pure(s.params, s.N_max, {}, v);
}

PhaseState PhaseState::coherent(const Params& p, int N_max, const ClassicalState& x)
{
    PhaseState st{p, N_max, ParityBasis::make(p, N_max, +1),
                  ParityBasis::make(p, N_max, -1), {}, {}, {}};
    st.comp_p = coherent_sector(p, st.bp, x);
    st.comp_m = coherent_sector(p, st.bm, x);
    st.weights = Eigen::VectorXd::Ones(1);
    return st;
}

PhaseState PhaseState::microcanonical(const Spectrum& plus, const Spectrum& minus,
                                      double eps_lo, double eps_hi)
{
    const std::vector<int> kp = plus.window(eps_lo, eps_hi);
    const std::vector<int> km = minus.window(eps_lo, eps_hi);
    const int n = static_cast<int>(kp.size() + km.size());
    if (n == 0) throw ConfigError("empty microcanonical window");

    PhaseState st{plus.params, plus.N_max,
                  ParityBasis::make(plus.params, plus.N_max, +1),
                  ParityBasis::make(plus.params, plus.N_max, -1), {}, {}, {}};
    st.comp_p = Eigen::MatrixXcd::Zero(st.bp.dim(), n);
    st.comp_m = Eigen::MatrixXcd::Zero(st.bm.dim(), n);
    int c = 0;
    for (int k : kp) st.comp_p.col(c++) = plus.vectors.col(k).cast<cplx>();
    for (int k : km) st.comp_m.col(c++) = minus.vectors.col(k).cast<cplx>();
    st.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
    return st;
}

double husimi_value(const PhaseState& st, const ClassicalState& x)
{
    const Eigen::VectorXcd ap = coherent_sector(st.p, st.bp, x);
    const Eigen::VectorXcd am = coherent_sector(st.p, st.bm, x);
    // amplitudes <x|comp_i> for every component at once
    const Eigen::RowVectorXcd amp =
        ap.adjoint() * st.comp_p + am.adjoint() * st.comp_m;
    double v = 0.0;
    for (int i = 0; i < st.ncomp(); ++i) v += st.weights(i) * std::norm(amp(i));
    return v;
}

Eigen::MatrixXcd rho_atomic(const PhaseState& st)
{
    const EffBasis eff(st.p.two_j(), st.N_max);
    const int tj = st.p.two_j();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(tj + 1, tj + 1);
    for (int i = 0; i < st.ncomp(); ++i) {
        const Eigen::VectorXcd full = sector_to_full(st.bp, eff, st.comp_p.col(i))
                                    + sector_to_full(st.bm, eff, st.comp_m.col(i));
        rho += st.weights(i) * atom_reduced_direct(st.p, eff, full);
    }
    return rotate_x_to_z(rho);
}

namespace {

// z-basis spin coherent spinor, log-stable against the disk boundary
Eigen::VectorXcd bloch_spinor(int two_j, cplx z)
{
    Eigen::VectorXcd c(two_j + 1);
    const double az = std::abs(z);
    const double la = (az > 0.0) ? std::log(az) : -std::numeric_limits<double>::infinity();
    const double arg = std::arg(z);
    const double l1p = (la > 350.0) ? 2.0 * la : std::log1p(az * az);
    const double lg = std::lgamma(two_j + 1.0);
    for (int a = 0; a <= two_j; ++a) {
        if (a == 0) {
            c(a) = std::exp(-0.5 * two_j * l1p);
            continue;
        }
        if (!std::isfinite(la)) {
            c(a) = 0.0;
            continue;
        }
        const double lb = 0.5 * (lg - std::lgamma(a + 1.0) - std::lgamma(two_j - a + 1.0));
        const double lm = lb + a * la - 0.5 * two_j * l1p;
        c(a) = (lm < -745.0) ? cplx(0.0, 0.0) : std::polar(std::exp(lm), a * arg);
    }
    return c;
}

}  // namespace

Eigen::MatrixXd husimi_atomic_map(const Eigen::MatrixXcd& rho_z, int two_j,
                                  const PlaneGrid& g)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i) {
        for (int k = 0; k < g.ny; ++k) {
            const double Q = g.x(i), P = g.y(k);
            const double r2 = Q * Q + P * P;
            if (r2 >= 4.0) continue;
            const cplx z = cplx(Q, P) / std::sqrt(4.0 - r2);
            const Eigen::VectorXcd v = bloch_spinor(two_j, z);
            out(i, k) = std::max(0.0, std::real(v.dot(rho_z * v)));
        }
    }
    return out;
}

Eigen::MatrixXd husimi_bosonic_map(const PhaseState& st, const PlaneGrid& g)
{
    const EffBasis eff(st.p.two_j(), st.N_max);
    const int n_conv = conversion_n_max(st.p, st.N_max);
    const int tj = st.p.two_j();

    // Fock coefficient matrices per component
    std::vector<Eigen::MatrixXcd> C;
    C.reserve(st.ncomp());
    for (int i = 0; i < st.ncomp(); ++i) {
        const Eigen::VectorXcd full = sector_to_full(st.bp, eff, st.comp_p.col(i))
                                    + sector_to_full(st.bm, eff, st.comp_m.col(i));
        C.push_back(efficient_to_fock(st.p, eff, full, n_conv));
    }

    Eigen::MatrixXd out(g.nx, g.ny);
    Eigen::VectorXcd coh(n_conv + 1);
    for (int i = 0; i < g.nx; ++i) {
        for (int k = 0; k < g.ny; ++k) {
            const cplx alpha = std::sqrt(st.p.j / 2.0) * cplx(g.x(i), g.y(k));
            // <alpha|n> chain
            cplx c = std::exp(-0.5 * std::norm(alpha));
            const cplx ac = std::conj(alpha);
            for (int n = 0; n <= n_conv; ++n) {
                coh(n) = c;
                c *= ac / std::sqrt(n + 1.0);
            }
            double val = 0.0;
            for (int ic = 0; ic < st.ncomp(); ++ic) {
                Eigen::RowVectorXcd amp = coh.transpose() * C[ic];
                val += st.weights(ic) * amp.squaredNorm();
            }
            out(i, k) = val;
        }
    }
    return out;
}

Eigen::MatrixXd husimi_shell_map(const PhaseState& st, double eps,
                                 const PlaneGrid& g, double alpha, int n_phi)
{
    const Params& p = st.p;
    const double w = p.omega, w0 = p.omega0;
    const double a = p.gminus + p.gplus;
    const double b = p.gminus - p.gplus;

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.nx, g.ny);
    const double dphi = M_PI / n_phi;
    for (int i = 0; i < g.nx; ++i) {
        for (int k = 0; k < g.ny; ++k) {
            const double Q = g.x(i), P = g.y(k);
            const double r2 = Q * Q + P * P;
            if (r2 >= 4.0) continue;
            const double s = std::sqrt(1.0 - r2 / 4.0);
            const double beta = a * Q * s;
            const double atom = w0 * (r2 / 2.0 - 1.0);
            // energy shell cut in p: h has the quadratic (w/2)p^2 + b P s p,
            // so q-roots exist on |p - c| < R
            const double c = -b * P * s / w;
            const double R2 = c * c + (beta * beta / w - 2.0 * (atom - eps)) / w;
            if (R2 <= 0.0) continue;
            const double R = std::sqrt(R2);
            // substitution p = c + R sin(phi) removes the turning-point
            // singularity of 1/|dh/dq| = 1/(w R cos(phi))
            double acc = 0.0;
            for (int n = 0; n < n_phi; ++n) {
                const double phi = -M_PI / 2.0 + (n + 0.5) * dphi;
                const double pp = c + R * std::sin(phi);
                const double disc = w * R * std::cos(phi);
                for (double sign : {1.0, -1.0}) {
                    const double q = (-beta + sign * disc) / w;
                    const double val = husimi_value(st, {q, pp, Q, P});
                    acc += (alpha == 1.0) ? val : std::pow(val, alpha);
                }
            }
            out(i, k) = acc * dphi / w;
        }
    }
    return out;
}

Eigen::MatrixXd husimi_shell_values(const Params& p, const ParityBasis& bp,
                                    const ParityBasis& bm,
                                    const Eigen::MatrixXcd& states_p,
                                    const Eigen::MatrixXcd& states_m,
                                    const std::vector<ShellPoint>& pts)
{
    const int n = static_cast<int>(pts.size());
    const int ns = static_cast<int>(states_p.cols());
    Eigen::MatrixXd out(n, ns);

    const int block = 256;
    Eigen::MatrixXcd Ap(block, bp.dim()), Am(block, bm.dim());
    for (int lo = 0; lo < n; lo += block) {
        const int nb = std::min(block, n - lo);
        for (int i = 0; i < nb; ++i) {
            Ap.row(i) = coherent_sector(p, bp, pts[lo + i].x).conjugate();
            Am.row(i) = coherent_sector(p, bm, pts[lo + i].x).conjugate();
        }
        const Eigen::MatrixXcd amp = Ap.topRows(nb) * states_p + Am.topRows(nb) * states_m;
        out.middleRows(lo, nb) = amp.array().abs2().matrix();
    }
    return out;
}

double renyi_occupation(const Eigen::ArrayXd& f, const Eigen::ArrayXd& mu,
                        double V, double alpha)
{
    const double tot = (f * mu).sum();
    if (tot <= 0.0) throw ConfigError("renyi occupation of a null distribution");
    const Eigen::ArrayXd rho = f / tot;
    if (alpha == 1.0) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < rho.size(); ++i)
            if (rho(i) > 0.0) acc += mu(i) * rho(i) * std::log(rho(i));
        return std::exp(-acc) / V;
    }
    const double m = (rho.pow(alpha) * mu).sum();
    return std::pow(m, 1.0 / (1.0 - alpha)) / V;
}

double renyi_occupation_mc(const Eigen::ArrayXd& q, const Eigen::ArrayXd& w,
                           double alpha)
{
    const double n = static_cast<double>(q.size());
    const double e1 = (q * w).sum() / n;
    if (e1 <= 0.0) throw ConfigError("renyi occupation of a null distribution");
    if (alpha == 1.0) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < q.size(); ++i)
            if (q(i) > 0.0) acc += w(i) * q(i) * std::log(q(i));
        acc /= n;
        return e1 * std::exp(-acc / e1);
    }
    const double ea = (q.pow(alpha) * w).sum() / n;
    return std::pow(e1, alpha / (alpha - 1.0)) * std::pow(ea, 1.0 / (1.0 - alpha));
}

double renyi_atomic(const Eigen::MatrixXd& map, const PlaneGrid& g, double alpha)
{
    // clip cells to the disk r < 2 whose total area is the reference volume
    std::vector<double> fv, mv;
    fv.reserve(map.size());
    mv.reserve(map.size());
    const double cell = g.dx() * g.dy();
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.ny; ++k) {
            const double Q = g.x(i), P = g.y(k);
            if (Q * Q + P * P >= 4.0) continue;
            fv.push_back(map(i, k));
            mv.push_back(cell);
        }
    const Eigen::ArrayXd f = Eigen::Map<Eigen::ArrayXd>(fv.data(), fv.size());
    const Eigen::ArrayXd mu = Eigen::Map<Eigen::ArrayXd>(mv.data(), mv.size());
    return renyi_occupation(f, mu, 4.0 * M_PI, alpha);
}

double renyi_random_ceiling(double alpha)
{
    if (alpha == 1.0) return std::exp(0.57721566490153286 - 1.0);
    return std::pow(std::tgamma(alpha + 1.0), 1.0 / (1.0 - alpha));
}

}  // namespace dicke
