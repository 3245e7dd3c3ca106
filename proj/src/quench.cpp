#include <dicke/quench.hpp>

#include <dicke/model.hpp>
#include <dicke/husimi.hpp>
#include <dicke/observables.hpp>
#include <dicke/rng.hpp>
#include <dicke/stats.hpp>
#include <dicke/twa.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace dicke {

using std::complex;
constexpr double kPi = 3.14159265358979323846;

// ---- EigenState ----

double EigenState::norm2() const {
    return c_plus.squaredNorm() + c_minus.squaredNorm();
}

double EigenState::ipr() const {
    const double n2 = norm2();
    if (n2 <= 0.0) throw ConfigError("empty eigenbasis state");
    double s = 0.0;
    for (Eigen::Index k = 0; k < c_plus.size(); ++k)
        s += std::pow(std::norm(c_plus(k)) / n2, 2);
    for (Eigen::Index k = 0; k < c_minus.size(); ++k)
        s += std::pow(std::norm(c_minus(k)) / n2, 2);
    return s;
}

void EigenState::components(Eigen::VectorXd& E, Eigen::VectorXd& w) const {
    const double n2 = norm2();
    if (n2 <= 0.0) throw ConfigError("empty eigenbasis state");
    const Eigen::Index np = c_plus.size(), nm = c_minus.size();
    E.resize(np + nm);
    w.resize(np + nm);
    for (Eigen::Index k = 0; k < np; ++k) {
        E(k) = e_plus(k);
        w(k) = std::norm(c_plus(k)) / n2;
    }
    for (Eigen::Index k = 0; k < nm; ++k) {
        E(np + k) = e_minus(k);
        w(np + k) = std::norm(c_minus(k)) / n2;
    }
}

EigenState EigenState::coherent(const Spectrum& plus, const Spectrum& minus,
                                const ClassicalState& x) {
    CoherentExpansion ex = coherent_expand(plus, minus, x);
    EigenState st;
    st.c_plus = ex.c_plus;
    st.c_minus = ex.c_minus;
    st.e_plus = plus.energies.head(ex.c_plus.size());
    st.e_minus = minus.energies.head(ex.c_minus.size());
    return st;
}

// ---- LDOS ----

LdosProfile ldos(const EigenState& st) {
    LdosProfile out;
    st.components(out.E, out.w);
    out.leak = std::max(0.0, 1.0 - st.norm2());

    out.E_c = out.E.dot(out.w);
    double var = 0.0;
    for (Eigen::Index k = 0; k < out.E.size(); ++k)
        var += out.w(k) * std::pow(out.E(k) - out.E_c, 2);
    out.sigma0 = std::sqrt(std::max(0.0, var));

    out.degenerate = out.sigma0 <= 1e-9 * std::max(1.0, std::abs(out.E_c));
    if (out.degenerate) return out;

    // binned density against the moment-matched Gaussian
    const int nb = 25;
    const double lo = out.E_c - 3.5 * out.sigma0;
    const double dE = 7.0 * out.sigma0 / nb;
    Eigen::VectorXd dens = Eigen::VectorXd::Zero(nb);
    for (Eigen::Index k = 0; k < out.E.size(); ++k) {
        const int b = static_cast<int>(std::floor((out.E(k) - lo) / dE));
        if (b >= 0 && b < nb) dens(b) += out.w(k) / dE;
    }
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean = dens.mean();
    for (int b = 0; b < nb; ++b) {
        const double Ec = lo + (b + 0.5) * dE;
        const double model = std::exp(-std::pow((Ec - out.E_c) / out.sigma0, 2) / 2.0) /
                             (std::sqrt(2.0 * kPi) * out.sigma0);
        ss_res += std::pow(dens(b) - model, 2);
        ss_tot += std::pow(dens(b) - mean, 2);
    }
    out.r2_gaussian = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    return out;
}

// ---- envelopes ----

Envelope Envelope::rectangular(double E_c, double half_width) {
    if (!(half_width > 0.0)) throw ConfigError("rectangular envelope needs width > 0");
    Envelope e;
    e.kind = EnvelopeKind::rectangular;
    e.E_c = E_c;
    e.width = half_width;
    e.E_a = E_c - half_width;
    e.E_b = E_c + half_width;
    return e;
}

Envelope Envelope::bounded_gaussian(double E_c, double sigma, double E_a,
                                    double E_b) {
    if (!(sigma > 0.0) || !(E_a < E_c) || !(E_c < E_b))
        throw ConfigError("bounded gaussian envelope needs E_a < E_c < E_b and sigma > 0");
    Envelope e;
    e.kind = EnvelopeKind::bounded_gaussian;
    e.E_c = E_c;
    e.width = sigma;
    e.E_a = E_a;
    e.E_b = E_b;
    e.C = 0.5 * (std::erf((E_b - E_c) / (std::sqrt(2.0) * sigma)) -
                 std::erf((E_a - E_c) / (std::sqrt(2.0) * sigma)));
    return e;
}

Envelope Envelope::gaussian(double E_c, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian envelope needs sigma > 0");
    Envelope e;
    e.kind = EnvelopeKind::gaussian;
    e.E_c = E_c;
    e.width = sigma;
    // soft support markers; the density itself is not cut
    e.E_a = E_c - 8.0 * sigma;
    e.E_b = E_c + 8.0 * sigma;
    return e;
}

double Envelope::density(double E) const {
    switch (kind) {
        case EnvelopeKind::rectangular:
            return (E >= E_a && E <= E_b) ? 1.0 / (2.0 * width) : 0.0;
        case EnvelopeKind::bounded_gaussian:
            if (E < E_a || E > E_b) return 0.0;
            return std::exp(-std::pow((E - E_c) / width, 2) / 2.0) /
                   (C * std::sqrt(2.0 * kPi) * width);
        case EnvelopeKind::gaussian:
            return std::exp(-std::pow((E - E_c) / width, 2) / 2.0) /
                   (std::sqrt(2.0 * kPi) * width);
    }
    return 0.0;
}

namespace {

// 16-point Gauss-Legendre rule on [-1, 1] from Newton iteration on P_16
struct Gl16 {
    double x[16], w[16];
    Gl16() {
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 60; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double step = p1 / dp;
                xi -= step;
                if (std::abs(step) < 1e-15) {
                    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
                    break;
                }
            }
            x[i] = xi;
        }
    }
};

const Gl16& gl16() {
    static const Gl16 rule;
    return rule;
}

}  // namespace

double Envelope::st(double t) const {
    t = std::abs(t);
    switch (kind) {
        case EnvelopeKind::rectangular: {
            const double u = width * t;
            if (u < 1e-150) return 1.0;
            const double s = std::sin(u) / u;
            return s * s;
        }
        case EnvelopeKind::gaussian: {
            const double u = width * t;
            return u > 27.0 ? 0.0 : std::exp(-u * u);
        }
        case EnvelopeKind::bounded_gaussian:
            break;
    }

    // Fourier intensity of the bounded gaussian. Quadrature up to moderate
    // phase; endpoint (integration-by-parts) asymptotics beyond, where the
    // transform is carried by the density jumps at the bounds.
    const double sig = width;
    if (sig * t <= 32.0) {
        const Gl16& gl = gl16();
        complex<double> acc(0.0, 0.0);
        const double len = E_b - E_a;
        const double max_panel = kPi / (2.0 * std::max(t, 1e-300));
        const int n_panels = std::max(8, static_cast<int>(std::ceil(len / max_panel)));
        const double h = len / n_panels;
        for (int p_ = 0; p_ < n_panels; ++p_) {
            const double mid = E_a + (p_ + 0.5) * h;
            for (int i = 0; i < 16; ++i) {
                const double E = mid + 0.5 * h * gl.x[i];
                acc += gl.w[i] * density(E) *
                       complex<double>(std::cos(E * t), -std::sin(E * t));
            }
        }
        acc *= 0.5 * h;
        return std::norm(acc);
    }

    // F ~ sum_n (1/(it))^{n+1} [rho^(n)(E_a) e^{-i E_a t} - rho^(n)(E_b) e^{-i E_b t}]
    auto derivs = [&](double E, double d[3]) {
        const double u = (E - E_c) / (sig * sig);
        d[0] = density(E);
        d[1] = -u * d[0];
        d[2] = (u * u - 1.0 / (sig * sig)) * d[0];
    };
    double da[3], db[3];
    derivs(E_a, da);
    derivs(E_b, db);
    const complex<double> it(0.0, t);
    complex<double> F(0.0, 0.0), inv = 1.0 / it;
    const complex<double> ea(std::cos(E_a * t), -std::sin(E_a * t));
    const complex<double> eb(std::cos(E_b * t), -std::sin(E_b * t));
    for (int n = 0; n < 3; ++n) {
        F += inv * (da[n] * ea - db[n] * eb);
        inv /= it;
    }
    return std::norm(F);
}

// ---- random states ----

EigenState random_state(const Envelope& env, const Spectrum& sp, const Dos& dos,
                        std::uint64_t seed) {
    const int K = sp.converged_prefix;
    if (K < 2) throw ConfigError("random state needs a converged spectrum");
    const Eigen::VectorXd E = sp.energies.head(K);

    // the envelope must live inside the converged range (4 sigma for the
    // unbounded kind; the tails beyond carry < 4e-4 of the weight)
    double need_lo = env.E_a, need_hi = env.E_b;
    if (env.kind == EnvelopeKind::gaussian) {
        need_lo = env.E_c - 4.0 * env.width;
        need_hi = env.E_c + 4.0 * env.width;
    }
    if (need_lo < E(0) - 1e-9 || need_hi > E(K - 1) + 1e-9)
        throw ConfigError("envelope leaves the converged spectral range");

    auto rng = make_rng(seed, 0x5EED, 0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    Eigen::VectorXd u(K);
    Eigen::VectorXd theta(K);
    for (int k = 0; k < K; ++k) {
        const double r = uni(rng);
        theta(k) = 2.0 * kPi * uni(rng);
        // levels where the envelope has no measurable weight stay empty; this
        // also covers the spectral edge, where the smooth density vanishes
        const double rho = env.density(E(k));
        const double nu = dos.nu(E(k) / sp.params.j);
        u(k) = (rho > 0.0 && nu > 0.0) ? r * rho / nu : 0.0;
    }
    const double M = u.sum();
    if (!(M > 0.0)) throw ConfigError("envelope has no support on the spectrum");

    Eigen::VectorXcd c(K);
    for (int k = 0; k < K; ++k)
        c(k) = std::polar(std::sqrt(u(k) / M), theta(k));

    EigenState st;
    if (sp.parity >= 0) {
        st.c_plus = c;
        st.e_plus = E;
    } else {
        st.c_minus = c;
        st.e_minus = E;
    }
    return st;
}

double effective_dimension(const Envelope& env, const Eigen::VectorXd& E,
                           const Dos& dos) {
    double s1 = 0.0, s2 = 0.0;
    for (Eigen::Index k = 0; k < E.size(); ++k) {
        const double rho = env.density(E(k));
        const double nu = dos.nu(E(k) / dos.params().j);
        const double r = (rho > 0.0 && nu > 0.0) ? rho / nu : 0.0;
        s1 += r;
        s2 += r * r;
    }
    if (!(s2 > 0.0)) throw ConfigError("envelope has no support on the spectrum");
    return s1 * s1 / s2;
}

double sector_mean_spacing(const Dos& dos, double eps) {
    return 2.0 * dos.params().j / dos.nu(eps);
}

// ---- survival probability ----

Eigen::VectorXd survival_probability(const EigenState& st,
                                     const Eigen::VectorXd& ts) {
    Eigen::VectorXd E, w;
    st.components(E, w);
    Eigen::VectorXd out(ts.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const double t = ts(i);
        double re = 0.0, im = 0.0;
        for (Eigen::Index k = 0; k < E.size(); ++k) {
            const double a = E(k) * t;
            re += w(k) * std::cos(a);
            im -= w(k) * std::sin(a);
        }
        out(i) = re * re + im * im;
    }
    return out;
}

Eigen::VectorXd analytic_sp_chaotic(const Envelope& env, double eta, double D,
                                    double ipr, const Eigen::VectorXd& ts) {
    if (!(eta > 1.0)) throw ConfigError("effective dimension must exceed 1");
    if (!(ipr > 0.0 && ipr <= 1.0)) throw ConfigError("ipr must lie in (0, 1]");
    if (!(D > 0.0)) throw ConfigError("mean spacing must be positive");
    Eigen::VectorXd out(ts.size());
    const double amp = (1.0 - ipr) / (eta - 1.0);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const double t = std::abs(ts(i));
        out(i) = amp * (eta * env.st(t) - b2_orthogonal(D * t / (2.0 * kPi))) + ipr;
    }
    return out;
}

double thouless_time(const Envelope& env, double eta, double D, double ipr) {
    auto value = [&](double t) {
        return (1.0 - ipr) / (eta - 1.0) *
                   (eta * env.st(t) - b2_orthogonal(D * t / (2.0 * kPi))) +
               ipr;
    };
    // the minimum sits between the envelope decay and the Heisenberg time
    const double t_lo = 0.05 / env.width;
    const double t_hi = 40.0 * kPi / D;
    const int n = 2400;
    double best_t = t_lo, best_v = value(t_lo);
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (n - 1));
    double t = t_lo;
    int best_i = 0;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i, t *= ratio) {
        grid[i] = t;
        const double v = value(t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
            best_i = i;
        }
    }
    // golden-section refinement inside the bracketing neighbors
    double a = grid[std::max(0, best_i - 1)];
    double b = grid[std::min(n - 1, best_i + 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while ((b - a) > 1e-12 * best_t) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value(x2);
        }
    }
    return 0.5 * (a + b);
}

double relaxation_time(double nu_c, double delta) {
    if (!(nu_c > 0.0) || !(delta > 0.0))
        throw ConfigError("relaxation time needs nu_c > 0 and delta > 0");
    return kPi * nu_c / (4.0 * std::sqrt(delta));
}

// ---- regular ladder ----

RegularLadder regular_ladder(const EigenState& st, double keep_fraction) {
    Eigen::VectorXd E, w;
    st.components(E, w);
    RegularLadder lad;
    lad.E_c = E.dot(w);
    double var = 0.0;
    for (Eigen::Index k = 0; k < E.size(); ++k)
        var += w(k) * std::pow(E(k) - lad.E_c, 2);
    lad.sigma0 = std::sqrt(std::max(0.0, var));

    const double w_max = w.maxCoeff();
    std::vector<std::pair<double, double>> raw;  // (E, w)
    for (Eigen::Index k = 0; k < E.size(); ++k)
        if (w(k) >= keep_fraction * w_max) raw.emplace_back(E(k), w(k));
    std::sort(raw.begin(), raw.end());

    // parity doublets split by tunneling sit far below the comb resolution;
    // collapse components closer than a twentieth of the width
    std::vector<std::pair<double, double>> kept;
    for (const auto& c : raw) {
        if (!kept.empty() && c.first - kept.back().first < 0.05 * lad.sigma0) {
            const double wt = kept.back().second + c.second;
            kept.back().first =
                (kept.back().first * kept.back().second + c.first * c.second) / wt;
            kept.back().second = wt;
        } else {
            kept.push_back(c);
        }
    }

    std::size_t imax = 0;
    for (std::size_t i = 1; i < kept.size(); ++i)
        if (kept[i].second > kept[imax].second) imax = i;
    if (imax == 0 || imax + 1 >= kept.size())
        throw NumericalError("dominant ladder component has no neighbors");

    lad.omega1 = kept[imax + 1].first - kept[imax].first;
    lad.e2 = 0.5 * (kept[imax + 1].first + kept[imax - 1].first) - kept[imax].first;
    lad.t_d = lad.e2 == 0.0
                  ? std::numeric_limits<double>::infinity()
                  : lad.omega1 / (lad.sigma0 * std::abs(lad.e2));
    return lad;
}

Eigen::VectorXd analytic_sp_regular(const RegularLadder& lad,
                                    const Eigen::VectorXd& ts) {
    if (!(lad.omega1 > 0.0) || !(lad.sigma0 > 0.0))
        throw ConfigError("regular comb needs omega1 > 0 and sigma0 > 0");
    const double amp = lad.omega1 / (2.0 * lad.sigma0 * std::sqrt(kPi));
    const double beta = std::pow(lad.omega1 / (2.0 * lad.sigma0), 2);
    Eigen::VectorXd out(ts.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const double t = ts(i);
        double ex = beta;
        if (std::isfinite(lad.t_d)) ex += std::pow(t / lad.t_d, 2);
        // factor^{n^2} falls below 1e-18 past n_max
        const int n_max = static_cast<int>(std::sqrt(18.0 * std::log(10.0) / ex)) + 1;
        double s = 0.0;
        for (int n_ = n_max; n_ >= 1; --n_)
            s += std::exp(-ex * n_ * n_) * std::cos(n_ * lad.omega1 * t);
        out(i) = amp * (1.0 + 2.0 * s);
    }
    return out;
}

// ---- classical limit ----

ClassicalSurvival classical_survival(const Params& p, const ClassicalState& x0,
                                     const Eigen::VectorXd& ts, int n_samples,
                                     std::uint64_t seed) {
    if (ts.size() < 1 || n_samples < 2)
        throw ConfigError("classical survival needs times and samples");
    for (Eigen::Index i = 0; i + 1 < ts.size(); ++i)
        if (ts(i + 1) <= ts(i)) throw ConfigError("times must increase");
    if (ts(0) < 0.0) throw ConfigError("times must be nonnegative");

    auto rng = make_rng(seed, 0xC1A5, 0);
    ClassicalSurvival out;
    out.ts = ts;
    out.sp = Eigen::VectorXd::Zero(ts.size());

    const long budget = 50L * n_samples + 1000;
    Eigen::VectorXd vals(ts.size());
    for (int i = 0; i < n_samples; ++i) {
        bool done = false;
        while (!done) {
            if (out.escaped >= budget)
                throw NumericalError("classical survival cloud keeps escaping");
            ClassicalState x = wigner_draw(x0, p.j, rng);
            try {
                double t_prev = 0.0;
                for (Eigen::Index k = 0; k < ts.size(); ++k) {
                    advance(p, x, t_prev, ts(k));
                    t_prev = ts(k);
                    const double d = phase_space_distance(x, x0);
                    vals(k) = 4.0 * std::exp(-p.j * d * d);
                }
                done = true;
            } catch (const NumericalError&) {
                ++out.escaped;
            }
        }
        out.sp += vals;
    }
    out.sp /= n_samples;
    out.asymptote = running_time_average(out.ts, out.sp)(ts.size() - 1);
    return out;
}

double explored_fraction(double classical_asymptote, double quantum_ipr) {
    if (!(quantum_ipr > 0.0)) throw ConfigError("quantum asymptote must be positive");
    return 2.0 * classical_asymptote / quantum_ipr;
}

// ---- evolution in state space ----

namespace {

Eigen::VectorXcd evolved_sector(const Spectrum& s, const Eigen::VectorXcd& c,
                                const Eigen::VectorXd& e, double t) {
    const Eigen::Index K = c.size();
    if (K == 0) return Eigen::VectorXcd();
    Eigen::VectorXd re(K), im(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        const complex<double> a = c(k) * std::polar(1.0, -e(k) * t);
        re(k) = a.real();
        im(k) = a.imag();
    }
    const auto V = s.vectors.leftCols(K);
    const Eigen::VectorXd vr = V * re, vi = V * im;
    Eigen::VectorXcd out(vr.size());
    out.real() = vr;
    out.imag() = vi;
    return out;
}

}  // namespace

EntropyCurves evolve_entropies(const Spectrum& plus, const Spectrum& minus,
                               const EigenState& st, const Eigen::VectorXd& ts) {
    if (st.c_plus.size() > plus.converged_prefix ||
        st.c_minus.size() > minus.converged_prefix)
        throw ConfigError("state spills past the converged prefix");
    if (plus.N_max != minus.N_max)
        throw ConfigError("sector cutoffs disagree");

    const Params& p = plus.params;
    const ParityBasis bp = ParityBasis::make(p, plus.N_max, +1);
    const ParityBasis bm = ParityBasis::make(p, minus.N_max, -1);
    const EffBasis full{p.two_j(), plus.N_max};

    EntropyCurves out;
    out.ts = ts;
    out.von_neumann.resize(ts.size());
    out.linear.resize(ts.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(full.dim());
        if (st.c_plus.size() > 0)
            psi += sector_to_full(bp, full,
                                  evolved_sector(plus, st.c_plus, st.e_plus, ts(i)));
        if (st.c_minus.size() > 0)
            psi += sector_to_full(bm, full,
                                  evolved_sector(minus, st.c_minus, st.e_minus, ts(i)));
        psi /= psi.norm();
        const Eigen::MatrixXcd rho = atom_reduced_direct(p, full, psi);
        out.von_neumann(i) = entropy_of_density(rho);
        out.linear(i) = linear_entropy(rho);
    }
    return out;
}

Eigen::MatrixXd eigenbasis_block(const Spectrum& s, const Eigen::MatrixXd& op) {
    const int K = s.converged_prefix;
    if (op.rows() != s.vectors.rows() || op.cols() != s.vectors.rows())
        throw ConfigError("operator size does not match the sector basis");
    const auto V = s.vectors.leftCols(K);
    return V.transpose() * (op * V).eval();
}

Eigen::VectorXd observable_evolution(const Eigen::MatrixXd& O_plus,
                                     const Eigen::MatrixXd& O_minus,
                                     const EigenState& st,
                                     const Eigen::VectorXd& ts) {
    if (O_plus.rows() != st.c_plus.size() || O_minus.rows() != st.c_minus.size())
        throw ConfigError("eigenbasis blocks do not match the state");
    const double n2 = st.norm2();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(ts.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        double acc = 0.0;
        for (int sec = 0; sec < 2; ++sec) {
            const Eigen::VectorXcd& c = sec == 0 ? st.c_plus : st.c_minus;
            const Eigen::VectorXd& e = sec == 0 ? st.e_plus : st.e_minus;
            const Eigen::MatrixXd& O = sec == 0 ? O_plus : O_minus;
            if (c.size() == 0) continue;
            Eigen::VectorXcd ct(c.size());
            for (Eigen::Index k = 0; k < c.size(); ++k)
                ct(k) = c(k) * std::polar(1.0, -e(k) * ts(i));
            const Eigen::VectorXd re = ct.real(), im = ct.imag();
            acc += re.dot(O * re) + im.dot(O * im);
        }
        out(i) = acc / n2;
    }
    return out;
}

// ---- diagonal ensemble ----

ErgodicityReport diagonal_ensemble(const Spectrum& plus, const Spectrum& minus,
                                   const EigenState& st, double eps,
                                   int n_samples, std::uint64_t seed,
                                   double alpha) {
    ErgodicityReport rep;
    const double n2 = st.norm2();
    rep.w_plus = st.c_plus.cwiseAbs2() / n2;
    rep.w_minus = st.c_minus.cwiseAbs2() / n2;

    // degenerate levels break the dephasing argument behind the diagonal form
    std::vector<double> lv;
    for (Eigen::Index k = 0; k < rep.w_plus.size(); ++k)
        if (rep.w_plus(k) > 1e-14) lv.push_back(st.e_plus(k));
    for (Eigen::Index k = 0; k < rep.w_minus.size(); ++k)
        if (rep.w_minus(k) > 1e-14) lv.push_back(st.e_minus(k));
    std::sort(lv.begin(), lv.end());
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < lv.size(); ++i)
        rep.min_gap = std::min(rep.min_gap, lv[i + 1] - lv[i]);
    const double band = lv.empty() ? 0.0 : lv.back() - lv.front();
    rep.degenerate_warning = rep.min_gap < 1e-10 * band;

    // retained columns per sector: heaviest weights up to 1 - 1e-8 coverage
    auto retain = [](const Eigen::VectorXd& w) {
        std::vector<int> idx(w.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return w(a) > w(b); });
        double acc = 0.0;
        std::vector<int> keep;
        for (int k : idx) {
            if (acc >= 1.0 - 1e-8) break;
            if (w(k) <= 0.0) break;
            keep.push_back(k);
            acc += w(k);
        }
        return keep;
    };
    const std::vector<int> kp = retain(rep.w_plus);
    const std::vector<int> km = retain(rep.w_minus);

    const Params& p = plus.params;
    const ParityBasis bp = ParityBasis::make(p, plus.N_max, +1);
    const ParityBasis bm = ParityBasis::make(p, minus.N_max, -1);

    const int ncols = static_cast<int>(kp.size() + km.size());
    Eigen::MatrixXcd sp_states = Eigen::MatrixXcd::Zero(bp.dim(), ncols);
    Eigen::MatrixXcd sm_states = Eigen::MatrixXcd::Zero(bm.dim(), ncols);
    Eigen::VectorXd wcol(ncols);
    for (std::size_t i = 0; i < kp.size(); ++i) {
        sp_states.col(i) = plus.vectors.col(kp[i]).cast<complex<double>>();
        wcol(i) = rep.w_plus(kp[i]);
    }
    for (std::size_t i = 0; i < km.size(); ++i) {
        sm_states.col(kp.size() + i) = minus.vectors.col(km[i]).cast<complex<double>>();
        wcol(kp.size() + i) = rep.w_minus(km[i]);
    }
    wcol /= wcol.sum();

    const std::vector<ShellPoint> pts =
        shell_sample_weighted(p, eps, n_samples, seed);
    const Eigen::MatrixXd vals =
        husimi_shell_values(p, bp, bm, sp_states, sm_states, pts);

    Eigen::ArrayXd qbar = (vals * wcol).array();
    Eigen::ArrayXd wpts(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) wpts(i) = pts[i].w;
    rep.occupation = renyi_occupation_mc(qbar, wpts, alpha);
    return rep;
}

// ---- grids, averages, hole detection ----

Eigen::VectorXd log_time_grid(double sigma0, double t_r, int n) {
    if (!(sigma0 > 0.0) || !(t_r > 0.0) || n < 2)
        throw ConfigError("bad time grid request");
    const double lo = 1e-2 / sigma0, hi = 10.0 * t_r;
    if (hi <= lo) throw ConfigError("time grid endpoints out of order");
    Eigen::VectorXd ts(n);
    const double r = std::pow(hi / lo, 1.0 / (n - 1));
    double t = lo;
    for (int i = 0; i < n; ++i, t *= r) ts(i) = t;
    return ts;
}

Eigen::VectorXd running_mean(const Eigen::VectorXd& ys, int window) {
    const Eigen::Index n = ys.size();
    Eigen::VectorXd out(n);
    const int half = window / 2;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
        const Eigen::Index hi = std::min(n - 1, i + half);
        out(i) = ys.segment(lo, hi - lo + 1).mean();
    }
    return out;
}

Eigen::VectorXd running_time_average(const Eigen::VectorXd& ts,
                                     const Eigen::VectorXd& ys) {
    const Eigen::Index n = ts.size();
    Eigen::VectorXd out(n);
    double acc = 0.0;
    out(0) = ys(0);
    for (Eigen::Index i = 1; i < n; ++i) {
        acc += 0.5 * (ys(i) + ys(i - 1)) * (ts(i) - ts(i - 1));
        out(i) = acc / (ts(i) - ts(0));
    }
    return out;
}

HoleReport correlation_hole(const Eigen::VectorXd& ts, const Eigen::VectorXd& sp,
                            double ipr, double sigma0, int window) {
    if (!(ipr > 0.0)) throw ConfigError("hole detection needs the asymptote");
    const Eigen::VectorXd smooth = running_mean(sp, window);
    HoleReport rep;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        if (ts(i) <= 3.0 / sigma0) continue;  // skip the envelope decay
        if (smooth(i) < best) {
            best = smooth(i);
            rep.t_min = ts(i);
        }
    }
    if (!std::isfinite(best)) throw ConfigError("no samples beyond the envelope decay");
    rep.depth = best / ipr;
    rep.hole = rep.depth < 0.7;
    return rep;
}

}  // namespace dicke
