#include <dicke/coherent.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dicke {

namespace {

// Unit Bloch vector of x; the pole convention puts Q = P = 0 at j_z = -1.
std::array<double, 3> bloch_unit(const ClassicalState& x)
{
    const double r2 = x[2] * x[2] + x[3] * x[3];
    const double s = std::sqrt(std::max(0.0, 1.0 - r2 / 4.0));
    return {x[2] * s, -x[3] * s, r2 / 2.0 - 1.0};
}

}  // namespace

double bloch_angle(const ClassicalState& x1, const ClassicalState& x2)
{
    const auto n1 = bloch_unit(x1);
    const auto n2 = bloch_unit(x2);
    const double c = n1[0] * n2[0] + n1[1] * n2[1] + n1[2] * n2[2];
    const double cx = n1[1] * n2[2] - n1[2] * n2[1];
    const double cy = n1[2] * n2[0] - n1[0] * n2[2];
    const double cz = n1[0] * n2[1] - n1[1] * n2[0];
    // atan2 form stays accurate near 0 and pi where acos degrades
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), c);
}

double phase_space_distance(const ClassicalState& x1, const ClassicalState& x2)
{
    const double dq = x1[0] - x2[0];
    const double dp = x1[1] - x2[1];
    const double th = bloch_angle(x1, x2);
    return std::sqrt(dq * dq + dp * dp + th * th);
}

double coherent_overlap_log(const ClassicalState& x1, const ClassicalState& x2, double j)
{
    const double dq = x1[0] - x2[0];
    const double dp = x1[1] - x2[1];
    const double c = std::cos(0.5 * bloch_angle(x1, x2));
    if (c <= 0.0) return -std::numeric_limits<double>::infinity();
    return -0.5 * j * (dq * dq + dp * dp) + 4.0 * j * std::log(c);
}

double coherent_overlap_sq(const ClassicalState& x1, const ClassicalState& x2, double j)
{
    return std::exp(coherent_overlap_log(x1, x2, j));
}

double wigner_coherent(const ClassicalState& x0, const ClassicalState& x, double j)
{
    const double d = phase_space_distance(x0, x);
    const double jpi = j / M_PI;
    return jpi * jpi * std::exp(-j * d * d);
}

Eigen::VectorXcd coherent_efficient(const Params& p, const EffBasis& basis,
                                    const ClassicalState& x)
{
    using cplx = std::complex<double>;
    const double j = p.j;
    const int tj = basis.two_j;
    const double G = p.G();

    const cplx alpha = std::sqrt(j / 2.0) * cplx(x[0], x[1]);

    // Bloch parameter measured from the j_z = -1 pole and its image
    // w = (1+z)/(1-z), the natural parameter in the J_x eigenbasis.
    const double r2 = x[2] * x[2] + x[3] * x[3];
    const double den = std::sqrt(std::max(0.0, 4.0 - r2));
    cplx z = (den < 1e-12) ? cplx(x[2], x[3]) * 1e18
                           : cplx(x[2], x[3]) / den;

    bool pole_plus = false;   // w -> infinity: only m_x = +j survives
    double log_w_abs = 0.0;
    double arg_w = 0.0;
    const cplx zm1 = cplx(1.0, 0.0) - z;
    if (std::abs(zm1) < 1e-14) {
        pole_plus = true;
    } else {
        const cplx w = (cplx(1.0, 0.0) + z) / zm1;
        const double aw = std::abs(w);
        if (aw == 0.0) {
            log_w_abs = -std::numeric_limits<double>::infinity();
        } else {
            log_w_abs = std::log(aw);
            arg_w = std::arg(w);
        }
    }
    // ln(1 + |w|^2), stable against overflow of |w|^2
    double log1pw2 = 0.0;
    if (!pole_plus) {
        if (log_w_abs > 350.0) log1pw2 = 2.0 * log_w_abs;
        else if (std::isfinite(log_w_abs)) log1pw2 = std::log1p(std::exp(2.0 * log_w_abs));
    }

    // <j, m_x | w> = sqrt(binom(2j, j+m)) w^{j+m} / (1 + |w|^2)^j, a = j + m,
    // times the global phase ((1-z)/|1-z|)^{2j} that aligns the closed form
    // with the rotation convention of spin_rotation_half_pi.
    const double chi = pole_plus ? 0.0 : tj * std::arg(zm1);
    Eigen::VectorXcd spin(tj + 1);
    const double lg_tj = std::lgamma(tj + 1.0);
    for (int a = 0; a <= tj; ++a) {
        if (pole_plus) {
            spin(a) = (a == tj) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            continue;
        }
        if (a == 0) {
            spin(a) = std::polar(std::exp(-j * log1pw2), chi);
            continue;
        }
        const double lb = 0.5 * (lg_tj - std::lgamma(a + 1.0) - std::lgamma(tj - a + 1.0));
        const double lm = lb + a * log_w_abs - j * log1pw2;
        spin(a) = (lm < -745.0) ? cplx(0.0, 0.0) : std::polar(std::exp(lm), a * arg_w + chi);
    }

    Eigen::VectorXcd out(basis.dim());
    for (int two_m = -tj; two_m <= tj; two_m += 2) {
        const double m = 0.5 * two_m;
        const int a = (two_m + tj) / 2;
        const double am = -G * m;          // displaced-oscillator center
        const cplx delta = alpha - am;
        const double d2 = std::norm(delta);
        const int base = basis.index(two_m, 0);
        if (d2 < 1200.0) {
            // stable upward chain: c_N = delta^N / sqrt(N!) <alpha_m|alpha> <m|w>
            cplx c = std::polar(std::exp(-0.5 * d2), am * alpha.imag()) * spin(a);
            for (int N = 0; N <= basis.N_max; ++N) {
                out(base + N) = c;
                c *= delta / std::sqrt(N + 1.0);
            }
        } else {
            // far displacement: the chain head underflows, build each term in logs
            const double ld = 0.5 * std::log(d2);
            const double ph0 = am * alpha.imag() + std::arg(spin(a));
            const double lsp = (std::abs(spin(a)) > 0.0)
                                   ? std::log(std::abs(spin(a)))
                                   : -std::numeric_limits<double>::infinity();
            const double argd = std::arg(delta);
            for (int N = 0; N <= basis.N_max; ++N) {
                const double lm = -0.5 * d2 + N * ld - 0.5 * std::lgamma(N + 1.0) + lsp;
                out(base + N) = (lm < -745.0) ? cplx(0.0, 0.0)
                                              : std::polar(std::exp(lm), ph0 + N * argd);
            }
        }
    }
    return out;
}

Eigen::VectorXcd coherent_sector(const Params& p, const ParityBasis& basis,
                                 const ClassicalState& x)
{
    const EffBasis eff(basis.two_j, basis.N_max);
    const Eigen::VectorXcd full = coherent_efficient(p, eff, x);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Eigen::VectorXcd out(basis.dim());
    for (int r = 0; r < basis.dim(); ++r) {
        const auto [two_m, N] = basis.states[r];
        if (two_m == 0) {
            out(r) = full(eff.index(0, N));
            continue;
        }
        const double sign = (N % 2 == 0) ? 1.0 : -1.0;
        out(r) = inv_sqrt2 * (full(eff.index(two_m, N))
                              + basis.parity * sign * full(eff.index(-two_m, N)));
    }
    return out;
}

CoherentExpansion coherent_expand(const Spectrum& plus, const Spectrum& minus,
                                  const ClassicalState& x)
{
    const auto expand = [&x](const Spectrum& s) -> Eigen::VectorXcd {
        const ParityBasis basis = ParityBasis::make(s.params, s.N_max, s.parity);
        const Eigen::VectorXcd a = coherent_sector(s.params, basis, x);
        const Eigen::Index n = std::min<Eigen::Index>(s.converged_prefix, s.vectors.cols());
        return s.vectors.leftCols(n).transpose() * a;
    };
    CoherentExpansion e;
    e.c_plus = expand(plus);
    e.c_minus = expand(minus);
    e.norm2 = e.c_plus.squaredNorm() + e.c_minus.squaredNorm();
    return e;
}

}  // namespace dicke
