#include <dicke/twa.hpp>

#include <dicke/rng.hpp>

#include <cmath>
#include <random>

namespace dicke {

double wigner_transform(const TwaObservable& o, const ClassicalState& x, double j)
{
    using Kind = TwaObservable::Kind;
    if (o.kind == Kind::q_pow) return std::pow(x[0], o.n);
    if (o.kind == Kind::p_pow) return std::pow(x[1], o.n);

    const double r2 = x[2] * x[2] + x[3] * x[3];
    const double s = std::sqrt(std::max(0.0, 1.0 - r2 / 4.0));
    const double aj = std::sqrt(j * (j + 1.0));
    double c = 0.0;
    switch (o.kind) {
        case Kind::jx: case Kind::jx2: c = x[2] * s; break;
        case Kind::jy: case Kind::jy2: c = -x[3] * s; break;
        default: c = r2 / 2.0 - 1.0; break;
    }
    if (o.kind == Kind::jx || o.kind == Kind::jy || o.kind == Kind::jz)
        return aj * c - 1.0;
    const double bj = std::sqrt(j * (j + 1.0) * (2.0 * j - 1.0) * (2.0 * j + 3.0));
    return 0.5 * bj * (c * c - 1.0 / 3.0) + aj * aj / 3.0;
}

namespace {

// draw from the coherent-state Wigner cloud; returns false when the Bloch
// image leaves the open disk and the draw must be repeated
bool draw_sample(const ClassicalState& x0, double j, std::mt19937_64& rng,
                 ClassicalState& out)
{
    std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(2.0 * j));

    out[0] = x0[0] + nd(rng);
    out[1] = x0[1] + nd(rng);

    // unit Bloch vector of the center
    const double r2 = x0[2] * x0[2] + x0[3] * x0[3];
    const double s = std::sqrt(std::max(0.0, 1.0 - r2 / 4.0));
    const double n0x = x0[2] * s, n0y = -x0[3] * s, n0z = r2 / 2.0 - 1.0;

    // orthonormal tangent frame at n0
    double e1x, e1y, e1z;
    if (std::abs(n0z) < 0.9) {
        e1x = -n0y; e1y = n0x; e1z = 0.0;  // z-hat cross n0
    } else {
        e1x = 0.0; e1y = -n0z; e1z = n0y;  // x-hat cross n0
    }
    const double n1 = std::sqrt(e1x * e1x + e1y * e1y + e1z * e1z);
    e1x /= n1; e1y /= n1; e1z /= n1;
    const double e2x = n0y * e1z - n0z * e1y;
    const double e2y = n0z * e1x - n0x * e1z;
    const double e2z = n0x * e1y - n0y * e1x;

    // geodesic step of length |t| in the tangent direction
    const double t1 = nd(rng), t2 = nd(rng);
    const double th = std::hypot(t1, t2);
    const double ct = std::cos(th);
    const double st = (th > 1e-300) ? std::sin(th) / th : 1.0;
    const double nx = ct * n0x + st * (t1 * e1x + t2 * e2x);
    const double ny = ct * n0y + st * (t1 * e1y + t2 * e2y);
    const double nz = ct * n0z + st * (t1 * e1z + t2 * e2z);

    const double rr2 = 2.0 * (1.0 + nz);
    if (rr2 >= 4.0 - 1e-9) return false;
    const double ss = std::sqrt((1.0 - nz) / 2.0);
    out[2] = nx / ss;
    out[3] = -ny / ss;
    return true;
}

}  // namespace

ClassicalState wigner_draw(const ClassicalState& x0, double j,
                           std::mt19937_64& rng)
{
    ClassicalState out;
    for (int tries = 0; tries < 200; ++tries)
        if (draw_sample(x0, j, rng, out)) return out;
    throw NumericalError("wigner cloud center pinned to the Bloch boundary");
}

TwaResult twa_propagate(const Params& p, const ClassicalState& x0,
                        const std::vector<TwaObservable>& obs,
                        const std::vector<double>& ts, int n_samples,
                        std::uint64_t seed)
{
    if (ts.empty() || n_samples < 1) throw ConfigError("twa needs times and samples");
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (ts[i + 1] <= ts[i]) throw ConfigError("twa times must increase");
    if (ts.front() < 0.0) throw ConfigError("twa times must be nonnegative");

    const int nt = static_cast<int>(ts.size());
    const int no = static_cast<int>(obs.size());
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(nt, no);
    Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(nt, no);
    Eigen::MatrixXd vals(nt, no);

    auto rng = make_rng(seed, 0x54A1, 0);
    long escaped = 0;
    const long budget = 50L * n_samples + 1000;

    for (int i = 0; i < n_samples; ++i) {
        bool done = false;
        while (!done) {
            if (escaped > budget)
                throw NumericalError("twa cloud keeps escaping the Bloch disk");
            ClassicalState x;
            if (!draw_sample(x0, p.j, rng, x)) {
                ++escaped;
                continue;
            }
            try {
                double t_prev = 0.0;
                for (int k = 0; k < nt; ++k) {
                    if (ts[k] > t_prev) advance(p, x, t_prev, ts[k]);
                    t_prev = ts[k];
                    for (int oi = 0; oi < no; ++oi)
                        vals(k, oi) = wigner_transform(obs[oi], x, p.j);
                }
                done = true;
            } catch (const NumericalError&) {
                ++escaped;  // trajectory hit the boundary: restart this sample
            }
        }
        sum += vals;
        sum2 += vals.cwiseProduct(vals);
    }

    TwaResult r;
    r.ts = ts;
    r.mean = sum / n_samples;
    r.std_err = ((sum2 / n_samples - r.mean.cwiseProduct(r.mean)).cwiseMax(0.0)
                 / std::max(1, n_samples - 1)).cwiseSqrt();
    r.escaped = escaped;
    return r;
}

}  // namespace dicke
