#include "cycform/montecarlo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cycform {

AngleGrad harmonic_angle(double px, double py, double zx, double zy) {
    double w1x = zx - px, w1y = zy - py;
    double w2x = zx - px, w2y = zy + py;
    double r1 = w1x * w1x + w1y * w1y;
    double r2 = w2x * w2x + w2y * w2y;
    if (r1 == 0.0 || r2 == 0.0) throw std::invalid_argument("harmonic_angle: coincident points");
    AngleGrad g;
    g.phi = std::atan2(w1y, w1x) - std::atan2(w2y, w2x);
    g.dpx = w1y / r1 - w2y / r2;
    g.dpy = -w1x / r1 - w2x / r2;
    g.dzx = -g.dpx;
    g.dzy = w1x / r1 - w2x / r2;
    return g;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kR0 = 1e-9;    // inner cutoff of the log-radial components
constexpr double kRmax = 4.0;   // outer radius of the log-radial components
constexpr double kBeta = 0.5;   // mixture mass on the singular components

double bulk_density(double x, double y) {
    // x ~ Cauchy(1/2, 1), y ~ half-Cauchy(1): heavy tails cover all of H
    return (1.0 / (M_PI * (1.0 + (x - 0.5) * (x - 0.5)))) * (2.0 / (M_PI * (1.0 + y * y)));
}

// density (in the plane) of the log-radial component around (ax, ay)
double sing_density(double x, double y, double ax, double ay) {
    double r2 = (x - ax) * (x - ax) + (y - ay) * (y - ay);
    double r = std::sqrt(r2);
    if (r < kR0 || r > kRmax) return 0.0;
    double span = (ay <= 1e-14) ? M_PI : kTwoPi;
    return 1.0 / (span * std::log(kRmax / kR0) * r2);
}

struct Accum {
    double sum = 0.0;
    double sumsq = 0.0;
    long long count = 0;
};

struct Slice {
    int n = 0, m = 0;
    std::vector<int> interior;  // ground indices 1..m-2 (0-based ground index)
    std::vector<int> free_p;    // aerial indices with 2 free coordinates
    bool theta_gauge = false;   // m == 1: p_0 on the unit circle
    int dimension = 0;
};

Slice make_slice(int n, int m) {
    Slice s;
    s.n = n;
    s.m = m;
    if (m >= 2) {
        for (int i = 0; i < n; ++i) s.free_p.push_back(i);
        for (int j = 1; j <= m - 2; ++j) s.interior.push_back(j);
    } else if (m == 1) {
        s.theta_gauge = true;
        for (int i = 1; i < n; ++i) s.free_p.push_back(i);
    } else {
        for (int i = 1; i < n; ++i) s.free_p.push_back(i);
    }
    s.dimension = 2 * n + m - 2;
    return s;
}

void run_chunk(const AdmissibleGraph& g, const Slice& slice,
               const std::vector<std::pair<int, int>>& edges, std::uint64_t seed, long long count,
               Accum& acc) {
    SplitMix64 rng(seed);
    int n = g.n, m = g.m;
    int D = slice.dimension;
    std::vector<double> px(n), py(n), qx(m);
    Eigen::MatrixXd M(D, D);
    int orient = (static_cast<int>(slice.interior.size()) % 2 == 0) ? 1 : -1;

    for (long long it = 0; it < count; ++it) {
        double invdens = 1.0;
        bool ok = true;
        // gauge-fixed pieces
        if (m >= 2) {
            qx[0] = 0.0;
            qx[m - 1] = 1.0;
        } else if (m == 1) {
            qx[0] = 0.0;
        }
        double theta = 0.0;
        if (slice.theta_gauge) {
            theta = M_PI * rng.uniform();
            px[0] = std::cos(theta);
            py[0] = std::sin(theta);
        } else if (m == 0) {
            px[0] = 0.0;
            py[0] = 1.0;
        }
        // interior ground points: uniform on (0,1), ordered region enforced by mask
        double prev = 0.0;
        for (int j : slice.interior) {
            qx[j] = rng.uniform();
            if (qx[j] <= prev || qx[j] >= 1.0) ok = false;
            prev = qx[j];
        }
        // aerial points: bulk + per-anchor log-radial mixture
        for (size_t fi = 0; fi < slice.free_p.size() && ok; ++fi) {
            int i = slice.free_p[fi];
            std::vector<std::pair<double, double>> anchors;
            for (int j = 0; j < m; ++j) anchors.emplace_back(qx[j], 0.0);
            if (m <= 1 && n >= 1 && i != 0) anchors.emplace_back(px[0], py[0]);  // gauge-fixed p_1
            for (size_t f2 = 0; f2 < fi; ++f2)
                anchors.emplace_back(px[slice.free_p[f2]], py[slice.free_p[f2]]);
            int J = static_cast<int>(anchors.size());
            double u = rng.uniform();
            double x, y;
            if (u < 1.0 - kBeta || J == 0) {
                x = 0.5 + std::tan(M_PI * (rng.uniform() - 0.5));
                y = std::abs(std::tan(M_PI * (rng.uniform() - 0.5)));
            } else {
                int jj = std::min(static_cast<int>((u - (1.0 - kBeta)) / kBeta * J), J - 1);
                double r = std::exp(std::log(kR0) + rng.uniform() * std::log(kRmax / kR0));
                double span = (anchors[jj].second <= 1e-14) ? M_PI : kTwoPi;
                double th = rng.uniform() * span;
                x = anchors[jj].first + r * std::cos(th);
                y = anchors[jj].second + r * std::sin(th);
            }
            y = std::abs(y);
            if (y <= 0.0) {
                ok = false;
                break;
            }
            double dens = (J == 0 ? 1.0 : (1.0 - kBeta)) * bulk_density(x, y);
            if (J > 0) {
                for (auto& [ax, ay] : anchors) {
                    double dsum = sing_density(x, y, ax, ay);
                    if (ay > 1e-14) dsum += sing_density(x, -y, ax, ay);
                    dens += kBeta / J * dsum;
                }
            }
            px[i] = x;
            py[i] = y;
            invdens /= dens;
        }
        if (!ok) {
            acc.count += 1;  // rejected samples count as zero contributions
            continue;
        }
        // matrix of angle-form derivatives over the slice coordinates
        M.setZero();
        int col_theta = slice.theta_gauge ? 0 : -1;
        auto col_px = [&](int i) {
            for (size_t fi = 0; fi < slice.free_p.size(); ++fi)
                if (slice.free_p[fi] == i)
                    return (slice.theta_gauge ? 1 : 0) + 2 * static_cast<int>(fi);
            return -1;
        };
        int q_col0 = (slice.theta_gauge ? 1 : 0) + 2 * static_cast<int>(slice.free_p.size());
        auto col_q = [&](int j) {
            for (size_t t = 0; t < slice.interior.size(); ++t)
                if (slice.interior[t] == j) return q_col0 + static_cast<int>(t);
            return -1;
        };
        bool degenerate = false;
        for (size_t e = 0; e < edges.size() && !degenerate; ++e) {
            auto [src, tgt] = edges[e];
            int si = src - 1;
            double zx, zy;
            bool ground = tgt < 0;
            int ti = ground ? -tgt - 1 : tgt - 1;
            if (ground) {
                zx = qx[ti];
                zy = 0.0;
            } else {
                zx = px[ti];
                zy = py[ti];
            }
            double ddx = zx - px[si], ddy1 = zy - py[si], ddy2 = zy + py[si];
            if ((ddx == 0 && ddy1 == 0) || (ddx == 0 && ddy2 == 0)) {
                degenerate = true;
                break;
            }
            AngleGrad ag = harmonic_angle(px[si], py[si], zx, zy);
            int c = col_px(si);
            if (c >= 0) {
                M(e, c) += ag.dpx;
                M(e, c + 1) += ag.dpy;
            }
            if (si == 0 && slice.theta_gauge) {
                M(e, col_theta) += ag.dpx * (-M_PI * py[0]) + ag.dpy * (M_PI * px[0]);
            }
            if (!ground) {
                int ct = col_px(ti);
                if (ct >= 0) {
                    M(e, ct) += ag.dzx;
                    M(e, ct + 1) += ag.dzy;
                }
                if (ti == 0 && slice.theta_gauge)
                    M(e, col_theta) += ag.dzx * (-M_PI * py[0]) + ag.dzy * (M_PI * px[0]);
            } else {
                int cq = col_q(ti);
                if (cq >= 0) M(e, cq) += ag.dzx;
            }
        }
        double val = 0.0;
        if (!degenerate) val = M.determinant() * invdens * orient;
        acc.sum += val;
        acc.sumsq += val * val;
        acc.count += 1;
    }
}

}  // namespace

WeightEstimate weight_mc(const AdmissibleGraph& g, long long samples, std::uint64_t seed,
                         int workers) {
    if (!g.valid()) throw std::invalid_argument("weight_mc: invalid graph");
    if (g.form_degree() != g.config_dimension())
        throw std::invalid_argument("weight_mc: form degree != configuration dimension");
    Slice slice = make_slice(g.n, g.m);
    auto edges = g.wedge_order_edges();

    if (workers < 1) workers = 1;
    std::vector<Accum> accs(workers);
    std::vector<std::thread> th;
    long long base = samples / workers, extra = samples % workers;
    for (int w = 0; w < workers; ++w) {
        long long cnt = base + (w < extra ? 1 : 0);
        std::uint64_t wseed = SplitMix64(seed ^ (0x9e3779b97f4a7c15ULL * (w + 1))).next();
        th.emplace_back(run_chunk, std::cref(g), std::cref(slice), std::cref(edges), wseed, cnt,
                        std::ref(accs[w]));
    }
    for (auto& t : th) t.join();
    Accum total;
    for (auto& a : accs) {  // deterministic order
        total.sum += a.sum;
        total.sumsq += a.sumsq;
        total.count += a.count;
    }
    double mean = total.sum / static_cast<double>(total.count);
    double var = total.sumsq / static_cast<double>(total.count) - mean * mean;
    if (var < 0) var = 0;
    double pref = 1.0;
    for (int v = 1; v <= g.n; ++v) {
        int kv = g.dashed_count(v);
        for (int i = 2; i <= kv; ++i) pref *= i;
        int sv = g.star_size(v);
        for (int i = 2; i <= sv; ++i) pref /= i;
    }
    double scale = pref / std::pow(kTwoPi, slice.dimension);
    WeightEstimate est;
    est.value = scale * mean;
    est.std_error = std::abs(scale) * std::sqrt(var / static_cast<double>(total.count));
    est.samples = samples;
    est.seed = seed;
    return est;
}

namespace {
std::mutex cache_mutex;
std::map<std::string, WeightEstimate> weight_cache;
}  // namespace

WeightEstimate weight_mc_cached(const AdmissibleGraph& g, long long samples, std::uint64_t seed,
                                int workers) {
    std::string key = g.canonical_key() + "|" + std::to_string(samples) + "|" +
                      std::to_string(seed) + "|" + std::to_string(workers);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = weight_cache.find(key);
        if (it != weight_cache.end()) return it->second;
    }
    WeightEstimate e = weight_mc(g, samples, seed, workers);
    std::lock_guard<std::mutex> lk(cache_mutex);
    weight_cache.emplace(std::move(key), e);
    return e;
}

std::uint64_t graph_seed(std::uint64_t master, const AdmissibleGraph& g) {
    std::uint64_t h = master ^ 0xcbf29ce484222325ULL;
    for (char c : g.canonical_key()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return SplitMix64(h).next();
}

}  // namespace cycform
