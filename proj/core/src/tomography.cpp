#include "mzsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "mzsim/csv.hpp"

namespace mzsim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Plateau (distinguishable) and dip (indistinguishable) coincidence
// probabilities on the 2x2 submatrix picked out by one HOM entry.
void pair_rates(const Matrix &u, const HomEntry &e, double &dist, double &ind) {
    Complex a = u(e.out1, e.in1), b = u(e.out1, e.in2);
    Complex c = u(e.out2, e.in1), d = u(e.out2, e.in2);
    dist = std::norm(a) * std::norm(d) + std::norm(b) * std::norm(c);
    ind = std::norm(a * d + b * c);
}

double ideal_visibility(const Matrix &u, const HomEntry &e) {
    double dist, ind;
    pair_rates(u, e, dist, ind);
    if (dist < 1e-14) return kNan;
    return (dist - ind) / dist;
}

double poisson_sample(std::mt19937_64 &rng, double mean) {
    if (!(mean > 0.0)) return 0.0;
    std::poisson_distribution<long long> dist(mean);
    return static_cast<double>(dist(rng));
}

struct Observation {
    double value = 0.0;
    double weight = 1.0;
    // kind 0: singles cell (i, j); kind 1: hom entry index k.
    int kind = 0;
    int i = 0, j = 0, k = 0;
};

// Variance model for a visibility estimated as 1 - dip/plateau from Poisson
// counts; plateau_prob comes from the singles data.
double visibility_variance(double vis, double plateau_prob, double shots) {
    double v = std::clamp(vis, -1.0, 1.0);
    double var = (1.0 - v) * (2.0 - v) / (std::max(plateau_prob, 1e-3) * shots);
    return std::max(var, 1e-2 / (shots * shots));
}

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f = 0.0;
};

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f,
                             const Eigen::VectorXd &x0, double step, int max_iter) {
    const int d = static_cast<int>(x0.size());
    std::vector<std::pair<double, Eigen::VectorXd>> simplex;
    simplex.reserve(d + 1);
    simplex.emplace_back(f(x0), x0);
    for (int k = 0; k < d; ++k) {
        Eigen::VectorXd xk = x0;
        xk(k) += step;
        simplex.emplace_back(f(xk), xk);
    }
    auto by_value = [](const auto &a, const auto &b) { return a.first < b.first; };
    for (int it = 0; it < max_iter; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        if (simplex.back().first - simplex.front().first <
            1e-14 * (1.0 + std::abs(simplex.front().first))) {
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
        for (int k = 0; k < d; ++k) centroid += simplex[k].second;
        centroid /= d;
        const Eigen::VectorXd &worst = simplex.back().second;
        double f_worst = simplex.back().first;
        double f_best = simplex.front().first;
        double f_second = simplex[d - 1].first;

        Eigen::VectorXd xr = centroid + (centroid - worst);
        double fr = f(xr);
        if (fr < f_best) {
            Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst);
            double fe = f(xe);
            if (fe < fr) {
                simplex.back() = {fe, xe};
            } else {
                simplex.back() = {fr, xr};
            }
        } else if (fr < f_second) {
            simplex.back() = {fr, xr};
        } else {
            bool outside = fr < f_worst;
            Eigen::VectorXd xc = outside ? centroid + 0.5 * (xr - centroid)
                                         : centroid + 0.5 * (worst - centroid);
            double fc = f(xc);
            if (fc < std::min(fr, f_worst)) {
                simplex.back() = {fc, xc};
            } else {
                for (int k = 1; k <= d; ++k) {
                    simplex[k].second =
                        simplex[0].second + 0.5 * (simplex[k].second - simplex[0].second);
                    simplex[k].first = f(simplex[k].second);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return {simplex.front().second, simplex.front().first};
}

}  // namespace

void TomographyDataset::validate() const {
    if (singles.rows() == 0 || singles.rows() != singles.cols()) {
        throw IncompleteDatasetError("singles matrix must be square and non-empty");
    }
    const int n = dim();
    if (n < 2) throw InvalidParameterError("tomography needs dim >= 2");
    if (n > 4) throw MatrixTooLargeError("tomography supports dim <= 4");
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            double v = singles(i, j);
            if (!std::isfinite(v) || v < -1e-12) {
                throw InvalidParameterError("singles probabilities must be finite and non-negative");
            }
            sum += v;
        }
        if (!(sum > 0.0)) {
            throw IncompleteDatasetError("a singles row carries no probability");
        }
    }
    for (const auto &e : hom) {
        bool in_range = e.in1 >= 0 && e.in1 < n && e.in2 >= 0 && e.in2 < n &&
                        e.out1 >= 0 && e.out1 < n && e.out2 >= 0 && e.out2 < n;
        if (!in_range || e.in1 == e.in2 || e.out1 == e.out2) {
            throw InvalidParameterError("HOM entry indices out of range or repeated");
        }
        if (!(std::abs(e.visibility) <= 1.0 + 1e-9)) {
            throw InvalidParameterError("HOM visibility outside [-1, 1]");
        }
    }
    if (!(shots >= 0.0)) throw InvalidParameterError("shots must be non-negative");
    if (!(pair_overlap > 0.0 && pair_overlap <= 1.0)) {
        throw InvalidParameterError("pair overlap must lie in (0, 1]");
    }
}

TomographyDataset simulate_dataset(const Unitary &u, double shots,
                                   const PhotonPairModel &pair, std::uint64_t seed) {
    pair.validate();
    if (shots < 0) throw InvalidParameterError("shots must be non-negative");
    const int n = u.dim();
    if (n < 2) throw InvalidParameterError("tomography needs dim >= 2");
    if (n > 4) throw MatrixTooLargeError("tomography supports dim <= 4");
    std::mt19937_64 rng(seed);

    TomographyDataset data;
    data.shots = shots;
    data.pair_overlap = pair.at_delay(0.0).effective_overlap();
    data.singles.resize(n, n);
    for (int i = 0; i < n; ++i) {
        if (shots == 0) {
            for (int j = 0; j < n; ++j) data.singles(i, j) = std::norm(u(j, i));
            continue;
        }
        std::vector<double> counts(n);
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            counts[j] = poisson_sample(rng, shots * std::norm(u(j, i)));
            total += counts[j];
        }
        for (int j = 0; j < n; ++j) {
            data.singles(i, j) = total > 0 ? counts[j] / total : std::norm(u(j, i));
        }
    }

    const double x = data.pair_overlap;
    for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = i1 + 1; i2 < n; ++i2) {
            for (int j1 = 0; j1 < n; ++j1) {
                for (int j2 = j1 + 1; j2 < n; ++j2) {
                    HomEntry e{i1, i2, j1, j2, 0.0};
                    double dist, ind;
                    pair_rates(u.matrix(), e, dist, ind);
                    if (dist < 1e-12) continue;  // no plateau, no visibility
                    double mix = x * ind + (1.0 - x) * dist;
                    double plateau = dist + pair.accidental_rate;
                    double dip = mix + pair.accidental_rate;
                    if (shots == 0) {
                        e.visibility = (plateau - dip) / plateau;
                    } else {
                        double np = poisson_sample(rng, shots * plateau);
                        double nd = poisson_sample(rng, shots * dip);
                        e.visibility = np > 0 ? (np - nd) / np : 0.0;
                        e.visibility = std::clamp(e.visibility, -1.0, 1.0);
                    }
                    data.hom.push_back(e);
                }
            }
        }
    }
    return data;
}

namespace {

ReconstructedUnitary reconstruct_dim2(const Eigen::MatrixXd &singles,
                                      const TomographyDataset &dataset,
                                      bool loss, bool degenerate) {
    // In the fixed gauge every 2x2 unitary is [[cos t, sin t], [sin t, -cos t]]
    // and both the singles and the HOM visibility depend on t alone.
    std::vector<Observation> obs;
    const double shots = dataset.shots;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Observation o;
            o.kind = 0;
            o.i = i;
            o.j = j;
            o.value = singles(i, j);
            if (shots > 0) {
                double p = std::clamp(o.value, 0.0, 1.0);
                o.weight = shots / (p * (1.0 - p) + 1.0 / shots);
            }
            obs.push_back(o);
        }
    }
    double plateau_est = singles(0, 0) * singles(1, 1) + singles(0, 1) * singles(1, 0);
    for (std::size_t k = 0; k < dataset.hom.size(); ++k) {
        Observation o;
        o.kind = 1;
        o.k = static_cast<int>(k);
        o.value = dataset.hom[k].visibility / dataset.pair_overlap;
        if (shots > 0) {
            double var = visibility_variance(dataset.hom[k].visibility, plateau_est, shots) /
                         (dataset.pair_overlap * dataset.pair_overlap);
            o.weight = 1.0 / var;
        }
        obs.push_back(o);
    }

    auto predict = [](double theta, const Observation &o) {
        double c2 = std::cos(theta) * std::cos(theta);
        double s2 = 1.0 - c2;
        if (o.kind == 0) return o.i == o.j ? c2 : s2;
        double m = c2 - s2;  // cos 2t
        return (1.0 - m * m) / (1.0 + m * m);
    };
    auto misfit = [&](double theta) {
        double chi2 = 0.0;
        for (const auto &o : obs) {
            double r = o.value - predict(theta, o);
            chi2 += o.weight * r * r;
        }
        return chi2;
    };

    const int scan_points = 2000;
    double best_theta = 0.0, best_chi2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= scan_points; ++k) {
        double theta = (M_PI / 2) * k / scan_points;
        double chi2 = misfit(theta);
        if (chi2 < best_chi2) {
            best_chi2 = chi2;
            best_theta = theta;
        }
    }
    double lo = std::max(0.0, best_theta - M_PI / 2 / scan_points);
    double hi = std::min(M_PI / 2, best_theta + M_PI / 2 / scan_points);
    for (int it = 0; it < 80; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        // <= so flat regions collapse toward the lower edge
        if (misfit(m1) <= misfit(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    double theta = (lo + hi) / 2;

    double c = std::cos(theta), s = std::sin(theta);
    Matrix m(2, 2);
    m << Complex(c, 0), Complex(s, 0), Complex(s, 0), Complex(-c, 0);

    ReconstructedUnitary result{canonical_gauge(Unitary::from_matrix(m)),
                                {},
                                0.0,
                                loss,
                                degenerate};
    double chi2 = 0.0, wsum = 0.0;
    for (const auto &o : obs) {
        double r = o.value - predict(theta, o);
        chi2 += o.weight * r * r;
        wsum += o.weight;
    }
    result.residual = wsum > 0 ? std::sqrt(chi2 / wsum) : 0.0;

    if (shots == 0) {
        result.parameter_uncertainties = {0.0};
    } else {
        // Gauss-Newton curvature with finite-difference prediction slopes.
        const double h = 1e-6;
        double curv = 0.0;
        for (const auto &o : obs) {
            double up = predict(std::min(theta + h, M_PI / 2), o);
            double dn = predict(std::max(theta - h, 0.0), o);
            double slope = (up - dn) / (2 * h);
            curv += o.weight * slope * slope;
        }
        result.parameter_uncertainties = {
            curv > 0 ? 1.0 / std::sqrt(curv)
                     : std::numeric_limits<double>::infinity()};
    }
    return result;
}

ReconstructedUnitary reconstruct_numeric(const Eigen::MatrixXd &singles,
                                         const TomographyDataset &dataset,
                                         bool loss, bool degenerate) {
    const int n = static_cast<int>(singles.rows());
    const int d = (n - 1) * (n - 1);
    if (static_cast<int>(dataset.hom.size()) < d) {
        throw IncompleteDatasetError(
            "phase reconstruction needs at least (dim-1)^2 HOM visibilities");
    }
    Eigen::MatrixXd moduli(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) moduli(j, i) = std::sqrt(singles(i, j));
    }

    const double shots = dataset.shots;
    std::vector<double> vis_scaled(dataset.hom.size());
    std::vector<double> vis_weight(dataset.hom.size(), 1.0);
    for (std::size_t k = 0; k < dataset.hom.size(); ++k) {
        const auto &e = dataset.hom[k];
        vis_scaled[k] = e.visibility / dataset.pair_overlap;
        if (shots > 0) {
            double plateau = singles(e.in1, e.out1) * singles(e.in2, e.out2) +
                             singles(e.in1, e.out2) * singles(e.in2, e.out1);
            vis_weight[k] =
                (dataset.pair_overlap * dataset.pair_overlap) /
                visibility_variance(e.visibility, plateau, shots);
        }
    }
    Eigen::MatrixXd singles_weight = Eigen::MatrixXd::Ones(n, n);
    if (shots > 0) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double p = std::clamp(singles(i, j), 0.0, 1.0);
                singles_weight(i, j) = shots / (p * (1.0 - p) + 1.0 / shots);
            }
        }
    }

    auto assemble = [&](const Eigen::VectorXd &phases) {
        Matrix a(n, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                double phi = 0.0;
                if (i >= 1 && j >= 1) phi = phases((j - 1) * (n - 1) + (i - 1));
                a(j, i) = std::polar(moduli(j, i), phi);
            }
        }
        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Matrix proj = svd.matrixU() * svd.matrixV().adjoint();
        return proj;
    };
    auto misfit_of = [&](const Matrix &proj) {
        double chi2 = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double r = singles(i, j) - std::norm(proj(j, i));
                chi2 += singles_weight(i, j) * r * r;
            }
        }
        for (std::size_t k = 0; k < dataset.hom.size(); ++k) {
            double pred = ideal_visibility(proj, dataset.hom[k]);
            if (std::isnan(pred)) continue;
            double r = vis_scaled[k] - pred;
            chi2 += vis_weight[k] * r * r;
        }
        return chi2;
    };
    auto objective = [&](const Eigen::VectorXd &phases) {
        return misfit_of(assemble(phases));
    };

    NelderMeadResult best;
    best.f = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 8; ++restart) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(d);
        if (restart > 0) {
            std::mt19937_64 rng(9000 + restart);
            std::uniform_real_distribution<double> uni(-M_PI, M_PI);
            for (int k = 0; k < d; ++k) x0(k) = uni(rng);
        }
        NelderMeadResult run = nelder_mead(objective, x0, 0.4, 400 * d);
        if (run.f < best.f) best = run;
    }

    Matrix proj = assemble(best.x);
    ReconstructedUnitary result{
        canonical_gauge(Unitary::from_matrix(proj, 10 * Unitary::kDeviationTolerance)),
        {},
        0.0,
        loss,
        degenerate};
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) wsum += singles_weight(i, j);
    }
    for (double w : vis_weight) wsum += w;
    result.residual = wsum > 0 ? std::sqrt(best.f / wsum) : 0.0;
    return result;
}

}  // namespace

ReconstructedUnitary reconstruct(const TomographyDataset &dataset) {
    dataset.validate();
    const int n = dataset.dim();
    Eigen::MatrixXd singles = dataset.singles.cwiseMax(0.0);
    bool loss = false;
    for (int i = 0; i < n; ++i) {
        double sum = singles.row(i).sum();
        if (std::abs(sum - 1.0) > 1e-6) loss = true;
        singles.row(i) /= sum;
    }
    bool degenerate = false;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // a vanishing modulus leaves its phase unconstrained; 1e-12 in
            // probability is amplitude 1e-6, well under any fit resolution
            if (singles(i, j) <= 1e-12) degenerate = true;
        }
    }
    if (n == 2) return reconstruct_dim2(singles, dataset, loss, degenerate);
    return reconstruct_numeric(singles, dataset, loss, degenerate);
}

double gate_fidelity(const Unitary &u_theo, const Unitary &u_exp) {
    if (u_theo.dim() != u_exp.dim()) {
        throw DimensionMismatchError("gate_fidelity: dimensions differ");
    }
    double f = std::abs((u_theo.matrix().adjoint() * u_exp.matrix()).trace()) /
               u_theo.dim();
    return std::min(f, 1.0);
}

Unitary canonical_gauge(const Unitary &u, double tol) {
    const int n = u.dim();
    const Matrix &m = u.matrix();
    std::vector<Complex> row_f(n, Complex(1, 0)), col_f(n, Complex(1, 0));
    std::vector<bool> row_done(n, false), col_done(n, false);
    std::vector<int> queue;
    for (int start = 0; start < 2 * n; ++start) {
        bool is_row = start < n;
        int idx = is_row ? start : start - n;
        if (is_row ? row_done[idx] : col_done[idx]) continue;
        (is_row ? row_done[idx] : col_done[idx]) = true;
        queue.clear();
        queue.push_back(start);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int node = queue[qi];
            if (node < n) {
                int i = node;
                for (int j = 0; j < n; ++j) {
                    if (col_done[j] || std::abs(m(i, j)) <= tol) continue;
                    Complex v = row_f[i] * m(i, j);
                    col_f[j] = std::conj(v) / std::abs(v);
                    col_done[j] = true;
                    queue.push_back(n + j);
                }
            } else {
                int j = node - n;
                for (int i = 0; i < n; ++i) {
                    if (row_done[i] || std::abs(m(i, j)) <= tol) continue;
                    Complex v = m(i, j) * col_f[j];
                    row_f[i] = std::conj(v) / std::abs(v);
                    row_done[i] = true;
                    queue.push_back(i);
                }
            }
        }
    }
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = row_f[i] * m(i, j) * col_f[j];
    }
    return Unitary::from_matrix(out, 10 * Unitary::kDeviationTolerance);
}

double gauge_fidelity(const Unitary &a, const Unitary &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("gauge_fidelity: dimensions differ");
    }
    const int n = a.dim();
    // overlap(i, j) = conj(A_ij) B_ij; we maximize |sum_ij r_i c_j overlap|
    // over unit phases r, c by alternating exact phase alignment.  The ascent
    // is monotone but can start on a zero-gradient saddle (e.g. both row sums
    // vanish), so several starts are tried: plain ones, column alignment, the
    // leading singular vector of the overlap, and a few fixed random draws.
    Matrix overlap = a.matrix().conjugate().cwiseProduct(b.matrix());
    double best = std::abs(overlap.sum());

    std::vector<Eigen::VectorXcd> starts;
    starts.push_back(Eigen::VectorXcd::Ones(n));
    {
        Eigen::VectorXcd c(n);
        for (int j = 0; j < n; ++j) {
            Complex t = overlap.col(j).sum();
            c(j) = std::abs(t) > 0 ? std::conj(t) / std::abs(t) : Complex(1, 0);
        }
        starts.push_back(c);
    }
    {
        Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeThinV);
        Eigen::VectorXcd v = svd.matrixV().col(0);
        Eigen::VectorXcd c(n);
        for (int j = 0; j < n; ++j) {
            c(j) = std::abs(v(j)) > 0 ? v(j) / std::abs(v(j)) : Complex(1, 0);
        }
        starts.push_back(c);
        starts.push_back(c.conjugate());
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-M_PI, M_PI);
    for (int extra = 0; extra < 4; ++extra) {
        Eigen::VectorXcd c(n);
        for (int j = 0; j < n; ++j) c(j) = std::polar(1.0, uni(rng));
        starts.push_back(c);
    }

    for (const auto &start : starts) {
        Eigen::VectorXcd c = start;
        Eigen::VectorXcd r = Eigen::VectorXcd::Ones(n);
        double prev = -1.0, value = 0.0;
        for (int it = 0; it < 200; ++it) {
            for (int i = 0; i < n; ++i) {
                Complex t = (overlap.row(i).transpose().cwiseProduct(c)).sum();
                r(i) = std::abs(t) > 0 ? std::conj(t) / std::abs(t) : r(i);
            }
            for (int j = 0; j < n; ++j) {
                Complex t = (overlap.col(j).cwiseProduct(r)).sum();
                c(j) = std::abs(t) > 0 ? std::conj(t) / std::abs(t) : c(j);
            }
            value = std::abs((r.asDiagonal() * overlap * c.asDiagonal()).sum());
            if (value - prev < 1e-15) break;
            prev = value;
        }
        best = std::max(best, value);
    }
    return std::min(best / n, 1.0);
}

void save_tomography_dataset(const std::string &singles_path,
                             const std::string &hom_path,
                             const TomographyDataset &dataset) {
    dataset.validate();
    const int n = dataset.dim();
    std::ofstream s(singles_path);
    if (!s) throw ValidationError("cannot write " + singles_path);
    s << "# shots=" << fmt_double(dataset.shots)
      << " overlap=" << fmt_double(dataset.pair_overlap) << "\n";
    s << "input";
    for (int j = 0; j < n; ++j) s << ",p" << j;
    s << "\n";
    for (int i = 0; i < n; ++i) {
        s << i;
        for (int j = 0; j < n; ++j) s << ',' << fmt_double(dataset.singles(i, j));
        s << "\n";
    }
    if (hom_path.empty()) return;
    std::ofstream h(hom_path);
    if (!h) throw ValidationError("cannot write " + hom_path);
    h << "in1,in2,out1,out2,visibility\n";
    for (const auto &e : dataset.hom) {
        h << e.in1 << ',' << e.in2 << ',' << e.out1 << ',' << e.out2 << ','
          << fmt_double(e.visibility) << "\n";
    }
}

TomographyDataset load_tomography_dataset(const std::string &singles_path,
                                          const std::string &hom_path) {
    std::ifstream s(singles_path);
    if (!s) throw ValidationError("cannot open " + singles_path);
    TomographyDataset dataset;
    std::string line;
    bool have_header = false;
    int n = 0;
    std::vector<std::vector<double>> rows;
    while (read_csv_line(s, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            double shots = 0.0, overlap = 1.0;
            if (std::sscanf(line.c_str(), "# shots=%lf overlap=%lf", &shots,
                            &overlap) == 2) {
                dataset.shots = shots;
                dataset.pair_overlap = overlap;
            }
            continue;
        }
        auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields.size() < 3 || fields[0] != "input") {
                throw CsvFormatError("expected singles header input,p0,p1,...");
            }
            n = static_cast<int>(fields.size()) - 1;
            have_header = true;
            continue;
        }
        if (static_cast<int>(fields.size()) != n + 1) {
            throw CsvFormatError("singles row has wrong field count");
        }
        std::vector<double> row;
        for (int j = 0; j < n; ++j) {
            row.push_back(parse_double_field(fields[1 + j], "singles row"));
        }
        int input = static_cast<int>(parse_double_field(fields[0], "singles row"));
        if (input != static_cast<int>(rows.size())) {
            throw CsvFormatError("singles rows must be listed in input order");
        }
        rows.push_back(row);
    }
    if (!have_header || static_cast<int>(rows.size()) != n) {
        throw IncompleteDatasetError("singles matrix incomplete");
    }
    dataset.singles.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dataset.singles(i, j) = rows[i][j];
    }

    if (!hom_path.empty()) {
        std::ifstream h(hom_path);
        if (!h) throw ValidationError("cannot open " + hom_path);
        if (!read_csv_line(h, line) || line != "in1,in2,out1,out2,visibility") {
            throw CsvFormatError("expected header in1,in2,out1,out2,visibility");
        }
        while (read_csv_line(h, line)) {
            if (line.empty()) continue;
            auto fields = split_csv_line(line);
            if (fields.size() != 5) {
                throw CsvFormatError("HOM row has wrong field count");
            }
            HomEntry e;
            e.in1 = static_cast<int>(parse_double_field(fields[0], "hom row"));
            e.in2 = static_cast<int>(parse_double_field(fields[1], "hom row"));
            e.out1 = static_cast<int>(parse_double_field(fields[2], "hom row"));
            e.out2 = static_cast<int>(parse_double_field(fields[3], "hom row"));
            e.visibility = parse_double_field(fields[4], "hom row");
            dataset.hom.push_back(e);
        }
    }
    dataset.validate();
    return dataset;
}

}  // namespace mzsim
