#include "tcmi/baseline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "fraction_kernel.hpp"
#include "tcmi/errors.hpp"
#include "tcmi/rng.hpp"

namespace tcmi {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double clamp01(double v) { return std::min(std::max(v, 0.0), 1.0); }

double clamped_ratio(double p, double q) {
    if (q == 0.0) {
        return 1.0;
    }
    return std::min(p / q, 1.0);
}

/// ln k! lookup up to n inclusive.
std::vector<double> log_factorials(std::size_t n) {
    std::vector<double> lg(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        lg[k] = lg[k - 1] + std::log(static_cast<double>(k));
    }
    return lg;
}

double log_choose(const std::vector<double>& lg, long long a, long long k) {
    if (k < 0 || a < 0 || k > a) {
        return -std::numeric_limits<double>::infinity();
    }
    return lg[static_cast<std::size_t>(a)] - lg[static_cast<std::size_t>(k)] -
           lg[static_cast<std::size_t>(a - k)];
}

/// Largest enumeration depth K with C(n, K) * K within the element budget
/// (and K <= n/2); at least 1.
std::size_t enumeration_depth(std::size_t n, double budget = 2e7) {
    std::size_t k = 1;
    double c = static_cast<double>(n); // C(n, 1)
    while (k + 1 <= n / 2) {
        const double next = c * static_cast<double>(n - k) / static_cast<double>(k + 1);
        if (next * static_cast<double>(k + 1) > budget) {
            break;
        }
        c = next;
        ++k;
    }
    return k;
}

/// Multiplicities of distinct values in ascending value order.
std::vector<std::uint32_t> column_multiplicities(const std::vector<double>& x) {
    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> mult;
    std::uint32_t run = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        ++run;
        if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i]) {
            mult.push_back(run);
            run = 0;
        }
    }
    return mult;
}

/// Expected clamped ratio of one grid column under a uniform random below-set
/// of given size, for a fixed target.  Exact streamed enumeration over
/// included (or excluded) rows when feasible, otherwise moment-matched
/// lognormal / Gaussian-tail approximations of (P, Q).  See docs/baseline.md.
class ColumnExpectation {
public:
    explicit ColumnExpectation(const std::vector<double>& target) {
        std::vector<double> y(target);
        std::sort(y.begin(), y.end());
        n_ = y.size();
        std::vector<double> levels;
        std::vector<std::uint32_t> mult = column_multiplicities(y);
        r_ = mult.size();
        top_ = r_ > 0 ? mult.back() : 0;

        // Distinct levels and cumulative counts (cells i = 1..r-1).
        cell_N_.reserve(r_ > 0 ? r_ - 1 : 0);
        cell_w_.reserve(cell_N_.capacity());
        cell_L_.reserve(cell_N_.capacity());
        std::size_t cum = 0;
        std::size_t pos = 0;
        std::vector<double> distinct;
        distinct.reserve(r_);
        for (std::uint32_t m : mult) {
            distinct.push_back(y[pos]);
            pos += m;
            cum += m;
            if (cum < n_) {
                cell_N_.push_back(cum);
            }
        }
        const double nd = static_cast<double>(n_);
        for (std::size_t i = 0; i + 1 < r_; ++i) {
            cell_w_.push_back((distinct[i + 1] - distinct[i]) / nd);
            cell_L_.push_back(std::log(nd / static_cast<double>(cell_N_[i])));
        }

        // Position-indexed prefix sums over cells (entry p covers cells with
        // N_i <= p); used by both enumeration directions.
        wpos_.assign(n_ + 1, 0.0);
        apos_.assign(n_ + 1, 0.0);
        qnpos_.assign(n_ + 1, 0.0);
        {
            std::size_t cell = 0;
            double w_acc = 0.0, a_acc = 0.0, qn_acc = 0.0;
            for (std::size_t p = 1; p <= n_; ++p) {
                while (cell < cell_N_.size() && cell_N_[cell] == p) {
                    w_acc += cell_w_[cell];
                    a_acc += cell_w_[cell] * cell_L_[cell];
                    qn_acc += cell_w_[cell] * static_cast<double>(cell_N_[cell]) * cell_L_[cell];
                    ++cell;
                }
                wpos_[p] = w_acc;
                apos_[p] = a_acc;
                qnpos_[p] = qn_acc;
            }
        }

        lg_ = log_factorials(n_ + 1);
        depth_ = enumeration_depth(n_);
        memo_.assign(n_ + 1, std::numeric_limits<double>::quiet_NaN());
    }

    std::size_t n() const { return n_; }

    double e_ratio(std::size_t b) {
        if (b == 0 || b >= n_) {
            return 1.0;
        }
        if (!std::isnan(memo_[b])) {
            return memo_[b];
        }
        double v;
        if (r_ < 2) {
            v = 1.0;
        } else if (b == 1) {
            // P = 0 always; Q = 0 exactly when the single draw sits at the
            // top target level.
            v = static_cast<double>(top_) / static_cast<double>(n_);
        } else if (b <= depth_) {
            v = exact_included(b);
        } else if (n_ - b <= depth_) {
            v = exact_excluded(b);
        } else if (4 * b < n_) {
            v = lognormal_band(b);
        } else {
            v = gaussian_band(b);
        }
        memo_[b] = v;
        return v;
    }

private:
    struct Moments {
        double muP = 0.0, muQ = 0.0, varP = 0.0, varQ = 0.0, covPQ = 0.0, p0 = 0.0;
    };

    double log_c(long long a, long long k) const { return log_choose(lg_, a, k); }

    /// Mean clamped ratio over all sorted b-tuples of included positions.
    /// Per tuple, cells between consecutive included positions share the
    /// below-count s, so P and Q reduce to prefix-sum differences.
    double exact_included(std::size_t b) const {
        std::vector<double> slog(b, 0.0);
        for (std::size_t s = 1; s < b; ++s) {
            slog[s] = static_cast<double>(s) * std::log(static_cast<double>(b) / static_cast<double>(s));
        }
        std::vector<std::size_t> t(b);
        std::iota(t.begin(), t.end(), std::size_t{1});
        long double sum = 0.0L;
        std::size_t count = 0;
        while (true) {
            double p = 0.0, q = 0.0;
            for (std::size_t s = 1; s <= b; ++s) {
                const std::size_t lo = t[s - 1];
                const std::size_t hi = (s < b) ? t[s] : n_;
                q += static_cast<double>(s) * (apos_[hi - 1] - apos_[lo - 1]);
                if (s < b) {
                    p += slog[s] * (wpos_[hi - 1] - wpos_[lo - 1]);
                }
            }
            sum += clamped_ratio(p, q);
            ++count;
            std::size_t k = b;
            while (k > 0 && t[k - 1] == n_ - b + k) {
                --k;
            }
            if (k == 0) {
                break;
            }
            ++t[k - 1];
            for (std::size_t j = k; j < b; ++j) {
                t[j] = t[j - 1] + 1;
            }
        }
        return static_cast<double>(sum / static_cast<long double>(count));
    }

    /// Mean clamped ratio enumerated over the excluded complement (e = n - b
    /// positions).  Cells between consecutive excluded positions share the
    /// number s of excluded rows below them, i.e. m_i = N_i - s, so per-offset
    /// prefix tables make each tuple O(e).
    double exact_excluded(std::size_t b) const {
        const std::size_t e = n_ - b;
        std::vector<std::vector<double>> preg(e + 1, std::vector<double>(n_ + 1, 0.0));
        for (std::size_t s = 0; s <= e; ++s) {
            std::size_t cell = 0;
            double acc = 0.0;
            for (std::size_t p = 1; p <= n_; ++p) {
                while (cell < cell_N_.size() && cell_N_[cell] == p) {
                    const double m = static_cast<double>(cell_N_[cell]) - static_cast<double>(s);
                    if (m > 0.0) {
                        acc += cell_w_[cell] * m * std::log(static_cast<double>(b) / m);
                    }
                    ++cell;
                }
                preg[s][p] = acc;
            }
        }
        std::vector<std::size_t> x(e);
        std::iota(x.begin(), x.end(), std::size_t{1});
        long double sum = 0.0L;
        std::size_t count = 0;
        while (true) {
            double p = 0.0, q = 0.0;
            for (std::size_t s = 0; s <= e; ++s) {
                const std::size_t lo = (s == 0) ? 0 : x[s - 1] - 1;
                const std::size_t hi = (s < e) ? x[s] - 1 : n_;
                p += preg[s][hi] - preg[s][lo];
                q += (qnpos_[hi] - qnpos_[lo]) -
                     static_cast<double>(s) * (apos_[hi] - apos_[lo]);
            }
            sum += clamped_ratio(p, q);
            ++count;
            std::size_t k = e;
            while (k > 0 && x[k - 1] == n_ - e + k) {
                --k;
            }
            if (k == 0) {
                break;
            }
            ++x[k - 1];
            for (std::size_t j = k; j < e; ++j) {
                x[j] = x[j - 1] + 1;
            }
        }
        return static_cast<double>(sum / static_cast<long double>(count));
    }

    /// Exact first/second moments of (P, Q) over the hypergeometric cell
    /// counts, with exact cross-covariances for Q and delta-method cross
    /// terms for P; p0 is the atom P(Q = 0) (all draws at the top level).
    Moments moments(std::size_t b) const {
        const std::size_t cells = cell_N_.size();
        const double nd = static_cast<double>(n_);
        const double bd = static_cast<double>(b);
        const double log_cnb = log_c(static_cast<long long>(n_), static_cast<long long>(b));

        std::vector<double> Eg(cells), varg(cells), varm(cells), cov_gm(cells), gp(cells), Em(cells);
        for (std::size_t i = 0; i < cells; ++i) {
            const long long Ni = static_cast<long long>(cell_N_[i]);
            const long long nn = static_cast<long long>(n_);
            const long long bb = static_cast<long long>(b);
            const long long mlo = std::max<long long>(0, bb - (nn - Ni));
            const long long mhi = std::min<long long>(bb, Ni);
            long long m0 = static_cast<long long>((bd + 1.0) * (static_cast<double>(Ni) + 1.0) / (nd + 2.0));
            m0 = std::clamp(m0, mlo, mhi);
            const double p_mode = std::exp(log_c(Ni, m0) + log_c(nn - Ni, bb - m0) - log_cnb);
            const double cutoff = p_mode * 1e-18;

            double sg = 0.0, sg2 = 0.0, sm2 = 0.0, sgm = 0.0;
            auto accumulate = [&](long long m, double p) {
                const double md = static_cast<double>(m);
                const double g = m > 0 ? md * std::log(bd / md) : 0.0;
                sg += p * g;
                sg2 += p * g * g;
                sm2 += p * md * md;
                sgm += p * g * md;
            };
            double p = p_mode;
            for (long long m = m0; m <= mhi; ++m) {
                accumulate(m, p);
                if (m == mhi) {
                    break;
                }
                p *= static_cast<double>(Ni - m) * static_cast<double>(bb - m) /
                     (static_cast<double>(m + 1) * static_cast<double>(nn - Ni - bb + m + 1));
                if (p < cutoff) {
                    break;
                }
            }
            p = p_mode;
            for (long long m = m0; m > mlo;) {
                p *= static_cast<double>(m) * static_cast<double>(nn - Ni - bb + m) /
                     (static_cast<double>(Ni - m + 1) * static_cast<double>(bb - m + 1));
                --m;
                accumulate(m, p);
                if (p < cutoff) {
                    break;
                }
            }

            Em[i] = bd * static_cast<double>(Ni) / nd;
            Eg[i] = sg;
            varg[i] = sg2 - sg * sg;
            varm[i] = sm2 - Em[i] * Em[i];
            cov_gm[i] = sgm - sg * Em[i];
            gp[i] = std::log(bd / std::max(Em[i], 1e-12)) - 1.0; // d/dm [m ln(b/m)] at the mean
        }

        Moments mom;
        for (std::size_t i = 0; i < cells; ++i) {
            mom.muP += cell_w_[i] * Eg[i];
            mom.muQ += cell_w_[i] * cell_L_[i] * Em[i];
        }

        const double fac = (nd - bd) / (nd - 1.0);
        // Var(Q): exact pairwise covariances Cov(m_i, m_k) =
        // b (N_i/n)(1 - N_k/n)(n-b)/(n-1) for i <= k, folded into one pass
        // with a running prefix of (w L)_i N_i / n.
        double var_q = 0.0;
        {
            double pre = 0.0, cross = 0.0;
            for (std::size_t i = 0; i < cells; ++i) {
                const double a1 = cell_w_[i] * cell_L_[i];
                const double pi = static_cast<double>(cell_N_[i]) / nd;
                if (i > 0) {
                    cross += a1 * (1.0 - pi) * pre;
                }
                pre += a1 * pi;
                var_q += a1 * a1 * varm[i];
            }
            var_q += 2.0 * fac * bd * cross;
        }
        mom.varQ = var_q;

        // Cov(P, Q) and the P cross terms use the linear conditional
        // expectation E[m_k | m_i]: slope (n-N_k)/(n-N_i) above i, N_k/N_i
        // below, applied to cov(g_i, m_i); Var(P) crosses additionally via
        // the derivative gp at the cell mean.
        std::vector<double> suf(cells, 0.0), sufg(cells, 0.0);
        {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t i = cells; i-- > 0;) {
                suf[i] = s1;
                sufg[i] = s2;
                s1 += cell_w_[i] * cell_L_[i] * (nd - static_cast<double>(cell_N_[i]));
                s2 += cell_w_[i] * gp[i] * (nd - static_cast<double>(cell_N_[i]));
            }
        }
        double cov_pq = 0.0, cross_p = 0.0;
        {
            double prelow = 0.0, prelowg = 0.0;
            for (std::size_t i = 0; i < cells; ++i) {
                const double a1 = cell_w_[i] * cell_L_[i];
                const double ni = static_cast<double>(cell_N_[i]);
                const double mix = suf[i] / (nd - ni) + prelow / ni;
                const double mixg = sufg[i] / (nd - ni) + prelowg / ni;
                cov_pq += cell_w_[i] * (a1 * cov_gm[i] + cov_gm[i] * mix);
                cross_p += cell_w_[i] * cov_gm[i] * mixg;
                prelow += a1 * ni;
                prelowg += cell_w_[i] * gp[i] * ni;
            }
        }
        mom.covPQ = cov_pq;
        double var_p = cross_p;
        for (std::size_t i = 0; i < cells; ++i) {
            var_p += cell_w_[i] * cell_w_[i] * varg[i];
        }
        mom.varP = var_p;

        mom.p0 = top_ >= b ? std::exp(log_c(static_cast<long long>(top_), static_cast<long long>(b)) - log_cnb)
                           : 0.0;
        return mom;
    }

    double gaussian_band(std::size_t b) const {
        const Moments mom = moments(b);
        return gaussian_from_moments(mom);
    }

    static double gaussian_from_moments(const Moments& mom) {
        const double mu_w = mom.muQ - mom.muP;
        const double var_w = std::max(mom.varQ + mom.varP - 2.0 * mom.covPQ, 1e-300);
        const double sd_w = std::sqrt(var_w);
        const double cov_wq = mom.varQ - mom.covPQ;
        const double alpha = mu_w / sd_w;
        const double ew1 = mu_w * norm_cdf(alpha) + sd_w * norm_pdf(alpha); // E[W 1{W>0}]
        const double term = ew1 * (1.0 / mom.muQ + mom.varQ / (mom.muQ * mom.muQ * mom.muQ)) -
                            cov_wq * norm_cdf(alpha) / (mom.muQ * mom.muQ);
        const double val = clamp01(1.0 - term);
        return mom.p0 > 0.0 ? mom.p0 + (1.0 - mom.p0) * val : val;
    }

    /// Bivariate-lognormal model of (P, Q) conditional on the non-atom
    /// branch: E[min(P/Q, 1)] = E[min(e^Z, 1)] for normal Z = ln P - ln Q.
    double lognormal_band(std::size_t b) const {
        const Moments mom = moments(b);
        const double c = 1.0 - mom.p0;
        if (c <= 0.0) {
            return 1.0;
        }
        const double m_p = mom.muP / c;
        const double m_q = mom.muQ / c;
        if (m_p <= 0.0 || m_q <= 0.0) {
            return gaussian_from_moments(mom);
        }
        const double ep2 = (mom.varP + mom.muP * mom.muP) / c;
        const double eq2 = (mom.varQ + mom.muQ * mom.muQ) / c;
        const double epq = (mom.covPQ + mom.muP * mom.muQ) / c;
        const double v_p = std::max(ep2 - m_p * m_p, 1e-300);
        const double v_q = std::max(eq2 - m_q * m_q, 1e-300);
        const double cc = epq - m_p * m_q;
        const double corr_arg = cc / (m_p * m_q);
        if (corr_arg <= -1.0) {
            return gaussian_from_moments(mom);
        }
        const double s_u2 = std::log1p(v_p / (m_p * m_p));
        const double s_v2 = std::log1p(v_q / (m_q * m_q));
        const double c_uv = std::log1p(corr_arg);
        const double mu_u = std::log(m_p) - s_u2 / 2.0;
        const double mu_v = std::log(m_q) - s_v2 / 2.0;
        const double mu_z = mu_u - mu_v;
        const double s_z2 = std::max(s_u2 + s_v2 - 2.0 * c_uv, 1e-300);
        const double s_z = std::sqrt(s_z2);
        const double val = std::exp(mu_z + s_z2 / 2.0) * norm_cdf(-(mu_z + s_z2) / s_z) +
                           norm_cdf(mu_z / s_z);
        return mom.p0 + c * clamp01(val);
    }

    std::size_t n_ = 0;
    std::size_t r_ = 0;
    std::size_t top_ = 0;
    std::size_t depth_ = 1;
    std::vector<std::size_t> cell_N_;
    std::vector<double> cell_w_, cell_L_;
    std::vector<double> wpos_, apos_, qnpos_;
    std::vector<double> lg_;
    std::vector<double> memo_;
};

using Profile = std::vector<std::uint32_t>;

/// Process-wide cache of below-count transition matrices keyed by the column
/// profile (multiplicities); profiles of equal shape share one matrix.
std::map<Profile, std::shared_ptr<const std::vector<double>>>& matrix_cache() {
    static std::map<Profile, std::shared_ptr<const std::vector<double>>> cache;
    return cache;
}
std::mutex& matrix_cache_mutex() {
    static std::mutex m;
    return m;
}

/// Transition of the joint below-count when one more independently permuted
/// feature with the given profile is intersected:
///     M[v][u] = sum_t (mult_t/n) * Hyp(v; n-1, u, c_t - 1),
/// where c_t is the cumulative count of distinct value t.  Computed once per
/// profile and shared.
std::shared_ptr<const std::vector<double>> transition_matrix(const Profile& profile) {
    {
        std::lock_guard<std::mutex> lock(matrix_cache_mutex());
        auto it = matrix_cache().find(profile);
        if (it != matrix_cache().end()) {
            return it->second;
        }
    }
    const std::size_t n = std::accumulate(profile.begin(), profile.end(), std::size_t{0});
    auto matrix = std::make_shared<std::vector<double>>(n * n, 0.0);
    const std::vector<double> lg = log_factorials(n + 1);
    const long long big_n = static_cast<long long>(n) - 1;

    std::size_t cum = 0;
    for (std::uint32_t mult : profile) {
        cum += mult;
        const long long q = static_cast<long long>(cum) - 1;
        const double wt = static_cast<double>(mult) / static_cast<double>(n);
        const double log_cq = log_choose(lg, big_n, q);
        for (long long u = 0; u < static_cast<long long>(n); ++u) {
            const long long vlo = std::max<long long>(0, u + q - big_n);
            const long long vhi = std::min<long long>(u, q);
            if (vlo > vhi) {
                continue;
            }
            long long v0 = static_cast<long long>((static_cast<double>(u) + 1.0) *
                                                  (static_cast<double>(q) + 1.0) /
                                                  (static_cast<double>(big_n) + 2.0));
            v0 = std::clamp(v0, vlo, vhi);
            const double p_mode =
                std::exp(log_choose(lg, u, v0) + log_choose(lg, big_n - u, q - v0) - log_cq);
            const double cutoff = p_mode * 1e-18;
            double* col = matrix->data();
            double p = p_mode;
            for (long long v = v0; v <= vhi; ++v) {
                col[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] += wt * p;
                if (v == vhi) {
                    break;
                }
                p *= static_cast<double>(u - v) * static_cast<double>(q - v) /
                     (static_cast<double>(v + 1) * static_cast<double>(big_n - u - q + v + 1));
                if (p < cutoff) {
                    break;
                }
            }
            p = p_mode;
            for (long long v = v0; v > vlo;) {
                p *= static_cast<double>(v) * static_cast<double>(big_n - u - q + v) /
                     (static_cast<double>(u - v + 1) * static_cast<double>(q - v + 1));
                --v;
                col[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] += wt * p;
                if (p < cutoff) {
                    break;
                }
            }
        }
    }

    std::lock_guard<std::mutex> lock(matrix_cache_mutex());
    auto [it, inserted] = matrix_cache().emplace(profile, std::move(matrix));
    return it->second;
}

std::vector<double> negated_copy(const std::vector<double>& values) {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](double v) { return -v; });
    return out;
}

} // namespace

std::size_t ContingencyLayout::n() const {
    return std::accumulate(row_marginals.begin(), row_marginals.end(), std::size_t{0});
}

ContingencyLayout contingency_layout(const std::vector<double>& target,
                                     const std::vector<double>& feature) {
    if (target.empty() || feature.empty()) {
        throw input_error("empty column");
    }
    if (target.size() != feature.size()) {
        throw input_error("column length mismatch");
    }
    ContingencyLayout layout;
    std::vector<double> sorted(target);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i] != sorted[i - 1]) {
            layout.sorted_values.push_back(sorted[i]);
            layout.row_marginals.push_back(1);
        } else {
            ++layout.row_marginals.back();
        }
    }
    for (std::uint32_t mult : column_multiplicities(feature)) {
        layout.col_marginals.push_back(mult);
    }
    layout.rows = layout.row_marginals.size();
    layout.cols = layout.col_marginals.size();
    return layout;
}

double hypergeometric_weight(long long n_ij, long long i, long long b_j, long long r) {
    if (i < 1 || i > r || b_j < 1 || b_j > r) {
        throw input_error("infeasible cell count");
    }
    const long long lo = std::max<long long>(0, i + b_j - r);
    const long long hi = std::min(i, b_j);
    if (n_ij < lo || n_ij > hi) {
        throw input_error("infeasible cell count");
    }
    static thread_local std::vector<double> lg;
    if (static_cast<long long>(lg.size()) < r + 1) {
        lg = log_factorials(static_cast<std::size_t>(r) + 1);
    }
    const double num1 = log_choose(lg, r - i, b_j - n_ij);
    const double num2 = log_choose(lg, i - 1, n_ij - 1);
    const double den = log_choose(lg, r - 1, b_j - 1);
    if (std::isinf(num1) || std::isinf(num2)) {
        return 0.0;
    }
    return std::exp(num1 + num2 - den);
}

double expected_gap(std::size_t i, std::size_t b_j, const ContingencyLayout& layout) {
    const std::size_t r = layout.rows;
    const std::size_t n = layout.n();
    if (i < 1 || b_j < 1 || b_j > n || layout.sorted_values.size() != r) {
        throw input_error("infeasible cell count");
    }
    if (i >= r) {
        throw input_error("no gap beyond last value");
    }
    const std::size_t k_max = std::min(n - b_j + 1, r - i);
    const double y_i = layout.sorted_values[i - 1];

    if (b_j == 1) {
        // Single draw: every remaining position equally likely.
        double mean = 0.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            mean += layout.sorted_values[i - 1 + k] - y_i;
        }
        return mean / static_cast<double>(k_max);
    }

    static thread_local std::vector<double> lg;
    if (lg.size() < r + 2) {
        lg = log_factorials(r + 2);
    }
    double log_max = -std::numeric_limits<double>::infinity();
    std::vector<double> lw(k_max + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 1; k <= k_max; ++k) {
        lw[k] = log_choose(lg, static_cast<long long>(r) - static_cast<long long>(k) - 1,
                           static_cast<long long>(b_j) - 2);
        log_max = std::max(log_max, lw[k]);
    }
    if (std::isinf(log_max)) {
        // All combinatorial weights vanish (b_j > r); fall back to the
        // uniform average like the single-draw case.
        double mean = 0.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            mean += layout.sorted_values[i - 1 + k] - y_i;
        }
        return mean / static_cast<double>(k_max);
    }
    double norm = 0.0, acc = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (std::isinf(lw[k])) {
            continue;
        }
        const double wk = std::exp(lw[k] - log_max);
        norm += wk;
        acc += wk * (layout.sorted_values[i - 1 + k] - y_i);
    }
    return acc / norm;
}

struct BaselineEngine::Impl {
    const Dataset* data = nullptr;
    std::size_t n = 0;

    std::vector<Profile> profiles;
    std::map<Profile, int> profile_ids;

    struct Side {
        std::unique_ptr<ColumnExpectation> column;
        std::vector<int> feature_profile; // -1 until computed
        std::map<std::vector<int>, double> memo;
    };
    Side sides[2];

    int intern_profile(Profile p) {
        auto it = profile_ids.find(p);
        if (it != profile_ids.end()) {
            return it->second;
        }
        const int id = static_cast<int>(profiles.size());
        profiles.push_back(p);
        profile_ids.emplace(std::move(p), id);
        return id;
    }

    Side& side(Orientation o) { return sides[o == Orientation::forward ? 0 : 1]; }

    ColumnExpectation& column(Orientation o) {
        Side& s = side(o);
        if (!s.column) {
            if (o == Orientation::forward) {
                s.column = std::make_unique<ColumnExpectation>(data->target());
            } else {
                s.column = std::make_unique<ColumnExpectation>(negated_copy(data->target()));
            }
        }
        return *s.column;
    }

    int profile_id(std::size_t feature, Orientation o) {
        Side& s = side(o);
        if (s.feature_profile.empty()) {
            s.feature_profile.assign(data->n_features(), -1);
        }
        int& id = s.feature_profile[feature];
        if (id < 0) {
            Profile p = column_multiplicities(data->feature(feature));
            if (o == Orientation::reverse) {
                std::reverse(p.begin(), p.end()); // distinct order flips under negation
            }
            id = intern_profile(std::move(p));
        }
        return id;
    }

    double baseline_for_ids(std::vector<int> ids, Orientation o) {
        std::sort(ids.begin(), ids.end());
        Side& s = side(o);
        auto it = s.memo.find(ids);
        if (it != s.memo.end()) {
            return it->second;
        }
        ColumnExpectation& col = column(o);
        double value;
        if (ids.size() == 1) {
            // One feature: each distinct value is one grid column with its
            // observed cumulative below count.
            const Profile& p = profiles[static_cast<std::size_t>(ids[0])];
            double acc = 0.0;
            std::size_t cum = 0;
            for (std::uint32_t mult : p) {
                cum += mult;
                acc += col.e_ratio(cum);
            }
            value = 1.0 - acc / static_cast<double>(p.size());
        } else {
            // Joint below-count distribution via the chained hypergeometric
            // mixture over the (sorted) profile multiset.
            const Profile& first = profiles[static_cast<std::size_t>(ids[0])];
            std::vector<double> w(n, 0.0);
            std::size_t cum = 0;
            for (std::uint32_t mult : first) {
                cum += mult;
                w[cum - 1] += static_cast<double>(mult) / static_cast<double>(n);
            }
            std::vector<double> next(n);
            for (std::size_t k = 1; k < ids.size(); ++k) {
                const auto matrix = transition_matrix(profiles[static_cast<std::size_t>(ids[k])]);
                const double* m = matrix->data();
                for (std::size_t v = 0; v < n; ++v) {
                    double acc = 0.0;
                    const double* row = m + v * n;
                    for (std::size_t u = 0; u < n; ++u) {
                        acc += row[u] * w[u];
                    }
                    next[v] = acc;
                }
                w.swap(next);
            }
            double acc = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                acc += w[v] * col.e_ratio(v + 1);
            }
            value = 1.0 - acc;
        }
        s.memo.emplace(std::move(ids), value);
        return value;
    }
};

BaselineEngine::BaselineEngine(const Dataset& dataset) : impl_(std::make_unique<Impl>()) {
    impl_->data = &dataset;
    impl_->n = dataset.n_rows();
}

BaselineEngine::~BaselineEngine() = default;

double BaselineEngine::subset_baseline(const std::vector<std::size_t>& columns,
                                       Orientation orientation) {
    std::vector<int> ids;
    ids.reserve(columns.size());
    for (std::size_t c : columns) {
        ids.push_back(impl_->profile_id(c, orientation));
    }
    return impl_->baseline_for_ids(std::move(ids), orientation);
}

double BaselineEngine::corrected_baseline(std::size_t column, Orientation orientation) {
    const int id = impl_->profile_id(column, orientation);
    return impl_->baseline_for_ids({id, id}, orientation);
}

double expected_column_ratio(const std::vector<double>& target, std::size_t b) {
    if (target.empty()) {
        throw input_error("empty column");
    }
    if (b > target.size()) {
        throw input_error("infeasible cell count");
    }
    ColumnExpectation col(target);
    return col.e_ratio(b);
}

namespace {

void require_varying_target(const Dataset& dataset) {
    const auto& y = dataset.target();
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] != y[0]) {
            return;
        }
    }
    throw degenerate_error("degenerate target");
}

} // namespace

BaselineEstimate expected_fraction(const Dataset& dataset, const std::vector<std::string>& subset,
                                   const GridSpec& grid, Orientation orientation) {
    require_varying_target(dataset);
    const std::vector<std::size_t> columns = dataset.resolve_subset(subset);
    if (grid.columns != columns) {
        throw input_error("grid does not match subset");
    }
    BaselineEngine engine(dataset);
    BaselineEstimate estimate;
    estimate.value = engine.subset_baseline(columns, orientation);
    estimate.method = BaselineMethod::closed_form;
    return estimate;
}

BaselineEstimate expected_fraction_mc(const Dataset& dataset, const std::vector<std::string>& subset,
                                      GridStrategy strategy, Orientation orientation,
                                      std::size_t permutations, std::uint64_t seed,
                                      unsigned threads) {
    require_varying_target(dataset);
    if (permutations < 1) {
        throw input_error("permutations must be positive");
    }
    const std::vector<std::size_t> columns = dataset.resolve_subset(subset);
    const std::size_t d = columns.size();
    const bool rev = orientation == Orientation::reverse;

    // Negate once up front for the reverse orientation; permuting a negated
    // column equals negating the permuted one.
    std::vector<double> y = rev ? negated_copy(dataset.target()) : dataset.target();
    const detail::TargetLevels levels = detail::build_levels(y);
    std::vector<std::vector<double>> base(d);
    for (std::size_t c = 0; c < d; ++c) {
        base[c] = rev ? negated_copy(dataset.feature(columns[c])) : dataset.feature(columns[c]);
    }
    const std::size_t n = dataset.n_rows();

    // A full grid depends only on each column's distinct values, so it is
    // permutation-invariant and can be built once.
    std::vector<double> fixed_points;
    if (strategy == GridStrategy::full) {
        Dataset negated_view = [&] {
            std::vector<Dataset::NamedColumn> cols;
            for (std::size_t c = 0; c < d; ++c) {
                cols.emplace_back(dataset.feature_name(columns[c]), base[c]);
            }
            return Dataset(dataset.target_name(), y, std::move(cols));
        }();
        fixed_points = build_grid(negated_view, dataset.subset_names(columns), strategy).points;
    }

    // Fixed 64-permutation blocks keep the reduction order independent of the
    // worker count.
    constexpr std::size_t kBlock = 64;
    const std::size_t n_blocks = (permutations + kBlock - 1) / kBlock;
    std::vector<long double> block_sum(n_blocks, 0.0L), block_sq(n_blocks, 0.0L);

    auto run_block = [&](std::size_t block) {
        const std::size_t t_lo = block * kBlock;
        const std::size_t t_hi = std::min(t_lo + kBlock, permutations);
        std::vector<std::vector<double>> perm(d, std::vector<double>(n));
        std::vector<const std::vector<double>*> cols(d);
        for (std::size_t c = 0; c < d; ++c) {
            cols[c] = &perm[c];
        }
        long double sum = 0.0L, sq = 0.0L;
        for (std::size_t t = t_lo; t < t_hi; ++t) {
            for (std::size_t c = 0; c < d; ++c) {
                perm[c] = base[c];
                SplitMix64 rng(derive_seed(seed, t, c));
                rng.shuffle(perm[c]);
            }
            const std::vector<double>& points =
                strategy == GridStrategy::full ? fixed_points : detail::sample_grid_points(cols, n);
            const double v = detail::fraction_one(levels, cols, points, d);
            sum += v;
            sq += static_cast<long double>(v) * v;
        }
        block_sum[block] = sum;
        block_sq[block] = sq;
    };

    unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_blocks));
    if (n_threads <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            run_block(b);
        }
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t b = cursor.fetch_add(1);
                    if (b >= n_blocks) {
                        return;
                    }
                    run_block(b);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    long double sum = 0.0L, sq = 0.0L;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        sum += block_sum[b];
        sq += block_sq[b];
    }
    const double mean = static_cast<double>(sum / static_cast<long double>(permutations));
    double se = 0.0;
    if (permutations > 1) {
        const long double var =
            (sq - static_cast<long double>(permutations) * static_cast<long double>(mean) * mean) /
            static_cast<long double>(permutations - 1);
        se = std::sqrt(std::max(0.0, static_cast<double>(var)) / static_cast<double>(permutations));
    }
    BaselineEstimate estimate;
    estimate.value = mean;
    estimate.standard_error = se;
    estimate.method = BaselineMethod::monte_carlo;
    estimate.permutations = permutations;
    return estimate;
}

} // namespace tcmi
