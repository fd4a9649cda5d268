// SPDX-License-Identifier: Apache-2.0

#include "risim/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "risim/channel.hpp"

namespace risim {

HermitianSolver::HermitianSolver(const cmat& r, double q, double sigma2) {
    const Eigen::Index m = r.rows();
    if (sigma2 > 0.0) {
        ldlt_.compute(q * r + sigma2 * cmat::Identity(m, m));
    } else {
        pseudo_ = true;
        Eigen::SelfAdjointEigenSolver<cmat> eig(q * r);
        eigvecs_ = eig.eigenvectors();
        inv_eigvals_ = rvec(m);
        const double cutoff = 1e-12 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < m; ++i)
            inv_eigvals_(i) = eig.eigenvalues()(i) > cutoff ? 1.0 / eig.eigenvalues()(i) : 0.0;
    }
}

cvec HermitianSolver::solve(const cvec& z) const {
    if (!pseudo_) return ldlt_.solve(z);
    return eigvecs_ * (inv_eigvals_.asDiagonal() * (eigvecs_.adjoint() * z));
}

cvec lmmse_direct(const cvec& z, const cmat& mean_corr, double q, double sigma2) {
    HermitianSolver solver(mean_corr, q, sigma2);
    return std::sqrt(q) * (mean_corr * solver.solve(z));
}

CascadedStatistics::CascadedStatistics(const BsRisStatistics& bs_ris, const cmat& f_mean_corr,
                                       const std::vector<std::vector<int>>& subsurfaces,
                                       double q, double sigma2)
    : bs_ris_(&bs_ris), f_mean_corr_(f_mean_corr), subsurfaces_(subsurfaces), q_(q) {
    const Eigen::Index n = f_mean_corr_.rows();
    group_of_.assign(n, -1);
    for (std::size_t r = 0; r < subsurfaces_.size(); ++r)
        for (int el : subsurfaces_[r]) group_of_[el] = static_cast<int>(r);
    for (int el = 0; el < static_cast<int>(n); ++el)
        if (group_of_[el] < 0)
            throw std::invalid_argument("CascadedStatistics: element missing from sub-surfaces");

    group_stats_.reserve(subsurfaces_.size());
    solvers_.reserve(subsurfaces_.size());
    const Eigen::Index m = bs_ris.corr_bs.rows();
    for (const auto& group : subsurfaces_) {
        cmat sum = cmat::Zero(m, m);
        for (int el : group) sum += column_stat(el);
        sum = 0.5 * (sum + sum.adjoint()).eval();
        group_stats_.push_back(sum);
        solvers_.emplace_back(sum, q_, sigma2);
    }
}

cmat CascadedStatistics::column_stat(int n) const {
    const cmat& r_bs = bs_ris_->corr_bs;
    const cmat& r_ris = bs_ris_->corr_ris;
    const Eigen::Index m = r_bs.rows();
    cmat out = cmat::Zero(m, m);
    for (int np : subsurfaces_[group_of_[n]]) {
        const cplx c = f_mean_corr_(n, np);
        for (const cmat& g : bs_ris_->specular) out += c * (g.col(n) * g.col(np).adjoint());
        out += c * r_ris(np, n) * r_bs;
    }
    return out;
}

cmat CascadedStatistics::estimate_columns(const std::vector<cvec>& z) const {
    if (z.size() != subsurfaces_.size())
        throw std::invalid_argument("estimate_columns: statistic count mismatch");
    const cmat& r_bs = bs_ris_->corr_bs;
    const cmat& r_ris = bs_ris_->corr_ris;
    const Eigen::Index m = r_bs.rows();
    const int n_el = n_elements();
    const double amp = std::sqrt(q_);
    cmat columns(m, n_el);
    for (std::size_t r = 0; r < subsurfaces_.size(); ++r) {
        const cvec w = solvers_[r].solve(z[r]);
        const cvec g_w = r_bs * w;
        // d(s, np) = G_s(:,np)^H w for every element of the sub-surface
        std::vector<cvec> d;
        d.reserve(bs_ris_->specular.size());
        for (const cmat& g : bs_ris_->specular) {
            cvec ds(subsurfaces_[r].size());
            for (std::size_t i = 0; i < subsurfaces_[r].size(); ++i)
                ds(static_cast<Eigen::Index>(i)) = g.col(subsurfaces_[r][i]).dot(w);
            d.push_back(std::move(ds));
        }
        for (int n : subsurfaces_[r]) {
            cvec col = cvec::Zero(m);
            for (std::size_t i = 0; i < subsurfaces_[r].size(); ++i) {
                const int np = subsurfaces_[r][i];
                const cplx c = f_mean_corr_(n, np);
                for (std::size_t s = 0; s < d.size(); ++s)
                    col += c * d[s](static_cast<Eigen::Index>(i)) * bs_ris_->specular[s].col(n);
                col += c * r_ris(np, n) * g_w;
            }
            columns.col(n) = amp * col;
        }
    }
    return columns;
}

cmat CascadedStatistics::ls_columns(const std::vector<cvec>& z) const {
    if (z.size() != subsurfaces_.size())
        throw std::invalid_argument("ls_columns: statistic count mismatch");
    const Eigen::Index m = bs_ris_->corr_bs.rows();
    cmat columns(m, n_elements());
    const double inv_amp = 1.0 / std::sqrt(q_);
    for (std::size_t r = 0; r < subsurfaces_.size(); ++r) {
        const cvec per_element = inv_amp / static_cast<double>(subsurfaces_[r].size()) * z[r];
        for (int n : subsurfaces_[r]) columns.col(n) = per_element;
    }
    return columns;
}

std::vector<cvec> lmmse_cascaded(const cvec& z, const std::vector<cmat>& column_stats,
                                 const cmat& group_stat, double q, double sigma2) {
    HermitianSolver solver(group_stat, q, sigma2);
    const cvec w = solver.solve(z);
    const double amp = std::sqrt(q);
    std::vector<cvec> cols;
    cols.reserve(column_stats.size());
    for (const cmat& stat : column_stats) cols.push_back(amp * (stat * w));
    return cols;
}

cvec assemble_overall_estimate(const cvec& h_hat, const std::vector<cmat>& cascaded_hat,
                               const std::vector<cvec>& phases) {
    return effective_channel(h_hat, cascaded_hat, phases);
}

}  // namespace risim
