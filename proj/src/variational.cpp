#include "eubo/variational.hpp"

#include <cmath>
#include <random>

#include "eubo/errors.hpp"

namespace eubo {

VariationalParams::VariationalParams(Eigen::VectorXd mu_, Eigen::VectorXd log_sigma_)
    : mu(std::move(mu_)), log_sigma(std::move(log_sigma_)) {
    if (mu.size() != log_sigma.size() || mu.size() < 1) {
        throw ConfigError("VariationalParams: mu and log_sigma must have equal length >= 1");
    }
}

bool VariationalParams::all_finite() const {
    return mu.allFinite() && log_sigma.allFinite();
}

NoiseDraw draw_noise(Eigen::Index m, Eigen::Index d, std::uint64_t seed) {
    if (m < 1 || d < 1) {
        throw ConfigError("draw_noise: need m >= 1 and d >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    NoiseDraw out;
    out.epsilon.resize(m, d);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out.epsilon(i, j) = gauss(rng);
        }
    }
    out.seed_record = seed;
    return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Eigen::MatrixXd reparameterize(const VariationalParams& params, const NoiseDraw& noise) {
    if (noise.epsilon.cols() != params.dim()) {
        throw ConfigError("reparameterize: noise dimension does not match params");
    }
    const Eigen::RowVectorXd sig = params.sigma().transpose();
    return (noise.epsilon.array().rowwise() * sig.array()).rowwise() +
           params.mu.transpose().array();
}

double log_density_q(const VariationalParams& params, const Eigen::VectorXd& theta) {
    if (theta.size() != params.dim()) {
        throw ConfigError("log_density_q: theta dimension does not match params");
    }
    constexpr double half_log_2pi = 0.91893853320467274178; // 0.5*log(2*pi)
    const Eigen::ArrayXd sig = params.sigma().array();
    const Eigen::ArrayXd z = (theta - params.mu).array() / sig;
    return -(half_log_2pi * static_cast<double>(params.dim())) -
           params.log_sigma.sum() - 0.5 * z.square().sum();
}

std::pair<Eigen::VectorXd, Eigen::VectorXd>
grad_logq_wrt_lambda(const VariationalParams& params, const Eigen::VectorXd& theta) {
    if (theta.size() != params.dim()) {
        throw ConfigError("grad_logq_wrt_lambda: theta dimension does not match params");
    }
    const Eigen::ArrayXd sig2 = params.sigma().array().square();
    const Eigen::ArrayXd diff = (theta - params.mu).array();
    Eigen::VectorXd grad_mu = (diff / sig2).matrix();
    Eigen::VectorXd grad_log_sigma = (diff.square() / sig2 - 1.0).matrix();
    return {std::move(grad_mu), std::move(grad_log_sigma)};
}

} // namespace eubo
