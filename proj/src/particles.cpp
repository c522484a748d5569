#include "eubo/particles.hpp"

#include "eubo/log_ops.hpp"

namespace eubo {

ParticleBatch simulate_particles(const Model& model, std::span<const int> rows,
                                 Eigen::Index total_n, const VariationalParams& params,
                                 const NoiseDraw& noise) {
    ParticleBatch out;
    out.noise = noise;
    out.theta = reparameterize(params, noise);
    const Eigen::Index m = out.theta.rows();
    out.log_joint.resize(m);
    out.log_q.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::VectorXd theta_i = out.theta.row(i);
        out.log_joint[i] = log_joint_minibatch(model, rows, theta_i, total_n);
        out.log_q[i] = log_density_q(params, theta_i);
    }
    out.log_omega = out.log_joint - out.log_q;
    out.weights_hat = normalize_weights(out.log_omega);
    return out;
}

ParticleBatch simulate_particles(const Model& model, std::span<const int> rows,
                                 Eigen::Index total_n, const VariationalParams& params,
                                 Eigen::Index m, std::uint64_t seed) {
    return simulate_particles(model, rows, total_n, params,
                              draw_noise(m, params.dim(), seed));
}

} // namespace eubo
