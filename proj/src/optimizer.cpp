#include "eubo/optimizer.hpp"

#include <cmath>
#include <sstream>

#include "eubo/errors.hpp"

namespace eubo {

OptimizerState OptimizerState::sgd(double learning_rate) {
    OptimizerState s;
    s.kind = Kind::SGD;
    s.learning_rate = learning_rate;
    return s;
}

OptimizerState OptimizerState::adam(Eigen::Index dim, double learning_rate,
                                    double beta1, double beta2, double eps_stab) {
    if (dim < 1 || learning_rate <= 0.0) {
        throw ConfigError("OptimizerState::adam: need dim >= 1 and learning_rate > 0");
    }
    OptimizerState s;
    s.kind = Kind::ADAM;
    s.learning_rate = learning_rate;
    s.beta1 = beta1;
    s.beta2 = beta2;
    s.eps_stab = eps_stab;
    s.first_moment = Eigen::VectorXd::Zero(2 * dim);
    s.second_moment = Eigen::VectorXd::Zero(2 * dim);
    return s;
}

VariationalParams optimizer_step(OptimizerState& state, const VariationalParams& params,
                                 const GradientEstimate& grad) {
    const Eigen::Index d = params.dim();
    if (grad.grad_mu.size() != d || grad.grad_log_sigma.size() != d) {
        throw ConfigError("optimizer_step: gradient dimension mismatch");
    }
    const Eigen::VectorXd g = grad.flat();
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) {
            std::ostringstream os;
            os << "optimizer_step: non-finite gradient at flat coordinate " << i
               << " (value " << g[i] << ", step " << state.step_count << ")";
            throw OptimizerError(os.str());
        }
    }

    Eigen::VectorXd x(2 * d);
    x << params.mu, params.log_sigma;

    switch (state.kind) {
    case OptimizerState::Kind::SGD:
        x -= state.learning_rate * g;
        ++state.step_count;
        break;
    case OptimizerState::Kind::ADAM: {
        if (state.first_moment.size() != 2 * d) {
            throw ConfigError("optimizer_step: ADAM moments do not match parameter size");
        }
        ++state.step_count;
        const double t = static_cast<double>(state.step_count);
        state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * g;
        state.second_moment =
            state.beta2 * state.second_moment + (1.0 - state.beta2) * g.cwiseProduct(g);
        const double bc1 = 1.0 - std::pow(state.beta1, t);
        const double bc2 = 1.0 - std::pow(state.beta2, t);
        const Eigen::ArrayXd m_hat = state.first_moment.array() / bc1;
        const Eigen::ArrayXd v_hat = state.second_moment.array() / bc2;
        x.array() -= state.learning_rate * m_hat / (v_hat.sqrt() + state.eps_stab);
        break;
    }
    }
    return VariationalParams(x.head(d), x.tail(d));
}

} // namespace eubo
