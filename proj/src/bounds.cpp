#include "eubo/bounds.hpp"

#include <cmath>
#include <sstream>

#include "eubo/errors.hpp"
#include "eubo/log_ops.hpp"

namespace eubo {

BoundObjective BoundObjective::renyi(double alpha) {
    if (alpha == 1.0) {
        throw ConfigError("BoundObjective: alpha = 1 is not a Renyi bound; use the ELBO");
    }
    return {Kind::RENYI, alpha, 0.0};
}

BoundObjective BoundObjective::chi(double n) {
    if (!(n > 1.0)) {
        throw ConfigError("BoundObjective: chi^n requires n > 1");
    }
    return {Kind::CHI, 0.0, n};
}

bool BoundObjective::is_upper_bound() const {
    switch (kind) {
    case Kind::ELBO: return false;
    case Kind::EUBO: return true;
    case Kind::RENYI: return alpha < 0.0;
    case Kind::CHI: return true;
    }
    throw ConfigError("BoundObjective: unknown kind");
}

std::string BoundObjective::label() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::ELBO: return "elbo";
    case Kind::EUBO: return "eubo";
    case Kind::RENYI:
        os << "renyi(alpha=" << alpha << ")";
        return os.str();
    case Kind::CHI:
        os << "chi(n=" << n << ")";
        return os.str();
    }
    throw ConfigError("BoundObjective: unknown kind");
}

double estimate_bound(const BoundObjective& objective, const ParticleBatch& batch) {
    const Eigen::VectorXd& s = batch.log_omega;
    if (s.size() == 0) {
        throw InputError("estimate_bound: empty particle batch");
    }
    switch (objective.kind) {
    case BoundObjective::Kind::ELBO:
        return s.mean();
    case BoundObjective::Kind::EUBO: {
        // weights_hat can be all-finite only if normalize_weights succeeded,
        // so a degenerate batch has already thrown during simulation.
        return batch.weights_hat.dot(s);
    }
    case BoundObjective::Kind::RENYI: {
        if (objective.alpha == 1.0) {
            throw ConfigError("estimate_bound: alpha = 1; use the ELBO");
        }
        const double k = 1.0 - objective.alpha;
        return log_mean_exp((k * s.array()).matrix()) / k;
    }
    case BoundObjective::Kind::CHI: {
        if (!(objective.n > 1.0)) {
            throw ConfigError("estimate_bound: chi^n requires n > 1");
        }
        return log_mean_exp((objective.n * s.array()).matrix()) / objective.n;
    }
    }
    throw ConfigError("estimate_bound: unknown objective kind");
}

double estimate_log_evidence(const ParticleBatch& batch) {
    if (batch.log_omega.size() == 0) {
        throw InputError("estimate_log_evidence: empty particle batch");
    }
    return log_mean_exp(batch.log_omega);
}

} // namespace eubo
