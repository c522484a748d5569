#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "eubo/bounds.hpp"

namespace eubo {

// Everything a run needs, loadable from a flat key=value file. Unknown keys
// are configuration errors (catches typos that would silently fall back to
// defaults). to_kv() round-trips every field for the run manifest.
struct ExperimentConfig {
    // model & data
    std::string model = "conjugate"; // conjugate | logreg | bnn
    std::string dataset = "conjugate-testbed";
    std::string data_path;   // CSV; unused by the conjugate model
    std::string schema_path; // schema; unused by the conjugate model
    int hidden_units = 50;   // bnn width (schema may override)
    double train_fraction = 0.9;

    // objective
    std::string objective = "eubo"; // elbo | eubo | renyi | chi
    double alpha = -1.0;            // renyi only
    double chi_n = 2.0;             // chi only
    std::string estimator = "score"; // score | reparam

    // optimization
    int num_particles = 10; // M, importance-sample count per step
    int batch_size = 100;   // S
    int epochs = 500;
    std::string optimizer = "adam"; // adam | sgd
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_stab = 1e-8;
    double init_mu = 0.0;
    double init_log_sigma = -2.3; // sigma ~ 0.1

    // trials & evaluation
    int trials = 20;
    std::uint64_t base_seed = 20240501;
    int eval_particles = 1000; // particles per trace point / final bounds
    int predict_draws = 200;   // posterior draws for test predictions

    static ExperimentConfig load(const std::string& path);
    std::string to_kv() const;

    BoundObjective bound_objective() const;
    void validate() const;
};

} // namespace eubo
