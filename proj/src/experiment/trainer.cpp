#include "eubo/experiment/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "eubo/bounds.hpp"
#include "eubo/data/minibatch.hpp"
#include "eubo/estimators.hpp"
#include "eubo/log_ops.hpp"
#include "eubo/models/bnn_regression.hpp"
#include "eubo/models/conjugate_gaussian.hpp"
#include "eubo/models/logistic_regression.hpp"
#include "eubo/optimizer.hpp"

namespace eubo {

const std::vector<std::string> kBoundRows = {
    "U_renyi_alpha=-2", "U_eubo", "U_chi_n=2", "half_U_plus_half_logp",
    "logp_hat",         "L_elbo", "L_renyi_alpha=2",
};

namespace {

// Seed streams within one trial.
enum : std::uint64_t { kSplitStream = 1, kShuffleStream = 2, kTrainStream = 3,
                       kEvalStream = 4, kPredictStream = 5 };

// Per-trial materialization: datasets live here so the model's references
// stay valid; never moved after construction.
struct TrialData {
    Dataset train;
    Dataset test;
    Eigen::VectorXd test_targets_raw; // original scale, regression only
    DatasetSchema::Task task = DatasetSchema::Task::CLASSIFICATION;
    std::unique_ptr<Model> model;
};

std::unique_ptr<TrialData> prepare_trial(const ExperimentConfig& cfg,
                                         const Dataset* full_raw,
                                         std::uint64_t trial_seed) {
    auto td = std::make_unique<TrialData>();
    if (cfg.model == "conjugate") {
        td->model = std::make_unique<ConjugateGaussianModel>(
            ConjugateGaussianModel::canonical());
        return td;
    }
    if (full_raw == nullptr) {
        throw ConfigError("run_trial: model '" + cfg.model + "' needs a dataset");
    }
    if (full_raw->size() < 10) {
        throw InputError("run_trial: dataset has fewer than 10 rows");
    }
    const DatasetSchema schema = DatasetSchema::load(cfg.schema_path);
    td->task = schema.task;

    auto [train, test] = split(*full_raw, SplitSpec{cfg.train_fraction,
                                                    derive_seed(trial_seed, kSplitStream)});
    td->train = std::move(train);
    td->test = std::move(test);
    td->test_targets_raw = td->test.targets;
    if (schema.standardize) {
        standardize(td->train, schema.standardize_target);
        apply_standardization(td->test, td->train.column_stats, td->train.target_stats,
                              schema.standardize_target);
    }

    if (cfg.model == "logreg") {
        if (schema.task != DatasetSchema::Task::CLASSIFICATION) {
            throw ConfigError("run_trial: logreg needs a classification schema");
        }
        td->model = std::make_unique<LogisticRegressionModel>(td->train);
    } else { // bnn
        if (schema.task != DatasetSchema::Task::REGRESSION) {
            throw ConfigError("run_trial: bnn needs a regression schema");
        }
        const int width = schema.hidden_units.value_or(cfg.hidden_units);
        td->model = std::make_unique<BnnRegressionModel>(td->train, width);
    }
    return td;
}

GradientEstimate training_gradient(const ExperimentConfig& cfg,
                                   const BoundObjective& objective, const Model& model,
                                   std::span<const int> rows, Eigen::Index total_n,
                                   const VariationalParams& params,
                                   const ParticleBatch& batch) {
    switch (objective.kind) {
    case BoundObjective::Kind::ELBO:
        return elbo_reparam_gradient(model, rows, total_n, params, batch);
    case BoundObjective::Kind::EUBO:
        if (cfg.estimator == "reparam") {
            return eubo_reparam_gradient(model, rows, total_n, params, batch);
        }
        return eubo_score_gradient(batch, params);
    case BoundObjective::Kind::RENYI:
        return renyi_reparam_gradient(model, rows, total_n, params, batch,
                                      objective.alpha);
    case BoundObjective::Kind::CHI:
        return chi_score_gradient(batch, params, objective.n);
    }
    throw ConfigError("training_gradient: unknown objective");
}

void evaluate_final_bounds(TrialReport& report, const Model& model,
                           const std::vector<int>& rows,
                           const VariationalParams& params, int particles,
                           std::uint64_t seed) {
    const ParticleBatch batch =
        simulate_particles(model, rows, model.data_size(), params, particles, seed);
    const double u_eubo = estimate_bound(BoundObjective::eubo(), batch);
    const double logp = estimate_log_evidence(batch);
    report.final_bounds["U_renyi_alpha=-2"] =
        estimate_bound(BoundObjective::renyi(-2.0), batch);
    report.final_bounds["U_eubo"] = u_eubo;
    report.final_bounds["U_chi_n=2"] = estimate_bound(BoundObjective::chi(2.0), batch);
    report.final_bounds["half_U_plus_half_logp"] = 0.5 * u_eubo + 0.5 * logp;
    report.final_bounds["logp_hat"] = logp;
    report.final_bounds["L_elbo"] = estimate_bound(BoundObjective::elbo(), batch);
    report.final_bounds["L_renyi_alpha=2"] =
        estimate_bound(BoundObjective::renyi(2.0), batch);
}

void evaluate_test_metrics(TrialReport& report, const TrialData& td,
                           const ExperimentConfig& cfg, const VariationalParams& params,
                           std::uint64_t seed) {
    if (td.test.size() == 0) {
        throw InputError("evaluate_test_metrics: empty test set");
    }
    const NoiseDraw noise = draw_noise(cfg.predict_draws, params.dim(), seed);
    const Eigen::MatrixXd thetas = reparameterize(params, noise);
    const Eigen::Index n_test = td.test.size();
    const Eigen::Index m = thetas.rows();

    if (td.task == DatasetSchema::Task::CLASSIFICATION) {
        const auto* lr = dynamic_cast<const LogisticRegressionModel*>(td.model.get());
        if (lr == nullptr) {
            throw ConfigError("evaluate_test_metrics: classification needs logreg");
        }
        int errors = 0;
        double ll_total = 0.0;
        Eigen::VectorXd per_draw_lik(m);
        for (Eigen::Index i = 0; i < n_test; ++i) {
            const Eigen::VectorXd x = td.test.features.row(i).transpose();
            const double y = td.test.targets[i];
            double mean_p = 0.0;
            for (Eigen::Index j = 0; j < m; ++j) {
                const double p = lr->predict_prob(thetas.row(j).transpose(), x);
                mean_p += p;
                per_draw_lik[j] = std::log(y > 0.5 ? p : 1.0 - p);
            }
            mean_p /= static_cast<double>(m);
            const int pred = mean_p > 0.5 ? 1 : 0;
            errors += (pred != static_cast<int>(y)) ? 1 : 0;
            ll_total += log_mean_exp(per_draw_lik);
        }
        report.test_error = static_cast<double>(errors) / static_cast<double>(n_test);
        report.test_log_lik = ll_total / static_cast<double>(n_test);
        return;
    }

    // Regression: predictions and likelihoods in the ORIGINAL target scale.
    const auto* bnn = dynamic_cast<const BnnRegressionModel*>(td.model.get());
    if (bnn == nullptr) {
        throw ConfigError("evaluate_test_metrics: regression needs bnn");
    }
    const double y_std = td.test.target_stats.std == 0.0 ? 1.0 : td.test.target_stats.std;
    const double y_mean = td.test.target_stats.mean;
    Eigen::MatrixXd f_orig(m, n_test);
    Eigen::VectorXd noise_std_orig(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::VectorXd theta = thetas.row(j).transpose();
        const Eigen::VectorXd f = bnn->predict(theta, td.test.features);
        f_orig.row(j) = (f.array() * y_std + y_mean).matrix().transpose();
        noise_std_orig[j] = std::exp(bnn->noise_log_std(theta)) * y_std;
    }
    const Eigen::VectorXd pred_mean = f_orig.colwise().mean();
    report.test_rmse =
        std::sqrt((pred_mean - td.test_targets_raw).array().square().mean());

    constexpr double half_log_2pi = 0.91893853320467274178;
    double ll_total = 0.0;
    Eigen::VectorXd per_draw(m);
    for (Eigen::Index i = 0; i < n_test; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double r = td.test_targets_raw[i] - f_orig(j, i);
            const double sd = noise_std_orig[j];
            per_draw[j] = -half_log_2pi - std::log(sd) - r * r / (2.0 * sd * sd);
        }
        ll_total += log_mean_exp(per_draw);
    }
    report.test_log_lik = ll_total / static_cast<double>(n_test);
}

} // namespace

TrialReport run_trial(const ExperimentConfig& config, const Dataset* full_raw,
                      int trial_index) {
    const auto t_start = std::chrono::steady_clock::now();
    config.validate();
    const BoundObjective objective = config.bound_objective();

    TrialReport report;
    report.trial_seed = config.base_seed + static_cast<std::uint64_t>(trial_index);

    const auto td = prepare_trial(config, full_raw, report.trial_seed);
    const Model& model = *td->model;
    const Eigen::Index dim = model.latent_dim();
    const Eigen::Index n_train = model.data_size();

    VariationalParams params(
        Eigen::VectorXd::Constant(dim, config.init_mu),
        Eigen::VectorXd::Constant(dim, config.init_log_sigma));
    OptimizerState opt =
        config.optimizer == "sgd"
            ? OptimizerState::sgd(config.learning_rate)
            : OptimizerState::adam(dim, config.learning_rate, config.beta1,
                                   config.beta2, config.eps_stab);

    MinibatchSampler sampler(static_cast<int>(n_train), config.batch_size,
                             derive_seed(report.trial_seed, kShuffleStream));
    const std::vector<int> full_train_rows = all_rows(n_train);

    double ess_sum = 0.0;
    double ess_min = std::numeric_limits<double>::infinity();
    long steps = 0;

    // Divergence policy: a non-finite lambda — or particles so degenerate the
    // weights cannot be normalized (lambda finite but exp-overflowed) — flags
    // the trial; it never crashes the experiment.
    for (int epoch = 0; epoch < config.epochs && !report.diverged; ++epoch) {
        try {
            for (int b = 0; b < sampler.batches_per_epoch(); ++b) {
                const std::vector<int> rows = sampler.next_batch();
                const std::uint64_t step_seed = derive_seed(
                    derive_seed(report.trial_seed, kTrainStream),
                    static_cast<std::uint64_t>(steps));
                const ParticleBatch batch =
                    simulate_particles(model, rows, n_train, params,
                                       config.num_particles, step_seed);
                const double ess = effective_sample_size(batch.weights_hat);
                ess_sum += ess;
                ess_min = std::min(ess_min, ess);

                GradientEstimate grad = training_gradient(config, objective, model,
                                                          rows, n_train, params, batch);
                // optimizer_step descends: the EUBO and chi objectives are
                // minimized toward log p(D), while ELBO and the Renyi bound
                // ascend for every alpha (standard SVI as alpha -> 1,
                // importance-weighted VI at alpha = 0). Descending the Renyi
                // estimate at alpha < 0 would chase its finite-sample downward
                // bias instead of the bound: q drifts off the posterior while
                // the printed value keeps sinking.
                const bool ascend = objective.kind == BoundObjective::Kind::ELBO ||
                                    objective.kind == BoundObjective::Kind::RENYI;
                if (ascend) {
                    grad.grad_mu = -grad.grad_mu;
                    grad.grad_log_sigma = -grad.grad_log_sigma;
                }
                params = optimizer_step(opt, params, grad);
                ++steps;
                if (!params.all_finite()) {
                    report.diverged = true;
                    break;
                }
            }
            if (report.diverged) {
                break;
            }
            // End-of-epoch trace on the full training data, fresh particles.
            const ParticleBatch eval = simulate_particles(
                model, full_train_rows, n_train, params, config.eval_particles,
                derive_seed(derive_seed(report.trial_seed, kEvalStream),
                            static_cast<std::uint64_t>(epoch)));
            report.trace_elbo.push_back(estimate_bound(BoundObjective::elbo(), eval));
            report.trace_eubo.push_back(estimate_bound(BoundObjective::eubo(), eval));
            report.trace_log_evidence.push_back(estimate_log_evidence(eval));
            ++report.epochs_run;
        } catch (const DegenerateWeightsError&) {
            report.diverged = true;
        } catch (const OptimizerError&) {
            report.diverged = true;
        } catch (const InputError&) {
            // Finite lambda whose exp() overflows poisons log-omega with NaN
            // downstream; the sampler only ever produces valid batches, so an
            // InputError inside the loop is numeric degeneracy, not misuse.
            report.diverged = true;
        }
    }

    report.mean_ess = steps > 0 ? ess_sum / static_cast<double>(steps) : 0.0;
    report.min_ess = std::isfinite(ess_min) ? ess_min : 0.0;
    report.final_params = params;

    if (!report.diverged) {
        evaluate_final_bounds(report, model, full_train_rows, params,
                              config.eval_particles,
                              derive_seed(derive_seed(report.trial_seed, kEvalStream),
                                          0xFFFFFFULL));
        if (config.model != "conjugate") {
            evaluate_test_metrics(report, *td, config, params,
                                  derive_seed(report.trial_seed, kPredictStream));
        }
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

} // namespace eubo
