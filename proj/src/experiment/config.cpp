#include "eubo/experiment/config.hpp"

#include <sstream>

#include "eubo/errors.hpp"
#include "eubo/util/kv.hpp"

namespace eubo {

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    const KvFile kv = KvFile::parse_file(path);
    kv.require_known_keys({
        "model", "dataset", "data_path", "schema_path", "hidden_units",
        "train_fraction", "objective", "alpha", "chi_n", "estimator",
        "num_particles", "batch_size", "epochs", "optimizer", "learning_rate",
        "beta1", "beta2", "eps_stab", "init_mu", "init_log_sigma", "trials",
        "base_seed", "eval_particles", "predict_draws",
    });
    ExperimentConfig c;
    c.model = kv.get_string("model", c.model);
    c.dataset = kv.get_string("dataset", c.dataset);
    c.data_path = kv.get_string("data_path", c.data_path);
    c.schema_path = kv.get_string("schema_path", c.schema_path);
    c.hidden_units = static_cast<int>(kv.get_int("hidden_units", c.hidden_units));
    c.train_fraction = kv.get_double("train_fraction", c.train_fraction);
    c.objective = kv.get_string("objective", c.objective);
    c.alpha = kv.get_double("alpha", c.alpha);
    c.chi_n = kv.get_double("chi_n", c.chi_n);
    c.estimator = kv.get_string("estimator", c.estimator);
    c.num_particles = static_cast<int>(kv.get_int("num_particles", c.num_particles));
    c.batch_size = static_cast<int>(kv.get_int("batch_size", c.batch_size));
    c.epochs = static_cast<int>(kv.get_int("epochs", c.epochs));
    c.optimizer = kv.get_string("optimizer", c.optimizer);
    c.learning_rate = kv.get_double("learning_rate", c.learning_rate);
    c.beta1 = kv.get_double("beta1", c.beta1);
    c.beta2 = kv.get_double("beta2", c.beta2);
    c.eps_stab = kv.get_double("eps_stab", c.eps_stab);
    c.init_mu = kv.get_double("init_mu", c.init_mu);
    c.init_log_sigma = kv.get_double("init_log_sigma", c.init_log_sigma);
    c.trials = static_cast<int>(kv.get_int("trials", c.trials));
    c.base_seed = static_cast<std::uint64_t>(kv.get_int("base_seed",
                        static_cast<long>(c.base_seed)));
    c.eval_particles = static_cast<int>(kv.get_int("eval_particles", c.eval_particles));
    c.predict_draws = static_cast<int>(kv.get_int("predict_draws", c.predict_draws));
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    auto one_of = [](const std::string& v, std::initializer_list<const char*> allowed,
                     const char* field) {
        for (const char* a : allowed) {
            if (v == a) {
                return;
            }
        }
        throw ConfigError(std::string("config: bad ") + field + " '" + v + "'");
    };
    one_of(model, {"conjugate", "logreg", "bnn"}, "model");
    one_of(objective, {"elbo", "eubo", "renyi", "chi"}, "objective");
    one_of(estimator, {"score", "reparam"}, "estimator");
    one_of(optimizer, {"adam", "sgd"}, "optimizer");
    if (num_particles < 1 || trials < 1 || epochs < 1) {
        throw ConfigError("config: num_particles, trials, and epochs must be >= 1");
    }
    if (batch_size < 1 || eval_particles < 1 || predict_draws < 1) {
        throw ConfigError("config: batch_size, eval_particles, predict_draws must be >= 1");
    }
    if (learning_rate <= 0.0) {
        throw ConfigError("config: learning_rate must be positive");
    }
    if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
        throw ConfigError("config: train_fraction must be in (0, 1]");
    }
    if (model != "conjugate" && (data_path.empty() || schema_path.empty())) {
        throw ConfigError("config: " + model + " runs need data_path and schema_path");
    }
    bound_objective(); // validates alpha / chi_n
}

BoundObjective ExperimentConfig::bound_objective() const {
    if (objective == "elbo") {
        return BoundObjective::elbo();
    }
    if (objective == "eubo") {
        return BoundObjective::eubo();
    }
    if (objective == "renyi") {
        return BoundObjective::renyi(alpha);
    }
    if (objective == "chi") {
        return BoundObjective::chi(chi_n);
    }
    throw ConfigError("config: bad objective '" + objective + "'");
}

std::string ExperimentConfig::to_kv() const {
    std::ostringstream os;
    os.precision(17);
    os << "model = " << model << "\n";
    os << "dataset = " << dataset << "\n";
    os << "data_path = " << data_path << "\n";
    os << "schema_path = " << schema_path << "\n";
    os << "hidden_units = " << hidden_units << "\n";
    os << "train_fraction = " << train_fraction << "\n";
    os << "objective = " << objective << "\n";
    os << "alpha = " << alpha << "\n";
    os << "chi_n = " << chi_n << "\n";
    os << "estimator = " << estimator << "\n";
    os << "num_particles = " << num_particles << "\n";
    os << "batch_size = " << batch_size << "\n";
    os << "epochs = " << epochs << "\n";
    os << "optimizer = " << optimizer << "\n";
    os << "learning_rate = " << learning_rate << "\n";
    os << "beta1 = " << beta1 << "\n";
    os << "beta2 = " << beta2 << "\n";
    os << "eps_stab = " << eps_stab << "\n";
    os << "init_mu = " << init_mu << "\n";
    os << "init_log_sigma = " << init_log_sigma << "\n";
    os << "trials = " << trials << "\n";
    os << "base_seed = " << base_seed << "\n";
    os << "eval_particles = " << eval_particles << "\n";
    os << "predict_draws = " << predict_draws << "\n";
    return os.str();
}

} // namespace eubo
