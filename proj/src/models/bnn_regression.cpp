#include "eubo/models/bnn_regression.hpp"

#include <cmath>

namespace eubo {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMajorMutMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

// Views into the packed latent vector.
struct Unpacked {
    RowMajorMap w1;
    Eigen::Map<const Eigen::VectorXd> b1;
    Eigen::Map<const Eigen::VectorXd> w2;
    double b2;
    double gamma;
};

Unpacked unpack(const Eigen::VectorXd& theta, int h, int in) {
    const double* p = theta.data();
    return Unpacked{RowMajorMap(p, h, in),
                    Eigen::Map<const Eigen::VectorXd>(p + h * in, h),
                    Eigen::Map<const Eigen::VectorXd>(p + h * in + h, h),
                    p[h * in + 2 * h], p[h * in + 2 * h + 1]};
}

} // namespace

BnnRegressionModel::BnnRegressionModel(const Dataset& data, int hidden_units)
    : data_(&data), hidden_(hidden_units),
      input_dim_(static_cast<int>(data.feature_dim())) {
    if (hidden_ < 1) {
        throw ConfigError("BnnRegressionModel: hidden_units must be >= 1");
    }
    dim_ = static_cast<Eigen::Index>(hidden_) * input_dim_ + 2 * hidden_ + 2;
}

Eigen::MatrixXd BnnRegressionModel::gather_columns(std::span<const int> rows) const {
    Eigen::MatrixXd x(input_dim_, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        x.col(static_cast<Eigen::Index>(j)) = data_->features.row(rows[j]).transpose();
    }
    return x;
}

double BnnRegressionModel::log_prior(const Eigen::VectorXd& theta) const {
    return -kHalfLog2Pi * static_cast<double>(theta.size()) - 0.5 * theta.squaredNorm();
}

Eigen::VectorXd BnnRegressionModel::grad_log_prior(const Eigen::VectorXd& theta) const {
    return -theta;
}

double BnnRegressionModel::log_lik_sum(const Eigen::VectorXd& theta,
                                       std::span<const int> rows) const {
    if (theta.size() != dim_) {
        throw ConfigError("BnnRegressionModel: theta dimension mismatch");
    }
    const auto u = unpack(theta, hidden_, input_dim_);
    const Eigen::MatrixXd x = gather_columns(rows);
    const Eigen::Index s = x.cols();

    Eigen::MatrixXd z = u.w1 * x;
    z.colwise() += u.b1;
    const Eigen::MatrixXd a = z.cwiseMax(0.0);
    const Eigen::VectorXd f =
        (a.transpose() * u.w2).array() + u.b2; // one output per batch column

    const double inv_var = std::exp(-2.0 * u.gamma);
    double total = 0.0;
    for (Eigen::Index j = 0; j < s; ++j) {
        const double r = data_->targets[rows[static_cast<std::size_t>(j)]] - f[j];
        total += -kHalfLog2Pi - u.gamma - 0.5 * r * r * inv_var;
    }
    return total;
}

Eigen::VectorXd BnnRegressionModel::grad_log_lik_sum(const Eigen::VectorXd& theta,
                                                     std::span<const int> rows) const {
    if (theta.size() != dim_) {
        throw ConfigError("BnnRegressionModel: theta dimension mismatch");
    }
    const auto u = unpack(theta, hidden_, input_dim_);
    const Eigen::MatrixXd x = gather_columns(rows);
    const Eigen::Index s = x.cols();

    Eigen::MatrixXd z = u.w1 * x;
    z.colwise() += u.b1;
    const Eigen::MatrixXd a = z.cwiseMax(0.0);
    const Eigen::VectorXd f = (a.transpose() * u.w2).array() + u.b2;

    const double inv_var = std::exp(-2.0 * u.gamma);
    Eigen::VectorXd resid(s);
    for (Eigen::Index j = 0; j < s; ++j) {
        resid[j] = data_->targets[rows[static_cast<std::size_t>(j)]] - f[j];
    }

    // d log_lik / d f_j = resid_j / sigma^2; backprop through the network.
    const Eigen::VectorXd df = resid * inv_var;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(dim_);
    double* gp = grad.data();

    RowMajorMutMap g_w1(gp, hidden_, input_dim_);
    Eigen::Map<Eigen::VectorXd> g_b1(gp + hidden_ * input_dim_, hidden_);
    Eigen::Map<Eigen::VectorXd> g_w2(gp + hidden_ * input_dim_ + hidden_, hidden_);
    double& g_b2 = gp[hidden_ * input_dim_ + 2 * hidden_];
    double& g_gamma = gp[hidden_ * input_dim_ + 2 * hidden_ + 1];

    g_w2 = a * df;
    g_b2 = df.sum();
    Eigen::MatrixXd dz = u.w2 * df.transpose();        // H x S
    dz = (z.array() > 0.0).select(dz, 0.0);            // ReLU mask
    g_w1 = dz * x.transpose();
    g_b1 = dz.rowwise().sum();
    g_gamma = resid.squaredNorm() * inv_var - static_cast<double>(s);
    return grad;
}

Eigen::VectorXd BnnRegressionModel::predict(const Eigen::VectorXd& theta,
                                            const Eigen::MatrixXd& X) const {
    if (theta.size() != dim_ || X.cols() != input_dim_) {
        throw ConfigError("BnnRegressionModel::predict: dimension mismatch");
    }
    const auto u = unpack(theta, hidden_, input_dim_);
    Eigen::MatrixXd z = u.w1 * X.transpose();
    z.colwise() += u.b1;
    return ((z.cwiseMax(0.0).transpose() * u.w2).array() + u.b2).matrix();
}

} // namespace eubo
