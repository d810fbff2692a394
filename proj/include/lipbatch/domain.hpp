#ifndef LIPBATCH_DOMAIN_HPP
#define LIPBATCH_DOMAIN_HPP

#include <Eigen/Dense>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipbatch {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

struct SingularKernel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPositiveValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ObjectiveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Axis-aligned box of search space bounds.
class BoxDomain {
public:
    BoxDomain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
        if (lower_.size() != upper_.size() || lower_.size() < 1)
            throw ConfigError("BoxDomain: bound dimension mismatch");
        for (Eigen::Index i = 0; i < lower_.size(); ++i)
            if (!(lower_[i] < upper_[i]))
                throw ConfigError("BoxDomain: lower[" + std::to_string(i) + "] must be < upper");
    }

    /// Hypercube [lo, hi]^d.
    static BoxDomain cube(int d, double lo, double hi) {
        return BoxDomain(Vector::Constant(d, lo), Vector::Constant(d, hi));
    }

    int dim() const { return static_cast<int>(lower_.size()); }
    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    Vector width() const { return upper_ - lower_; }

    bool contains(const Vector& x, double tol = 0.0) const {
        if (x.size() != lower_.size()) return false;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
        return true;
    }

    Vector clamp(const Vector& x) const {
        return x.cwiseMax(lower_).cwiseMin(upper_);
    }

    Vector sample_uniform(Rng& rng) const {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Vector x(dim());
        for (int i = 0; i < dim(); ++i) x[i] = lower_[i] + u(rng) * (upper_[i] - lower_[i]);
        return x;
    }

private:
    Vector lower_;
    Vector upper_;
};

/// Observed inputs and noisy objective values inside a box.
struct Dataset {
    Matrix X;  // n x d
    Vector y;  // n
    BoxDomain domain;

    Dataset(Matrix X_, Vector y_, BoxDomain dom) : X(std::move(X_)), y(std::move(y_)), domain(std::move(dom)) {
        if (X.rows() != y.size() || X.rows() < 1)
            throw ConfigError("Dataset: X rows must match y size and be >= 1");
        if (X.cols() != domain.dim())
            throw ConfigError("Dataset: X column count must match domain dimension");
        if (!y.allFinite() || !X.allFinite())
            throw ConfigError("Dataset: non-finite entries");
    }

    int n() const { return static_cast<int>(X.rows()); }
    int dim() const { return static_cast<int>(X.cols()); }
};

}  // namespace lipbatch

#endif  // LIPBATCH_DOMAIN_HPP
