#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

namespace mgwi {

using Objective = std::function<double(const Eigen::VectorXd&)>;
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct OptimOptions {
    /// Converged when ||grad|| <= gradient_tol * max(1, |f|).
    double gradient_tol = 1e-8;
    int max_iterations = 500;
    /// Nelder-Mead stops when the simplex characteristic size drops below this.
    double simplex_tol = 1e-8;
    int simplex_max_iterations = 5000;
    double initial_step = 0.1;
    bool nelder_mead_fallback = true;
};

struct OptimResult {
    Eigen::VectorXd x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
    /// Effective tolerance the convergence flag was judged against.
    double tolerance = 0.0;
    std::string algorithm;
    std::string message;
};

/// Central-difference gradient with absolute step h.
[[nodiscard]] Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x,
                                               double h = 1e-6);
/// Central-difference Hessian with absolute step h.
[[nodiscard]] Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x,
                                              double h = 1e-4);

/// Quasi-Newton (BFGS) minimization.
[[nodiscard]] OptimResult minimize_bfgs(const Objective& f, const GradientFn& grad,
                                        const Eigen::VectorXd& x0, const OptimOptions& opts);
/// Derivative-free simplex minimization.
[[nodiscard]] OptimResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                                               const OptimOptions& opts);

/// BFGS first; on failure, Nelder-Mead from the best BFGS point followed by
/// a BFGS polish. Uses numeric gradients when grad is empty.
[[nodiscard]] OptimResult minimize(const Objective& f, const GradientFn& grad,
                                   const Eigen::VectorXd& x0, const OptimOptions& opts);

}  // namespace mgwi
