#include "mgwi/optimize.hpp"

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace mgwi {

namespace {

// Stand-in for non-finite objective values so line searches back off.
constexpr double kPenalty = 1e300;

struct Problem {
    const Objective* f;
    const GradientFn* grad;
};

Eigen::VectorXd to_eigen(const gsl_vector* v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v->size));
    for (std::size_t i = 0; i < v->size; ++i) out(static_cast<Eigen::Index>(i)) = gsl_vector_get(v, i);
    return out;
}

void copy_to(const Eigen::VectorXd& src, gsl_vector* dst) {
    for (Eigen::Index i = 0; i < src.size(); ++i) gsl_vector_set(dst, static_cast<std::size_t>(i), src(i));
}

double safe_eval(const Objective& f, const Eigen::VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kPenalty;
}

double f_cb(const gsl_vector* v, void* params) {
    const auto* p = static_cast<const Problem*>(params);
    return safe_eval(*p->f, to_eigen(v));
}

void df_cb(const gsl_vector* v, void* params, gsl_vector* g) {
    const auto* p = static_cast<const Problem*>(params);
    Eigen::VectorXd grad = (*p->grad)(to_eigen(v));
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad(i))) grad(i) = 0.0;
    }
    copy_to(grad, g);
}

void fdf_cb(const gsl_vector* v, void* params, double* f, gsl_vector* g) {
    *f = f_cb(v, params);
    df_cb(v, params, g);
}

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct FdfDeleter {
    void operator()(gsl_multimin_fdfminimizer* s) const { gsl_multimin_fdfminimizer_free(s); }
};
struct FDeleter {
    void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};

using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

VectorPtr make_vector(const Eigen::VectorXd& x) {
    VectorPtr v(gsl_vector_alloc(static_cast<std::size_t>(x.size())));
    copy_to(x, v.get());
    return v;
}

double tolerance_for(double value, double tol) { return tol * std::max(1.0, std::abs(value)); }

// GSL's default handler aborts; errors are reported through return codes instead.
struct ErrorHandlerGuard {
    ErrorHandlerGuard() : previous(gsl_set_error_handler_off()) {}
    ~ErrorHandlerGuard() { gsl_set_error_handler(previous); }
    gsl_error_handler_t* previous;
};

}  // namespace

Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double h) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        xp(i) = x(i) + h;
        const double fp = f(xp);
        xp(i) = x(i) - h;
        const double fm = f(xp);
        xp(i) = x(i);
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x, double h) {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd hess(n, n);
    Eigen::VectorXd xp = x;
    const double f0 = f(x);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            double value;
            if (i == j) {
                xp(i) = x(i) + h;
                const double fp = f(xp);
                xp(i) = x(i) - h;
                const double fm = f(xp);
                xp(i) = x(i);
                value = (fp - 2.0 * f0 + fm) / (h * h);
            } else {
                auto at = [&](double di, double dj) {
                    xp(i) = x(i) + di;
                    xp(j) = x(j) + dj;
                    const double v = f(xp);
                    xp(i) = x(i);
                    xp(j) = x(j);
                    return v;
                };
                value = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
            }
            hess(i, j) = value;
            hess(j, i) = value;
        }
    }
    return hess;
}

OptimResult minimize_bfgs(const Objective& f, const GradientFn& grad, const Eigen::VectorXd& x0,
                          const OptimOptions& opts) {
    ErrorHandlerGuard guard;
    Problem problem{&f, &grad};
    gsl_multimin_function_fdf fdf;
    fdf.n = static_cast<std::size_t>(x0.size());
    fdf.f = f_cb;
    fdf.df = df_cb;
    fdf.fdf = fdf_cb;
    fdf.params = &problem;

    std::unique_ptr<gsl_multimin_fdfminimizer, FdfDeleter> s(
        gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, fdf.n));
    VectorPtr start = make_vector(x0);
    gsl_multimin_fdfminimizer_set(s.get(), &fdf, start.get(), opts.initial_step, 0.1);

    OptimResult out;
    out.algorithm = "bfgs";
    int status = GSL_CONTINUE;
    int iter = 0;
    auto grad_norm = [&] { return gsl_blas_dnrm2(s->gradient); };
    while (iter < opts.max_iterations) {
        if (grad_norm() <= tolerance_for(s->f, opts.gradient_tol)) {
            status = GSL_SUCCESS;
            break;
        }
        ++iter;
        status = gsl_multimin_fdfminimizer_iterate(s.get());
        if (status != GSL_SUCCESS) break;
        status = GSL_CONTINUE;
    }
    out.x = to_eigen(s->x);
    out.value = s->f;
    out.iterations = iter;
    out.gradient_norm = grad_norm();
    out.tolerance = tolerance_for(out.value, opts.gradient_tol);
    out.converged = out.gradient_norm <= out.tolerance && out.value < kPenalty;
    if (out.converged) {
        out.message = "gradient norm below tolerance";
    } else if (status == GSL_CONTINUE) {
        out.message = "iteration limit reached";
    } else {
        out.message = std::string("line search stopped: ") + gsl_strerror(status);
    }
    return out;
}

OptimResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                                 const OptimOptions& opts) {
    ErrorHandlerGuard guard;
    Problem problem{&f, nullptr};
    gsl_multimin_function fn;
    fn.n = static_cast<std::size_t>(x0.size());
    fn.f = f_cb;
    fn.params = &problem;

    std::unique_ptr<gsl_multimin_fminimizer, FDeleter> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, fn.n));
    VectorPtr start = make_vector(x0);
    VectorPtr steps = make_vector(Eigen::VectorXd::Constant(x0.size(), opts.initial_step));
    gsl_multimin_fminimizer_set(s.get(), &fn, start.get(), steps.get());

    OptimResult out;
    out.algorithm = "nelder-mead";
    int iter = 0;
    double size = std::numeric_limits<double>::infinity();
    int status = GSL_CONTINUE;
    while (iter < opts.simplex_max_iterations) {
        ++iter;
        status = gsl_multimin_fminimizer_iterate(s.get());
        if (status != GSL_SUCCESS) break;
        size = gsl_multimin_fminimizer_size(s.get());
        if (size < opts.simplex_tol) break;
    }
    out.x = to_eigen(s->x);
    out.value = s->fval;
    out.iterations = iter;
    out.tolerance = opts.simplex_tol;
    out.gradient_norm = std::numeric_limits<double>::quiet_NaN();
    out.converged = size < opts.simplex_tol && out.value < kPenalty;
    out.message = out.converged ? "simplex size below tolerance" : "simplex did not contract";
    return out;
}

OptimResult minimize(const Objective& f, const GradientFn& grad, const Eigen::VectorXd& x0,
                     const OptimOptions& opts) {
    const GradientFn g = grad ? grad : GradientFn([&f](const Eigen::VectorXd& x) {
        return numeric_gradient(f, x);
    });
    OptimResult first = minimize_bfgs(f, g, x0, opts);
    if (first.converged || !opts.nelder_mead_fallback) return first;

    const Eigen::VectorXd restart = first.value < safe_eval(f, x0) ? first.x : x0;
    OptimResult simplex = minimize_nelder_mead(f, restart, opts);
    OptimResult polish = minimize_bfgs(f, g, simplex.x, opts);
    const int total = first.iterations + simplex.iterations + polish.iterations;
    if (polish.converged || polish.value <= simplex.value) {
        polish.iterations = total;
        polish.algorithm = "bfgs+nelder-mead";
        if (!polish.converged && simplex.converged) {
            polish.converged = true;
            polish.tolerance = simplex.tolerance;
            polish.message = "simplex size below tolerance";
        }
        return polish;
    }
    simplex.iterations = total;
    simplex.algorithm = "bfgs+nelder-mead";
    return simplex;
}

}  // namespace mgwi
