// Copyright 2026 The qgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgrad/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgrad/errors.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "oracle-model";

void check_domain(const DomainBox &domain) {
    if (domain.center.empty()) throw InvalidArgument(kModule, "domain must have dimension >= 1");
    if (domain.center.size() != domain.half_width.size()) {
        throw InvalidArgument(kModule, "domain center and half-width dimensions differ");
    }
    for (double w : domain.half_width) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InvalidArgument(kModule, "domain half-widths must be finite and positive");
        }
    }
}

void check_dimension(std::size_t got, std::size_t want, const char *what) {
    if (got != want) {
        std::ostringstream os;
        os << what << " has dimension " << got << ", domain has " << want;
        throw InvalidArgument(kModule, os.str());
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

bool DomainBox::contains(std::span<const double> x) const {
    if (x.size() != center.size()) return false;
    for (std::size_t m = 0; m < x.size(); ++m) {
        if (!(std::abs(x[m] - center[m]) <= half_width[m])) return false;
    }
    return true;
}

Point DomainBox::lower() const {
    Point out(center.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = center[m] - half_width[m];
    return out;
}

Point DomainBox::upper() const {
    Point out(center.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = center[m] + half_width[m];
    return out;
}

FunctionModel::FunctionModel(std::string name, Evaluator evaluate, GradientFn gradient,
                             HessianFn hessian, double grad_bound, double hess_bound,
                             DomainBox domain)
    : name_(std::move(name)),
      evaluate_(std::move(evaluate)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      grad_bound_(grad_bound),
      hess_bound_(hess_bound),
      domain_(std::move(domain)) {
    check_domain(domain_);
    if (!(grad_bound_ >= 0.0) || !(hess_bound_ >= 0.0) || !std::isfinite(grad_bound_) ||
        !std::isfinite(hess_bound_)) {
        throw InvalidArgument(kModule, "bounds L and M must be finite and non-negative");
    }
}

void FunctionModel::check_point(std::span<const double> x) const {
    if (!domain_.contains(x)) {
        std::ostringstream os;
        os.precision(17);
        os << "point (";
        for (std::size_t m = 0; m < x.size(); ++m) os << (m ? ", " : "") << x[m];
        os << ") lies outside the domain of '" << name_ << "'";
        throw DomainError(kModule, os.str());
    }
}

double FunctionModel::evaluate(std::span<const double> x) const {
    check_point(x);
    return evaluate_(x);
}

Point FunctionModel::gradient(std::span<const double> x) const {
    check_point(x);
    return gradient_(x);
}

Eigen::MatrixXd FunctionModel::hessian(std::span<const double> x) const {
    check_point(x);
    return hessian_(x);
}

FunctionModel make_linear(Point a, double c0, DomainBox domain) {
    check_domain(domain);
    check_dimension(a.size(), domain.dimension(), "linear coefficient vector");
    double L = 0.0;
    for (double v : a) L = std::max(L, std::abs(v));
    const std::size_t p = a.size();
    return FunctionModel(
        "linear", [a, c0](std::span<const double> x) { return dot(a, x) + c0; },
        [a](std::span<const double>) { return a; },
        [p](std::span<const double>) { return Eigen::MatrixXd::Zero(p, p).eval(); }, L, 0.0,
        std::move(domain));
}

FunctionModel make_quadratic(Point a, const Eigen::MatrixXd &hessian, double c0, DomainBox domain) {
    check_domain(domain);
    const std::size_t p = domain.dimension();
    check_dimension(a.size(), p, "quadratic linear term");
    if (static_cast<std::size_t>(hessian.rows()) != p ||
        static_cast<std::size_t>(hessian.cols()) != p) {
        throw InvalidArgument(kModule, "quadratic Hessian must be p x p");
    }
    if ((hessian - hessian.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw InvalidArgument(kModule, "quadratic Hessian must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian, Eigen::EigenvaluesOnly);
    const double M = solver.eigenvalues().cwiseAbs().maxCoeff();

    // max over the box of |a_m + sum_j H_mj x_j| is attained at a vertex and
    // separates per coordinate.
    double L = 0.0;
    for (std::size_t m = 0; m < p; ++m) {
        double mid = a[m];
        double spread = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            mid += hessian(m, j) * domain.center[j];
            spread += std::abs(hessian(m, j)) * domain.half_width[j];
        }
        L = std::max(L, std::abs(mid) + spread);
    }

    const Eigen::MatrixXd H = hessian;
    auto grad = [a, H](std::span<const double> x) {
        Point g(a);
        for (std::size_t m = 0; m < g.size(); ++m) {
            for (std::size_t j = 0; j < g.size(); ++j) g[m] += H(m, j) * x[j];
        }
        return g;
    };
    auto eval = [a, H, c0](std::span<const double> x) {
        double quad = 0.0;
        for (std::size_t m = 0; m < a.size(); ++m) {
            for (std::size_t j = 0; j < a.size(); ++j) quad += x[m] * H(m, j) * x[j];
        }
        return dot(a, x) + 0.5 * quad + c0;
    };
    return FunctionModel("quadratic", eval, grad, [H](std::span<const double>) { return H; }, L, M,
                         std::move(domain));
}

FunctionModel make_sinusoidal(double c, Point b, DomainBox domain) {
    check_domain(domain);
    check_dimension(b.size(), domain.dimension(), "sinusoidal frequency vector");
    double b_inf = 0.0;
    double b_sq = 0.0;
    for (double v : b) {
        b_inf = std::max(b_inf, std::abs(v));
        b_sq += v * v;
    }
    auto eval = [c, b](std::span<const double> x) { return c * std::sin(dot(b, x)); };
    auto grad = [c, b](std::span<const double> x) {
        const double s = c * std::cos(dot(b, x));
        Point g(b.size());
        for (std::size_t m = 0; m < b.size(); ++m) g[m] = s * b[m];
        return g;
    };
    auto hess = [c, b](std::span<const double> x) {
        const Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
        return (-c * std::sin(dot(b, x)) * bv * bv.transpose()).eval();
    };
    return FunctionModel("sinusoidal", eval, grad, hess, std::abs(c) * b_inf, std::abs(c) * b_sq,
                         std::move(domain));
}

FunctionModel make_separable_polynomial(std::vector<std::vector<double>> coefficients,
                                        DomainBox domain) {
    check_domain(domain);
    check_dimension(coefficients.size(), domain.dimension(), "polynomial coefficient table");
    double L = 0.0;
    double M = 0.0;
    for (std::size_t m = 0; m < coefficients.size(); ++m) {
        const double r = std::abs(domain.center[m]) + domain.half_width[m];
        double d1 = 0.0;
        double d2 = 0.0;
        for (std::size_t k = 1; k < coefficients[m].size(); ++k) {
            const double ck = std::abs(coefficients[m][k]);
            d1 += ck * static_cast<double>(k) * std::pow(r, static_cast<double>(k - 1));
            if (k >= 2) {
                d2 += ck * static_cast<double>(k * (k - 1)) * std::pow(r, static_cast<double>(k - 2));
            }
        }
        L = std::max(L, d1);
        M = std::max(M, d2);
    }
    // Horner evaluation of value, first and second derivative per axis.
    auto axis = [](const std::vector<double> &c, double t, double &v, double &d1, double &d2) {
        v = d1 = d2 = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) {
            d2 = d2 * t + 2.0 * d1;
            d1 = d1 * t + v;
            v = v * t + c[k];
        }
    };
    auto eval = [coefficients, axis](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t m = 0; m < x.size(); ++m) {
            double v, d1, d2;
            axis(coefficients[m], x[m], v, d1, d2);
            s += v;
        }
        return s;
    };
    auto grad = [coefficients, axis](std::span<const double> x) {
        Point g(x.size());
        for (std::size_t m = 0; m < x.size(); ++m) {
            double v, d2;
            axis(coefficients[m], x[m], v, g[m], d2);
        }
        return g;
    };
    auto hess = [coefficients, axis](std::span<const double> x) {
        const auto p = static_cast<Eigen::Index>(x.size());
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p, p);
        for (Eigen::Index m = 0; m < p; ++m) {
            double v, d1;
            axis(coefficients[static_cast<std::size_t>(m)], x[static_cast<std::size_t>(m)], v, d1,
                 h(m, m));
        }
        return h;
    };
    return FunctionModel("polynomial", eval, grad, hess, L, M, std::move(domain));
}

}  // namespace qgrad
