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

/**
 * @file
 * Black-box objectives together with the certified bounds the gradient
 * estimator is analysed against: ||grad f||_inf <= L and ||Hess f||_2 <= M
 * over an axis-aligned domain box.
 */

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qgrad {

using Point = std::vector<double>;

struct DomainBox {
    Point center;
    Point half_width;

    std::size_t dimension() const { return center.size(); }
    bool contains(std::span<const double> x) const;
    Point lower() const;
    Point upper() const;
};

/// Objective f : D -> R. `gradient` and `hessian` are exact and exist for
/// verification only; the estimator itself only ever calls `evaluate`.
class FunctionModel {
   public:
    using Evaluator = std::function<double(std::span<const double>)>;
    using GradientFn = std::function<Point(std::span<const double>)>;
    using HessianFn = std::function<Eigen::MatrixXd(std::span<const double>)>;

    FunctionModel(std::string name, Evaluator evaluate, GradientFn gradient, HessianFn hessian,
                  double grad_bound, double hess_bound, DomainBox domain);

    const std::string &name() const { return name_; }
    std::size_t dimension() const { return domain_.dimension(); }
    const DomainBox &domain() const { return domain_; }
    double grad_bound() const { return grad_bound_; }  // L
    double hess_bound() const { return hess_bound_; }  // M
    bool is_linear() const { return hess_bound_ == 0.0; }

    /// Throws DomainError when x is outside the domain box.
    double evaluate(std::span<const double> x) const;
    Point gradient(std::span<const double> x) const;
    Eigen::MatrixXd hessian(std::span<const double> x) const;

   private:
    void check_point(std::span<const double> x) const;

    std::string name_;
    Evaluator evaluate_;
    GradientFn gradient_;
    HessianFn hessian_;
    double grad_bound_;
    double hess_bound_;
    DomainBox domain_;
};

/// f(x) = a.x + c0. M = 0.
FunctionModel make_linear(Point a, double c0, DomainBox domain);

/// f(x) = a.x + x^T H x / 2 + c0 with symmetric H. L is the exact maximum of
/// ||a + Hx||_inf over the box and M the exact spectral norm of H.
FunctionModel make_quadratic(Point a, const Eigen::MatrixXd &hessian, double c0, DomainBox domain);

/// f(x) = c sin(b.x). L = |c| ||b||_inf, M = |c| ||b||_2^2.
FunctionModel make_sinusoidal(double c, Point b, DomainBox domain);

/// Separable polynomial f(x) = sum_m sum_k coefficients[m][k] x_m^k. L and
/// M are certified by the triangle inequality on the box.
FunctionModel make_separable_polynomial(std::vector<std::vector<double>> coefficients,
                                        DomainBox domain);

}  // namespace qgrad
