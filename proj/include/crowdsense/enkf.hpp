/*
 * enkf.hpp
 * crowdsense
 *
 * SPDX-FileCopyrightText: 2026 The crowdsense Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CROWDSENSE_ENKF_HPP_
#define CROWDSENSE_ENKF_HPP_

#include <random>

#include <Eigen/Dense>

namespace crowdsense::enkf {

using Rng = std::mt19937_64;

/// Draws one sample of N(0, cov) per column of an (dim x count) matrix.
/// `cov` must be symmetric positive semi-definite.
Eigen::MatrixXd gaussian_samples(const Eigen::MatrixXd& cov, Eigen::Index count, Rng& rng);

/// Same, for a diagonal covariance given by its diagonal.
Eigen::MatrixXd gaussian_samples_diag(const Eigen::VectorXd& variances, Eigen::Index count, Rng& rng);

/// Stochastic (perturbed-observation) Ensemble Kalman analysis.
///
/// `members` is state_dim x E, one ensemble member per column; `observed`
/// is obs_dim x E, the observation operator applied to each member. Each
/// member is pulled toward its own perturbed copy of `z`:
///
///     K   = C_xy (C_yy + R)^-1
///     x_j = x_j + K (z + e_j - y_j),   e_j ~ N(0, R)
///
/// Rows flagged false in `row_mask` (if non-empty) get a zero gain.
/// Throws DegenerateEnsemble when C_yy + R is singular.
void analysis(Eigen::MatrixXd& members, const Eigen::MatrixXd& observed, const Eigen::VectorXd& z,
              const Eigen::MatrixXd& obs_cov, Rng& rng,
              const Eigen::Array<bool, Eigen::Dynamic, 1>& row_mask = {});

/// Sample mean and (E-1)-normalized covariance of the columns.
Eigen::VectorXd ensemble_mean(const Eigen::MatrixXd& members);
Eigen::MatrixXd ensemble_covariance(const Eigen::MatrixXd& members);

}  // namespace crowdsense::enkf

#endif  // CROWDSENSE_ENKF_HPP_
