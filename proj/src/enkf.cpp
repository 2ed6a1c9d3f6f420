/*
 * enkf.cpp
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

#include "crowdsense/enkf.hpp"

#include "crowdsense/error.hpp"

namespace crowdsense::enkf {

namespace {

Eigen::MatrixXd standard_normals(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd out(rows, cols);
  // Column-major fill keeps the draw order stable across dimensions.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = normal(rng);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd gaussian_samples(const Eigen::MatrixXd& cov, Eigen::Index count, Rng& rng) {
  // Eigen-decomposition tolerates semi-definite input, unlike LLT.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd sqrt_vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd root = eig.eigenvectors() * sqrt_vals.asDiagonal();
  return root * standard_normals(cov.rows(), count, rng);
}

Eigen::MatrixXd gaussian_samples_diag(const Eigen::VectorXd& variances, Eigen::Index count,
                                      Rng& rng) {
  return variances.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         standard_normals(variances.size(), count, rng);
}

Eigen::VectorXd ensemble_mean(const Eigen::MatrixXd& members) {
  return members.rowwise().mean();
}

Eigen::MatrixXd ensemble_covariance(const Eigen::MatrixXd& members) {
  const Eigen::MatrixXd anomalies = members.colwise() - ensemble_mean(members);
  return anomalies * anomalies.transpose() / static_cast<double>(members.cols() - 1);
}

void analysis(Eigen::MatrixXd& members, const Eigen::MatrixXd& observed, const Eigen::VectorXd& z,
              const Eigen::MatrixXd& obs_cov, Rng& rng,
              const Eigen::Array<bool, Eigen::Dynamic, 1>& row_mask) {
  const Eigen::Index count = members.cols();
  if (count < 2) throw DegenerateEnsemble("ensemble needs at least two members");

  const Eigen::MatrixXd x_anom = members.colwise() - ensemble_mean(members);
  const Eigen::MatrixXd y_anom = observed.colwise() - ensemble_mean(observed);
  const double scale = 1.0 / static_cast<double>(count - 1);
  const Eigen::MatrixXd cross_cov = x_anom * y_anom.transpose() * scale;
  const Eigen::MatrixXd innov_cov = y_anom * y_anom.transpose() * scale + obs_cov;

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(innov_cov);
  if (!lu.isInvertible()) {
    throw DegenerateEnsemble("innovation covariance is singular (collapsed ensemble, singular R)");
  }
  Eigen::MatrixXd gain = lu.solve(cross_cov.transpose()).transpose();
  if (row_mask.size() == gain.rows()) {
    for (Eigen::Index r = 0; r < gain.rows(); ++r) {
      if (!row_mask(r)) gain.row(r).setZero();
    }
  }

  const Eigen::MatrixXd perturbations = gaussian_samples(obs_cov, count, rng);
  const Eigen::MatrixXd innovations = (perturbations.colwise() + z) - observed;
  members += gain * innovations;
}

}  // namespace crowdsense::enkf
