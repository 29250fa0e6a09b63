// Copyright 2026 The icbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace icb {

/// Numerical thresholds shared by every module.
///
/// The defaults leave headroom for double-precision work on matrices up to
/// a few dozen rows. Every entry point that depends on a threshold takes a
/// `Tolerances` argument, so a campaign can override any of them.
struct Tolerances {
  double herm_tol = 1e-10;     // max |m - m^dagger| accepted as Hermitian
  double psd_floor = 1e-10;    // eigenvalues with |lambda| below are exact zeros
  double recon_tol = 1e-9;     // eigendecomposition reconstruction residual
  double trace_tol = 1e-10;    // |tr(rho) - 1| for density matrices
  double unitary_tol = 1e-10;  // max |U^dagger U - I|
  double cptp_tol = 1e-9;      // CP (Choi min eigenvalue) and TP residuals
  double support_tol = 1e-9;   // kernel weight that makes D[a||b] infinite
  double fp_tol = 1e-9;        // fixed-point residual ||Phi(e) - e||_1
  double fp_degeneracy = 1e-8; // superoperator eigenvalues this close to 1 are fixed
  double slack_tol = 1e-8;     // bound verdicts: pass iff slack >= -slack_tol
};

}  // namespace icb
