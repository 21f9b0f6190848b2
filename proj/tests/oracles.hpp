// Copyright 2026 The dissipative-tmsv Authors
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

// Reference constructions for the tests. Everything here is built from
// raw Eigen Kronecker products and closed forms, without going through the
// library's embedding or vectorisation code.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M kron(const M& a, const M& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline M kron4(const M& a, const M& b, const M& c, const M& d) { return kron(kron(kron(a, b), c), d); }

// Truncated annihilation operator on {0..n}.
inline M lower(int n) {
  M a = M::Zero(n + 1, n + 1);
  for (int k = 1; k <= n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// Qubit basis (g, e): sigma_+ = |e><g|, sigma_z = diag(-1, 1).
inline M sigma_plus() {
  M s = M::Zero(2, 2);
  s(1, 0) = 1.0;
  return s;
}
inline M sigma_z() {
  M s = M::Zero(2, 2);
  s(0, 0) = -1.0;
  s(1, 1) = 1.0;
  return s;
}

struct Ops {
  M sp1, sp2, sz1, sz2, a1, a2;
};

// Operators on (q1, q2, m1, m2) with cutoff n per mode.
inline Ops canonical_ops(int n) {
  const M i2 = M::Identity(2, 2);
  const M in = M::Identity(n + 1, n + 1);
  const M a = lower(n);
  return Ops{kron4(sigma_plus(), i2, in, in), kron4(i2, sigma_plus(), in, in),
             kron4(sigma_z(), i2, in, in),   kron4(i2, sigma_z(), in, in),
             kron4(i2, i2, a, in),           kron4(i2, i2, in, a)};
}

inline M sideband_h(const Ops& o, double t1, double t2) {
  const M half = o.sp1 * (t1 * o.a1 + t2 * o.a2.adjoint()) + o.sp2 * (t1 * o.a2 + t2 * o.a1.adjoint());
  return half + half.adjoint();
}

// Column-stacked vec convention: vec(A X B) = (B^T (x) A) vec(X).
inline M lindblad_superop(const M& h, const std::vector<std::pair<double, M>>& jumps) {
  const auto d = h.rows();
  const M id = M::Identity(d, d);
  M l = -C(0, 1) * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& [rate, a] : jumps) {
    const M ada = a.adjoint() * a;
    l += rate * (2.0 * kron(a.conjugate(), a) - kron(id, ada) - kron(ada.transpose(), id));
  }
  return l;
}

inline M propagate(const M& l, const M& rho0, double t) {
  const auto d = rho0.rows();
  const V v0 = Eigen::Map<const V>(rho0.data(), d * d);
  const V v = (l * t).exp() * v0;
  return Eigen::Map<const M>(v.data(), d, d);
}

inline M random_density(std::mt19937& rng, Eigen::Index d, int rank = -1) {
  std::normal_distribution<double> n;
  const Eigen::Index k = rank > 0 ? rank : d;
  M g(d, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = C(n(rng), n(rng));
  M rho = g * g.adjoint();
  return rho / rho.trace();
}

inline M random_matrix(std::mt19937& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> n;
  M m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = C(n(rng), n(rng));
  return m;
}

// Squeezed-vacuum amplitudes c_n = (-tanh z)^n / cosh z.
inline double tmsv_amplitude(double zeta, int n) {
  return std::pow(-std::tanh(zeta), n) / std::cosh(zeta);
}

// EPR variance of the ideal state: 2(1 - r)/(1 + r) with r = tanh(zeta).
inline double ideal_v_from_ratio(double r) { return 2.0 * (1.0 - r) / (1.0 + r); }

}  // namespace oracle
