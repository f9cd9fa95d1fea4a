// Copyright 2026 The hardylab Authors
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

// Inner-outer machinery on the sampled circle.
//
// Outer functions are realized on the grid as exp(log w + i H log w) where H
// is the discrete conjugate function. The result has boundary modulus exactly
// w (after clipping at the log floor) but is analytic only up to aliasing of
// the exponential; the measured negative-mode ratio is carried in the
// returned AnalyticBoundaryFunction as its tolerance.

#ifndef HARDYLAB_FACTORIZATION_HPP
#define HARDYLAB_FACTORIZATION_HPP

#include <span>
#include <vector>

#include "hardylab/circle.hpp"

namespace hardy {

inline constexpr double kZeroMargin = 1e-6;

struct BlaschkeSpec {
  std::vector<Complex> zeros;

  /// Throws kDomain if some |zero| > 1 - kZeroMargin.
  void validate() const;
};

struct SingularAtom {
  Complex point;  // unimodular
  double mass;    // > 0
};

struct SingularAtomSpec {
  std::vector<SingularAtom> atoms;

  void validate() const;
};

struct FactoredFunction {
  BlaschkeSpec blaschke;
  SingularAtomSpec singular;
  BoundaryFunction log_modulus;  // real
  double phase = 0.0;
};

struct OuterOptions {
  double log_floor = 1e-12;
  // Aliasing defects above this are treated as a failed construction.
  double max_alias_defect = 1e-2;
  // Defects are measured relative to max(max_j |c_j|, defect_scale).
  double defect_scale = 0.0;
};

/// Wraps grid samples that are analytic up to aliasing: the measured
/// negative-mode ratio (relative to max(max|c_j|, scale)) becomes the
/// tolerance. Throws kNotAnalytic above max_defect.
AnalyticBoundaryFunction certify_analytic(BoundaryFunction f, double max_defect,
                                          double scale = 0.0);

/// exp(log w + i conj(log w)) with w clipped below at log_floor.
/// Throws kDomain for negative or non-real w.
AnalyticBoundaryFunction outer_from_modulus(const BoundaryFunction& w,
                                            const OuterOptions& opts = {});

/// exp(v + i conj(v)) for a real v; the outer function with log-modulus v.
AnalyticBoundaryFunction outer_from_log_modulus(const BoundaryFunction& v,
                                                const OuterOptions& opts = {});

/// Product of (conj(a)/|a|) (a - z)/(1 - z conj(a)); a factor z for a = 0.
Complex blaschke_eval(const BlaschkeSpec& spec, Complex z);
std::vector<Complex> blaschke_eval(const BlaschkeSpec& spec,
                                   std::span<const Complex> points);

/// exp(sum_j c_j (z + t_j)/(z - t_j)); requires |z| <= 1 - kZeroMargin.
Complex singular_eval(const SingularAtomSpec& spec, Complex z);
std::vector<Complex> singular_eval(const SingularAtomSpec& spec,
                                   std::span<const Complex> points);

/// Boundary samples of blaschke * singular * outer * e^{i phase}. The
/// singular factor is evaluated at radius 1 - singular_gap.
AnalyticBoundaryFunction synthesize(const FactoredFunction& f,
                                    double singular_gap = 1e-4,
                                    const OuterOptions& opts = {});

struct InnerOuter {
  AnalyticBoundaryFunction inner;
  AnalyticBoundaryFunction outer;
  double unimodularity_error;  // max_k ||inner(t_k)| - 1|
};

/// outer = outer_from_modulus(|f|), inner = f / outer node-wise. Throws
/// kDegenerate if max ||inner| - 1| exceeds inner_tolerance.
InnerOuter inner_outer_split(const AnalyticBoundaryFunction& f,
                             double inner_tolerance = 1e-4,
                             const OuterOptions& opts = {});

struct SchurCheck {
  bool pass;
  double max_modulus;
  double margin;  // (1 + 1e-9) - max_modulus
  double defect;
};

SchurCheck schur_check(const AnalyticBoundaryFunction& s,
                       double analytic_tolerance = AnalyticBoundaryFunction::kDefaultTolerance);

/// e^{-i arg s(0)} s. Throws kDegenerate when |s(0)| <= 1e-12 max_j |c_j|.
AnalyticBoundaryFunction make_schur_positive(const AnalyticBoundaryFunction& s);

}  // namespace hardy

#endif  // HARDYLAB_FACTORIZATION_HPP
