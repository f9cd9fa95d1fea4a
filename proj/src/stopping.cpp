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

#include "hardylab/stopping.hpp"

#include <algorithm>
#include <cmath>

#include "hardylab/error.hpp"

namespace hardy {
namespace {

struct Crossing {
  std::size_t k;
  Complex value;
};

// s_k = max(0, ln max_{j<=k} |F_j| - level).
class RunningLogMax final : public StateProcess {
 public:
  RunningLogMax(const Martingale& F, double level) : F_(F), level_(level) {}

  void evaluate(std::size_t p, const PathBuffer& path,
                std::vector<double>& state) const override {
    F_.evaluate(p, path, values_);
    state.resize(values_.size());
    double a = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      a = std::max(a, std::abs(values_[k]));
      state[k] = a > 0.0 ? std::max(0.0, std::log(a) - level_) : 0.0;
    }
  }

 private:
  const Martingale& F_;
  double level_;
  mutable std::vector<Complex> values_;
};

std::vector<double> powers(double M, std::size_t n, int shift = 0) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(M, static_cast<double>(i) + shift);
  return out;
}

}  // namespace

StoppingDecomposition stopping_decompose(const Martingale& F, const PathEnsemble& paths,
                                         double M, std::size_t max_levels) {
  require(M > 1.0 && std::isfinite(M), ErrorCode::kInvalidArgument, "M must exceed 1");
  const std::size_t P = paths.size();
  StoppingDecomposition dec;
  dec.M = M;
  dec.paths = P;
  dec.mean = F.initial();
  dec.final_value.resize(P);
  dec.A.resize(P);
  dec.exit_defect.assign(P, 0.0);

  const std::vector<double> barrier = powers(M, max_levels + 2);
  std::vector<std::vector<Crossing>> crossings(P);
  std::size_t top = 0;
  PathBuffer buf;
  std::vector<Complex> v;
  for (std::size_t p = 0; p < P; ++p) {
    paths.replay(p, buf);
    F.evaluate(p, buf, v);
    double a = 0.0;
    std::size_t h = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double m = std::abs(v[k]);
      a = std::max(a, m);
      if (k > 0) dec.max_step = std::max(dec.max_step, std::abs(v[k] - v[k - 1]));
      while (m > barrier[h + 1]) {
        ++h;
        require(h <= max_levels, ErrorCode::kDegenerate,
                "stopping levels exceed " + std::to_string(max_levels) +
                    "; the maximal function is too large for this M");
        crossings[p].push_back({k, v[k]});
        dec.eta = std::max(dec.eta, (m - barrier[h]) / barrier[h]);
      }
    }
    dec.A[p] = a;
    dec.final_value[p] = v.back();
    const std::size_t K = buf.exit_index();
    if (K > 0) {
      const Complex raw_exit = buf.z[K - 1] + buf.raw[K - 1];
      const double step = std::abs(buf.z[K] - buf.z[K - 1]);
      if (step > 0.0)
        dec.exit_defect[p] = std::abs(v[K] - v[K - 1]) * std::abs(raw_exit - buf.z[K]) / step;
    }
    top = std::max(top, h);
  }

  const std::size_t L = top + 1;
  dec.levels = L;
  dec.d.assign(P * L, 0.0);
  dec.tau.assign(P * (L + 1), -1);
  dec.level_probability.assign(L, 0.0);
  const double slack = 1.0 + dec.eta;
  std::vector<std::size_t> reached(L, 0);
  for (std::size_t p = 0; p < P; ++p) {
    const auto& c = crossings[p];
    auto stopped = [&](std::size_t i) -> Complex {
      if (i == 0) return dec.mean;
      return i <= c.size() ? c[i - 1].value : dec.final_value[p];
    };
    dec.tau[p * (L + 1)] = 0;
    for (std::size_t i = 1; i <= c.size(); ++i)
      dec.tau[p * (L + 1) + i] = static_cast<std::int64_t>(c[i - 1].k);
    Complex sum = dec.mean;
    for (std::size_t i = 0; i < L; ++i) {
      const Complex di = stopped(i + 1) - stopped(i);
      dec.d[p * L + i] = di;
      sum += di;
      if (dec.reached(p, i)) {
        ++reached[i];
      } else if (di != 0.0) {
        ++dec.support_violations;
      }
      dec.max_jump_ratio =
          std::max(dec.max_jump_ratio, std::abs(di) / (2.0 * barrier[i + 1] * slack));
    }
    const Complex f = dec.final_value[p];
    dec.telescoping_error =
        std::max(dec.telescoping_error, std::abs(sum - f) / std::max(1.0, std::abs(f)));
  }
  for (std::size_t i = 0; i < L; ++i)
    dec.level_probability[i] = static_cast<double>(reached[i]) / static_cast<double>(P);

  // Parseval holds in expectation. Only the difference ending at the exit value is perturbed, so the cross
  // terms move by at most 2 |defect| |F_{tau_h} - F_0| + |defect|^2.
  std::vector<double> lhs(P), rhs(P), gap(P), budget(P);
  for (std::size_t p = 0; p < P; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < L; ++i) s += std::norm(dec.diff(p, i));
    lhs[p] = s;
    rhs[p] = std::norm(dec.final_value[p] - dec.mean);
    gap[p] = rhs[p] - lhs[p];
    const std::size_t h = crossings[p].size();
    const Complex before = h == 0 ? dec.mean : crossings[p][h - 1].value;
    const double e = dec.exit_defect[p];
    budget[p] = 2.0 * e * std::abs(before - dec.mean) + e * e;
  }
  dec.parseval_budget = estimate(budget).mean;
  const Estimate g = estimate(gap);
  dec.parseval.name = "sum_i E|d_i|^2 = E|F - EF|^2";
  dec.parseval.lhs = estimate(lhs).mean;
  dec.parseval.rhs = estimate(rhs).mean;
  dec.parseval.stderr_ = g.stderr_;
  dec.parseval.pass = std::abs(g.mean) <= 3.0 * g.stderr_ + dec.parseval_budget + 1e-12;
  dec.parseval_gap = g.mean;

  std::vector<double> re(P), im(P), allow(P);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) {
      for (std::size_t p = 0; p < P; ++p) {
        const Complex x = dec.diff(p, i) * std::conj(dec.diff(p, j));
        re[p] = x.real();
        im[p] = x.imag();
        const double e = dec.exit_defect[p];
        allow[p] = e * (std::abs(dec.diff(p, i)) + std::abs(dec.diff(p, j))) + e * e;
      }
      const Estimate a = estimate(re), b = estimate(im);
      const double mag = std::hypot(a.mean, b.mean);
      const double se = std::hypot(a.stderr_, b.stderr_);
      if (mag > 3.0 * se + estimate(allow).mean + 1e-14) dec.orthogonality_pass = false;
      if (se > 0.0) {
        dec.worst_orthogonality_sigmas = std::max(dec.worst_orthogonality_sigmas, mag / se);
      }
    }
  }
  return dec;
}

bool TruncationFamily::chain_pass() const {
  for (std::size_t i = 0; i < levels; ++i)
    if (!link1[i].pass || !link2[i].pass || !link3[i].pass) return false;
  return modulus_monotone && mean_monotone;
}

TruncationFamily truncation_family(const StoppingDecomposition& dec, int offset) {
  require(offset >= 0, ErrorCode::kInvalidArgument, "offset must be nonnegative");
  for (double a : dec.A)
    require(a > 0.0, ErrorCode::kDegenerate, "maximal function vanishes on a path");
  const std::size_t P = dec.paths, L = dec.levels;
  TruncationFamily fam;
  fam.M = dec.M;
  fam.offset = offset;
  fam.levels = L;
  fam.paths = P;
  fam.modulus.assign(P * L, 1.0);
  const std::vector<double> cap = powers(dec.M, L, offset);

  std::vector<double> logw(P), w2(P), tail(P);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t p = 0; p < P; ++p) {
      const double a = dec.A[p];
      const bool above = a > cap[i];
      const double m = above ? cap[i] / a : 1.0;
      fam.modulus[p * L + i] = m;
      logw[p] = above ? -std::log(a / cap[i]) : 0.0;
      w2[p] = m * m;
      tail[p] = above ? a : 0.0;
    }
    const double excess = -estimate(logw).mean;  // E(1_E ln(A / M^{i+offset})) >= 0
    const double one_minus = -std::expm1(-excess);
    const double ew2 = estimate(w2).mean;
    const double t = estimate(tail).mean;
    fam.Ew.push_back(std::exp(-excess));
    fam.Ew2.push_back(ew2);
    fam.e_one_minus_w_sq.push_back(2.0 * one_minus - (1.0 - ew2));
    fam.tail_mean.push_back(t);
    fam.link1.push_back(exact_check("E|1-w|^2 <= 2(1-Ew)", fam.e_one_minus_w_sq.back(),
                                    2.0 * one_minus));
    fam.link2.push_back(exact_check("2(1-Ew) <= 2E(1_E ln(A/M^{i+offset}))",
                                    2.0 * one_minus, 2.0 * excess));
    fam.link3.push_back(exact_check("2E(1_E ln(A/M^{i+offset})) <= 2M^{-i-offset}E(1_E A)",
                                    2.0 * excess, 2.0 * t / cap[i]));
  }
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < L; ++i) {
      const double m = fam.modulus[p * L + i];
      if (!(m > 0.0 && m <= 1.0)) fam.modulus_monotone = false;
      if (i + 1 < L && m > fam.modulus[p * L + i + 1]) fam.modulus_monotone = false;
    }
  }
  for (std::size_t i = 0; i < L; ++i) {
    if (!(fam.Ew[i] > 0.0 && fam.Ew[i] <= 1.0)) fam.mean_monotone = false;
    if (i + 1 < L && fam.Ew[i] > fam.Ew[i + 1]) fam.mean_monotone = false;
  }
  return fam;
}

void add_phases(TruncationFamily& fam, const Martingale& F, const PathEnsemble& paths,
                const PhaseOptions& opts) {
  require(fam.paths == paths.size(), ErrorCode::kSizeMismatch,
          "family and ensemble differ in size");
  const std::size_t P = fam.paths, L = fam.levels;
  std::vector<Complex> w(P * L);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = fam.modulus[k];
  fam.phased_levels.clear();
  fam.phase_mean_gap.assign(L, 0.0);

  RegressionOptions ropts = opts.regression;
  ropts.state_powers = opts.state_powers;
  for (std::size_t i = 0; i < L; ++i) {
    std::vector<Complex> x(P);
    bool trivial = true;
    for (std::size_t p = 0; p < P; ++p) {
      const double m = fam.modulus[p * L + i];
      x[p] = m < 1.0 ? std::log(m) : 0.0;
      if (m < 1.0) trivial = false;
    }
    if (trivial) continue;
    fam.phased_levels.push_back(i);
    const double level = std::log(fam.M) * (static_cast<double>(i) + fam.offset);
    const RunningLogMax state(F, level);
    const ConditionalExpectation X =
        regress_conditional_expectation(std::move(x), paths, ropts, &state);
    const HilbertEstimate h = stochastic_hilbert_mc(X, paths, ropts, &state);
    CompensatedSum re, im;
    for (std::size_t p = 0; p < P; ++p) {
      Complex& wp = w[p * L + i];
      wp = std::polar(fam.modulus[p * L + i], h.value[p]);
      re.add(wp.real());
      im.add(wp.imag());
    }
    const Complex mean(re.value() / static_cast<double>(P), im.value() / static_cast<double>(P));
    fam.phase_mean_gap[i] = std::abs(mean - fam.Ew[i]);
  }
  fam.phased = std::move(w);
}

BasicEstimates basic_estimates_report(const StoppingDecomposition& dec,
                                      const TruncationFamily& fam) {
  require(dec.paths == fam.paths && dec.levels == fam.levels, ErrorCode::kSizeMismatch,
          "decomposition and family do not match");
  const std::size_t P = dec.paths, L = dec.levels;
  const double M = dec.M;
  const int off = fam.offset;
  BasicEstimates out;

  // Pointwise: sum over levels below A of M^i is a geometric sum.
  out.pointwise.paths = P;
  std::vector<double> lhs36(P), rhs36(P), a2(P);
  const double c36 = std::pow(M, 2.0 - off), c36s = std::pow(M, 1.0 - off);
  for (std::size_t p = 0; p < P; ++p) {
    const double a = dec.A[p];
    double s35 = 0.0, s36 = 0.0;
    for (int i = 0;; ++i) {
      const double mi = std::pow(M, i);
      if (!(mi < a)) break;
      s35 += mi;
    }
    for (int i = 0;; ++i) {
      if (!(std::pow(M, i + off) < a)) break;
      s36 += std::pow(M, i);
    }
    const double r = s35 / (2.0 * M * a);
    out.pointwise.worst_ratio = std::max(out.pointwise.worst_ratio, r);
    if (r > 1.0 + 1e-12) ++out.pointwise.violations;
    lhs36[p] = s36 * a;
    rhs36[p] = c36 * a * a;
    a2[p] = a * a;
    if (lhs36[p] > rhs36[p] * (1.0 + 1e-12)) ++out.integral.path_violations;
  }
  out.pointwise.pass = out.pointwise.violations == 0;

  const InequalityCheck c = paired_check("lemma36", lhs36, rhs36);
  const double ea2 = estimate(a2).mean;
  out.integral.lhs = c.lhs;
  out.integral.rhs = c.rhs;
  out.integral.rhs_sharper = c36s * ea2;
  out.integral.stderr_ = c.stderr_;
  out.integral.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : 0.0;
  out.integral.ratio_sharper = out.integral.rhs_sharper > 0.0 ? c.lhs / out.integral.rhs_sharper : 0.0;
  out.integral.pass = c.pass;

  // Square-function bound: per-level diagonal terms from the family chain,
  // Cauchy-Schwarz for near pairs, and the crude support bound for far pairs.
  Lemma37Report& sq = out.square;
  const double slack2 = (1.0 + dec.eta) * (1.0 + dec.eta);
  sq.diagonal.resize(L);
  double root_sum = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    sq.diagonal[i] = 8.0 * slack2 * std::pow(M, static_cast<double>(i) + 2.0 - off) *
                     fam.tail_mean[i];
    root_sum += std::sqrt(sq.diagonal[i]);
  }
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap < static_cast<std::size_t>(off)) {
        sq.near += std::sqrt(sq.diagonal[i] * sq.diagonal[j]);
      } else if (j > i) {
        sq.far += 2.0 * 16.0 * slack2 * std::pow(M, static_cast<double>(i + j + 2)) *
                  dec.level_probability[j];
      }
    }
  }
  sq.cauchy_schwarz = root_sum * root_sum;
  sq.bound = std::min(sq.near + sq.far, sq.cauchy_schwarz);
  sq.rhs = c36 * ea2;
  sq.pass = sq.bound <= sq.rhs * (1.0 + 1e-12) + 1e-15;
  if (fam.phased) {
    std::vector<double> direct(P);
    for (std::size_t p = 0; p < P; ++p) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < L; ++i) s += dec.diff(p, i) * (1.0 - fam.w(p, i));
      direct[p] = std::norm(s);
    }
    sq.direct = estimate(direct);
    sq.pass = sq.pass && sq.direct->mean <= sq.rhs + 3.0 * sq.direct->stderr_ + 1e-15;
  }
  return out;
}

}  // namespace hardy
