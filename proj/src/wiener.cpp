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

#include "hardylab/wiener.hpp"

#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "hardylab/error.hpp"
#include "hardylab/factorization.hpp"

namespace hardy {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::size_t p) {
  return splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(p) + 1));
}

// Runs one path, calling step(raw) for every Gaussian draw. Returns the exit
// index K and the first exterior point (or the last interior point when the
// horizon is hit first).
template <class Step>
std::size_t walk(const SimConfig& c, std::size_t p, Complex& last, bool& exited,
                 Step&& step) {
  std::mt19937_64 rng(substream_seed(c.seed, p));
  std::normal_distribution<double> gauss(0.0, std::sqrt(c.dt));
  const std::size_t n = c.max_steps();
  Complex z = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    const Complex raw(re, im);
    step(raw);
    z += raw;
    if (std::norm(z) > 1.0) {
      last = z;
      exited = true;
      return k + 1;
    }
  }
  last = z;
  exited = false;
  return n;
}

Complex radial(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Complex(1.0, 0.0);
}

void put_f64(std::ostream& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  out.write(buf, 8);
}

bool get_f64(std::istream& in, double& x) {
  char buf[8];
  if (!in.read(buf, 8)) return false;
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  x = std::bit_cast<double>(bits);
  return true;
}

Complex horner(const std::vector<Complex>& a, Complex z) {
  Complex acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// h = c_0 + 2 sum_{j>0} c_j z^j, the analytic completion of a real u.
std::vector<Complex> harmonic_completion(const BoundaryFunction& u) {
  require(u.is_real(), ErrorCode::kNotReal, "input must be real valued");
  const Spectrum s = to_spectrum(u);
  std::vector<Complex> a(static_cast<std::size_t>(s.max_mode()) + 1);
  double peak = 0.0;
  for (int j = 0; j <= s.max_mode(); ++j) {
    a[j] = (j == 0 ? 1.0 : 2.0) * s(j);
    peak = std::max(peak, std::abs(a[j]));
  }
  while (a.size() > 1 && std::abs(a.back()) <= 1e-16 * peak) a.pop_back();
  return a;
}

struct Bucketing {
  std::vector<std::size_t> start;
  std::vector<std::size_t> index_of_step;
};

Bucketing make_buckets(const PathEnsemble& paths, const RegressionOptions& opts,
                       std::size_t basis_size) {
  const auto alive = paths.alive_counts();
  const std::size_t steps = paths.max_exit_index();
  const std::size_t stride = static_cast<std::size_t>(std::max(opts.stride, 1));
  const std::size_t needed = opts.rows_per_coefficient * basis_size;
  Bucketing b;
  b.index_of_step.assign(std::max<std::size_t>(steps, 1), 0);
  if (opts.max_bucket_steps == 0 || steps == 0) {
    b.start = {0};
    return b;
  }
  std::vector<std::size_t> rows;
  std::size_t acc = 0;
  std::size_t width = 0;
  b.start.push_back(0);
  for (std::size_t k = 0; k < steps; ++k) {
    if (width >= opts.max_bucket_steps && acc >= needed) {
      rows.push_back(acc);
      b.start.push_back(k);
      acc = 0;
      width = 0;
    }
    acc += alive[k] / stride;
    ++width;
  }
  rows.push_back(acc);
  if (b.start.size() > 1 && rows.back() < needed) b.start.pop_back();
  for (std::size_t i = 0, k = 0; k < b.index_of_step.size(); ++k) {
    while (i + 1 < b.start.size() && k >= b.start[i + 1]) ++i;
    b.index_of_step[k] = i;
  }
  return b;
}

// Blocked normal-equation accumulator for real regressors and complex targets.
class LeastSquares {
 public:
  LeastSquares(RegressionOptions opts, const PathEnsemble& paths)
      : opts_(opts), basis_(opts.degree, opts.state_powers) {
    buckets_ = make_buckets(paths, opts_, basis_.size());
    const auto nb = static_cast<Eigen::Index>(basis_.size());
    const std::size_t nbk = buckets_.start.size();
    gram_.assign(nbk, Eigen::MatrixXd::Zero(nb, nb));
    rhs_.assign(nbk, Eigen::MatrixXd::Zero(nb, 2));
    block_.assign(nbk, Eigen::MatrixXd(nb, kBlock));
    target_.assign(nbk, Eigen::MatrixXd(kBlock, 2));
    fill_.assign(nbk, 0);
    rows_.assign(nbk, 0);
    row_.resize(basis_.size());
  }

  std::size_t bucket(std::size_t k) const {
    return buckets_.index_of_step[std::min(k, buckets_.index_of_step.size() - 1)];
  }

  void add(std::size_t k, Complex z, double s, Complex y) {
    const std::size_t b = bucket(k);
    basis_.evaluate(z, s, row_.data());
    auto& blk = block_[b];
    const Eigen::Index c = static_cast<Eigen::Index>(fill_[b]);
    for (std::size_t j = 0; j < row_.size(); ++j) blk(static_cast<Eigen::Index>(j), c) = row_[j];
    target_[b](c, 0) = y.real();
    target_[b](c, 1) = y.imag();
    ++rows_[b];
    if (++fill_[b] == static_cast<std::size_t>(kBlock)) flush(b);
  }

  RegressionModel solve() {
    const std::size_t nbk = buckets_.start.size();
    std::vector<std::vector<Complex>> coeffs(nbk);
    std::size_t deficient = 0;
    for (std::size_t b = 0; b < nbk; ++b) {
      flush(b);
      require(rows_[b] > 0, ErrorCode::kRegression, "regression bucket without rows");
      Eigen::MatrixXd g = gram_[b].selfadjointView<Eigen::Lower>();
      const Eigen::Index n = g.rows();
      Eigen::VectorXd d(n);
      for (Eigen::Index i = 0; i < n; ++i) d(i) = g(i, i) > 0.0 ? 1.0 / std::sqrt(g(i, i)) : 0.0;
      const Eigen::MatrixXd gs = d.asDiagonal() * g * d.asDiagonal();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gs);
      const Eigen::VectorXd& ev = eig.eigenvalues();
      const double top = ev.cwiseAbs().maxCoeff();
      Eigen::VectorXd inv(n);
      bool dropped = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (ev(i) > opts_.rcond * top) {
          inv(i) = 1.0 / ev(i);
        } else {
          inv(i) = 0.0;
          dropped = true;
        }
      }
      if (dropped) ++deficient;
      const Eigen::MatrixXd& v = eig.eigenvectors();
      const Eigen::MatrixXd x =
          d.asDiagonal() * (v * (inv.asDiagonal() * (v.transpose() * (d.asDiagonal() * rhs_[b]))));
      coeffs[b].resize(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) coeffs[b][static_cast<std::size_t>(i)] = Complex(x(i, 0), x(i, 1));
    }
    return RegressionModel(opts_, buckets_.start, std::move(coeffs), deficient, rows_);
  }

 private:
  static constexpr Eigen::Index kBlock = 512;

  void flush(std::size_t b) {
    if (fill_[b] == 0) return;
    const auto c = static_cast<Eigen::Index>(fill_[b]);
    gram_[b].selfadjointView<Eigen::Lower>().rankUpdate(block_[b].leftCols(c));
    rhs_[b].noalias() += block_[b].leftCols(c) * target_[b].topRows(c);
    fill_[b] = 0;
  }

  RegressionOptions opts_;
  RegressionBasis basis_;
  Bucketing buckets_;
  std::vector<Eigen::MatrixXd> gram_, rhs_, block_, target_;
  std::vector<std::size_t> fill_, rows_;
  std::vector<double> row_;
};

double mean_of(std::span<const double> v) { return estimate(v).mean; }


// Writes to a sibling temporary and renames it into place.
template <class Body>
void write_through_temp(const std::string& path, std::ios::openmode mode, Body body) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, mode | std::ios::out | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + tmp);
    body(out);
    out.flush();
    require(static_cast<bool>(out), ErrorCode::kIo, "write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::kIo, "cannot rename into " + path);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

void SimConfig::validate() const {
  require(paths >= 1, ErrorCode::kInvalidArgument, "paths must be >= 1");
  require(dt > 0.0 && dt <= 0.1 && std::isfinite(dt), ErrorCode::kInvalidArgument,
          "dt must lie in (0, 0.1]");
  require(t_max >= dt && std::isfinite(t_max), ErrorCode::kInvalidArgument,
          "t_max must be finite and >= dt");
  require(t_max / dt < 4e9, ErrorCode::kInvalidArgument, "t_max / dt too large");
  require(M > 1.0 && std::isfinite(M), ErrorCode::kInvalidArgument, "M must exceed 1");
  require(offset >= 0 && offset <= 64, ErrorCode::kInvalidArgument,
          "offset must lie in [0, 64]");
  require(regression_degree >= 0 && regression_degree <= 16, ErrorCode::kInvalidArgument,
          "regression_degree must lie in [0, 16]");
}

std::size_t SimConfig::max_steps() const {
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

PathEnsemble PathEnsemble::sample(const SimConfig& config) {
  config.validate();
  PathEnsemble e;
  e.config_ = config;
  e.exit_index_.resize(config.paths);
  e.exit_point_.resize(config.paths);
  e.exit_radius_.resize(config.paths);
  for (std::size_t p = 0; p < config.paths; ++p) {
    Complex last;
    bool exited = false;
    const std::size_t k = walk(config, p, last, exited, [](Complex) {});
    e.exit_index_[p] = static_cast<std::uint32_t>(k);
    e.exit_point_[p] = radial(last);
    e.exit_radius_[p] = exited ? std::abs(last) : 1.0;
    if (!exited) ++e.unexited_;
    e.max_exit_ = std::max(e.max_exit_, k);
  }
  return e;
}

void PathEnsemble::replay(std::size_t p, PathBuffer& out) const {
  require(p < size(), ErrorCode::kInvalidArgument, "path index out of range");
  out.z.clear();
  out.dz.clear();
  out.raw.clear();
  out.z.push_back(0.0);
  Complex last;
  bool exited = false;
  walk(config_, p, last, exited, [&](Complex raw) {
    out.raw.push_back(raw);
    out.z.push_back(out.z.back() + raw);
  });
  out.z.back() = exit_point_[p];
  out.dz.resize(out.raw.size());
  for (std::size_t k = 0; k < out.dz.size(); ++k) out.dz[k] = out.z[k + 1] - out.z[k];
}

std::vector<std::size_t> PathEnsemble::alive_counts() const {
  std::vector<std::size_t> hist(max_exit_ + 1, 0);
  for (auto k : exit_index_) ++hist[k];
  std::vector<std::size_t> alive(max_exit_ + 1, 0);
  std::size_t above = 0;
  for (std::size_t k = max_exit_ + 1; k-- > 0;) {
    alive[k] = above;
    above += hist[k];
  }
  return alive;
}

void PathEnsemble::write_increments(const std::string& path) const {
  write_through_temp(path, std::ios::binary, [&](std::ofstream& out) {
    PathBuffer buf;
    for (std::size_t p = 0; p < size(); ++p) {
      replay(p, buf);
      for (Complex r : buf.raw) {
        put_f64(out, r.real());
        put_f64(out, r.imag());
      }
    }
  });
}

void PathEnsemble::write_increments_csv(const std::string& path) const {
  write_through_temp(path, std::ios::openmode{}, [&](std::ofstream& out) {
    out.precision(17);
    out << "path,step,re,im\n";
    PathBuffer buf;
    for (std::size_t p = 0; p < size(); ++p) {
      replay(p, buf);
      for (std::size_t k = 0; k < buf.raw.size(); ++k)
        out << p << ',' << k << ',' << buf.raw[k].real() << ',' << buf.raw[k].imag() << '\n';
    }
  });
}

double compare_increments(const PathEnsemble& paths, const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + file);
  PathBuffer buf;
  double worst = 0.0;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    paths.replay(p, buf);
    for (Complex r : buf.raw) {
      double re, im;
      require(get_f64(in, re) && get_f64(in, im), ErrorCode::kParse,
              "increment file ends early at path " + std::to_string(p));
      worst = std::max(worst, std::abs(Complex(re, im) - r));
    }
  }
  char extra;
  require(!in.read(&extra, 1), ErrorCode::kParse, "increment file has trailing data");
  return worst;
}

// ---------------------------------------------------------------------------

Complex Martingale::terminal(std::size_t p, const PathEnsemble& paths) const {
  PathBuffer buf;
  paths.replay(p, buf);
  std::vector<Complex> v;
  evaluate(p, buf, v);
  return v.back();
}

AnalyticMartingale::AnalyticMartingale(std::vector<Complex> taylor, Part part)
    : taylor_(std::move(taylor)), part_(part) {
  if (taylor_.empty()) taylor_.push_back(0.0);
}

Complex AnalyticMartingale::at(Complex z) const {
  const Complex v = horner(taylor_, z);
  switch (part_) {
    case Part::kReal: return {v.real(), 0.0};
    case Part::kImag: return {v.imag(), 0.0};
    default: return v;
  }
}

void AnalyticMartingale::evaluate(std::size_t, const PathBuffer& path,
                                  std::vector<Complex>& values) const {
  values.resize(path.z.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = at(path.z[k]);
}

Complex AnalyticMartingale::terminal(std::size_t p, const PathEnsemble& paths) const {
  return at(paths.exit_point(p));
}

Complex AnalyticMartingale::initial() const { return at(0.0); }

MartingaleMatrix MartingaleMatrix::materialize(const Martingale& m,
                                               const PathEnsemble& paths) {
  MartingaleMatrix out;
  out.offsets_.reserve(paths.size() + 1);
  out.offsets_.push_back(0);
  PathBuffer buf;
  std::vector<Complex> v;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    paths.replay(p, buf);
    m.evaluate(p, buf, v);
    out.values_.insert(out.values_.end(), v.begin(), v.end());
    out.offsets_.push_back(out.values_.size());
  }
  return out;
}

std::span<const Complex> MartingaleMatrix::row(std::size_t p) const {
  require(p + 1 < offsets_.size(), ErrorCode::kInvalidArgument, "path index out of range");
  return std::span<const Complex>(values_).subspan(offsets_[p], offsets_[p + 1] - offsets_[p]);
}

void MartingaleMatrix::evaluate(std::size_t p, const PathBuffer& path,
                                std::vector<Complex>& values) const {
  const auto r = row(p);
  require(r.size() == path.z.size(), ErrorCode::kSizeMismatch,
          "stored martingale does not match the path");
  values.assign(r.begin(), r.end());
}

Complex MartingaleMatrix::terminal(std::size_t p, const PathEnsemble&) const {
  return row(p).back();
}

Complex MartingaleMatrix::initial() const {
  return values_.empty() ? Complex(0.0) : values_.front();
}

AnalyticMartingale embed(const AnalyticBoundaryFunction& f) {
  const auto t = f.taylor();
  return AnalyticMartingale(std::vector<Complex>(t.begin(), t.end()));
}

AnalyticMartingale harmonic_extension(const BoundaryFunction& u) {
  return AnalyticMartingale(harmonic_completion(u), AnalyticMartingale::Part::kReal);
}

AnalyticMartingale stochastic_hilbert_closed(const BoundaryFunction& u) {
  return AnalyticMartingale(harmonic_completion(u), AnalyticMartingale::Part::kImag);
}

std::vector<Complex> terminal_values(const Martingale& m, const PathEnsemble& paths) {
  std::vector<Complex> out(paths.size());
  for (std::size_t p = 0; p < paths.size(); ++p) out[p] = m.terminal(p, paths);
  return out;
}

std::size_t nearest_node(const PathEnsemble& paths, std::size_t p, std::size_t n) {
  double theta = std::arg(paths.exit_point(p));
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  auto k = static_cast<std::size_t>(std::floor(theta * static_cast<double>(n) /
                                               (2.0 * std::numbers::pi)));
  return k % n;
}

BoundaryFunction project(std::span<const Complex> terminal, const PathEnsemble& paths,
                         std::size_t n) {
  require(terminal.size() == paths.size(), ErrorCode::kSizeMismatch,
          "terminal values do not match the ensemble");
  require(n >= 8 && std::has_single_bit(n), ErrorCode::kInvalidArgument,
          "grid size must be a power of two >= 8");
  std::vector<CompensatedSum> re(n), im(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const std::size_t k = nearest_node(paths, p, n);
    re[k].add(terminal[p].real());
    im[k].add(terminal[p].imag());
    ++count[k];
  }
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    require(count[k] > 0, ErrorCode::kDegenerate,
            "empty angular bin " + std::to_string(k) + "; increase the path count");
    const double c = static_cast<double>(count[k]);
    out[k] = Complex(re[k].value() / c, im[k].value() / c);
  }
  return BoundaryFunction(std::move(out));
}

std::vector<double> maximal_function(const Martingale& m, const PathEnsemble& paths) {
  std::vector<double> out(paths.size());
  PathBuffer buf;
  std::vector<Complex> v;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    paths.replay(p, buf);
    m.evaluate(p, buf, v);
    double a = 0.0;
    for (Complex x : v) a = std::max(a, std::abs(x));
    out[p] = a;
  }
  return out;
}

// ---------------------------------------------------------------------------

RegressionBasis::RegressionBasis(int degree, int state_powers)
    : degree_(degree), state_powers_(state_powers) {
  require(degree >= 0 && state_powers >= 0, ErrorCode::kInvalidArgument,
          "regression degrees must be nonnegative");
  size_ = static_cast<std::size_t>((degree + 1) * (degree + 2) / 2 * (state_powers + 1));
}

void RegressionBasis::evaluate(Complex z, double state, double* out) const {
  double xp[32], yp[32];
  xp[0] = yp[0] = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    xp[i] = xp[i - 1] * z.real();
    yp[i] = yp[i - 1] * z.imag();
  }
  std::size_t n = 0;
  double s = 1.0;
  for (int m = 0; m <= state_powers_; ++m) {
    for (int total = 0; total <= degree_; ++total)
      for (int i = 0; i <= total; ++i) out[n++] = s * xp[i] * yp[total - i];
    s *= state;
  }
}

RegressionModel::RegressionModel(RegressionOptions opts,
                                 std::vector<std::size_t> bucket_start,
                                 std::vector<std::vector<Complex>> coefficients,
                                 std::size_t rank_deficient, std::vector<std::size_t> rows)
    : opts_(opts),
      basis_(opts.degree, opts.state_powers),
      bucket_start_(std::move(bucket_start)),
      coeffs_(std::move(coefficients)),
      rank_deficient_(rank_deficient),
      rows_(std::move(rows)) {}

std::size_t RegressionModel::bucket_of(std::size_t k) const {
  auto it = std::upper_bound(bucket_start_.begin(), bucket_start_.end(), k);
  return static_cast<std::size_t>(it - bucket_start_.begin()) - 1;
}

Complex RegressionModel::predict(std::size_t k, Complex z, double state) const {
  double row[512];
  require(basis_.size() <= 512, ErrorCode::kInvalidArgument, "regression basis too large");
  basis_.evaluate(z, state, row);
  const auto& c = coeffs_[bucket_of(k)];
  Complex acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * row[j];
  return acc;
}

RegressionModel representation_regress(const Martingale& R, const PathEnsemble& paths,
                                       const RegressionOptions& opts,
                                       const StateProcess* state) {
  LeastSquares ls(opts, paths);
  const std::size_t stride = static_cast<std::size_t>(std::max(opts.stride, 1));
  const double scale = 0.5 / paths.config().dt;
  PathBuffer buf;
  std::vector<Complex> v;
  std::vector<double> s;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    paths.replay(p, buf);
    R.evaluate(p, buf, v);
    if (state) state->evaluate(p, buf, s);
    for (std::size_t k = 0; k < buf.dz.size(); ++k) {
      if ((k + p) % stride != 0) continue;
      const Complex target = (v[k + 1] - v[k]) * std::conj(buf.dz[k]) * scale;
      ls.add(k, buf.z[k], state ? s[k] : 0.0, target);
    }
  }
  return ls.solve();
}

ConditionalExpectation::ConditionalExpectation(std::vector<Complex> terminal,
                                               RegressionModel model, Complex mean,
                                               const StateProcess* state)
    : terminal_(std::move(terminal)), model_(std::move(model)), mean_(mean), state_(state) {}

void ConditionalExpectation::evaluate(std::size_t p, const PathBuffer& path,
                                      std::vector<Complex>& values) const {
  std::vector<double> s;
  if (state_) state_->evaluate(p, path, s);
  const std::size_t K = path.exit_index();
  values.resize(K + 1);
  values[0] = mean_;
  for (std::size_t k = 1; k < K; ++k)
    values[k] = model_.predict(k, path.z[k], state_ ? s[k] : 0.0);
  values[K] = terminal_[p];
}

Complex ConditionalExpectation::terminal(std::size_t p, const PathEnsemble&) const {
  return terminal_[p];
}

ConditionalExpectation regress_conditional_expectation(std::vector<Complex> terminal,
                                                       const PathEnsemble& paths,
                                                       const RegressionOptions& opts,
                                                       const StateProcess* state) {
  require(terminal.size() == paths.size(), ErrorCode::kSizeMismatch,
          "terminal values do not match the ensemble");
  LeastSquares ls(opts, paths);
  const std::size_t stride = static_cast<std::size_t>(std::max(opts.stride, 1));
  CompensatedSum re, im;
  PathBuffer buf;
  std::vector<double> s;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    re.add(terminal[p].real());
    im.add(terminal[p].imag());
    paths.replay(p, buf);
    if (state) state->evaluate(p, buf, s);
    for (std::size_t k = 1; k < buf.dz.size(); ++k) {
      if ((k + p) % stride != 0) continue;
      ls.add(k, buf.z[k], state ? s[k] : 0.0, terminal[p]);
    }
  }
  const double n = static_cast<double>(paths.size());
  const Complex mean(re.value() / n, im.value() / n);
  return ConditionalExpectation(std::move(terminal), ls.solve(), mean, state);
}

ItoSum::ItoSum(RegressionModel model, const StateProcess* state)
    : model_(std::move(model)), state_(state) {}

void ItoSum::evaluate(std::size_t p, const PathBuffer& path,
                      std::vector<Complex>& values) const {
  std::vector<double> s;
  if (state_) state_->evaluate(p, path, s);
  values.resize(path.z.size());
  values[0] = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < path.dz.size(); ++k) {
    const Complex y = model_.predict(k, path.z[k], state_ ? s[k] : 0.0);
    acc += 2.0 * (y * path.dz[k]).imag();
    values[k + 1] = acc;
  }
}

HilbertEstimate stochastic_hilbert_mc(const Martingale& R, const PathEnsemble& paths,
                                      const RegressionOptions& opts,
                                      const StateProcess* state) {
  double max_imag = 0.0, max_abs = 0.0;
  PathBuffer buf;
  std::vector<Complex> v;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    paths.replay(p, buf);
    R.evaluate(p, buf, v);
    for (Complex x : v) {
      max_imag = std::max(max_imag, std::abs(x.imag()));
      max_abs = std::max(max_abs, std::abs(x));
    }
  }
  require(max_imag <= 1e-9 * std::max(1.0, max_abs), ErrorCode::kNotReal,
          "stochastic Hilbert transform needs a real martingale");
  ItoSum process(representation_regress(R, paths, opts, state), state);
  std::vector<double> value(paths.size());
  for (std::size_t p = 0; p < paths.size(); ++p) {
    paths.replay(p, buf);
    process.evaluate(p, buf, v);
    value[p] = v.back().real();
  }
  return HilbertEstimate{std::move(value), max_imag, std::move(process)};
}

double relative_l2_error(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size() && !a.empty(), ErrorCode::kSizeMismatch,
          "relative_l2_error needs equal, nonempty inputs");
  CompensatedSum num, den;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num.add((a[i] - b[i]) * (a[i] - b[i]));
    den.add(b[i] * b[i]);
  }
  require(den.value() > 0.0, ErrorCode::kDegenerate, "reference has zero norm");
  return std::sqrt(num.value() / den.value());
}

// ---------------------------------------------------------------------------

ExpIdentityReport verify_th32(const BoundaryFunction& u, const PathEnsemble& paths) {
  const AnalyticMartingale h(harmonic_completion(u));
  const std::size_t n = paths.size();
  std::vector<double> fre(n), fim(n), r(n);
  double worst = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const Complex hz = h.at(paths.exit_point(p));
    const Complex f = std::exp(hz);
    fre[p] = f.real();
    fim[p] = f.imag();
    r[p] = hz.real();
    const double e = std::exp(hz.real());
    if (e > 0.0) worst = std::max(worst, std::abs(std::abs(f) - e) / e);
  }
  const Estimate er = estimate(fre), ei = estimate(fim), eR = estimate(r);
  ExpIdentityReport rep;
  rep.mean_F = Complex(er.mean, ei.mean);
  rep.exp_mean_R = std::exp(eR.mean);
  rep.difference = std::abs(rep.mean_F - rep.exp_mean_R);
  const double se_f2 = er.stderr_ * er.stderr_ + ei.stderr_ * ei.stderr_;
  const double se_r = rep.exp_mean_R * eR.stderr_;
  rep.stderr_ = std::sqrt(se_f2 + se_r * se_r);
  rep.max_modulus_error = worst;
  rep.pass = rep.difference <= 3.0 * rep.stderr_ + 1e-14 * rep.exp_mean_R &&
             worst <= 1e-12;
  return rep;
}

TruncationReport holomorphic_truncate(const BoundaryFunction& u, double lambda,
                                      const PathEnsemble& paths, double phase) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorCode::kInvalidArgument,
          "lambda must be positive");
  require(u.is_real(), ErrorCode::kNotReal, "log modulus must be real valued");
  const auto uv = u.real_part();
  const double cap = std::log(lambda);
  std::vector<double> zv(uv.size());
  for (std::size_t k = 0; k < uv.size(); ++k) zv[k] = std::min(uv[k], cap);

  const Complex rot = std::polar(1.0, phase);
  const AnalyticBoundaryFunction fo = outer_from_log_modulus(BoundaryFunction::from_real(uv));
  const AnalyticBoundaryFunction go = outer_from_log_modulus(BoundaryFunction::from_real(zv));
  const std::size_t N = uv.size();

  TruncationReport rep;
  rep.lambda = lambda;
  rep.g_bounded = true;
  rep.g_dominated = true;
  for (std::size_t k = 0; k < N; ++k) {
    const double g = std::abs(go[k]);
    if (g > lambda * (1.0 + 1e-12)) rep.g_bounded = false;
    if (g > std::abs(fo[k]) * (1.0 + 1e-12)) rep.g_dominated = false;
  }

  const std::size_t P = paths.size();
  std::vector<double> dist(P), f2l(P), one_s2(P), sre(P), sim(P), s2(P), lhs2(P), rhs2(P),
      mid(P), rhs3(P), expo(P);
  for (std::size_t p = 0; p < P; ++p) {
    const std::size_t k = nearest_node(paths, p, N);
    const Complex F = rot * fo[k];
    const Complex G = rot * go[k];
    const Complex S = go[k] / fo[k];
    const double aF = std::abs(F);
    const bool in_A = uv[k] > cap;
    dist[p] = std::abs(F - G);
    f2l[p] = aF * aF / lambda;
    one_s2[p] = std::norm(1.0 - S);
    sre[p] = S.real();
    sim[p] = S.imag();
    s2[p] = std::norm(S);
    lhs2[p] = 2.0 * (1.0 - S.real());
    mid[p] = in_A ? 2.0 * (uv[k] - cap) : 0.0;
    rhs3[p] = in_A ? 2.0 * aF / lambda : 0.0;
    expo[p] = zv[k] - uv[k];
  }
  rep.distance = paired_check("E|F-G| <= E|F|^2/lambda", dist, f2l);
  const Estimate es_re = estimate(sre), es_im = estimate(sim);
  rep.mean_S = Complex(es_re.mean, es_im.mean);
  rep.e_one_minus_s_sq = mean_of(one_s2);
  rep.deficit = 1.0 - mean_of(s2);
  rep.link1 = exact_check("E|1-S|^2 <= 2(1-Re ES)", rep.e_one_minus_s_sq,
                          2.0 * (1.0 - rep.mean_S.real()), 1e-12, 1e-14);
  rep.link2 = paired_check("2(1-Re ES) <= 2E(1_A ln(|F|/lambda))", lhs2, mid);
  const Estimate e_mid = estimate(mid);
  rep.link3 = exact_check("2E(1_A ln(|F|/lambda)) <= (2/lambda)E(1_A|F|)", e_mid.mean,
                          mean_of(rhs3), 1e-12, 1e-14);
  const Estimate ex = estimate(expo);
  const double target = std::exp(ex.mean);
  rep.exp_identity_gap = std::abs(rep.mean_S - target);
  rep.exp_identity_stderr =
      std::sqrt(es_re.stderr_ * es_re.stderr_ + es_im.stderr_ * es_im.stderr_ +
                target * target * ex.stderr_ * ex.stderr_);
  rep.pass = rep.g_bounded && rep.g_dominated && rep.distance.pass && rep.link1.pass &&
             rep.link2.pass && rep.link3.pass;
  return rep;
}

}  // namespace hardy
