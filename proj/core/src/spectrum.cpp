#include <fftw3.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rts.hpp"

namespace qjump {

namespace {

// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

double warped(double f, double dt) { return 2.0 / dt * std::sin(std::numbers::pi * f * dt); }

struct LogLorentzian : Eigen::DenseFunctor<double> {
  const std::vector<double>& f;
  const std::vector<double>& logp;
  double dt;

  LogLorentzian(const std::vector<double>& freq, const std::vector<double>& lp, double sample)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(freq.size())), f(freq), logp(lp), dt(sample) {}

  int operator()(const InputType& p, ValueType& r) const {
    const double a = std::exp(p[0]), rr = std::exp(2.0 * p[1]), w = std::exp(p[2]);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = warped(f[i], dt);
      r[static_cast<Eigen::Index>(i)] = std::log(a / (rr + x * x) + w) - logp[i];
    }
    return 0;
  }

  int df(const InputType& p, JacobianType& j) const {
    const double a = std::exp(p[0]), rr = std::exp(2.0 * p[1]), w = std::exp(p[2]);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = warped(f[i], dt);
      const double den = rr + x * x;
      const double lor = a / den;
      const double s = lor + w;
      const auto row = static_cast<Eigen::Index>(i);
      j(row, 0) = lor / s;
      j(row, 1) = -2.0 * rr * lor / den / s;
      j(row, 2) = w / s;
    }
    return 0;
  }
};

}  // namespace

double Psd::integral() const {
  const double df = resolution();
  double s = 0.0;
  for (double p : power) s += p * df;
  return s;
}

Psd power_spectrum(std::span<const double> signal, double period, std::size_t segments) {
  const std::size_t n = signal.size();
  if (n < 1024) throw InsufficientDataError("power spectrum needs at least 1024 samples, got " + std::to_string(n));
  if (!(period > 0.0)) throw DomainError("sample period must be positive");
  if (segments < 1) throw DomainError("at least one Welch segment is required");

  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : signal) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);

  std::size_t len = 2 * n / (segments + 1);
  len -= len % 2;
  const std::size_t step = len / 2;
  const std::size_t bins = len / 2 + 1;

  std::vector<double> window(len);
  double wsum2 = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(len - 1));
    wsum2 += window[i] * window[i];
  }

  double* in = fftw_alloc_real(len);
  fftw_complex* out = fftw_alloc_complex(bins);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in, out, FFTW_ESTIMATE);
  }

  std::vector<double> acc(bins, 0.0);
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t off = s * step;
    for (std::size_t i = 0; i < len; ++i) in[i] = (signal[off + i] - mean) * window[i];
    fftw_execute(plan);
    for (std::size_t k = 0; k < bins; ++k) acc[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);

  const double fs = 1.0 / period;
  Psd psd;
  psd.sample_interval = period;
  psd.segment_length = len;
  psd.segments = segments;
  psd.dc_power = mean * mean;
  psd.variance = var;
  psd.frequency.resize(bins);
  psd.power.resize(bins);
  const double scale = 1.0 / (fs * wsum2 * static_cast<double>(segments));
  for (std::size_t k = 0; k < bins; ++k) {
    const bool edge = k == 0 || k == bins - 1;
    psd.frequency[k] = static_cast<double>(k) * fs / static_cast<double>(len);
    psd.power[k] = (edge ? 1.0 : 2.0) * scale * acc[k];
  }
  return psd;
}

Psd power_spectrum(std::span<const Telegraph> seq, double period, double kappa) {
  std::vector<double> x;
  x.reserve(seq.size());
  for (Telegraph t : seq) x.push_back(t == Telegraph::on ? 0.5 * kappa : -0.5 * kappa);
  return power_spectrum(x, period);
}

double LorentzianFit::half_width_hz() const { return width / (2.0 * std::numbers::pi); }

double LorentzianFit::model(double f) const {
  const double x = sample_interval > 0.0 ? warped(f, sample_interval) : 2.0 * std::numbers::pi * f;
  return amplitude / (width * width + x * x) + floor;
}

double LorentzianFit::kappa_squared(double r_on, double r_off) const {
  return amplitude * width / (4.0 * r_on * r_off);
}

double telegraph_psd(double f, double kappa, double r_on, double r_off) {
  const double r = r_on + r_off;
  const double w = 2.0 * std::numbers::pi * f;
  return 4.0 * kappa * kappa * r_on * r_off / (r * (r * r + w * w));
}

LorentzianFit fit_lorentzian(const Psd& psd) {
  std::vector<double> f, lp, p;
  for (std::size_t k = 1; k < psd.power.size(); ++k) {
    if (psd.power[k] > 0.0 && std::isfinite(psd.power[k])) {
      f.push_back(psd.frequency[k]);
      p.push_back(psd.power[k]);
      lp.push_back(std::log(psd.power[k]));
    }
  }
  if (f.size() < 16) throw InsufficientDataError("Lorentzian fit needs at least 16 positive PSD bins");
  const double dt = psd.sample_interval > 0.0 ? psd.sample_interval : 1.0 / (2.0 * f.back());

  // Starting point: low-frequency plateau, high-frequency floor, and the
  // first frequency where a running median falls to half the plateau.
  const std::size_t m = f.size();
  const double plateau = median(std::vector<double>(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(5, m))));
  const double floor0 = std::max(median(std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(m * 3 / 4), p.end())), 1e-300);
  double fh = f[m / 4];
  const std::size_t win = 5;
  for (std::size_t i = 0; i + win <= m; ++i) {
    const double v = median(std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(i), p.begin() + static_cast<std::ptrdiff_t>(i + win)));
    if (v - floor0 < 0.5 * (plateau - floor0)) {
      fh = f[i + win / 2];
      break;
    }
  }
  const double r0 = std::max(2.0 * std::numbers::pi * fh, 1e-12);
  const double a0 = std::max(plateau - floor0, plateau * 0.5) * r0 * r0;

  LogLorentzian functor(f, lp, dt);
  Eigen::LevenbergMarquardt<LogLorentzian> lm(functor);
  lm.setMaxfev(2000);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  Eigen::VectorXd x(3);
  x << std::log(a0), std::log(r0), std::log(floor0);
  const auto status = lm.minimize(x);

  using S = Eigen::LevenbergMarquardtSpace::Status;
  const bool ok = status == S::RelativeReductionTooSmall || status == S::RelativeErrorTooSmall ||
                  status == S::RelativeErrorAndReductionTooSmall || status == S::CosinusTooSmall ||
                  status == S::XtolTooSmall || status == S::FtolTooSmall;
  if (!ok || !x.allFinite()) {
    throw ConvergenceError("Lorentzian fit did not converge (status " + std::to_string(static_cast<int>(status)) +
                           ", " + std::to_string(lm.nfev()) + " evaluations, start R = " + std::to_string(r0) +
                           " 1/s)");
  }

  LorentzianFit fit;
  fit.amplitude = std::exp(x[0]);
  fit.width = std::exp(x[1]);
  fit.floor = std::exp(x[2]);
  fit.sample_interval = dt;
  fit.iterations = static_cast<int>(lm.iterations());
  Eigen::VectorXd r(static_cast<Eigen::Index>(m));
  functor(x, r);
  fit.residual = std::sqrt(r.squaredNorm() / static_cast<double>(m));
  return fit;
}

}  // namespace qjump
