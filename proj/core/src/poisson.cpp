#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include <cmath>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rts.hpp"

namespace qjump {

PoissonFit poisson_test(std::span<const Telegraph> seq, double period, double window) {
  if (!(period > 0.0) || !(window > 0.0)) throw DomainError("period and window must be positive");
  const auto per_window = static_cast<std::size_t>(std::llround(window / period));
  if (per_window < 1) throw DomainError("window shorter than one sweep period");
  const std::size_t windows = seq.size() / per_window;
  if (windows < 50) {
    throw InsufficientDataError("Poisson test needs at least 50 windows of " + std::to_string(window) +
                                " s, record holds " + std::to_string(windows));
  }

  PoissonFit fit;
  fit.window = window;
  fit.windows = windows;
  std::vector<std::size_t> counts(windows, 0);
  for (std::size_t i = 1; i < windows * per_window; ++i) {
    if (seq[i - 1] == Telegraph::off && seq[i] == Telegraph::on) ++counts[i / per_window];
  }
  std::size_t top = 0;
  double sum = 0.0;
  for (std::size_t c : counts) {
    top = std::max(top, c);
    sum += static_cast<double>(c);
  }
  fit.histogram.assign(top + 1, 0);
  for (std::size_t c : counts) ++fit.histogram[c];

  const double nw = static_cast<double>(windows);
  fit.mean = sum / nw;
  double ss = 0.0;
  for (std::size_t c : counts) ss += (static_cast<double>(c) - fit.mean) * (static_cast<double>(c) - fit.mean);
  fit.variance = ss / (nw - 1.0);
  if (fit.mean == 0.0) return fit;  // lambda = 0 boundary: nothing to test

  fit.dispersion_z = (fit.variance / fit.mean - 1.0) / std::sqrt(2.0 / (nw - 1.0));

  // Pool neighbouring counts until each bin expects >= 5 windows; the last
  // bin absorbs the upper tail.
  boost::math::poisson_distribution<> pois(fit.mean);
  std::vector<double> obs, exp;
  double o = 0.0, e = 0.0;
  for (std::size_t m = 0;; ++m) {
    o += m < fit.histogram.size() ? static_cast<double>(fit.histogram[m]) : 0.0;
    e += nw * boost::math::pdf(pois, static_cast<double>(m));
    if (e >= 5.0) {
      obs.push_back(o);
      exp.push_back(e);
      o = e = 0.0;
    }
    const double tail = nw * boost::math::cdf(boost::math::complement(pois, static_cast<double>(m)));
    if (tail < 5.0 && m + 1 >= fit.histogram.size()) {
      double rest_obs = 0.0;
      for (std::size_t j = m + 1; j < fit.histogram.size(); ++j) rest_obs += static_cast<double>(fit.histogram[j]);
      o += rest_obs;
      e += tail;
      if (obs.empty()) {
        obs.push_back(o);
        exp.push_back(e);
      } else {
        obs.back() += o;
        exp.back() += e;
      }
      break;
    }
  }

  fit.pooled_bins = static_cast<int>(obs.size());
  fit.dof = fit.pooled_bins - 2;
  if (fit.dof < 1) return fit;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) chi2 += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  fit.chi_square = chi2;
  boost::math::chi_squared dist(fit.dof);
  fit.p_value = boost::math::cdf(boost::math::complement(dist, chi2));
  fit.tested = true;
  return fit;
}

}  // namespace qjump
