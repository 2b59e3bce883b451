#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rts.hpp"

namespace qjump {

std::vector<DwellRecord> extract_dwells(std::span<const Telegraph> seq, double period) {
  if (seq.empty()) throw InsufficientDataError("extract_dwells needs a nonempty sequence");
  if (!(period > 0.0)) throw DomainError("sweep period must be positive");
  std::vector<DwellRecord> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    if (i == seq.size() || seq[i] != seq[start]) {
      DwellRecord d;
      d.state = seq[start];
      d.start = start;
      d.length = i - start;
      d.duration = static_cast<double>(d.length) * period;
      d.censored = start == 0 || i == seq.size();
      out.push_back(d);
      start = i;
    }
  }
  return out;
}

std::vector<double> complete_durations(std::span<const DwellRecord> dwells, Telegraph state) {
  std::vector<double> out;
  for (const auto& d : dwells)
    if (!d.censored && d.state == state) out.push_back(d.duration);
  return out;
}

RateFit fit_exponential(std::span<const double> durations, double quantum, double confidence) {
  if (durations.size() < 20) {
    throw InsufficientDataError("exponential fit needs at least 20 complete dwells, got " +
                                std::to_string(durations.size()));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
  if (quantum < 0.0) throw DomainError("quantum must be non-negative");
  double total = 0.0;
  for (double d : durations) {
    if (!(d > 0.0) || !std::isfinite(d)) throw DataError("dwell durations must be positive");
    total += d;
  }

  const double n = static_cast<double>(durations.size());
  boost::math::chi_squared chi(2.0 * n);
  const double alpha = 1.0 - confidence;
  const double lo = boost::math::quantile(chi, 0.5 * alpha) / (2.0 * total);
  const double hi = boost::math::quantile(chi, 1.0 - 0.5 * alpha) / (2.0 * total);

  RateFit fit;
  fit.samples = durations.size();
  fit.total_time = total;
  fit.confidence = confidence;
  if (quantum == 0.0) {
    fit.rate = n / total;
    fit.ci_low = lo;
    fit.ci_high = hi;
    return fit;
  }

  // Durations are k * quantum with k geometric: P(k) = (1-p)^(k-1) p and
  // p = 1 - exp(-rate * quantum). MLE p = n / sum(k).
  double steps = 0.0;
  for (double d : durations) steps += std::max(1.0, std::round(d / quantum));
  const double p = n / steps;
  if (!(p < 1.0)) throw DegenerateDataError("every dwell lasts a single quantum; rate unbounded");
  auto to_rate = [&](double per_quantum) {
    if (per_quantum >= 1.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-per_quantum) / quantum;
  };
  fit.quantized = true;
  fit.rate = to_rate(p);
  fit.ci_low = to_rate(lo * total / steps);
  fit.ci_high = to_rate(hi * total / steps);
  return fit;
}

HistogramFit fit_exponential_histogram(std::span<const double> durations, double bin_width) {
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  if (durations.size() < 20) throw InsufficientDataError("histogram fit needs at least 20 dwells");
  double dmax = 0.0;
  for (double d : durations) dmax = std::max(dmax, d);
  const auto bins = static_cast<std::size_t>(std::floor(dmax / bin_width)) + 1;
  HistogramFit out;
  out.counts.assign(bins, 0);
  for (double d : durations) ++out.counts[static_cast<std::size_t>(std::floor(d / bin_width))];
  for (std::size_t i = 0; i < bins; ++i) out.bin_left.push_back(static_cast<double>(i) * bin_width);

  // log(count) has variance ~ 1/count, so bins are weighted by their count.
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    if (out.counts[i] == 0) continue;
    const double w = static_cast<double>(out.counts[i]);
    const double x = (static_cast<double>(i) + 0.5) * bin_width;
    const double y = std::log(w);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
    ++m;
  }
  if (m < 2) throw InsufficientDataError("histogram fit needs at least two occupied bins");
  const double slope = (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
  out.rate = -slope;
  return out;
}

}  // namespace qjump
