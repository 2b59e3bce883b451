#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rts.hpp"

namespace qjump {

namespace {

// Lloyd iterations on sorted data from the given ascending start; clusters
// are contiguous index ranges. Returns false if a cluster empties.
struct Lloyd {
  std::vector<double> centers;
  double sse = 0.0;
};

bool lloyd_sorted(const std::vector<double>& x, const std::vector<double>& prefix,
                  const std::vector<double>& prefix2, std::vector<double> c, Lloyd& out) {
  const std::size_t n = x.size();
  const int k = static_cast<int>(c.size());
  std::vector<std::size_t> bounds(k + 1, 0), prev;
  bounds[k] = n;
  for (int iter = 0; iter < 500; ++iter) {
    for (int i = 1; i < k; ++i) {
      const double t = 0.5 * (c[i - 1] + c[i]);
      // ties go to the upper cluster
      bounds[i] = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), t) - x.begin());
    }
    if (bounds == prev) break;
    prev = bounds;
    for (int i = 0; i < k; ++i) {
      const std::size_t lo = bounds[i], hi = bounds[i + 1];
      if (hi > lo) c[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }
  }
  out.sse = 0.0;
  for (int i = 0; i < k; ++i) {
    const std::size_t lo = bounds[i], hi = bounds[i + 1];
    if (hi == lo) return false;
    const double s = prefix[hi] - prefix[lo];
    out.sse += prefix2[hi] - prefix2[lo] - s * s / static_cast<double>(hi - lo);
  }
  out.centers = c;
  return true;
}

// Deterministic multi-start k-means: the sample-quantile start first, then
// an evenly spaced start over the range and a start split at the k-1 widest
// gaps. The lowest within-cluster sum of squares wins, so a small band is
// not lost to a quantile start that lands inside one heavy band.
std::vector<double> kmeans_sorted(const std::vector<double>& x, int k) {
  const std::size_t n = x.size();
  const double origin = x.front();
  std::vector<double> prefix(n + 1, 0.0), prefix2(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + (x[i] - origin);
    prefix2[i + 1] = prefix2[i] + (x[i] - origin) * (x[i] - origin);
  }
  std::vector<double> shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] - origin;

  std::vector<std::vector<double>> starts;
  std::vector<double> q(k), r(k);
  for (int i = 0; i < k; ++i) {
    const auto idx = static_cast<std::size_t>((i + 0.5) / k * static_cast<double>(n));
    q[i] = shifted[std::min(idx, n - 1)];
    r[i] = (i + 0.5) / k * shifted.back();
  }
  starts.push_back(q);
  starts.push_back(r);
  if (n > static_cast<std::size_t>(k)) {
    std::vector<std::size_t> cut(n - 1);
    std::iota(cut.begin(), cut.end(), std::size_t{1});
    std::partial_sort(cut.begin(), cut.begin() + (k - 1), cut.end(), [&](std::size_t a, std::size_t b) {
      const double ga = shifted[a] - shifted[a - 1], gb = shifted[b] - shifted[b - 1];
      return ga != gb ? ga > gb : a < b;
    });
    std::vector<std::size_t> edges(cut.begin(), cut.begin() + (k - 1));
    edges.insert(edges.begin(), 0);
    edges.push_back(n);
    std::sort(edges.begin(), edges.end());
    std::vector<double> g(k);
    for (int i = 0; i < k; ++i) g[i] = (prefix[edges[i + 1]] - prefix[edges[i]]) / static_cast<double>(edges[i + 1] - edges[i]);
    starts.push_back(g);
  }

  Lloyd best;
  bool found = false;
  for (const auto& s : starts) {
    Lloyd run;
    if (!lloyd_sorted(shifted, prefix, prefix2, s, run)) continue;
    if (!found || run.sse < best.sse) {
      best = run;
      found = true;
    }
  }
  if (!found) throw DegenerateDataError("k-means produced an empty band");
  for (double& c : best.centers) c += origin;
  return best.centers;
}

struct Gmm {
  std::vector<double> w, mu, sigma;
  double loglik = 0.0;
};

Gmm fit_gmm(const std::vector<double>& x, int k) {
  const std::size_t n = x.size();
  const std::vector<double> c = kmeans_sorted(x, k);
  const double spread = x.back() - x.front();
  const double floor_sigma = 1e-6 * spread;

  Gmm g;
  g.w.assign(k, 0.0);
  g.mu = c;
  g.sigma.assign(k, 0.0);
  {
    std::vector<double> s1(k, 0.0), s2(k, 0.0);
    std::vector<std::size_t> cnt(k, 0);
    for (double v : x) {
      int best = 0;
      for (int i = 1; i < k; ++i)
        if (std::abs(v - c[i]) < std::abs(v - c[best])) best = i;
      s1[best] += v;
      s2[best] += v * v;
      ++cnt[best];
    }
    for (int i = 0; i < k; ++i) {
      const double m = s1[i] / cnt[i];
      g.w[i] = static_cast<double>(cnt[i]) / n;
      g.sigma[i] = std::max(floor_sigma, std::sqrt(std::max(0.0, s2[i] / cnt[i] - m * m)));
    }
  }

  std::vector<double> resp(static_cast<std::size_t>(k));
  double last = -INFINITY;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> sw(k, 0.0), sx(k, 0.0), sxx(k, 0.0);
    double ll = 0.0;
    for (double v : x) {
      double tot = 0.0;
      for (int i = 0; i < k; ++i) {
        const double z = (v - g.mu[i]) / g.sigma[i];
        resp[i] = g.w[i] / g.sigma[i] * std::exp(-0.5 * z * z);
        tot += resp[i];
      }
      if (!(tot > 0.0)) {
        // far outlier: give it to the nearest component
        int best = 0;
        for (int i = 1; i < k; ++i)
          if (std::abs(v - g.mu[i]) < std::abs(v - g.mu[best])) best = i;
        std::fill(resp.begin(), resp.end(), 0.0);
        resp[best] = 1.0;
        tot = 1.0;
      } else {
        ll += std::log(tot / std::sqrt(2.0 * std::numbers::pi));
      }
      for (int i = 0; i < k; ++i) {
        const double r = resp[i] / tot;
        sw[i] += r;
        sx[i] += r * v;
        sxx[i] += r * v * v;
      }
    }
    for (int i = 0; i < k; ++i) {
      if (sw[i] <= 0.0) {
        g.w[i] = 0.0;
        continue;
      }
      g.w[i] = sw[i] / n;
      g.mu[i] = sx[i] / sw[i];
      g.sigma[i] = std::max(floor_sigma, std::sqrt(std::max(0.0, sxx[i] / sw[i] - g.mu[i] * g.mu[i])));
    }
    g.loglik = ll;
    if (std::abs(ll - last) <= 1e-10 * std::abs(ll)) break;
    last = ll;
  }
  return g;
}

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> x(v.begin(), v.end());
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

int BandModel::assign(double current) const {
  int band = 0;
  for (double t : thresholds) {
    if (current >= t) break;
    ++band;
  }
  return band;
}

const char* BandModel::state_name(int band, int k) {
  if (k == 3) {
    static const char* names[] = {"0g", "1g", "0e"};
    return names[band];
  }
  if (k == 2) {
    static const char* names[] = {"0g", "1g"};
    return names[band];
  }
  return "?";
}

Classification classify(std::span<const double> currents, int k) {
  if (k != 2 && k != 3) throw DomainError("classify supports k = 2 or k = 3");
  if (currents.size() < 100) {
    throw InsufficientDataError("classification needs at least 100 events, got " +
                                std::to_string(currents.size()));
  }
  const std::vector<double> x = sorted_copy(currents);
  if (x.front() == x.back()) throw DegenerateDataError("all switching currents are identical");

  std::vector<double> c = kmeans_sorted(x, k);
  std::reverse(c.begin(), c.end());
  for (int i = 1; i < k; ++i) {
    if (!(c[i] < c[i - 1])) throw DegenerateDataError("band centers coincide");
  }

  Classification out;
  out.model.centers = c;
  for (int i = 1; i < k; ++i) out.model.thresholds.push_back(0.5 * (c[i - 1] + c[i]));
  out.labels.reserve(currents.size());
  for (double v : currents) out.labels.push_back(out.model.assign(v));
  return out;
}

Classification classify(const Trajectory& traj, int k) { return classify(traj.currents(), k); }

BandCountEstimate estimate_band_count(std::span<const double> currents, int max_bands,
                                      double min_weight, double min_separation) {
  if (currents.size() < 100) throw InsufficientDataError("band-count estimate needs at least 100 events");
  const std::vector<double> x = sorted_copy(currents);
  BandCountEstimate est;
  if (x.front() == x.back()) {
    est.bands = 1;
    est.note = "all values identical";
    est.weights = {1.0};
    est.means = {x.front()};
    est.sigmas = {0.0};
    return est;
  }

  std::string notes;
  for (int k = max_bands; k >= 2; --k) {
    Gmm g;
    try {
      g = fit_gmm(x, k);
    } catch (const DegenerateDataError&) {
      notes += "k=" + std::to_string(k) + ": empty cluster; ";
      continue;
    }
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.mu[a] > g.mu[b]; });

    double wmin = 1.0, dmin = INFINITY;
    for (int i = 0; i < k; ++i) wmin = std::min(wmin, g.w[order[i]]);
    for (int i = 1; i < k; ++i) {
      const int a = order[i - 1], b = order[i];
      const double d = std::sqrt(2.0) * std::abs(g.mu[a] - g.mu[b]) /
                       std::sqrt(g.sigma[a] * g.sigma[a] + g.sigma[b] * g.sigma[b]);
      dmin = std::min(dmin, d);
    }
    if (wmin >= min_weight && dmin >= min_separation) {
      est.bands = k;
      for (int i : order) {
        est.weights.push_back(g.w[i]);
        est.means.push_back(g.mu[i]);
        est.sigmas.push_back(g.sigma[i]);
      }
      est.note = notes + "k=" + std::to_string(k) + " accepted (min weight " + std::to_string(wmin) +
                 ", min separation " + std::to_string(dmin) + ")";
      return est;
    }
    notes += "k=" + std::to_string(k) + ": min weight " + std::to_string(wmin) + ", min separation " +
             std::to_string(dmin) + "; ";
  }
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  est.bands = 1;
  est.weights = {1.0};
  est.means = {mean};
  est.sigmas = {std::sqrt(var / x.size())};
  est.note = notes + "single band";
  return est;
}

std::vector<Telegraph> binarize(std::span<const int> labels, int k) {
  std::vector<Telegraph> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(l == k - 1 ? Telegraph::off : Telegraph::on);
  return out;
}

}  // namespace qjump
