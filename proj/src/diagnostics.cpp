#include "hhnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hhnet {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double kahan_mean(std::span<const double> values) {
  KahanSum s;
  for (double v : values) {
    s.add(v);
  }
  return s.sum / static_cast<double>(values.size());
}

}  // namespace

double empirical_variance(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("empirical_variance of empty input");
  }
  const double n = static_cast<double>(values.size());
  const double mean = kahan_mean(values);
  KahanSum sq, lin;
  for (double v : values) {
    const double d = v - mean;
    sq.add(d * d);
    lin.add(d);
  }
  const double corrected = sq.sum - lin.sum * lin.sum / n;
  return std::max(0.0, corrected / n);
}

void StatsRecorder::observe(std::uint64_t step, const NetworkState& state) {
  if (stride_ == 0 || step % stride_ != 0) {
    return;
  }
  series.t.push_back(state.t);
  const std::span<const double> comps[kComponentCount] = {state.v, state.m, state.n,
                                                          state.h, state.y};
  std::array<double, kComponentCount> mean{}, var{};
  for (int c = 0; c < kComponentCount; ++c) {
    mean[c] = kahan_mean(comps[c]);
    var[c] = empirical_variance(comps[c]);
  }
  series.mean.push_back(mean);
  series.var.push_back(var);
}

EnsembleStats dissipation_curves(std::vector<SeriesStats> replicas) {
  if (replicas.empty()) {
    throw std::invalid_argument("dissipation_curves needs at least one replica");
  }
  std::sort(replicas.begin(), replicas.end(),
            [](const SeriesStats& a, const SeriesStats& b) {
              return a.replica_id < b.replica_id;
            });
  for (std::size_t r = 1; r < replicas.size(); ++r) {
    if (replicas[r].replica_id == replicas[r - 1].replica_id) {
      throw std::invalid_argument("duplicate replica id");
    }
    if (replicas[r].t != replicas[0].t) {
      throw std::invalid_argument("replica time grids do not match");
    }
  }
  const std::size_t points = replicas[0].t.size();
  EnsembleStats out;
  out.t = replicas[0].t;
  out.replica_count = replicas.size();
  out.mean.resize(points);
  out.var.resize(points);
  const double inv = 1.0 / static_cast<double>(replicas.size());
  for (std::size_t k = 0; k < points; ++k) {
    for (int c = 0; c < kComponentCount; ++c) {
      KahanSum sm, sv;
      for (const SeriesStats& rep : replicas) {
        sm.add(rep.mean[k][c]);
        sv.add(rep.var[k][c]);
      }
      out.mean[k][c] = sm.sum * inv;
      out.var[k][c] = sv.sum * inv;
    }
  }
  return out;
}

PlateauRate plateau_and_rate(std::span<const double> t, std::span<const double> s,
                             double tail_window) {
  if (t.size() != s.size() || t.empty()) {
    throw std::invalid_argument("plateau_and_rate needs matching, nonempty series");
  }
  const double tail_start = t.back() - tail_window;
  KahanSum tail;
  std::size_t tail_count = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] >= tail_start) {
      tail.add(s[k]);
      ++tail_count;
    }
  }
  if (tail_count == 0) {
    throw std::invalid_argument("tail window contains no samples");
  }
  PlateauRate out;
  out.plateau = tail.sum / static_cast<double>(tail_count);

  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  const double threshold = 0.5 * (s.front() + out.plateau);
  for (std::size_t k = peak; k < s.size(); ++k) {
    if (s[k] <= threshold) {
      out.half_time = t[k];
      break;
    }
  }
  return out;
}

std::vector<double> detect_spikes(std::span<const double> t, std::span<const double> v,
                                  double threshold, double refractory) {
  if (t.size() != v.size()) {
    throw std::invalid_argument("detect_spikes needs matching series");
  }
  std::vector<double> spikes;
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k - 1] < threshold && v[k] >= threshold && t[k] - last >= refractory) {
      spikes.push_back(t[k]);
      last = t[k];
    }
  }
  return spikes;
}

std::optional<double> isi_coefficient_of_variation(std::span<const double> spikes,
                                                   double t_lo, double t_hi) {
  std::vector<double> in_window;
  for (double s : spikes) {
    if (s >= t_lo && s <= t_hi) {
      in_window.push_back(s);
    }
  }
  if (in_window.size() < 3) {
    return std::nullopt;
  }
  std::vector<double> isi(in_window.size() - 1);
  for (std::size_t k = 0; k + 1 < in_window.size(); ++k) {
    isi[k] = in_window[k + 1] - in_window[k];
  }
  const double mean = kahan_mean(isi);
  if (!(mean > 0.0)) {
    return std::nullopt;
  }
  return std::sqrt(empirical_variance(isi)) / mean;
}

double solve_assignment(std::span<const double> cost, std::size_t n) {
  if (n == 0 || cost.size() != n * n) {
    throw std::invalid_argument("assignment needs an n x n cost matrix, n >= 1");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t none = n;  // sentinel column / "unmatched" row marker
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, none), way(n + 1, none);
  std::vector<char> used(n + 1, 0);

  for (std::size_t row = 0; row < n; ++row) {
    match[none] = row;
    std::size_t j0 = none;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = none;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double reduced = cost[i0 * n + j] - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != none);
    // Augment along the alternating path back to the sentinel.
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != none);
  }

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    total += cost[match[j] * n + j];
  }
  return total;
}

double wasserstein2_squared(std::span<const NeuronState> a,
                            std::span<const NeuronState> b, std::size_t cap) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("wasserstein2 needs equal-size samples");
  }
  if (a.empty() || a.size() > cap) {
    throw std::invalid_argument("wasserstein2 sample size out of range");
  }
  const std::size_t n = a.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i * n + j] = squared_distance(a[i], b[j]);
    }
  }
  return solve_assignment(cost, n) / static_cast<double>(n);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = kahan_mean(x);
  const double my = kahan_mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("fit_line needs non-constant x");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = std::max(0.0, syy - fit.slope * sxy);
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.stderr_slope =
      x.size() > 2 ? std::sqrt(ss_res / ((n - 2.0) * sxx)) : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

}  // namespace hhnet
