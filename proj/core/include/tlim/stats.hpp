#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tlim {

struct SampleStats {
  std::size_t n = 0;
  double mean = 0, min = 0, max = 0, sd = 0, stderr_ = 0;
  double spread() const { return max - min; }
};

inline SampleStats sample_stats(std::span<const double> v) {
  SampleStats s;
  s.n = v.size();
  if (v.empty()) return s;
  s.min = s.max = v[0];
  double sum = 0;
  for (double x : v) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  if (s.n > 1) {
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.stderr_ = s.sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

// Weighted least squares y = a + b x. Parameter standard errors are scaled
// by sqrt(chi2/dof) when the fit is worse than the stated weights (so the
// reported error bars stay honest under model misfit).
struct LineFit {
  double a = 0, b = 0;
  double sigma_a = 0, sigma_b = 0;
  double chi2 = 0;
  std::size_t n = 0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w = {}) {
  LineFit f;
  f.n = x.size();
  if (f.n < 2) {
    f.a = f.n == 1 ? y[0] : std::numeric_limits<double>::quiet_NaN();
    return f;
  }
  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (std::size_t i = 0; i < f.n; ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    S += wi;
    Sx += wi * x[i];
    Sy += wi * y[i];
    Sxx += wi * x[i] * x[i];
    Sxy += wi * x[i] * y[i];
  }
  const double det = S * Sxx - Sx * Sx;
  if (det <= 0) {
    f.a = std::numeric_limits<double>::quiet_NaN();
    f.b = std::numeric_limits<double>::quiet_NaN();
    return f;
  }
  f.a = (Sxx * Sy - Sx * Sxy) / det;
  f.b = (S * Sxy - Sx * Sy) / det;
  for (std::size_t i = 0; i < f.n; ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    const double r = y[i] - (f.a + f.b * x[i]);
    f.chi2 += wi * r * r;
  }
  double var_a = Sxx / det;
  double var_b = S / det;
  if (f.n > 2) {
    const double scale = std::max(1.0, f.chi2 / static_cast<double>(f.n - 2));
    var_a *= scale;
    var_b *= scale;
  }
  f.sigma_a = std::sqrt(var_a);
  f.sigma_b = std::sqrt(var_b);
  return f;
}

// Slope of log|y| against log x; points with |y| <= floor are skipped.
inline double log_log_slope(std::span<const double> x, std::span<const double> y,
                            double floor_ = 0.0) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(y[i]) > floor_ && x[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(std::abs(y[i])));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return fit_line(lx, ly).b;
}

// Kolmogorov-Smirnov statistic against the uniform law on [0,1].
inline double ks_statistic_uniform01(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double cdf = v[i];
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
  }
  return d;
}

}  // namespace tlim
