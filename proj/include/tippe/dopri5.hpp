#pragma once

// Dormand-Prince 5(4) with the 4th-order continuous extension of Hairer,
// Norsett and Wanner, and PI step-size control. Generic over the dimension so
// the same engine can be verified on closed-form problems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace tippe {

template <std::size_t N>
using Vec = std::array<double, N>;

/// One accepted step with the coefficients of its dense-output polynomial.
template <std::size_t N>
struct DenseStep
{
  double t{};
  double h{};
  std::array<Vec<N>, 5> rcont{};
  double error_norm{};  ///< scaled error estimate; <= 1 for accepted steps

  double t_end() const { return t + h; }

  Vec<N> eval(double at) const
  {
    const double s = (at - t) / h;
    const double s1 = 1.0 - s;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i)
    {
      y[i] = rcont[0][i] +
             s * (rcont[1][i] + s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
    }
    return y;
  }

  double eval(double at, std::size_t i) const
  {
    const double s = (at - t) / h;
    const double s1 = 1.0 - s;
    return rcont[0][i] +
           s * (rcont[1][i] + s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
  }
};

struct StepControl
{
  double rel_tol{1e-9};
  double abs_tol{1e-12};
  double max_step{1e-2};
  double min_step{1e-14};
};

enum class EngineStatus
{
  reached_end,
  stopped_by_observer,
  step_underflow,
};

namespace dp {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

}  // namespace dp

/**
 * Integrate y' = rhs(t, y) from t0 to t1.
 *
 * `observe(const DenseStep<N>&, const Vec<N>& y_new)` is called after every
 * accepted step and returns false to stop. Exceptions thrown by `rhs`
 * propagate to the caller; everything observed before that stays valid.
 */
template <std::size_t N, typename Rhs, typename Observer>
EngineStatus integrate_dopri5(Rhs&& rhs, Vec<N> y, double t0, double t1,
                              const StepControl& ctl, Observer&& observe)
{
  using namespace dp;
  if (!(t1 > t0))
  {
    return EngineStatus::reached_end;
  }

  auto scale = [&](const Vec<N>& a, const Vec<N>& b) {
    Vec<N> sk;
    for (std::size_t i = 0; i < N; ++i)
    {
      sk[i] = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    }
    return sk;
  };
  auto rms = [](const Vec<N>& v, const Vec<N>& sk) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i)
    {
      const double q = v[i] / sk[i];
      acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(N));
  };

  double t = t0;
  Vec<N> k1 = rhs(t, y);

  // Initial step guess.
  double h;
  {
    const Vec<N> sk = scale(y, y);
    const double dnf = rms(k1, sk);
    const double dny = rms(y, sk);
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min(h, ctl.max_step);
    Vec<N> y1;
    for (std::size_t i = 0; i < N; ++i)
    {
      y1[i] = y[i] + h * k1[i];
    }
    const Vec<N> f1 = rhs(t + h, y1);
    Vec<N> df;
    for (std::size_t i = 0; i < N; ++i)
    {
      df[i] = f1[i] - k1[i];
    }
    const double der2 = rms(df, sk) / h;
    const double der = std::max(der2, dnf);
    const double h1 = der <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der, 0.2);
    h = std::min({100.0 * h, h1, ctl.max_step, t1 - t0});
  }

  constexpr double safe = 0.9;
  constexpr double beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  constexpr double fac_min = 0.2;   // smallest allowed h_new / h
  constexpr double fac_max = 10.0;  // largest allowed h_new / h
  double facold = 1e-4;
  bool last_rejected = false;

  Vec<N> k2, k3, k4, k5, k6, k7, ytmp, y1, err;
  for (;;)
  {
    if (h < ctl.min_step)
    {
      return EngineStatus::step_underflow;
    }
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1)
    {
      h = t1 - t;
      last = true;
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(t + h, y1);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    const double enorm = rms(err, scale(y, y1));
    const double fac11 = std::pow(std::max(enorm, 1e-300), expo1);

    if (enorm <= 1.0)
    {
      DenseStep<N> step;
      step.t = t;
      step.h = h;
      step.error_norm = enorm;
      for (std::size_t i = 0; i < N; ++i)
      {
        const double dy = y1[i] - y[i];
        const double bspl = h * k1[i] - dy;
        step.rcont[0][i] = y[i];
        step.rcont[1][i] = dy;
        step.rcont[2][i] = bspl;
        step.rcont[3][i] = dy - h * k7[i] - bspl;
        step.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                d6 * k6[i] + d7 * k7[i]);
      }

      facold = std::max(enorm, 1e-4);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
      double h_new = h / fac;
      if (last_rejected)
      {
        h_new = std::min(h_new, h);
      }
      last_rejected = false;

      y = y1;
      k1 = k7;
      t = last ? t1 : t + h;
      if (!observe(static_cast<const DenseStep<N>&>(step), static_cast<const Vec<N>&>(y)))
      {
        return EngineStatus::stopped_by_observer;
      }
      if (last)
      {
        return EngineStatus::reached_end;
      }
      h = std::min(h_new, ctl.max_step);
    }
    else
    {
      h = h / std::min(1.0 / fac_min, fac11 / safe);
      last_rejected = true;
    }
  }
}

}  // namespace tippe
