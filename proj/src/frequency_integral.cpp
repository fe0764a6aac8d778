#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "dalab/errors.hpp"
#include "dalab/propagators.hpp"

namespace dalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kWorkspaceLimit = 20000;

struct Workspace {
  Workspace() {
    static const bool handler_off = [] {
      gsl_set_error_handler_off();
      return true;
    }();
    (void)handler_off;
    ws.reset(gsl_integration_workspace_alloc(kWorkspaceLimit));
  }
  struct Free {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
  };
  std::unique_ptr<gsl_integration_workspace, Free> ws;
};

struct Params {
  double w;
  double t;
  double eps;
};

// e^{-ivt} i / (v^2 - w^2 + i eps) = (eps + i d) (cos vt - i sin vt) / (d^2 + eps^2)
double full_re(double v, void* p) {
  const auto& q = *static_cast<const Params*>(p);
  const double d = (v - q.w) * (v + q.w);
  return (q.eps * std::cos(v * q.t) + d * std::sin(v * q.t)) / (d * d + q.eps * q.eps);
}
double full_im(double v, void* p) {
  const auto& q = *static_cast<const Params*>(p);
  const double d = (v - q.w) * (v + q.w);
  return (d * std::cos(v * q.t) - q.eps * std::sin(v * q.t)) / (d * d + q.eps * q.eps);
}

// Principal-part integrand, eps = 0: i e^{-ivt} / d = (sin vt + i cos vt) / d.
double pp_re(double v, void* p) {
  const auto& q = *static_cast<const Params*>(p);
  return std::sin(v * q.t) / ((v - q.w) * (v + q.w));
}
double pp_im(double v, void* p) {
  const auto& q = *static_cast<const Params*>(p);
  return std::cos(v * q.t) / ((v - q.w) * (v + q.w));
}

void check(int status, double error, double tolerance, const char* what) {
  if (status != GSL_SUCCESS || error > tolerance)
    throw ConvergenceError(std::string(what) + ": quadrature did not converge (" +
                           gsl_strerror(status) + ", error estimate " +
                           std::to_string(error) + ")");
}

double integrate_smooth(double (*f)(double, void*), Params& params, double a, double b,
                        double tolerance) {
  Workspace w;
  gsl_function fn{f, &params};
  double result = 0.0;
  double error = 0.0;
  const int status = gsl_integration_qag(&fn, a, b, tolerance, 0.0, kWorkspaceLimit,
                                         GSL_INTEG_GAUSS61, w.ws.get(), &result, &error);
  check(status, error, tolerance, "frequency integral");
  return result;
}

// Breakpoints cluster geometrically towards v = +-w on the scale of the
// Lorentzian half-width eps / (2w), so every segment sees a smooth integrand.
std::vector<double> pole_breakpoints(double w, double eps, double cutoff) {
  std::vector<double> points{-cutoff, -w, w, cutoff};
  const double width = eps / (2.0 * w);
  for (double h = 1e-3 * width; h < 0.5 * w; h *= 2.0) {
    for (double pole : {-w, w}) {
      points.push_back(pole - h);
      points.push_back(pole + h);
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

double integrate_with_poles(double (*f)(double, void*), Params& params, double cutoff,
                            double tolerance) {
  const auto points = pole_breakpoints(params.w, params.eps, cutoff);
  const double share = tolerance / static_cast<double>(points.size() - 1);
  double result = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    result += integrate_smooth(f, params, points[i], points[i + 1], share);
  return result;
}

// int_Omega^inf cos(vt) / (v - a) dv
double shifted_cosine_tail(double a, double t, double cutoff) {
  const double u = (cutoff - a) * std::abs(t);
  const double sign = t > 0.0 ? 1.0 : -1.0;
  return -std::cos(a * t) * gsl_sf_Ci(u) -
         std::sin(a * t) * sign * (kPi / 2.0 - gsl_sf_Si(u));
}

// (1/2pi) int_{|v| > Omega} e^{-ivt} i / (v^2 - w^2) dv. The odd sine part
// cancels between the two tails; eps is dropped (its effect is O(eps / Omega^4)).
complex tail(double w, double t, double cutoff) {
  double even_integral = 0.0;  // int_Omega^inf cos(vt) / (v^2 - w^2) dv
  if (t == 0.0) {
    even_integral = std::log((cutoff + w) / (cutoff - w)) / (2.0 * w);
  } else {
    even_integral =
        (shifted_cosine_tail(w, t, cutoff) - shifted_cosine_tail(-w, t, cutoff)) / (2.0 * w);
  }
  return complex{0.0, even_integral / kPi};
}

complex principal_part_windowed(Params& params, double cutoff, double window,
                                double tolerance) {
  const double w = params.w;
  const double segments[][2] = {
      {-cutoff, -w - window}, {-w + window, w - window}, {w + window, cutoff}};
  double re = 0.0;
  double im = 0.0;
  for (const auto& s : segments) {
    re += integrate_smooth(pp_re, params, s[0], s[1], tolerance / 3.0);
    im += integrate_smooth(pp_im, params, s[0], s[1], tolerance / 3.0);
  }
  return complex{re, im};
}

}  // namespace

void validate(const FrequencyIntegralSpec& spec) {
  if (!(spec.mode_frequency > 0.0))
    throw ValidationError("mode_frequency", "must be positive");
  if (!(spec.epsilon > 0.0)) throw ValidationError("epsilon", "must be positive");
  if (!(spec.frequency_cutoff > 10.0 * spec.mode_frequency))
    throw ValidationError("frequency_cutoff", "must exceed 10 * mode_frequency");
  if (!std::isfinite(spec.time)) throw ValidationError("time", "must be finite");
}

complex feynman_frequency_integral(const FrequencyIntegralSpec& spec, double abs_tolerance) {
  validate(spec);
  Params params{spec.mode_frequency, spec.time, spec.epsilon};
  // Per-component budget; halved again by the 1/(2 pi) prefactor.
  const double tol = abs_tolerance * kPi;
  const double re = integrate_with_poles(full_re, params, spec.frequency_cutoff, tol);
  const double im = integrate_with_poles(full_im, params, spec.frequency_cutoff, tol);
  return complex{re, im} / (2.0 * kPi) +
         tail(spec.mode_frequency, spec.time, spec.frequency_cutoff);
}

FrequencySplit feynman_frequency_split(const FrequencyIntegralSpec& spec, double window,
                                       double abs_tolerance) {
  validate(spec);
  if (!(window > 0.0) || !(window < 0.5 * spec.mode_frequency))
    throw ValidationError("window", "must lie in (0, mode_frequency / 2)");
  Params params{spec.mode_frequency, spec.time, 0.0};
  const double tol = abs_tolerance * kPi;

  // Windowed PV has error 2 window g'(w) + O(window^3); one Richardson step
  // cancels the linear term.
  const complex coarse = principal_part_windowed(params, spec.frequency_cutoff, window, tol);
  const complex fine =
      principal_part_windowed(params, spec.frequency_cutoff, 0.5 * window, tol);
  const complex pp = (2.0 * fine - coarse) / (2.0 * kPi) +
                     tail(spec.mode_frequency, spec.time, spec.frequency_cutoff);

  // i * (-i pi) * delta(v^2 - w^2), with weight 1/(2w) at each root v = +-w.
  const double w = spec.mode_frequency;
  complex on_shell{0.0, 0.0};
  for (double root : {w, -w}) on_shell += std::polar(1.0, -root * spec.time) / (2.0 * w);
  const complex delta = kPi * on_shell / (2.0 * kPi);

  const complex full = feynman_frequency_integral(spec, abs_tolerance);
  return {pp, delta, std::abs(pp + delta - full)};
}

}  // namespace dalab
