#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gramdisc/discriminant.hpp"
#include "gramdisc/errors.hpp"
#include "gramdisc/section_engine.hpp"

namespace gramdisc {

enum class CurveKind { linear, split, piecewise };

/*!
  A path s -> a(s), s in [0, 1], through the parameter space.

  - linear:    a_k = s for every k.
  - split:     a_k = r1 on shift_indices and r2 elsewhere, with (r1, r2)
               moving along `waypoints` from (0, 0) to (1, 1).
  - piecewise: componentwise interpolation of `vector_waypoints`, the first
               of which must be 0.

  With m segments, segment i covers s in [i/m, (i+1)/m] at uniform speed and
  is sampled `grid` times.
*/
struct CurveSpec {
  CurveKind kind = CurveKind::linear;
  std::set<std::size_t> shift_indices;
  std::vector<std::pair<double, double>> waypoints;
  std::vector<ParameterVector> vector_waypoints;
  int grid = 64;
  double r_max = 1.0;

  static CurveSpec linear(int grid = 64);
  static CurveSpec split(std::set<std::size_t> shift_indices, std::vector<std::pair<double, double>> waypoints,
                         int grid = 64);
  static CurveSpec piecewise(std::vector<ParameterVector> waypoints, int grid = 64);

  std::size_t segments() const noexcept;
  /// Throws MalformedSpec. `terms` is N(g_n) of the target discriminant.
  void validate(std::size_t terms) const;
  /// e.g. "linear", "split:{1,2}:(0,0)->(1,0.41)->(1,1)".
  std::string describe() const;
};

/// a(s) with `terms` coefficients.
ParameterVector curve_eval(const CurveSpec& spec, double s, std::size_t terms);
/// (r1, r2) at s; (s, s) for linear, NaN for piecewise.
std::pair<double, double> curve_radii(const CurveSpec& spec, double s);

struct CurveSample {
  double s = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  std::string a_spec;
  double t = 0.0;
  double delta = 0.0;
  double signed_delta = 0.0;
};

struct CurveTrace {
  long n = 0;
  std::vector<CurveSample> samples;
  double min_signed = 0.0;
  /// Set when continuation failed; samples stop before this parameter.
  std::optional<double> failed_at;
  std::optional<ErrorCode> failure_code;
  std::string failure;
};

/// Delta_n along the sampled curve, each sample warm-started from the last.
/// Continuation errors end the trace and are recorded, not thrown.
CurveTrace trace_discriminant(long n, const CurveSpec& spec, const ContinuationOptions& options = {});
CurveTrace trace_discriminant(const GramDiscriminant& disc, const CurveSpec& spec);

/// A maximal run of samples with signed <= 0. [s_begin, s_end] brackets the
/// run with the neighbouring positive samples where they exist.
struct SignInterval {
  double s_begin = 0.0;
  double s_end = 0.0;
  double first_nonpositive = 0.0;
  double last_nonpositive = 0.0;
};

std::vector<SignInterval> sign_violations(const CurveTrace& trace);

/// floor(sqrt(g_n / 2pi)).
std::size_t default_shift_horizon(long n);

/// The `count` indices k in 1..k_max with the largest B_k(g_n), ties to the
/// smaller k; returned in ascending order.
std::set<std::size_t> suggest_shift_indices(long n, std::size_t k_max, std::size_t count);

}  // namespace gramdisc
