#include "gramdisc/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gramdisc/gram_core.hpp"

namespace gramdisc {
namespace {

// Segment index and local parameter u in [0, 1] for s in [0, 1].
std::pair<std::size_t, double> locate(std::size_t segments, double s) {
  const double x = std::clamp(s, 0.0, 1.0) * static_cast<double>(segments);
  const auto i = std::min(static_cast<std::size_t>(x), segments - 1);
  return {i, x - static_cast<double>(i)};
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

CurveSpec CurveSpec::linear(int grid) {
  CurveSpec spec;
  spec.grid = grid;
  return spec;
}

CurveSpec CurveSpec::split(std::set<std::size_t> shift_indices, std::vector<std::pair<double, double>> waypoints,
                           int grid) {
  CurveSpec spec;
  spec.kind = CurveKind::split;
  spec.shift_indices = std::move(shift_indices);
  spec.waypoints = std::move(waypoints);
  spec.grid = grid;
  return spec;
}

CurveSpec CurveSpec::piecewise(std::vector<ParameterVector> waypoints, int grid) {
  CurveSpec spec;
  spec.kind = CurveKind::piecewise;
  spec.vector_waypoints = std::move(waypoints);
  spec.grid = grid;
  return spec;
}

std::size_t CurveSpec::segments() const noexcept {
  switch (kind) {
    case CurveKind::linear: return 1;
    case CurveKind::split: return waypoints.size() > 1 ? waypoints.size() - 1 : 0;
    case CurveKind::piecewise: return vector_waypoints.size() > 1 ? vector_waypoints.size() - 1 : 0;
  }
  return 0;
}

void CurveSpec::validate(std::size_t terms) const {
  if (grid < 2) throw MalformedSpec("grid must be at least 2", "grid=" + std::to_string(grid));
  if (kind == CurveKind::split) {
    if (waypoints.size() < 2) throw MalformedSpec("split curve needs at least two waypoints");
    if (waypoints.front() != std::pair{0.0, 0.0} || waypoints.back() != std::pair{1.0, 1.0}) {
      throw MalformedSpec("split waypoints must start at (0,0) and end at (1,1)");
    }
    for (const auto& [r1, r2] : waypoints) {
      if (!(r1 >= 0.0 && r1 <= r_max && r2 >= 0.0 && r2 <= r_max)) {
        throw MalformedSpec("split waypoint outside [0, r_max]",
                            "r1=" + format_number(r1) + ",r2=" + format_number(r2));
      }
    }
    for (std::size_t k : shift_indices) {
      if (k < 1 || k > terms) {
        throw MalformedSpec("shift index outside [1, N]", "k=" + std::to_string(k) + ",N=" + std::to_string(terms));
      }
    }
  } else if (kind == CurveKind::piecewise) {
    if (vector_waypoints.size() < 2) throw MalformedSpec("piecewise curve needs at least two waypoints");
    for (const auto& w : vector_waypoints) {
      if (w.size() > terms) {
        throw MalformedSpec("waypoint longer than N", "size=" + std::to_string(w.size()) + ",N=" + std::to_string(terms));
      }
    }
    if (!vector_waypoints.front().is_zero()) throw MalformedSpec("piecewise curve must start at 0");
  }
}

std::string CurveSpec::describe() const {
  switch (kind) {
    case CurveKind::linear: return "linear";
    case CurveKind::split: {
      std::string out = "split:{";
      bool first = true;
      for (std::size_t k : shift_indices) {
        if (!first) out += ',';
        out += std::to_string(k);
        first = false;
      }
      out += "}:";
      for (std::size_t i = 0; i < waypoints.size(); ++i) {
        if (i > 0) out += "->";
        out += "(" + format_number(waypoints[i].first) + "," + format_number(waypoints[i].second) + ")";
      }
      return out;
    }
    case CurveKind::piecewise: {
      std::string out = "piecewise:";
      for (std::size_t i = 0; i < vector_waypoints.size(); ++i) {
        if (i > 0) out += "->";
        out += vector_waypoints[i].describe();
      }
      return out;
    }
  }
  return {};
}

std::pair<double, double> curve_radii(const CurveSpec& spec, double s) {
  switch (spec.kind) {
    case CurveKind::linear: return {s, s};
    case CurveKind::split: {
      const auto [i, u] = locate(spec.segments(), s);
      const auto& a = spec.waypoints[i];
      const auto& b = spec.waypoints[i + 1];
      return {(1.0 - u) * a.first + u * b.first, (1.0 - u) * a.second + u * b.second};
    }
    case CurveKind::piecewise: break;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan};
}

ParameterVector curve_eval(const CurveSpec& spec, double s, std::size_t terms) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("curve parameter outside [0, 1]", "s=" + format_number(s));
  if (spec.segments() == 0) throw MalformedSpec("curve has no segments");
  switch (spec.kind) {
    case CurveKind::linear: return ParameterVector::constant(terms, s);
    case CurveKind::split: {
      const auto [r1, r2] = curve_radii(spec, s);
      std::map<std::size_t, double> shifted;
      for (std::size_t k : spec.shift_indices) shifted.emplace(k, r1);
      return ParameterVector::sparse(terms, r2, std::move(shifted));
    }
    case CurveKind::piecewise: {
      const auto [i, u] = locate(spec.segments(), s);
      return lerp(spec.vector_waypoints[i].resized(terms), spec.vector_waypoints[i + 1].resized(terms), u);
    }
  }
  throw MalformedSpec("unknown curve kind");
}

CurveTrace trace_discriminant(long n, const CurveSpec& spec, const ContinuationOptions& options) {
  return trace_discriminant(GramDiscriminant(n, options), spec);
}

CurveTrace trace_discriminant(const GramDiscriminant& disc, const CurveSpec& spec) {
  const std::size_t terms = disc.dimension();
  spec.validate(terms);

  CurveTrace trace;
  trace.n = disc.index();
  const double sign = trace.n % 2 == 0 ? 1.0 : -1.0;
  const std::size_t total = spec.segments() * static_cast<std::size_t>(spec.grid);
  const ParameterPath path = [&](double s) { return curve_eval(spec, s, terms); };

  auto record = [&](double s, double t) {
    const ParameterVector a = path(s);
    const auto [r1, r2] = curve_radii(spec, s);
    CurveSample sample;
    sample.s = s;
    sample.r1 = r1;
    sample.r2 = r2;
    sample.a_spec = a.describe();
    sample.t = t;
    sample.delta = evaluate_section(t, a, disc.context(), ThetaVariant::series, disc.options().theta).value;
    sample.signed_delta = sign * sample.delta;
    trace.samples.push_back(std::move(sample));
  };

  double s = 0.0;
  double t = disc.gram_abscissa();
  double slope = std::numeric_limits<double>::quiet_NaN();
  record(s, t);
  for (std::size_t j = 1; j <= total; ++j) {
    const double s_next = static_cast<double>(j) / static_cast<double>(total);
    try {
      const auto p = disc.follow(path, s, t, s_next, 1, slope);
      s = p.s;
      t = p.t;
      slope = p.slope;
    } catch (const ContinuationError& e) {
      trace.failed_at = e.last_s();
      trace.failure_code = e.code();
      trace.failure = e.what();
      break;
    }
    record(s, t);
  }

  trace.min_signed = trace.samples.front().signed_delta;
  for (const auto& sample : trace.samples) trace.min_signed = std::min(trace.min_signed, sample.signed_delta);
  return trace;
}

std::vector<SignInterval> sign_violations(const CurveTrace& trace) {
  std::vector<SignInterval> out;
  const auto& xs = trace.samples;
  std::size_t i = 0;
  while (i < xs.size()) {
    if (xs[i].signed_delta > 0.0) {
      ++i;
      continue;
    }
    const std::size_t first = i;
    while (i + 1 < xs.size() && xs[i + 1].signed_delta <= 0.0) ++i;
    const std::size_t last = i;
    SignInterval iv;
    iv.first_nonpositive = xs[first].s;
    iv.last_nonpositive = xs[last].s;
    iv.s_begin = first > 0 ? xs[first - 1].s : xs[first].s;
    iv.s_end = last + 1 < xs.size() ? xs[last + 1].s : xs[last].s;
    out.push_back(iv);
    ++i;
  }
  return out;
}

std::size_t default_shift_horizon(long n) { return SectionContext::afe_terms(gram_point(n).abscissa()); }

std::set<std::size_t> suggest_shift_indices(long n, std::size_t k_max, std::size_t count) {
  if (count > k_max) {
    throw DomainError("count must not exceed k_max", "count=" + std::to_string(count) + ",k_max=" + std::to_string(k_max));
  }
  std::vector<TermRow> rows = term_table(n, k_max);
  std::stable_sort(rows.begin(), rows.end(), [](const TermRow& x, const TermRow& y) {
    if (x.b != y.b) return x.b > y.b;
    return x.k < y.k;
  });
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) out.insert(rows[i].k);
  return out;
}

}  // namespace gramdisc
