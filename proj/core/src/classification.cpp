#include "gramdisc/classification.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gramdisc/constants.hpp"
#include "gramdisc/errors.hpp"
#include "gramdisc/gram_core.hpp"
#include "gramdisc/parallel.hpp"
#include "gramdisc/section_engine.hpp"

namespace gramdisc {
namespace {

void check_range(long lo, long hi) {
  if (lo < kMinGramIndex || hi < lo) {
    throw DomainError("invalid Gram index range", "lo=" + std::to_string(lo) + ",hi=" + std::to_string(hi));
  }
}

bool is_corrupt(const GramClassRecord& r) { return !r.good && r.viscosity < kRepulsionConstant; }

}  // namespace

std::vector<long> GramBlock::members() const {
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(length + 1));
  for (long n = start_n; n <= end_n(); ++n) out.push_back(n);
  return out;
}

double uncertainty_floor(double t) { return kUncertainScale * std::pow(t, kUncertainExponent); }

GramClassRecord classify(long n) {
  GramClassRecord r;
  r.n = n;
  r.t = gram_point(n).abscissa();
  r.z = hardy_z(r.t);
  r.z_prime = hardy_z_prime(r.t);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  r.good = sign * r.z > 0.0;
  r.viscosity = r.z != 0.0 ? std::fabs(r.z_prime / r.z) : std::numeric_limits<double>::infinity();
  r.uncertain = std::fabs(r.z) < uncertainty_floor(r.t);
  return r;
}

std::vector<GramClassRecord> classify_range(long lo, long hi, unsigned threads) {
  check_range(lo, hi);
  std::vector<GramClassRecord> out(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = classify(lo + static_cast<long>(i)); });
  return out;
}

std::vector<ScanRow> scan(long lo, long hi, unsigned threads) {
  check_range(lo, hi);
  const long first = lo > kMinGramIndex ? lo - 1 : lo;
  const std::vector<GramClassRecord> records = classify_range(first, hi + 1, threads);
  const auto at = [&](long n) -> const GramClassRecord& { return records[static_cast<std::size_t>(n - first)]; };

  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) {
    ScanRow row;
    row.record = at(n);
    row.isolated = !row.record.good && n > kMinGramIndex && at(n - 1).good && at(n + 1).good;
    row.corrupt = is_corrupt(row.record);
    rows.push_back(row);
  }
  return rows;
}

std::vector<GramBlock> blocks(long lo, long hi, long search_limit, unsigned threads) {
  check_range(lo, hi);
  const std::vector<GramClassRecord> records = classify_range(lo, hi, threads);
  const auto good_at = [&](long n) {
    if (n >= lo && n <= hi) return records[static_cast<std::size_t>(n - lo)].good;
    return classify(n).good;
  };
  const auto unclassifiable = [&](long n) {
    return RangeUnclassifiable("no good Gram point found within the search limit",
                               "n=" + std::to_string(n) + ",limit=" + std::to_string(search_limit));
  };

  std::vector<GramBlock> out;
  long n = lo;
  while (n <= hi) {
    if (good_at(n)) {
      ++n;
      continue;
    }
    long left = n - 1;
    while (true) {
      if (left < kMinGramIndex || n - left > search_limit) throw unclassifiable(n);
      if (good_at(left)) break;
      --left;
    }
    long right = n + 1;
    while (true) {
      if (right - n > search_limit) throw unclassifiable(n);
      if (good_at(right)) break;
      ++right;
    }
    out.push_back(GramBlock{left, right - left});
    n = right + 1;
  }
  return out;
}

bool is_isolated_bad(long n) {
  if (n < 0) throw DomainError("is_isolated_bad requires n >= 0", "n=" + std::to_string(n));
  if (classify(n).good) return false;
  return classify(n - 1).good && classify(n + 1).good;
}

RepulsionReport repulsion_scan(long lo, long hi, unsigned threads) {
  RepulsionReport report;
  report.lo = lo;
  report.hi = hi;
  for (const ScanRow& row : scan(lo, hi, threads)) {
    const GramClassRecord& r = row.record;
    if (r.good) continue;
    RepulsionRow out;
    out.n = r.n;
    out.t = r.t;
    out.z = r.z;
    out.z_prime = r.z_prime;
    out.viscosity = r.viscosity;
    out.isolated = row.isolated;
    out.satisfies_bound = r.viscosity > kRepulsionConstant;
    out.corrupt = row.corrupt;
    out.uncertain = r.uncertain;
    ++report.bad_count;
    if (out.isolated) {
      ++report.isolated_count;
      if (!out.satisfies_bound) ++report.violations;
    }
    if (out.corrupt) report.corrupt.push_back(out.n);
    report.rows.push_back(out);
  }
  return report;
}

}  // namespace gramdisc
