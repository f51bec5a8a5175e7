#pragma once

#include <cstddef>
#include <vector>

namespace gramdisc {

/// Classical Gram's law at one Gram point. z and z_prime come from hardy_z.
struct GramClassRecord {
  long n = 0;
  double t = 0.0;
  double z = 0.0;
  double z_prime = 0.0;
  /// (-1)^n z > 0.
  bool good = false;
  /// mu(g_n) = |z_prime / z|; +inf when z == 0.
  double viscosity = 0.0;
  /// |z| is below the accuracy floor, so `good` may be wrong.
  bool uncertain = false;
};

/// Consecutive Gram points start_n..start_n+length with good endpoints and
/// bad interior.
struct GramBlock {
  long start_n = 0;
  long length = 1;

  long end_n() const noexcept { return start_n + length; }
  std::vector<long> members() const;
  friend bool operator==(const GramBlock&, const GramBlock&) = default;
};

/// One row of a range scan. `isolated` is only meaningful for bad rows.
struct ScanRow {
  GramClassRecord record;
  bool isolated = false;
  /// bad and viscosity < 4.
  bool corrupt = false;
};

struct RepulsionRow {
  long n = 0;
  double t = 0.0;
  double z = 0.0;
  double z_prime = 0.0;
  double viscosity = 0.0;
  bool isolated = false;
  /// viscosity > 4.
  bool satisfies_bound = false;
  bool corrupt = false;
  bool uncertain = false;
};

/// Bad Gram points of [lo, hi] with the repulsion check. `violations`
/// counts isolated bad points with viscosity <= 4.
struct RepulsionReport {
  long lo = 0;
  long hi = 0;
  std::vector<RepulsionRow> rows;
  std::size_t bad_count = 0;
  std::size_t isolated_count = 0;
  std::size_t violations = 0;
  std::vector<long> corrupt;
};

/// |Z| below floor(t) flags a classification as uncertain.
double uncertainty_floor(double t);

GramClassRecord classify(long n);

/// classify(n) for n = lo..hi in ascending order, computed on `threads`
/// workers (0 = all cores).
std::vector<GramClassRecord> classify_range(long lo, long hi, unsigned threads = 0);

/// Rows for lo..hi; neighbours lo-1 and hi+1 are classified as well so that
/// `isolated` does not depend on how a range is split.
std::vector<ScanRow> scan(long lo, long hi, unsigned threads = 0);

/// Maximal blocks containing the bad points of [lo, hi]. Endpoints are
/// searched outward past the range for at most `search_limit` indices, then
/// RangeUnclassifiable is thrown. An all-good range yields no blocks.
std::vector<GramBlock> blocks(long lo, long hi, long search_limit = 1000, unsigned threads = 0);

/// classify(n) bad and both neighbours good. Requires n >= 0.
bool is_isolated_bad(long n);

RepulsionReport repulsion_scan(long lo, long hi, unsigned threads = 0);

}  // namespace gramdisc
