#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistkit/twist.hpp"

namespace twistkit {

/// Exhaustive searches refuse spaces larger than this.
inline constexpr std::uint64_t kExhaustionCap = std::uint64_t{1} << 20;
/// scan_c refuses algebras with more elements than this.
inline constexpr std::uint64_t kScanCap = std::uint64_t{1} << 14;

struct ZeroDivisor {
  Vector x, y;
};

/// |F|^dim, or throws when the field is infinite or the cap is exceeded.
std::uint64_t space_size(const Algebra& a, std::uint64_t cap = kExhaustionCap);

/// Serial brute force over all nonzero pairs in lexicographic order of
/// (index(x), index(y)), index = sum idx(x_i) q^i. Returns the first hit.
std::optional<ZeroDivisor> zero_divisor_reference(const Algebra& a);
/// Same answer as the reference: the smallest x with L_x singular is found in
/// parallel, then the smallest y in ker L_x.
std::optional<ZeroDivisor> zero_divisor_search(const Algebra& a);

struct ProbeResult {
  std::optional<ZeroDivisor> witness;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Characteristic 0: basis vectors first, then `trials` seeded random integer
/// vectors with entries in [-9, 9]. Never certifies anything.
ProbeResult division_probe_char0(const Algebra& a, std::size_t trials, std::uint64_t seed);

enum class DivisionStatus { guaranteed_by_norm, certified_exhaustive, zero_divisor, unknown };
std::string to_string(DivisionStatus s);

struct TwistResult {
  Algebra circ;
  std::optional<Algebra> star;
  std::string star_error;
  DivisionStatus status = DivisionStatus::unknown;
  std::optional<ZeroDivisor> witness;
  /// The circ witness carried over to star.
  std::optional<ZeroDivisor> star_witness;
  CriterionReport criterion;
  std::size_t probe_trials = 0;
};

/// twist, norm criterion, exhaustive search (finite fields within the cap) or
/// probe (Q), then Kaplanski's trick at spec.a / spec.b (default: A's unit).
TwistResult run_twist(const Algebra& a, const TwistSpec& spec, std::uint64_t seed = 0, std::size_t trials = 100);

struct ScanRecord {
  Vector c;
  Scalar norm_c;
  std::optional<ZeroDivisor> witness;
  CriterionReport criterion;
  std::optional<IffReport> iff;
  std::string line() const;
};

/// Every c in A, including 0, in index order. `k` enables the biconditional
/// criterion per record.
std::vector<ScanRecord> scan_c(const Algebra& a, int variant, const Matrix& f, const Matrix& g,
                               const std::optional<CyclicSubfield>& k = std::nullopt, std::uint64_t seed = 0);
/// Serial reference using zero_divisor_reference.
std::vector<ScanRecord> scan_c_reference(const Algebra& a, int variant, const Matrix& f, const Matrix& g,
                                         const std::optional<CyclicSubfield>& k = std::nullopt,
                                         std::uint64_t seed = 0);

}  // namespace twistkit
