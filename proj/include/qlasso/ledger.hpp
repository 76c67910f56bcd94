#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace qlasso {

/// Per-run accounting of oracle work. Raw entry reads and sampling draws are
/// counted as-is; simulated quantum subroutines charge the query count their
/// real counterpart would have spent.
class QueryLedger {
 public:
  void charge_entry_reads(std::uint64_t k) { bump(entry_reads_, k); }
  void charge_sample_draws(std::uint64_t k) { bump(sample_draws_, k); }
  void charge_quantum(std::uint64_t k) { bump(quantum_queries_, k); }
  void charge_wall_ops(std::uint64_t k) { wall_ops_ += k; }

  std::uint64_t entry_reads() const { return entry_reads_; }
  std::uint64_t sample_draws() const { return sample_draws_; }
  std::uint64_t charged_quantum_queries() const { return quantum_queries_; }
  std::uint64_t wall_ops() const { return wall_ops_; }

  /// Phase label prefixed onto subsequent charges ("" = unattributed).
  void set_phase(std::string phase) { phase_ = std::move(phase); }
  const std::string& phase() const { return phase_; }

  /// Associative merge for per-call ledgers produced on worker threads.
  void merge(const QueryLedger& other);

  nlohmann::json report() const;

  bool operator==(const QueryLedger& other) const {
    return entry_reads_ == other.entry_reads_ &&
           sample_draws_ == other.sample_draws_ &&
           quantum_queries_ == other.quantum_queries_ &&
           by_phase_ == other.by_phase_;
  }

 private:
  void bump(std::uint64_t& counter, std::uint64_t k);

  std::uint64_t entry_reads_ = 0;
  std::uint64_t sample_draws_ = 0;
  std::uint64_t quantum_queries_ = 0;
  std::uint64_t wall_ops_ = 0;
  std::string phase_;
  // phase -> {counter name -> count}
  std::map<std::string, std::map<std::string, std::uint64_t>> by_phase_;
};

}  // namespace qlasso
