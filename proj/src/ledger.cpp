#include "qlasso/ledger.hpp"

namespace qlasso {

void QueryLedger::bump(std::uint64_t& counter, std::uint64_t k) {
  counter += k;
  if (k == 0) return;
  const char* name = &counter == &entry_reads_      ? "entry_reads"
                     : &counter == &sample_draws_   ? "sample_draws"
                                                    : "charged_quantum_queries";
  by_phase_[phase_.empty() ? "unattributed" : phase_][name] += k;
}

void QueryLedger::merge(const QueryLedger& other) {
  entry_reads_ += other.entry_reads_;
  sample_draws_ += other.sample_draws_;
  quantum_queries_ += other.quantum_queries_;
  wall_ops_ += other.wall_ops_;
  for (const auto& [phase, counters] : other.by_phase_) {
    for (const auto& [name, count] : counters) by_phase_[phase][name] += count;
  }
}

nlohmann::json QueryLedger::report() const {
  nlohmann::json phases = nlohmann::json::object();
  for (const auto& [phase, counters] : by_phase_) {
    nlohmann::json entry = nlohmann::json::object();
    for (const auto& [name, count] : counters) entry[name] = count;
    phases[phase] = std::move(entry);
  }
  return {{"entry_reads", entry_reads_},
          {"sample_draws", sample_draws_},
          {"charged_quantum_queries", quantum_queries_},
          {"by_phase", std::move(phases)}};
}

}  // namespace qlasso
