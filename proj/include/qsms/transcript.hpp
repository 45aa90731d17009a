#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qsms/qudit.hpp"

namespace qsms {

// Everything one protocol execution did, in order. This is the full record,
// party secrets included; the coordinator's restricted view is derived from
// it (see tp_information_ledger). Serialises to line-delimited records with
// a schema-version header; equal seeds produce byte-identical output.
inline constexpr const char* kTranscriptSchema = "qsms-transcript/1";

struct Detection1Sample {
  int initiator = 0;  // party that picked this sample
  int copy = 0;       // cat copy index, 0-based over the prepared pool
  Basis basis = Basis::B1;
  int v = 0;  // announced cat label of the consumed copy
  int u = 0;
  std::vector<int> outcomes;        // leading qudit first, then parties 1..n
  std::vector<int> announce_order;  // announcement order of the non-initiating parties
  bool ok = false;
};

struct Detection2Sample {
  int party = 0;  // whose pair sequence the sample came from
  int copy = 0;   // pair copy index within that party's pool
  Basis basis = Basis::B1;
  int party_outcome = 0;  // kept-qudit result
  int tp_outcome = 0;     // transmitted-qudit result
  bool ok = false;
};

struct DetectionSummary {
  int stage = 0;
  long long checked = 0;
  long long failures = 0;
  double error_rate = 0.0;
  bool abort = false;
};

struct RoundRecord {
  int round = 0;  // 1-based
  CatLabel cat;   // coordinator labels of the payload copy
  std::vector<int> x;  // party inputs (secret)
  std::vector<int> r;  // encoding phases (secret)
  std::vector<int> w;  // encoding shifts (secret)
  std::vector<BellLabel> party_results;  // Bell measurement results (secret to each party)
  std::vector<int> q;                    // public announcements r~+w~
  CatLabel tp_result;                    // coordinator cat measurement
  int sum = 0;
};

struct SendEvent {
  std::string sequence;  // "S1", "T2", ...
  int from = 0;          // 0 = coordinator, i > 0 = party i
  int to = 0;
  int count = 0;
};

struct ProtocolTranscript {
  // config echo
  int parties = 0;
  int rounds = 0;
  int d = 0;
  int delta = 0;
  int sigma = 0;
  double error_threshold = 0.0;
  std::uint64_t seed = 0;
  bool skip_detections = false;

  std::vector<CatLabel> cat_labels;  // all prepared copies, in preparation order
  std::vector<SendEvent> sends;
  std::vector<Detection1Sample> detection1_samples;
  DetectionSummary detection1;
  std::vector<Detection2Sample> detection2_samples;
  DetectionSummary detection2;
  std::vector<RoundRecord> round_records;
  std::vector<int> sums;

  bool aborted = false;
  std::string abort_stage;
  bool completed = false;

  std::string to_jsonl() const;
  void write(std::ostream& os) const;
};

const char* basis_name(Basis basis);

}  // namespace qsms
