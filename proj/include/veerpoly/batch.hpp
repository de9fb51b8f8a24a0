#pragma once

#include "veerpoly/serialize.hpp"

#include <functional>

namespace veerpoly {

struct RunOptions {
  PolyRequest request;
  bool polynomials = true;  // false: edge-orientability and cover cusps only
  bool verify = false;
  bool timing = true;
};

RunRecord run_entry(const CensusEntry& entry, const RunOptions& opt);
RunRecord run_sig(const TautSig& sig, const RunOptions& opt);

struct BatchSummary {
  long total = 0;
  long errors = 0;
  long edge_orientable = 0;
  long not_edge_orientable = 0;
  long cover_same_cusps = 0;
  long cover_doubled_cusps = 0;
  long cover_other_cusps = 0;
  long identity_pass = 0;
  long identity_fail = 0;

  void add(const RunRecord& r);
  json to_json() const;
};

// Records are delivered to `sink` in input order regardless of `jobs`.
BatchSummary run_batch(const std::vector<CensusEntry>& entries, const RunOptions& opt, int jobs,
                       const std::function<void(const RunRecord&)>& sink);

}  // namespace veerpoly
