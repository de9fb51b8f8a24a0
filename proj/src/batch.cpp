#include "veerpoly/batch.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace veerpoly {

RunRecord run_sig(const TautSig& sig, const RunOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.sig = sig.text();
  try {
    Analysis a = analyze(sig.table, sig.angles);
    PolyReport rep;
    if (opt.polynomials) {
      rep = compute_polynomials(a, opt.request);
    } else {
      rep = compute_polynomials(a, PolyRequest{false, false, false});
    }
    rec = RunRecord::from_report(sig.text(), rep);
    if (opt.polynomials && opt.verify) rec.attach(verify_identities(rep));
  } catch (const InvariantError& e) {
    rec.error = e.what();
    rec.error_kind = 2;
  } catch (const ParseError& e) {
    rec.error = e.what();
    rec.error_kind = 1;
  } catch (const DomainError& e) {
    rec.error = e.what();
    rec.error_kind = 1;
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.error_kind = 2;
  }
  if (opt.timing) rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

RunRecord run_entry(const CensusEntry& entry, const RunOptions& opt) {
  if (!entry.sig) {
    RunRecord rec;
    rec.sig = entry.token;
    rec.error = entry.error.empty() ? "unparsable census line" : entry.error;
    rec.error_kind = 1;
    return rec;
  }
  return run_sig(*entry.sig, opt);
}

void BatchSummary::add(const RunRecord& r) {
  ++total;
  if (r.error) {
    ++errors;
    return;
  }
  if (r.edge_orientable) {
    ++edge_orientable;
  } else {
    ++not_edge_orientable;
    if (r.cover_cusps == r.cusps)
      ++cover_same_cusps;
    else if (r.cover_cusps == 2 * r.cusps)
      ++cover_doubled_cusps;
    else
      ++cover_other_cusps;
  }
  if (r.verify) ++(r.verify->pass ? identity_pass : identity_fail);
}

json BatchSummary::to_json() const {
  return {{"total", total},
          {"errors", errors},
          {"edge_orientable", edge_orientable},
          {"not_edge_orientable", not_edge_orientable},
          {"cover_same_cusps", cover_same_cusps},
          {"cover_doubled_cusps", cover_doubled_cusps},
          {"cover_other_cusps", cover_other_cusps},
          {"identity_pass", identity_pass},
          {"identity_fail", identity_fail}};
}

BatchSummary run_batch(const std::vector<CensusEntry>& entries, const RunOptions& opt, int jobs,
                       const std::function<void(const RunRecord&)>& sink) {
  BatchSummary summary;
  jobs = std::max(1, jobs);
  const std::size_t block = 64 * static_cast<std::size_t>(jobs);
  std::vector<RunRecord> buf;
  for (std::size_t lo = 0; lo < entries.size(); lo += block) {
    std::size_t hi = std::min(entries.size(), lo + block);
    buf.assign(hi - lo, RunRecord{});
    std::atomic<std::size_t> next{lo};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < hi;) buf[i - lo] = run_entry(entries[i], opt);
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (const auto& r : buf) {
      summary.add(r);
      sink(r);
    }
  }
  return summary;
}

}  // namespace veerpoly
