#include "spsvd/serialize.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "spsvd/matrix_io.hpp"

namespace spsvd {

namespace {

using nlohmann::ordered_json;

ordered_json vector_json(const Vector& v) {
  ordered_json arr = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json triples_json(const SvdFactorization& fac) {
  ordered_json arr = ordered_json::array();
  for (const SvdTriple& t : fac.triples) {
    ordered_json entry;
    entry["d"] = t.d;
    entry["u"] = vector_json(t.u);
    entry["v"] = vector_json(t.v);
    arr.push_back(std::move(entry));
  }
  return arr;
}

ordered_json factorization_json(const SvdFactorization& fac,
                                const std::string& method) {
  ordered_json doc;
  doc["method"] = method;
  doc["rank"] = fac.rank();
  doc["triples"] = triples_json(fac);
  return doc;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string to_json(const SvdFactorization& fac, const std::string& method) {
  return dump(factorization_json(fac, method));
}

std::string to_json(const SpsvdResult& result) {
  ordered_json doc = factorization_json(result.factorization, "spsvd");
  ordered_json pairs = ordered_json::array();
  for (const auto& [ui, vi] : result.pair_indices) {
    pairs.push_back(ordered_json::array({ui, vi}));
  }
  doc["pair_indices"] = std::move(pairs);
  doc["objectives"] = result.objectives;
  return dump(doc);
}

std::string to_json(const ElsvdResult& result) {
  ordered_json doc = factorization_json(result.factorization, "elsvd");
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  return dump(doc);
}

std::string to_json(const BoundResult& result) {
  ordered_json doc;
  doc["bound"] = result.bound;
  doc["k_max_searched"] = result.k_max_searched;
  doc["exhausted"] = result.exhausted;
  ordered_json per_k = ordered_json::array();
  for (const auto& [k, inf] : result.per_k_infimum) {
    ordered_json entry;
    entry["k"] = k;
    entry["infimum"] = inf;
    per_k.push_back(std::move(entry));
  }
  doc["per_k_infimum"] = std::move(per_k);
  return dump(doc);
}

std::string to_json(const ProbeReport& report) {
  ordered_json doc;
  doc["stat"] = report.stat;
  doc["block_rows"] = report.block.rows;
  doc["block_cols"] = report.block.cols;
  doc["trials"] = report.trials;
  doc["max_angle_deg"] = report.max_angle_deg;
  doc["magnitude_at_max"] = report.magnitude_at_max;
  doc["trial_at_max"] = report.trial_at_max;
  doc["pattern_at_max"] = report.pattern_at_max;
  doc["threshold_deg"] = report.threshold_deg;
  doc["broke_down"] = report.broke_down;
  return dump(doc);
}

std::string to_json(const std::vector<AccuracyCell>& cells) {
  ordered_json arr = ordered_json::array();
  for (const AccuracyCell& cell : cells) {
    ordered_json entry;
    entry["n"] = cell.n;
    entry["epsilon"] = cell.epsilon;
    entry["reps"] = cell.reps;
    entry["mean_error"] = cell.mean_error;
    arr.push_back(std::move(entry));
  }
  return dump(arr);
}

void write_sweep_csv(std::ostream& out,
                     const std::vector<ExperimentRecord>& records) {
  out << kSweepCsvHeader << "\n";
  for (const ExperimentRecord& rec : records) {
    out << rec.method << ',' << format_double(rec.eta) << ',';
    if (rec.failed) {
      out << ",,";
    } else {
      out << format_double(rec.left_angle_deg) << ','
          << format_double(rec.right_angle_deg) << ','
          << format_double(rec.d1_ratio);
    }
    out << ',' << format_double(rec.wall_time_s) << ',' << rec.seed << ','
        << rec.rep << ',' << (rec.failed ? "true" : "false") << "\n";
  }
}

std::string sweep_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  write_sweep_csv(out, records);
  return out.str();
}

}  // namespace spsvd
