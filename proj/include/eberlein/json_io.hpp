#pragma once

/**
 * JSON wire formats and file helpers.
 *
 * Loading validates structure as it parses and reports violations with a
 * JSON-pointer path, so the CLI can exit with a precise diagnostic. Writers
 * emit canonical forms (atoms sorted lexicographically, ties by weight
 * phase) to keep artifacts diffable; files are written atomically.
 */

#include <stdexcept>
#include <string>

#include "eberlein/decomp.hpp"
#include "eberlein/measure.hpp"
#include "eberlein/probe_report.hpp"
#include "eberlein/semimeasure.hpp"

#include "json.hpp"

namespace eberlein {

using json = nlohmann::json;

/// Structural violation found while parsing; `pointer` locates the field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const json& j, const std::string& at = "/group");

json compact_to_json(const CompactFunction& f);
CompactFunction compact_from_json(const json& j, const GroupSpec& g,
                                  const std::string& at = "/compact_fn");

json k2_to_json(const K2Function& f);
K2Function k2_from_json(const json& j, const GroupSpec& g, const std::string& at = "/k2");

json measure_to_json(const ConcreteMeasure& mu);
ConcreteMeasure measure_from_json(const json& j, const std::string& at = "");

json semimeasure_to_json(const SemiMeasure& sm);
SemiMeasure semimeasure_from_json(const json& j, const std::string& at = "");

json fb_series_to_json(const FBSeries& s);
json report_to_json(const ProbeReport& r);

/// Envelope every CLI artifact carries: library version, group, options, seed.
json artifact(json payload, const GroupSpec& g, json options, std::uint64_t seed);

json load_json(const std::string& path);
void write_json_atomic(const std::string& path, const json& j);
void write_csv_atomic(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows);

}  // namespace eberlein
