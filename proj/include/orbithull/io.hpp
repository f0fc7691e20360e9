#pragma once

#include <string>

#include <json.hpp>

#include "orbithull/averaging.hpp"
#include "orbithull/birkhoff.hpp"
#include "orbithull/core.hpp"
#include "orbithull/correction.hpp"
#include "orbithull/cpmaps.hpp"
#include "orbithull/hull.hpp"
#include "orbithull/measures.hpp"
#include "orbithull/spectra.hpp"
#include "orbithull/transport.hpp"

namespace orbithull {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "orbit-hull/1";

/// Malformed input. `where` names the file and JSON pointer at fault.
class InputError : public Error {
 public:
  InputError(std::string where, const std::string& message)
      : Error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Reads and parses a JSON file; parse failures report the byte offset.
Json load_json(const std::string& path);

// Readers. `at` is the location prefix used in diagnostics
// ("file.json#/rows/1/0"). Complex numbers are a number or [re, im].
Complex complex_from_json(const Json& j, const std::string& at);
CVector tuple_from_json(const Json& j, const std::string& at);
RVector real_tuple_from_json(const Json& j, const std::string& at);
/// {"rows": [[c, ...], ...]} or {"diag": [c, ...]}; a bare array of rows is
/// also accepted.
CMatrix matrix_from_json(const Json& j, const std::string& at);
RMatrix real_matrix_from_json(const Json& j, const std::string& at);
/// {"support": [c, ...], "weights": [w, ...]}
DiscreteMeasure measure_from_json(const Json& j, const std::string& at);
/// {"dim": n, "terms": [{"weight": t, "unitary": matrix}, ...]}
MixedUnitaryChannel channel_from_json(const Json& j, const std::string& at);

// Writers.
Json to_json(Complex z);
Json to_json(const CVector& v);
Json to_json(const RVector& v);
Json to_json(const CMatrix& m);
Json to_json(const RMatrix& m);
Json to_json(const MixedUnitaryChannel& ch);
Json to_json(const PermutationCombination& c);
Json to_json(const DiscreteMeasure& m);
Json to_json(const TransportPlan& p);
Json to_json(const MembershipResult& r);
Json to_json(const CorrectionReport& r);
Json to_json(const AveragingWitness& w);
Json to_json(const TransferReport& r);

}  // namespace orbithull
