#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "linfproj/banach_mazur.hpp"
#include "linfproj/errors.hpp"
#include "linfproj/planner.hpp"
#include "linfproj/projection_lp.hpp"
#include "linfproj/subspace.hpp"
#include "linfproj/zero_sum.hpp"

namespace linfproj::cli {

using Json = nlohmann::json;

/// Malformed document (bad JSON, wrong types, ragged rows, bad literals).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parses {"ambient_dim": n, "basis": [[lit, ...], ...]} where each literal
/// is a "p/q" string or a JSON integer. Throws InputError for malformed
/// input and RankError for a dependent basis.
Subspace parse_subspace_document(std::string_view text);

/// Inverse of parse_subspace_document; rationals are written as strings.
Json subspace_to_json(const Subspace& s);

Json rat_to_json(const Rat& x);
Json mat_to_json(const Mat& m);

Json to_json(const ProjectionConstantResult& r);
Json to_json(const MultiplicationReport& r);
Json to_json(const AmplificationPlan& p);
Json to_json(const ScheduleReport& r);
Json to_json(const BMParameterSet& p);

/// Output layout is fixed: keys sorted, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace linfproj::cli
