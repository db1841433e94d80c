#include "cli/json_io.hpp"

#include <vector>

namespace linfproj::cli {
namespace {

Rat parse_literal(const Json& v) {
  if (v.is_string()) {
    try {
      return Rat::parse(v.get<std::string>());
    } catch (const ArithmeticError& e) {
      throw InputError(e.what());
    }
  }
  if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
  throw InputError("basis entries must be rational strings or integers");
}

Json optional_rat(const std::optional<Rat>& x) {
  return x ? rat_to_json(*x) : Json(nullptr);
}

}  // namespace

Subspace parse_subspace_document(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("ambient_dim") || !doc.contains("basis")) {
    throw InputError("document needs \"ambient_dim\" and \"basis\"");
  }
  const Json& dim = doc["ambient_dim"];
  if (!dim.is_number_integer() || dim.get<std::int64_t>() <= 0) {
    throw InputError("\"ambient_dim\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(dim.get<std::int64_t>());
  const Json& basis = doc["basis"];
  if (!basis.is_array() || basis.empty()) throw InputError("\"basis\" must be a non-empty array");

  std::vector<Vec> rows;
  for (const Json& row : basis) {
    if (!row.is_array()) throw InputError("each basis row must be an array");
    if (row.size() != n) {
      throw InputError("basis row of length " + std::to_string(row.size()) +
                       " in ambient dimension " + std::to_string(n));
    }
    Vec v;
    for (const Json& x : row) v.push_back(parse_literal(x));
    rows.push_back(std::move(v));
  }
  if (rows.size() > n) throw InputError("more basis rows than the ambient dimension");
  return Subspace(n, Mat::from_rows(rows));
}

Json subspace_to_json(const Subspace& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"basis", mat_to_json(s.basis())}};
}

Json rat_to_json(const Rat& x) { return x.to_string(); }

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const Rat& x : m.row(r)) row.push_back(x.to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ProjectionConstantResult& r) {
  return Json{{"lambda", rat_to_json(r.lambda)},
              {"projection", mat_to_json(r.projection)},
              {"witness", r.witness},
              {"attained", r.attained}};
}

Json to_json(const MultiplicationReport& r) {
  return Json{{"base_lambda", optional_rat(r.base_lambda)},
              {"mu_N", rat_to_json(r.mu)},
              {"sigma_lambda", optional_rat(r.sigma_lambda)},
              {"product", optional_rat(r.product)},
              {"equal", r.equal},
              {"inconclusive", r.inconclusive},
              {"N", r.copies},
              {"ambient_dim", r.ambient_dim}};
}

Json to_json(const AmplificationPlan& p) {
  Json schedule = Json::array();
  for (const auto& e : p.schedule) {
    schedule.push_back(
        Json{{"k", e.k}, {"lambda_k", rat_to_json(e.lambda_k)}, {"ambient", e.ambient}});
  }
  return Json{{"lambda", rat_to_json(p.lambda_target)},
              {"m", p.m},
              {"N", p.copies ? Json(*p.copies) : Json(nullptr)},
              {"mu_N", optional_rat(p.mu)},
              {"alpha", rat_to_json(p.alpha)},
              {"schedule", std::move(schedule)}};
}

Json to_json(const ScheduleReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back(Json{{"k", s.k},
                         {"ambient_dim", s.ambient_dim},
                         {"dim", s.dim},
                         {"expected", rat_to_json(s.expected)},
                         {"certified", optional_rat(s.certified)},
                         {"equal", s.equal}});
  }
  return Json{{"base_lambda", rat_to_json(r.base_lambda)},
              {"steps", std::move(steps)},
              {"truncated", r.truncated}};
}

Json to_json(const BMParameterSet& p) {
  if (p.exact) {
    const auto& e = *p.exact;
    return Json{{"a", rat_to_json(e.a)},   {"mu", rat_to_json(e.mu)},
                {"nu", rat_to_json(e.nu)}, {"b", rat_to_json(e.b)},
                {"root", rat_to_json(e.root)}, {"K", rat_to_json(e.k)},
                {"g", rat_to_json(e.g)},   {"exact", true}};
  }
  return Json{{"a", p.a},   {"mu", p.mu}, {"nu", p.nu}, {"b", p.b},
              {"root", p.root}, {"K", p.k}, {"g", p.g}, {"exact", false}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace linfproj::cli
