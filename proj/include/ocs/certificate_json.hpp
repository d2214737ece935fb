#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ocs/certificate.hpp"
#include "ocs/invariant_basis.hpp"

namespace ocs {

// Machine-readable record of a cone-membership decision. All numbers are
// exact "p" or "p/q" strings so the certificate survives any parser.
inline nlohmann::json certificate_json(int k) {
  const ConeProblem p = cone_problem(k, ConeForm::kQuartic);
  const FeasibilityResult res = feasibility_solve(p);
  nlohmann::json j;
  j["k"] = k;
  nlohmann::json order = nlohmann::json::array();
  for (const auto& pair : lambda_pairs())
    order.push_back({pair.level, pair.label});
  j["lambda_order"] = order;
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t r = 0; r < p.a.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < p.a.cols(); ++c)
      row.push_back(rat_str(p.a(r, c)));
    a.push_back(row);
  }
  j["A"] = a;
  nlohmann::json b = nlohmann::json::array();
  for (const auto& v : p.b) b.push_back(rat_str(v));
  j["b"] = b;
  if (res.feasible) {
    j["verdict"] = "sos";
    nlohmann::json lam = nlohmann::json::array();
    for (const auto& v : res.lambda) lam.push_back(rat_str(v));
    j["certificate"] = {{"lambda", lam}};
  } else {
    j["verdict"] = "not_sos";
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : res.farkas.row) row.push_back(rat_str(v));
    nlohmann::json prod = nlohmann::json::array();
    for (const auto& v : res.farkas.product_row)
      prod.push_back(rat_str(v));
    j["certificate"] = {{"farkas_row", row},
                        {"product_row", prod},
                        {"product_rhs", rat_str(res.farkas.product_rhs)}};
  }
  return j;
}

}  // namespace ocs
