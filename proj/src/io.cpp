// Copyright 2026 The hyperlinear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hyperlinear/io.hpp"

#include <fstream>
#include <sstream>

namespace hyperlinear {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back(m(i, j).real());
      data.push_back(m(i, j).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = get_as<long long>(field(j, "rows"), "rows");
  const auto cols = get_as<long long>(field(j, "cols"), "cols");
  const Json& data = field(j, "data");
  if (rows < 1 || cols < 1) throw Error(ErrorCode::Schema, "matrix extents must be positive");
  if (!data.is_array() || static_cast<long long>(data.size()) != 2 * rows * cols) {
    throw Error(ErrorCode::Schema, "matrix data must hold 2 * rows * cols numbers");
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = get_as<double>(data[k], "matrix entry");
      const double im = get_as<double>(data[k + 1], "matrix entry");
      m(i, c) = Complex(re, im);
      k += 2;
    }
  }
  require_finite(m, "matrix JSON");
  return m;
}

Json group_to_json(const GroupSpec& g) {
  if (g.kind() == GroupSpec::Kind::Presentation) {
    Json relators = Json::array();
    for (const Word& r : g.relators()) relators.push_back(r.letters());
    return Json{{"kind", "presentation"}, {"generators", g.generators()}, {"relators", relators}};
  }
  return Json{{"kind", "table"},
              {"labels", g.generators()},
              {"table", g.table()},
              {"identity", g.identity()},
              {"inverse", g.inverses()}};
}

GroupSpec group_from_json(const Json& j) {
  const auto kind = get_as<std::string>(field(j, "kind"), "group kind");
  if (kind == "presentation") {
    auto gens = get_as<std::vector<std::string>>(field(j, "generators"), "generators");
    std::vector<Word> relators;
    if (j.contains("relators")) {
      for (const Json& r : j.at("relators")) {
        auto letters = get_as<std::vector<int>>(r, "relator");
        const Word w(letters);
        if (w.letters() != letters) throw Error(ErrorCode::InvalidGroup, "relators must be reduced");
        relators.push_back(w);
      }
    }
    return GroupSpec::presentation(std::move(gens), std::move(relators));
  }
  if (kind == "table") {
    auto table = get_as<std::vector<std::vector<int>>>(field(j, "table"), "table");
    const int identity = get_as<int>(field(j, "identity"), "identity");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = get_as<std::vector<std::string>>(j.at("labels"), "labels");
    GroupSpec g = GroupSpec::from_table(std::move(table), identity, std::move(labels));
    if (j.contains("inverse") &&
        get_as<std::vector<int>>(j.at("inverse"), "inverse") != g.inverses()) {
      throw Error(ErrorCode::InvalidGroup, "inverse map disagrees with the table");
    }
    return g;
  }
  throw Error(ErrorCode::Schema, "unknown group kind '" + kind + "'");
}

Json rep_to_json(const ApproxRep& rep) {
  Json images = Json::object();
  for (std::size_t k = 0; k < rep.images().size(); ++k) {
    images[rep.group().generators()[k]] = matrix_to_json(rep.images()[k].matrix());
  }
  return Json{{"group", group_to_json(rep.group())}, {"dim", rep.dim()}, {"images", images}};
}

ApproxRep rep_from_json(const Json& j) {
  GroupSpec group = group_from_json(field(j, "group"));
  const auto dim = get_as<long long>(field(j, "dim"), "dim");
  const Json& images = field(j, "images");
  if (!images.is_object()) throw Error(ErrorCode::Schema, "images must be an object");
  std::vector<UnitaryMatrix> out;
  for (const std::string& name : group.generators()) {
    if (!images.contains(name)) throw Error(ErrorCode::Schema, "no image for generator '" + name + "'");
    ComplexMatrix m = matrix_from_json(images.at(name));
    if (m.rows() != dim || m.cols() != dim) {
      throw Error(ErrorCode::Schema, "image of '" + name + "' is not " + std::to_string(dim) +
                                         " x " + std::to_string(dim));
    }
    out.emplace_back(std::move(m));
  }
  if (images.size() != out.size()) throw Error(ErrorCode::Schema, "images for unknown generators");
  return ApproxRep(std::move(group), std::move(out));
}

Json certificate_to_json(const Certificate& cert) {
  Json words = Json::array();
  for (const Word& w : cert.E) words.push_back(w.to_string());
  Json pairs = Json::array();
  for (const PairDefect& p : cert.pair_defects) {
    pairs.push_back({{"g", cert.E[p.g].to_string()}, {"h", cert.E[p.h].to_string()}, {"value", p.value}});
  }
  Json obstructions = Json::array();
  for (const ElementObstruction& o : cert.obstructions) {
    obstructions.push_back({{"g", cert.E[o.g].to_string()}, {"value", o.value}});
  }
  Json j{{"tool", {{"name", "hyperlinear"}, {"version", HYPERLINEAR_VERSION}}},
         {"mode", std::string(to_string(cert.mode))},
         {"eps", cert.eps},
         {"dim", cert.dim},
         {"E", words},
         {"per_pair_defects", pairs},
         {"per_element_obstructions", obstructions},
         {"dim_bound_met", cert.dim_bound_met},
         {"strict_dim", cert.strict_dim},
         {"word_level_evaluation", cert.word_level},
         {"pass", cert.pass},
         {"rng", {{"seed", cert.rng.seed}, {"stream", cert.rng.stream}}}};
  if (cert.mode != CertMode::Hs) {
    j["trials"] = cert.trials;
    j["slack"] = cert.slack;
  }
  if (cert.mode == CertMode::Onb) {
    j["tries_used"] = cert.tries_used;
    j["pass_rates"] = cert.pass_rates;
    j["complement_mass"] = cert.complement_mass;
    j["witness"] = cert.witness ? matrix_to_json(*cert.witness) : Json(nullptr);
  }
  return j;
}

Json amplification_to_json(const AmplificationResult& result) {
  Json j = certificate_to_json(result.certificate);
  j.erase("rng");
  const Certificate& cert = result.certificate;
  Json taus = Json::array();
  for (const ElementTau& t : result.per_element) {
    taus.push_back({{"g", cert.E[t.g].to_string()},
                    {"tau_base", complex_to_json(t.tau_base)},
                    {"tau_level1", complex_to_json(t.tau_level1)},
                    {"modulus", t.tau_modulus}});
  }
  j["gamma"] = result.plan.gamma;
  j["n"] = result.plan.n;
  j["delta"] = result.plan.delta;
  j["schedule"] = std::string(to_string(result.plan.schedule));
  j["doubled"] = result.lazy.doubled();
  j["effective_dim"] = result.lazy.effective_dim().str();
  j["per_element_tau_modulus"] = taus;
  j["max_base_defect"] = result.max_base_defect;
  j["defect_budget"] = result.defect_budget;
  j["defect_bound"] = result.defect_bound;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ApproxRep read_rep_bundle(const std::filesystem::path& path) {
  return rep_from_json(read_json_file(path));
}

}  // namespace hyperlinear
