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


#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "hyperlinear/amplify.hpp"
#include "hyperlinear/approx_rep.hpp"
#include "hyperlinear/mat_core.hpp"

namespace hyperlinear {

using Json = nlohmann::json;

/// {"rows": r, "cols": c, "data": [re00, im00, re01, im01, ...]}, row major.
Json matrix_to_json(const ComplexMatrix& m);
/// Throws Schema on malformed input.
ComplexMatrix matrix_from_json(const Json& j);

Json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

/// {"group": {...}, "dim": d, "images": {"<generator>": <matrix>, ...}}.
Json rep_to_json(const ApproxRep& rep);
ApproxRep rep_from_json(const Json& j);

/// Mirrors Certificate; words appear in the word-file syntax.
Json certificate_to_json(const Certificate& cert);

/// Certificate plus {gamma, n, delta, effective_dim, per_element_tau_modulus, ...}.
Json amplification_to_json(const AmplificationResult& result);

/// Throws Io or Schema.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

ApproxRep read_rep_bundle(const std::filesystem::path& path);

}  // namespace hyperlinear
